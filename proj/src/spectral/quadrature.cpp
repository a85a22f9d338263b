#include "solvext/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace solvext::spectral {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTruncationLimit = 1e6;

struct Simpson {
    const RealFunction& f;
    int max_depth;

    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                  int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        const double floor = 8.0 * kEps * (std::abs(left) + std::abs(right));
        if (std::abs(delta) <= 15.0 * std::max(tol, floor)) return left + right + delta / 15.0;
        if (depth >= max_depth)
            throw QuadratureError("adaptive Simpson did not converge on [" + std::to_string(a) +
                                  ", " + std::to_string(b) + "]");
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }

    double operator()(double a, double b, double tol) const {
        const double fa = f(a);
        const double fb = f(b);
        const double fm = f(0.5 * (a + b));
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return refine(a, b, fa, fm, fb, whole, tol, 0);
    }
};

}  // namespace

Envelope gaussian_envelope(double rate, double power, double scale) {
    return {[=](double t) { return scale * std::exp(-rate * t * t) * std::pow(std::abs(t), power); }};
}

Envelope exponential_envelope(double rate, double power, double scale) {
    return {[=](double t) {
        return scale * std::exp(-rate * std::abs(t)) * std::pow(std::abs(t), power);
    }};
}

double truncation_point(const Envelope& env, double anchor, int direction, double tol) {
    if (!env.bound) throw std::invalid_argument("truncation_point: missing envelope");
    const double threshold = tol * 1e-2;
    double t = anchor;
    double v = env.bound(t);
    while (std::abs(t - anchor) < kTruncationLimit) {
        const double step = std::max(1.0 / 16.0, 0.01 * std::abs(t - anchor));
        const double next = t + direction * step;
        const double vn = env.bound(next);
        if (v < threshold && vn <= v) return t;
        t = next;
        v = vn;
    }
    throw QuadratureError("envelope does not decay below " + std::to_string(threshold));
}

double quadrature(const RealFunction& f, double a, double b, double tol,
                  const QuadratureOptions& opts) {
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature: tol must be positive");
    if (std::isnan(a) || std::isnan(b) || !(a < b))
        throw std::invalid_argument("quadrature: requires a < b");
    if (opts.panels < 1) throw std::invalid_argument("quadrature: panels must be >= 1");

    const double lo_anchor = std::isfinite(b) ? std::min(b, 0.0) : 0.0;
    const double hi_anchor = std::isfinite(a) ? std::max(a, 0.0) : 0.0;
    const double lo = std::isfinite(a) ? a : truncation_point(opts.lower_tail, lo_anchor, -1, tol);
    const double hi = std::isfinite(b) ? b : truncation_point(opts.upper_tail, hi_anchor, +1, tol);
    if (!(lo < hi)) return 0.0;

    const Simpson simpson{f, opts.max_depth};
    const double width = (hi - lo) / opts.panels;
    const double panel_tol = tol / opts.panels;
    double sum = 0.0;
    for (int i = 0; i < opts.panels; ++i) {
        const double pa = lo + i * width;
        const double pb = i + 1 == opts.panels ? hi : lo + (i + 1) * width;
        sum += simpson(pa, pb, panel_tol);
    }
    return sum;
}

}  // namespace solvext::spectral
