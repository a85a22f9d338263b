#include "solvext/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace solvext::spectral {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Bounds {
    double lo;
    double hi;
};

Bounds gershgorin(const TridiagonalOperator& t) {
    const double r = t.size() > 1 ? 2.0 * std::abs(t.offdiag) : 0.0;
    const auto [mn, mx] = std::minmax_element(t.diag.begin(), t.diag.end());
    return {*mn - r, *mx + r};
}

double norm_bound(const TridiagonalOperator& t) {
    const Bounds b = gershgorin(t);
    return std::max({std::abs(b.lo), std::abs(b.hi), std::numeric_limits<double>::min()});
}

// Solves (T - shift I) y = rhs with partial pivoting; rhs is overwritten.
void solve_shifted(const TridiagonalOperator& t, double shift, std::vector<double>& rhs) {
    const std::size_t n = t.size();
    const double e = t.offdiag;
    const double tiny = kEps * norm_bound(t);
    // Row i after elimination: u0[i] y_i + u1[i] y_{i+1} + u2[i] y_{i+2}.
    std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0);
    // Working copy of the not-yet-eliminated next row: (sub, diag, sup).
    double cur_d = t.diag[0] - shift;
    double cur_s = n > 1 ? e : 0.0;
    double cur_s2 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double nxt_l = e;
        double nxt_d = t.diag[i + 1] - shift;
        double nxt_s = i + 2 < n ? e : 0.0;
        double nxt_s2 = 0.0;
        if (std::abs(nxt_l) > std::abs(cur_d)) {
            // swap rows i and i+1
            std::swap(rhs[i], rhs[i + 1]);
            const double m = cur_d / nxt_l;
            u0[i] = nxt_l;
            u1[i] = nxt_d;
            u2[i] = nxt_s;
            const double new_d = cur_s - m * nxt_d;
            const double new_s = cur_s2 - m * nxt_s;
            rhs[i + 1] -= m * rhs[i];
            cur_d = new_d;
            cur_s = new_s;
            cur_s2 = 0.0;
        } else {
            if (cur_d == 0.0) cur_d = tiny;
            const double m = nxt_l / cur_d;
            u0[i] = cur_d;
            u1[i] = cur_s;
            u2[i] = cur_s2;
            rhs[i + 1] -= m * rhs[i];
            cur_d = nxt_d - m * cur_s;
            cur_s = nxt_s - m * cur_s2;
            cur_s2 = nxt_s2;
        }
    }
    u0[n - 1] = cur_d == 0.0 ? tiny : cur_d;
    for (std::size_t ii = n; ii-- > 0;) {
        double v = rhs[ii];
        if (ii + 1 < n) v -= u1[ii] * rhs[ii + 1];
        if (ii + 2 < n) v -= u2[ii] * rhs[ii + 2];
        if (u0[ii] == 0.0) u0[ii] = tiny;
        rhs[ii] = v / u0[ii];
    }
}

void normalize(std::vector<double>& v) {
    const double s = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (s > 0.0)
        for (double& x : v) x /= s;
}

}  // namespace

std::size_t count_below(const TridiagonalOperator& t, double lambda) {
    const double e2 = t.offdiag * t.offdiag;
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, e2);
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        q = t.diag[i] - lambda - (i == 0 ? 0.0 : e2 / q);
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> eigen_lowest(const TridiagonalOperator& t, std::size_t k) {
    if (k < 1 || k > t.size())
        throw std::out_of_range("eigen_lowest: k must lie in [1, size]");
    const Bounds b = gershgorin(t);
    const double abs_tol = kEps * norm_bound(t);
    std::vector<double> out;
    out.reserve(k);
    double floor_lo = b.lo;
    for (std::size_t j = 0; j < k; ++j) {
        double lo = floor_lo;
        double hi = b.hi;
        for (int it = 0; it < 2000; ++it) {
            const double width = hi - lo;
            if (width <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + abs_tol) break;
            const double mid = lo + 0.5 * width;
            if (mid <= lo || mid >= hi) break;
            if (count_below(t, mid) > j)
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
        floor_lo = lo;
    }
    return out;
}

std::vector<double> eigenvector(const TridiagonalOperator& t, double lambda) {
    const std::size_t n = t.size();
    if (n == 0) throw std::invalid_argument("eigenvector: empty operator");
    std::vector<double> v(n, 1.0);
    // Deterministic, not orthogonal to any particular eigenvector.
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    normalize(v);
    const double shift = lambda + 8.0 * kEps * norm_bound(t);
    for (int it = 0; it < 3; ++it) {
        solve_shifted(t, shift, v);
        normalize(v);
    }
    return v;
}

}  // namespace solvext::spectral
