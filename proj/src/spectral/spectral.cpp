#include "solvext/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace solvext::spectral {
namespace {

constexpr int kScaleSamples = 4001;

struct Domain {
    double lo;
    double hi;
};

Domain bulk_domain(const ModelSpec& spec) {
    return spec.is_morse() ? Domain{-4.0, 40.0} : Domain{-12.0, 12.0};
}

double max_abs_on_bulk(const models::PointEvaluator& ev, const Eigenstate& st) {
    const Domain d = bulk_domain(ev.spec());
    double m = 0.0;
    for (int i = 0; i < kScaleSamples; ++i) {
        const double x = d.lo + (d.hi - d.lo) * i / (kScaleSamples - 1);
        m = std::max(m, std::abs(ev.wavefunction(st, x)));
    }
    if (!(m > 0.0)) throw std::runtime_error("eigenfunction vanishes on the sampling domain");
    return m;
}

// |φ| <= exp(log_bound_x(x)) pieces for the Morse family, in terms of η.
double morse_kappa(const ModelSpec& spec, const Eigenstate& st) {
    return -0.5 * spec.alpha() + st.prefactor_power;
}

std::vector<double> pair_errors(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) out.push_back(std::abs(a[i] - b[i]));
    return out;
}

std::vector<double> numeric_bound_energies(const ModelSpec& spec, const TridiagonalOperator& t,
                                           std::size_t analytic_count) {
    if (!spec.is_morse()) return eigen_lowest(t, analytic_count);
    const double cutoff = models::continuum_threshold(spec) - kContinuumMargin;
    const std::size_t m = count_below(t, cutoff);
    if (m == 0) return {};
    return eigen_lowest(t, m);
}

}  // namespace

Grid::Grid(double xmin, double xmax, int n_points) : xmin_(xmin), xmax_(xmax), n_points_(n_points) {
    if (!std::isfinite(xmin) || !std::isfinite(xmax) || !(xmin < xmax))
        throw std::invalid_argument("Grid: requires finite xmin < xmax");
    if (n_points < 3) throw std::invalid_argument("Grid: requires at least 3 points");
}

Grid default_grid(const ModelSpec& spec) {
    return spec.is_morse() ? Grid(-4.0, 28.0, 8000) : Grid(-12.0, 12.0, 8000);
}

TridiagonalOperator discretize(const ModelSpec& spec, const Grid& grid) {
    const models::PointEvaluator ev(spec);
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    TridiagonalOperator t;
    t.offdiag = -inv_h2;
    t.diag.reserve(static_cast<std::size_t>(grid.interior_count()));
    for (int i = 1; i + 1 < grid.n_points(); ++i) {
        const double v = ev.potential(grid.x(i));
        if (!std::isfinite(v))
            throw std::domain_error("discretize: potential is not finite at x = " +
                                    std::to_string(grid.x(i)));
        t.diag.push_back(v + 2.0 * inv_h2);
    }
    return t;
}

VerificationReport compare_spectrum(const ModelSpec& spec, const Grid& grid,
                                    std::optional<int> nmax, double tol) {
    VerificationReport r;
    r.spec_family = std::string(models::to_string(spec.family()));
    r.ell = spec.ell();
    r.alpha = spec.alpha_opt();
    r.tolerance = tol;
    r.xmin = grid.xmin();
    r.xmax = grid.xmax();
    r.n_points = grid.n_points();

    const std::vector<Level> levels = models::bound_levels(spec, nmax);
    for (const Level& l : levels) {
        r.levels.push_back(l.label());
        r.analytic.push_back(models::energy(spec, l));
    }
    if (spec.is_morse()) r.cutoff = models::continuum_threshold(spec) - kContinuumMargin;

    const TridiagonalOperator t = discretize(spec, grid);
    if (levels.size() > t.size()) {
        r.reason = "count-mismatch";
        return r;
    }
    r.numeric = numeric_bound_energies(spec, t, levels.size());
    r.numeric_bound_count = r.numeric.size();
    r.abs_error = pair_errors(r.analytic, r.numeric);
    for (double e : r.abs_error) r.max_error = std::max(r.max_error, e);

    if (r.numeric.size() != r.analytic.size())
        r.reason = "count-mismatch";
    else if (!(r.max_error <= tol))
        r.reason = "tolerance-exceeded";
    r.pass = r.reason.empty();
    return r;
}

std::vector<double> spectrum_errors(const ModelSpec& spec, const Grid& grid,
                                    std::optional<int> nmax) {
    const VerificationReport r = compare_spectrum(spec, grid, nmax, 0.0);
    if (r.reason == "count-mismatch")
        throw std::runtime_error("spectrum_errors: numeric bound-state count differs from analytic");
    return r.abs_error;
}

std::string_view to_string(GramSpace s) {
    switch (s) {
        case GramSpace::XSpace: return "x-space";
        case GramSpace::EtaStated: return "eta-space-stated";
        case GramSpace::EtaMeasure: return "eta-space-measure";
    }
    return "unknown";
}

QuadratureOptions eigenfunction_tails(const ModelSpec& spec, const Eigenstate& a,
                                      const Eigenstate& b, double scale) {
    const double log_pre = std::log(a.p.abs_coeff_sum()) + std::log(b.p.abs_coeff_sum()) -
                           2.0 * std::log(models::xi_min_abs(spec)) + std::log(scale);
    const double deg = a.p.degree() + b.p.degree();
    QuadratureOptions opts;
    if (!spec.is_morse()) {
        Envelope env{[=](double x) {
            return std::exp(log_pre - x * x + deg * std::log1p(std::abs(x)));
        }};
        opts.lower_tail = env;
        opts.upper_tail = env;
        return opts;
    }
    const double kappa = morse_kappa(spec, a) + morse_kappa(spec, b);
    Envelope env{[=](double x) {
        const double eta = std::exp(-x);
        return std::exp(log_pre - eta - kappa * x + deg * std::log1p(eta));
    }};
    opts.lower_tail = env;
    opts.upper_tail = env;
    return opts;
}

Matrix gram_matrix(const ModelSpec& spec, const std::vector<Level>& levels, GramSpace space,
                   double tol) {
    const models::PointEvaluator ev(spec);
    std::vector<Eigenstate> states;
    std::vector<double> scales;
    for (const Level& l : levels) {
        states.push_back(models::eigenstate(spec, l));
        scales.push_back(max_abs_on_bulk(ev, states.back()));
    }
    const double xi_min = models::xi_min_abs(spec);
    const std::size_t n = states.size();
    Matrix g(n, std::vector<double>(n, 0.0));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Eigenstate& a = states[i];
            const Eigenstate& b = states[j];
            const double inv = 1.0 / (scales[i] * scales[j]);
            double value = 0.0;
            if (space == GramSpace::XSpace || !spec.is_morse()) {
                // η = x for the harmonic family, so both η variants coincide with x-space
                // up to evaluating through the weight function.
                RealFunction f;
                if (space == GramSpace::XSpace) {
                    f = [&, inv](double x) { return inv * ev.wavefunction(a, x) * ev.wavefunction(b, x); };
                } else {
                    f = [&, inv](double eta) {
                        const models::WeightPair w = ev.weight(eta);
                        const double wt = space == GramSpace::EtaStated ? w.stated : w.measure;
                        return inv * wt * a.p(eta) * b.p(eta);
                    };
                }
                value = quadrature(f, -INFINITY, INFINITY, tol, eigenfunction_tails(spec, a, b, inv));
            } else {
                // ∫_0^∞ w(η) p_a p_b dη with p = η^{power} P and η = t^q.
                const double extra = space == GramSpace::EtaStated ? 0.0 : -1.0;
                const double expo = -spec.alpha() + extra + a.prefactor_power + b.prefactor_power;
                const double q = std::max(1.0, std::ceil(2.0 / (expo + 1.0)));
                const double t_expo = q * (expo + 1.0) - 1.0;
                const double p0 = a.p(0.0) * b.p(0.0) / std::pow(ev.deforming().xi(0.0), 2);
                RealFunction f = [&, inv, q, t_expo, p0, space](double t) {
                    if (t == 0.0) return t_expo > 0.0 ? 0.0 : inv * q * p0;
                    const double eta = std::pow(t, q);
                    const models::WeightPair w = ev.weight(eta);
                    const double wt = space == GramSpace::EtaStated ? w.stated : w.measure;
                    const double pa = std::pow(eta, a.prefactor_power) * a.p(eta);
                    const double pb = std::pow(eta, b.prefactor_power) * b.p(eta);
                    return inv * q * std::pow(t, q - 1.0) * wt * pa * pb;
                };
                const double log_pre = std::log(a.p.abs_coeff_sum()) + std::log(b.p.abs_coeff_sum()) -
                                       2.0 * std::log(xi_min) + std::log(inv * q);
                const double deg = a.p.degree() + b.p.degree();
                QuadratureOptions opts;
                opts.upper_tail.bound = [=](double t) {
                    if (t <= 0.0) return 0.0;
                    const double eta = std::pow(t, q);
                    return std::exp(log_pre - eta + t_expo * std::log(t) + deg * std::log1p(eta));
                };
                value = quadrature(f, 0.0, INFINITY, tol, opts);
            }
            g[i][j] = g[j][i] = value * scales[i] * scales[j];
        }
    }
    return g;
}

double max_normalized_offdiag(const Matrix& g) {
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (i != j) m = std::max(m, std::abs(g[i][j]) / std::sqrt(g[i][i] * g[j][j]));
    return m;
}

double max_normalized_difference(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("matrix size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            m = std::max(m, std::abs(a[i][j] - b[i][j]) / std::sqrt(a[i][i] * a[j][j]));
    return m;
}

double schrodinger_residual(const ModelSpec& spec, const Eigenstate& state, const Grid& grid) {
    const models::PointEvaluator ev(spec);
    const int n = grid.n_points();
    const double h = grid.spacing();
    std::vector<double> phi(static_cast<std::size_t>(n));
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
        phi[static_cast<std::size_t>(i)] = ev.wavefunction(state, grid.x(i));
        peak = std::max(peak, std::abs(phi[static_cast<std::size_t>(i)]));
    }
    if (!(peak > 0.0)) throw std::runtime_error("schrodinger_residual: wavefunction vanishes on grid");
    double worst = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double d2 = (phi[k - 1] - 2.0 * phi[k] + phi[k + 1]) / (h * h);
        const double r = -d2 + (ev.potential(grid.x(i)) - state.energy) * phi[k];
        worst = std::max(worst, std::abs(r));
    }
    return worst / peak;
}

double normalization(const ModelSpec& spec, const Eigenstate& state, double tol) {
    const models::PointEvaluator ev(spec);
    const double s = max_abs_on_bulk(ev, state);
    const double inv = 1.0 / (s * s);
    RealFunction f = [&](double x) {
        const double v = ev.wavefunction(state, x);
        return inv * v * v;
    };
    // The peak of (φ/s)² is 1 and its bulk width is O(1), so 0.1 tol is a
    // relative target on the integral.
    const double integral =
        quadrature(f, -INFINITY, INFINITY, 0.1 * tol, eigenfunction_tails(spec, state, state, inv));
    return 1.0 / (s * std::sqrt(integral));
}

}  // namespace solvext::spectral
