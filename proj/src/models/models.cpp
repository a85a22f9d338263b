#include "solvext/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solvext/families.hpp"

namespace solvext::models {
namespace {

const Polynomial kEta{0.0, 1.0};

constexpr int kScanPoints = 4096;
constexpr double kHarmonicScanRadius = 50.0;
constexpr double kMorseScanLo = 1e-6;
constexpr double kMorseScanHi = 1e3;
constexpr double kNearZeroRatio = 1e-8;

struct ScanResult {
    std::optional<double> root;
    double min_abs = 0.0;
};

double bisect_root(const Polynomial& p, double lo, double hi) {
    double flo = p(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ScanResult scan_for_zero(const Polynomial& xi, bool log_grid, double lo, double hi) {
    ScanResult out;
    out.min_abs = std::abs(xi(log_grid ? 0.0 : lo));
    double prev_t = 0.0;
    double prev_v = 0.0;
    for (int i = 0; i < kScanPoints; ++i) {
        const double s = static_cast<double>(i) / (kScanPoints - 1);
        const double t = log_grid ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s;
        const double v = xi(t);
        out.min_abs = std::min(out.min_abs, std::abs(v));
        if (i > 0 && !out.root && v != 0.0 && prev_v != 0.0 && ((v < 0.0) != (prev_v < 0.0)))
            out.root = bisect_root(xi, prev_t, t);
        if (v == 0.0 && !out.root) out.root = t;
        prev_t = t;
        prev_v = v;
    }
    return out;
}

Polynomial xi_for(Family family, int ell, std::optional<double> alpha) {
    if (family == Family::HarmonicRational)
        return ell == 0 ? Polynomial::constant(1.0) : poly::hermite_imag_even(ell / 2);
    return poly::laguerre_reflect(ell, *alpha);
}

bool klh_condition(int ell, double alpha) {
    if (ell % 2 == 0 && alpha < -ell) return true;
    if (alpha > -ell && alpha < -1.0) {
        // -2k-1 < α < -2k for some integer k
        const double neg = -alpha;
        const double k = std::floor(neg / 2.0);
        return neg > 2.0 * k && neg < 2.0 * k + 1.0;
    }
    return false;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void check_level_degree(const ModelSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("excited index must be non-negative");
    if (spec.ell() + n > kMaxLevelDegree)
        throw std::out_of_range("ℓ+n = " + std::to_string(spec.ell() + n) + " exceeds cap " +
                                std::to_string(kMaxLevelDegree));
}

void require_morse(const ModelSpec& spec, const char* who) {
    if (!spec.is_morse()) throw std::logic_error(std::string(who) + ": Morse family only");
}

void require_morse_bound(const ModelSpec& spec, int n) {
    check_level_degree(spec, n);
    if (!(n < morse_excited_bound(spec)))
        throw std::out_of_range("Morse level n=" + std::to_string(n) +
                                " is not bound (requires n < -α/2-ℓ-1 = " +
                                fmt(morse_excited_bound(spec)) + ")");
}

}  // namespace

std::string_view to_string(Family f) {
    return f == Family::HarmonicRational ? "ho" : "morse";
}

std::string_view to_string(RejectReason r) {
    switch (r) {
        case RejectReason::OddEll: return "odd-ell";
        case RejectReason::KlhViolated: return "klh-violated";
        case RejectReason::XiZeroFound: return "xi-zero-found";
    }
    return "unknown";
}

InadmissibleSpec::InadmissibleSpec(Admissibility a)
    : std::invalid_argument(std::string(to_string(*a.reason)) + ": " + a.detail),
      adm_(std::move(a)) {}

double ModelSpec::alpha() const {
    if (!alpha_) throw std::logic_error("alpha requested for the harmonic family");
    return *alpha_;
}

Admissibility check_admissibility(Family family, int ell, std::optional<double> alpha) {
    if (ell < 0) throw std::invalid_argument("ell must be non-negative");
    if (ell > kMaxLevelDegree)
        throw std::invalid_argument("ell = " + std::to_string(ell) + " exceeds cap " +
                                    std::to_string(kMaxLevelDegree));

    Admissibility out;
    if (family == Family::HarmonicRational) {
        if (alpha) throw std::invalid_argument("alpha is not a parameter of the harmonic family");
        if (ell % 2 != 0) {
            out.reason = RejectReason::OddEll;
            out.detail = "ell=" + std::to_string(ell) +
                         " is odd: H_ell(i eta) vanishes at eta=0 and the wavefunctions are "
                         "not normalizable";
            out.xi_zero = 0.0;
            return out;
        }
    } else {
        if (!alpha) throw std::invalid_argument("alpha is required for the Morse family");
        if (!std::isfinite(*alpha)) throw std::invalid_argument("alpha must be finite");
        if (!klh_condition(ell, *alpha)) {
            out.reason = RejectReason::KlhViolated;
            out.detail = "alpha=" + fmt(*alpha) + ", ell=" + std::to_string(ell) +
                         " satisfies neither (-2k-1 < alpha < -2k with -ell < alpha < -1) nor "
                         "(ell even with alpha < -ell)";
        }
    }

    const Polynomial xi = xi_for(family, ell, alpha);
    const ScanResult scan = family == Family::HarmonicRational
                                ? scan_for_zero(xi, false, -kHarmonicScanRadius, kHarmonicScanRadius)
                                : scan_for_zero(xi, true, kMorseScanLo, kMorseScanHi);
    out.xi_zero = scan.root;
    out.min_abs_xi_ratio = scan.min_abs / xi.max_abs_coeff();

    if (out.reason) {
        if (scan.root) out.detail += "; xi has a zero near eta=" + fmt(*scan.root);
        return out;
    }
    if (scan.root) {
        out.reason = RejectReason::XiZeroFound;
        out.detail = "xi changes sign near eta=" + fmt(*scan.root);
        return out;
    }
    if (out.min_abs_xi_ratio < kNearZeroRatio) {
        out.reason = RejectReason::XiZeroFound;
        out.detail = "min |xi| / max coefficient = " + fmt(out.min_abs_xi_ratio) +
                     " is below " + fmt(kNearZeroRatio);
        return out;
    }
    out.admissible = true;
    out.detail = "admissible";
    return out;
}

ModelSpec validate_spec(Family family, int ell, std::optional<double> alpha) {
    Admissibility a = check_admissibility(family, ell, alpha);
    if (!a.admissible) throw InadmissibleSpec(std::move(a));
    return ModelSpec(family, ell, alpha);
}

DeformingFunction deforming_function(const ModelSpec& spec) {
    DeformingFunction d;
    d.xi = xi_for(spec.family(), spec.ell(), spec.alpha_opt());
    d.xi_prime = poly::derivative(d.xi);
    if (spec.is_morse()) {
        d.etilde_const = -static_cast<double>(spec.ell());
        d.etilde = Polynomial::monomial(1, d.etilde_const);
    } else {
        d.etilde_const = -2.0 * spec.ell();
        d.etilde = Polynomial::constant(d.etilde_const);
    }
    return d;
}

ConstructionCoefficients construction_coefficients(const ModelSpec& spec) {
    ConstructionCoefficients c;
    if (spec.is_morse()) {
        c.c2 = Polynomial{0.0, 0.0, 1.0};
        c.q = Polynomial{0.0, -0.5 * spec.alpha(), -0.5};
    } else {
        c.c2 = Polynomial::constant(1.0);
        c.q = Polynomial{0.0, -1.0};
    }
    c.c1 = 0.5 * poly::derivative(c.c2) - 2.0 * c.q;
    return c;
}

double eta_of_x(const ModelSpec& spec, double x) { return spec.is_morse() ? std::exp(-x) : x; }

double x_of_eta(const ModelSpec& spec, double eta) {
    if (!spec.is_morse()) return eta;
    if (!(eta > 0.0)) throw std::domain_error("Morse eta must be positive");
    return -std::log(eta);
}

double eta_dot(const ModelSpec& spec, double x) { return spec.is_morse() ? -std::exp(-x) : 1.0; }

double eta_ddot(const ModelSpec& spec, double x) { return spec.is_morse() ? std::exp(-x) : 0.0; }

double xi_ode_residual(const ModelSpec& spec) {
    const DeformingFunction d = deforming_function(spec);
    const ConstructionCoefficients c = construction_coefficients(spec);
    const Polynomial t2 = c.c2 * poly::derivative(d.xi_prime);
    const Polynomial t1 = c.c1 * d.xi_prime;
    const Polynomial t0 = d.etilde * d.xi;
    return poly::relative_residual(t2 + t1 + t0, {&t2, &t1, &t0});
}

double prepotential_w0(const ModelSpec& spec, double x) {
    if (spec.is_morse()) return 0.5 * spec.alpha() * x - 0.5 * std::exp(-x);
    return -0.5 * x * x;
}

double prepotential_w0_dot(const ModelSpec& spec, double x) {
    const ConstructionCoefficients c = construction_coefficients(spec);
    return c.q(eta_of_x(spec, x)) / eta_dot(spec, x);
}

double prepotential_w0_ddot(const ModelSpec& spec, double x) {
    const ConstructionCoefficients c = construction_coefficients(spec);
    const double eta = eta_of_x(spec, x);
    const double ed = eta_dot(spec, x);
    return poly::derivative(c.q)(eta) - c.q(eta) * eta_ddot(spec, x) / (ed * ed);
}

double potential(const ModelSpec& spec, double x) { return PointEvaluator(spec).potential(x); }

double continuum_threshold(const ModelSpec& spec) {
    require_morse(spec, "continuum_threshold");
    return 0.25 * spec.alpha() * spec.alpha();
}

Level Level::excited(int n) {
    if (n < 0) throw std::invalid_argument("excited index must be non-negative");
    return Level(Kind::Excited, n);
}

int Level::n() const {
    if (is_ground()) throw std::logic_error("ground level has no excited index");
    return n_;
}

std::string Level::label() const { return is_ground() ? "ground" : "n=" + std::to_string(n_); }

double morse_excited_bound(const ModelSpec& spec) {
    require_morse(spec, "morse_excited_bound");
    return -0.5 * spec.alpha() - spec.ell() - 1.0;
}

std::vector<Level> bound_levels(const ModelSpec& spec, std::optional<int> nmax) {
    std::vector<Level> out{Level::ground()};
    if (!spec.is_morse()) {
        if (!nmax) throw std::invalid_argument("bound_levels: nmax is required for the harmonic family");
        if (*nmax < -1) throw std::invalid_argument("bound_levels: nmax must be >= -1");
        for (int n = 0; n <= *nmax; ++n) {
            check_level_degree(spec, n);
            out.push_back(Level::excited(n));
        }
        return out;
    }
    const double bound = morse_excited_bound(spec);
    for (int n = 0; n < bound && (!nmax || n <= *nmax); ++n) {
        check_level_degree(spec, n);
        out.push_back(Level::excited(n));
    }
    return out;
}

bool is_bound(const ModelSpec& spec, const Level& level) {
    if (level.is_ground()) return true;
    if (!spec.is_morse()) return true;
    return level.n() < morse_excited_bound(spec);
}

double energy(const ModelSpec& spec, const Level& level) {
    if (level.is_ground()) return 0.0;
    const int n = level.n();
    const int ell = spec.ell();
    if (!spec.is_morse()) return 2.0 * (n + ell + 1);
    require_morse_bound(spec, n);
    const double a = spec.alpha();
    return a - 1.0 - (n + ell + 2.0) * (n + ell + a);
}

double morse_beta(const ModelSpec& spec, int n) {
    require_morse(spec, "morse_beta");
    return -spec.alpha() - 2.0 * (n + spec.ell() + 1);
}

double morse_gamma(const ModelSpec& spec, int n) {
    require_morse(spec, "morse_gamma");
    return -static_cast<double>(n + spec.ell() + 2);
}

Polynomial p_polynomial(const ModelSpec& spec, int n) {
    const DeformingFunction d = deforming_function(spec);
    if (!spec.is_morse()) {
        check_level_degree(spec, n);
        return poly::hermite(n) * d.xi_prime + poly::hermite(n + 1) * d.xi;
    }
    require_morse_bound(spec, n);
    const double beta = morse_beta(spec, n);
    const Polynomial ln = poly::laguerre(n, beta);
    const Polynomial ln1 = poly::laguerre(n + 1, beta);
    return kEta * ln * d.xi_prime - (double(spec.ell()) * ln + double(n + 1) * ln1) * d.xi;
}

Polynomial p_polynomial_closed(const ModelSpec& spec, int n) {
    require_morse(spec, "p_polynomial_closed");
    require_morse_bound(spec, n);
    const int ell = spec.ell();
    const double a = spec.alpha();
    const double beta = morse_beta(spec, n);
    Polynomial sum = double(n + 1) * poly::laguerre_reflect(ell, a) * poly::laguerre(n + 1, beta);
    if (ell >= 1)
        sum += (a + ell) * poly::laguerre_reflect(ell - 1, a) * poly::laguerre(n, beta);
    return -sum;
}

Eigenstate eigenstate(const ModelSpec& spec, const Level& level) {
    Eigenstate s;
    s.level = level;
    if (level.is_ground()) return s;
    const int n = level.n();
    s.energy = energy(spec, level);
    s.p = p_polynomial(spec, n);
    if (spec.is_morse()) {
        s.gamma = morse_gamma(spec, n);
        s.beta = morse_beta(spec, n);
        s.prefactor_power = s.gamma + 1.0;
    }
    return s;
}

double vcal_general_residual(const ModelSpec& spec, double gamma, const Polynomial& u,
                             double energy_value) {
    const DeformingFunction d = deforming_function(spec);
    const ConstructionCoefficients c = construction_coefficients(spec);
    const Polynomial c2p = poly::derivative(c.c2);
    const Polynomial drift = 2.0 * c2p - c.c1;
    const Polynomial react = poly::derivative(c2p) - poly::derivative(c.c1) + d.etilde +
                             Polynomial::constant(energy_value);
    const Polynomial eta2 = kEta * kEta;
    const Polynomial u1 = poly::derivative(u);
    const Polynomial u2 = poly::derivative(u1);

    const Polynomial t2 = eta2 * c.c2 * u2;
    const Polynomial t1 = ((2.0 * gamma) * kEta * c.c2 + eta2 * drift) * u1;
    const Polynomial t0 = ((gamma * (gamma - 1.0)) * c.c2 + gamma * kEta * drift + eta2 * react) * u;
    return poly::relative_residual(t2 + t1 + t0, {&t2, &t1, &t0});
}

ConstructionResiduals construction_residuals(const ModelSpec& spec, int n) {
    const DeformingFunction d = deforming_function(spec);
    const ConstructionCoefficients c = construction_coefficients(spec);
    const Eigenstate st = eigenstate(spec, Level::excited(n));
    const int ell = spec.ell();

    ConstructionResiduals out{};
    Polynomial u;
    if (spec.is_morse()) {
        u = poly::laguerre(n, st.beta);
        const double a = spec.alpha();
        const double g = st.gamma;
        const Polynomial u1 = poly::derivative(u);
        const Polynomial t2 = kEta * kEta * poly::derivative(u1);
        const Polynomial t1 = Polynomial{0.0, 2.0 * g - a + 3.0, -1.0} * u1;
        const Polynomial t0 =
            Polynomial{st.energy - a + 1.0 + g * (g - a + 2.0), -(g + ell + 2.0)} * u;
        out.vcal_equation = poly::relative_residual(t2 + t1 + t0, {&t2, &t1, &t0});
    } else {
        u = poly::hermite(n);
        const Polynomial u1 = poly::derivative(u);
        const Polynomial t2 = poly::derivative(u1);
        const Polynomial t1 = -2.0 * (kEta * u1);
        const Polynomial t0 = (st.energy - 2.0 * ell - 2.0) * u;
        out.vcal_equation = poly::relative_residual(t2 + t1 + t0, {&t2, &t1, &t0});
    }

    // F = η^γ (c2 U), G = η^{γ-1} [(c1 - c2') η U - c2 (γ U + η U')],
    // so p = ξ'F + ξG = η^{γ-1} B with B as below.
    const double g = st.gamma;
    const Polynomial f_red = c.c2 * u;
    const Polynomial g_red = (c.c1 - poly::derivative(c.c2)) * kEta * u -
                             c.c2 * (g * u + kEta * poly::derivative(u));
    const Polynomial b = kEta * d.xi_prime * f_red + d.xi * g_red;
    const int shift = static_cast<int>(std::lround(st.prefactor_power - g + 1.0));
    const Polynomial expected = poly::shift_up(st.p, shift);
    out.assembly = poly::relative_residual(b - expected, {&b, &expected});
    return out;
}

Polynomial harmonic_reduced_form(const ModelSpec& spec, int n) {
    if (spec.is_morse()) throw std::logic_error("harmonic_reduced_form: harmonic family only");
    if (spec.ell() < 2) throw std::invalid_argument("harmonic_reduced_form: requires ell = 2m >= 2");
    check_level_degree(spec, n);
    const int m = spec.ell() / 2;
    const Polynomial minus_eta2{0.0, 0.0, -1.0};
    const Polynomial lm = poly::compose(poly::laguerre(m, -0.5), minus_eta2);
    const Polynomial lm1 = poly::compose(poly::laguerre(m - 1, 0.5), minus_eta2);
    return 0.5 * lm * poly::hermite(n + 1) + kEta * lm1 * poly::hermite(n);
}

double reduced_form_residual(const ModelSpec& spec, int n) {
    const Polynomial p = p_polynomial(spec, n);
    const Polynomial r = harmonic_reduced_form(spec, n);
    const double ratio = p.leading() / r.leading();
    return poly::relative_residual(p - ratio * r, {&p});
}

double wavefunction_raw(const ModelSpec& spec, const Eigenstate& state, double x) {
    return PointEvaluator(spec).wavefunction(state, x);
}

WeightPair weight_function(const ModelSpec& spec, double eta) {
    return PointEvaluator(spec).weight(eta);
}

PointEvaluator::PointEvaluator(const ModelSpec& spec)
    : spec_(spec),
      deform_(deforming_function(spec)),
      coeffs_(construction_coefficients(spec)),
      q_prime_(poly::derivative(coeffs_.q)) {}

double PointEvaluator::potential(double x) const {
    if (!std::isfinite(x)) throw std::domain_error("potential: non-finite x");
    const double eta = eta_of_x(spec_, x);
    const double ed = eta_dot(spec_, x);
    const double edd = eta_ddot(spec_, x);
    const double q = coeffs_.q(eta);
    const double w1 = q / ed;
    const double w2 = q_prime_(eta) - q * edd / (ed * ed);
    const double r = deform_.xi_prime(eta) / deform_.xi(eta);
    return w1 * w1 + w2 + r * (2.0 * coeffs_.c2(eta) * r - (2.0 * w1 * ed + edd) + coeffs_.c1(eta)) +
           deform_.etilde(eta);
}

double PointEvaluator::wavefunction(const Eigenstate& state, double x) const {
    if (!std::isfinite(x)) throw std::domain_error("wavefunction_raw: non-finite x");
    if (!spec_.is_morse()) {
        const double expo = -0.5 * x * x;
        if (expo < -745.0) return 0.0;
        return std::exp(expo) * state.p(x) / deform_.xi(x);
    }
    // ln η = -x, so η^{-α/2 + power} = exp((α/2 - power) x).
    const double eta = std::exp(-x);
    const double expo = -0.5 * eta + (0.5 * spec_.alpha() - state.prefactor_power) * x;
    if (expo < -745.0) return 0.0;
    return std::exp(expo) * state.p(eta) / deform_.xi(eta);
}

WeightPair PointEvaluator::weight(double eta) const {
    if (!std::isfinite(eta)) throw std::domain_error("weight_function: non-finite eta");
    const double xi = deform_.xi(eta);
    if (!spec_.is_morse()) {
        const double w = std::exp(-eta * eta) / (xi * xi);
        return {w, w};
    }
    if (!(eta > 0.0)) throw std::domain_error("weight_function: Morse eta must be positive");
    const double base = std::exp(-eta - spec_.alpha() * std::log(eta)) / (xi * xi);
    return {base, base / eta};
}

double xi_min_abs(const ModelSpec& spec) {
    const DeformingFunction d = deforming_function(spec);
    if (!spec.is_morse()) return std::abs(d.xi(0.0));
    return scan_for_zero(d.xi, true, 1e-8, 1e4).min_abs;
}

}  // namespace solvext::models
