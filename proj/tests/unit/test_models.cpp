#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "solvext/families.hpp"
#include "solvext/models.hpp"

using namespace solvext;
using models::Family;
using models::Level;
using poly::Polynomial;

namespace {

const Family kHo = Family::HarmonicRational;
const Family kMorse = Family::MorseRational;

models::ModelSpec ho(int ell) { return models::validate_spec(kHo, ell); }
models::ModelSpec morse(int ell, double alpha) { return models::validate_spec(kMorse, ell, alpha); }

// Every admissible spec with ℓ <= 8 over the parameter lattice used by the
// invariant tests.
std::vector<models::ModelSpec> admissible_lattice() {
    std::vector<models::ModelSpec> out;
    for (int ell = 0; ell <= 8; ell += 2) out.push_back(ho(ell));
    for (double a : {-10.0, -12.5, -14.0, -20.0, -2.5, -4.5, -6.5})
        for (int ell = 0; ell <= 8; ++ell)
            if (models::check_admissibility(kMorse, ell, a).admissible) out.push_back(morse(ell, a));
    return out;
}

// Wavefunctions rebuilt from the family polynomials, independent of the
// library's eigenstate assembly.
double ho_phi(int ell, int n, double x) {
    const Polynomial xi = ell == 0 ? Polynomial{1.0} : poly::hermite_imag_even(ell / 2);
    const Polynomial p = n < 0 ? Polynomial{1.0}
                               : poly::hermite(n) * poly::derivative(xi) + poly::hermite(n + 1) * xi;
    return std::exp(-x * x / 2) * p(x) / xi(x);
}

double morse_phi(int ell, double a, int n, double x) {
    const double eta = std::exp(-x);
    const Polynomial xi = poly::laguerre_reflect(ell, a);
    double p = 1.0;
    double power = 0.0;
    if (n >= 0) {
        const double b = -a - 2.0 * (n + ell + 1);
        const Polynomial ln = poly::laguerre(n, b);
        const Polynomial ln1 = poly::laguerre(n + 1, b);
        p = eta * ln(eta) * poly::derivative(xi)(eta) - (ell * ln(eta) + (n + 1) * ln1(eta)) * xi(eta);
        power = -(n + ell + 1);
    }
    return std::exp(-eta / 2) * std::pow(eta, -a / 2 + power) * p / xi(eta);
}

// φ''/φ by a sixth-order central difference.
template <class F>
double curvature_ratio(F phi, double x, double h = 1e-2) {
    const double d2 = (2 * phi(x - 3 * h) - 27 * phi(x - 2 * h) + 270 * phi(x - h) - 490 * phi(x) +
                       270 * phi(x + h) - 27 * phi(x + 2 * h) + 2 * phi(x + 3 * h)) /
                      (180 * h * h);
    return d2 / phi(x);
}

}  // namespace

TEST_CASE("validate_spec examples") {
    const auto ok = models::check_admissibility(kMorse, 2, -10.0);
    CHECK(ok.admissible);
    CHECK_FALSE(ok.reason.has_value());

    const auto odd = models::check_admissibility(kHo, 3, std::nullopt);
    CHECK_FALSE(odd.admissible);
    REQUIRE(odd.reason);
    CHECK(*odd.reason == models::RejectReason::OddEll);
    CHECK(models::to_string(*odd.reason) == "odd-ell");

    const auto klh = models::check_admissibility(kMorse, 2, -1.5);
    CHECK_FALSE(klh.admissible);
    REQUIRE(klh.reason);
    CHECK(*klh.reason == models::RejectReason::KlhViolated);
    CHECK(models::to_string(*klh.reason) == "klh-violated");
    REQUIRE(klh.xi_zero);
    // Positive root of η²/2 + η/2 - 1/8.
    CHECK(*klh.xi_zero == doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0).epsilon(1e-9));

    CHECK_THROWS_AS(models::validate_spec(kHo, 3), models::InadmissibleSpec);
    try {
        models::validate_spec(kMorse, 2, -1.5);
        FAIL("expected rejection");
    } catch (const models::InadmissibleSpec& e) {
        CHECK(e.reason() == models::RejectReason::KlhViolated);
    }
}

TEST_CASE("admissibility bands") {
    CHECK(models::check_admissibility(kMorse, 3, -2.5).admissible);
    CHECK(models::check_admissibility(kMorse, 5, -4.5).admissible);
    CHECK(models::check_admissibility(kMorse, 0, -10.0).admissible);
    CHECK(models::check_admissibility(kHo, 0, std::nullopt).admissible);
    CHECK(models::check_admissibility(kHo, 8, std::nullopt).admissible);
    // Outside both conditions: odd ℓ below -ℓ, and α in an odd band.
    CHECK_FALSE(models::check_admissibility(kMorse, 3, -10.0).admissible);
    CHECK_FALSE(models::check_admissibility(kMorse, 4, -3.5).admissible);
}

TEST_CASE("zero scan agrees with the parameter conditions") {
    for (int ell = 1; ell <= 8; ++ell)
        for (double a = -15.75; a < -1.0; a += 0.5) {
            const auto r = models::check_admissibility(kMorse, ell, a);
            if (r.admissible) continue;
            CAPTURE(ell);
            CAPTURE(a);
            CHECK(r.reason != models::RejectReason::OddEll);
        }
    // Odd ℓ: H_ℓ(iη) is odd and vanishes at η = 0.
    const auto odd = models::check_admissibility(kHo, 5, std::nullopt);
    REQUIRE(odd.xi_zero);
    CHECK(*odd.xi_zero == 0.0);
}

TEST_CASE("malformed specs are usage errors") {
    CHECK_THROWS_AS(models::check_admissibility(kHo, -2, std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(models::check_admissibility(kHo, 2, -10.0), std::invalid_argument);
    CHECK_THROWS_AS(models::check_admissibility(kMorse, 2, std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(models::check_admissibility(kMorse, 2, NAN), std::invalid_argument);
    CHECK_THROWS_AS(models::check_admissibility(kHo, models::kMaxLevelDegree + 2, std::nullopt),
                    std::invalid_argument);
    CHECK_THROWS_AS(ho(2).alpha(), std::logic_error);
}

TEST_CASE("deforming_function examples") {
    const auto d2 = models::deforming_function(ho(2));
    CHECK(d2.xi == Polynomial{-2.0, 0.0, -4.0});
    CHECK(d2.etilde_const == -4.0);

    const auto m0 = models::deforming_function(morse(0, -10.0));
    CHECK(m0.xi == Polynomial{1.0});
    CHECK(m0.etilde_const == 0.0);

    const auto m2 = models::deforming_function(morse(2, -10.0));
    CHECK(m2.xi[0] == doctest::Approx(36.0));
    CHECK(m2.xi[1] == doctest::Approx(-8.0));
    CHECK(m2.xi[2] == doctest::Approx(0.5));
    CHECK(m2.etilde_const == -2.0);
}

TEST_CASE("xi_ode_residual") {
    CHECK(models::xi_ode_residual(ho(2)) < 1e-12);
    CHECK(models::xi_ode_residual(morse(0, -10.0)) == 0.0);
    CHECK(models::xi_ode_residual(morse(2, -10.0)) < 1e-12);
    for (const auto& s : admissible_lattice()) {
        CAPTURE(s.ell());
        CAPTURE(s.alpha_opt().value_or(0.0));
        CHECK(models::xi_ode_residual(s) < 1e-10);
    }
}

TEST_CASE("prepotential examples") {
    CHECK(models::prepotential_w0(ho(0), 0.0) == 0.0);
    CHECK(models::prepotential_w0(ho(0), 2.0) == -2.0);
    CHECK(models::prepotential_w0(morse(0, -10.0), 0.0) == doctest::Approx(-0.5));
    const auto s = morse(2, -10.0);
    for (double x : {-1.0, 0.3, 2.0}) {
        const double h = 1e-5;
        const double fd = (models::prepotential_w0(s, x + h) - models::prepotential_w0(s, x - h)) / (2 * h);
        CHECK(fd == doctest::Approx(models::prepotential_w0_dot(s, x)).epsilon(1e-8));
    }
}

TEST_CASE("potential examples") {
    CHECK(models::potential(ho(0), 1.3) == doctest::Approx(0.69));
    CHECK(models::potential(morse(0, -10.0), 40.0) == doctest::Approx(25.0));
    CHECK(models::continuum_threshold(morse(2, -10.0)) == 25.0);
    // φ0 = e^{-x²/2}/(-4x²-2): (ln φ0)'' + ((ln φ0)')² at x = 0 is -1 - 4.
    CHECK(models::potential(ho(2), 0.0) == doctest::Approx(-5.0).epsilon(1e-14));
}

TEST_CASE("potential has the stated explicit forms") {
    for (int ell : {0, 2, 4}) {
        const auto s = ho(ell);
        const auto d = models::deforming_function(s);
        for (double x : {-3.0, -0.7, 0.0, 1.1, 2.5}) {
            const double r = d.xi_prime(x) / d.xi(x);
            const double v = x * x - 1 + 2 * r * (r + 2 * x) - 2.0 * ell;
            CHECK(models::potential(s, x) == doctest::Approx(v).epsilon(1e-12));
        }
    }
    for (auto [ell, a] : {std::pair{0, -10.0}, {2, -10.0}, {4, -14.0}, {3, -2.5}}) {
        const auto s = morse(ell, a);
        const auto d = models::deforming_function(s);
        for (double x : {-2.0, -0.5, 0.0, 1.0, 4.0}) {
            const double eta = std::exp(-x);
            const double r = d.xi_prime(eta) / d.xi(eta);
            const double v = 0.25 * eta * eta + 0.5 * (a - 2.0 * ell - 1) * eta + a * a / 4 +
                             2 * r * (eta * eta * (r + 1) + a * eta);
            CHECK(models::potential(s, x) == doctest::Approx(v).epsilon(1e-12));
        }
    }
}

TEST_CASE("closed-form states solve the Schrödinger equation pointwise") {
    for (int ell : {0, 2, 4}) {
        const auto s = ho(ell);
        for (int n = -1; n <= 3; ++n) {
            const double e = n < 0 ? 0.0 : 2.0 * (n + ell + 1);
            for (double x : {-1.7, 0.45, 2.2}) {
                CAPTURE(ell);
                CAPTURE(n);
                CAPTURE(x);
                const double ratio = curvature_ratio([&](double t) { return ho_phi(ell, n, t); }, x);
                CHECK(models::potential(s, x) - e == doctest::Approx(ratio).epsilon(1e-7));
            }
        }
    }
    for (auto [ell, a] : {std::pair{0, -10.0}, {2, -10.0}, {2, -14.0}, {4, -14.0}}) {
        const auto s = morse(ell, a);
        for (const Level& l : models::bound_levels(s)) {
            const int n = l.is_ground() ? -1 : l.n();
            const double e = models::energy(s, l);
            for (double x : {-1.2, 0.3, 1.9}) {
                CAPTURE(ell);
                CAPTURE(n);
                CAPTURE(x);
                const double ratio = curvature_ratio([&](double t) { return morse_phi(ell, a, n, t); }, x, 2e-3);
                CHECK(models::potential(s, x) - e == doctest::Approx(ratio).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("energy examples") {
    CHECK(models::energy(ho(2), Level::ground()) == 0.0);
    CHECK(models::energy(morse(2, -10.0), Level::ground()) == 0.0);
    CHECK(models::energy(ho(2), Level::excited(0)) == 6.0);
    CHECK(models::energy(morse(2, -10.0), Level::excited(1)) == 24.0);
    CHECK_THROWS_AS(models::energy(morse(2, -10.0), Level::excited(2)), std::out_of_range);
}

TEST_CASE("bound_levels examples") {
    const auto m2 = morse(2, -10.0);
    CHECK(models::morse_excited_bound(m2) == 2.0);
    CHECK(models::bound_levels(m2) ==
          std::vector<Level>{Level::ground(), Level::excited(0), Level::excited(1)});

    std::vector<double> e0;
    const auto m0 = morse(0, -10.0);
    for (const Level& l : models::bound_levels(m0)) e0.push_back(models::energy(m0, l));
    REQUIRE(e0.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(e0[k] == 25.0 - (5.0 - k) * (5.0 - k));

    std::vector<double> eh;
    for (const Level& l : models::bound_levels(ho(2), 3)) eh.push_back(models::energy(ho(2), l));
    CHECK(eh == std::vector<double>{0, 6, 8, 10, 12});

    CHECK_THROWS(models::bound_levels(ho(2)));
    CHECK(models::bound_levels(m0, 1).size() == 3);
}

TEST_CASE("Morse bound count equals the normalizability of the x -> +inf tail") {
    // φ ~ η^{-α/2 + prefactor_power} as η -> 0; bound iff the exponent is positive.
    for (double a : {-10.0, -11.0, -14.0, -20.0})
        for (int ell : {0, 2, 4}) {
            if (!models::check_admissibility(kMorse, ell, a).admissible) continue;
            const auto s = morse(ell, a);
            const auto levels = models::bound_levels(s);
            for (const Level& l : levels) {
                if (l.is_ground()) continue;
                CHECK(-a / 2 + models::eigenstate(s, l).prefactor_power > 0.0);
            }
            const int first_unbound = static_cast<int>(levels.size()) - 1;
            CHECK(-a / 2 - (first_unbound + ell + 1) <= 0.0);
        }
}

TEST_CASE("p_polynomial examples") {
    CHECK(models::p_polynomial(ho(0), 0) == Polynomial{0.0, 2.0});
    CHECK(models::p_polynomial(ho(2), 0) == Polynomial{0.0, -12.0, 0.0, -8.0});
    const auto m = morse(2, -10.0);
    for (int n : {0, 1}) {
        const Polynomial p = models::p_polynomial(m, n);
        const Polynomial c = models::p_polynomial_closed(m, n);
        CHECK(p.degree() == 3 + n);
        CHECK(poly::relative_residual(p - c, {&p, &c}) < 1e-10);
    }
    CHECK(models::morse_beta(m, 1) == 2.0);
    CHECK(models::morse_gamma(m, 1) == -5.0);
}

TEST_CASE("p_polynomial_closed at ell = 0 drops the L_{-1} term") {
    const auto m = morse(0, -10.0);
    for (int n = 0; n <= 3; ++n) {
        const double b = models::morse_beta(m, n);
        CHECK(models::p_polynomial_closed(m, n) == -double(n + 1) * poly::laguerre(n + 1, b));
    }
}

TEST_CASE("construction residuals") {
    auto both = [](const models::ConstructionResiduals& r) { return std::max(r.vcal_equation, r.assembly); };
    CHECK(both(models::construction_residuals(ho(2), 0)) < 1e-12);
    CHECK(both(models::construction_residuals(ho(2), 3)) < 1e-10);
    CHECK(both(models::construction_residuals(morse(2, -10.0), 1)) < 1e-10);
    for (const auto& s : admissible_lattice()) {
        if (s.ell() > 6) continue;
        for (int n = 0; n <= 4; ++n) {
            if (!models::is_bound(s, Level::excited(n))) continue;
            CAPTURE(s.ell());
            CAPTURE(n);
            CHECK(both(models::construction_residuals(s, n)) < 1e-10);
        }
    }
}

TEST_CASE("degree law") {
    for (const auto& s : admissible_lattice())
        for (int n = 0; n <= 6; ++n) {
            if (!models::is_bound(s, Level::excited(n))) continue;
            CHECK(models::p_polynomial(s, n).degree() == s.ell() + n + 1);
            CHECK(models::eigenstate(s, Level::excited(n)).p.degree() == s.ell() + n + 1);
        }
}

TEST_CASE("Morse closed form agrees with the construction") {
    for (double a : {-10.0, -14.0})
        for (int ell : {2, 4}) {
            const auto s = morse(ell, a);
            for (const Level& l : models::bound_levels(s)) {
                if (l.is_ground()) continue;
                const Polynomial p = models::p_polynomial(s, l.n());
                const Polynomial c = models::p_polynomial_closed(s, l.n());
                CHECK(poly::relative_residual(p - c, {&p, &c}) < 1e-10);
            }
        }
}

TEST_CASE("harmonic reduced form is proportional to p") {
    for (int m = 1; m <= 3; ++m)
        for (int n = 0; n <= 4; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            const auto s = ho(2 * m);
            CHECK(models::reduced_form_residual(s, n) < 1e-10);
            // Independent ratio test: every nonzero coefficient pair shares one ratio.
            const Polynomial p = models::p_polynomial(s, n);
            const Polynomial r = models::harmonic_reduced_form(s, n);
            REQUIRE(p.degree() == r.degree());
            const double c = p.leading() / r.leading();
            for (int k = 0; k <= p.degree(); ++k) {
                if (r[k] == 0.0) {
                    CHECK(std::abs(p[k]) <= 1e-10 * p.max_abs_coeff());
                } else {
                    CHECK(p[k] / r[k] == doctest::Approx(c).epsilon(1e-10));
                }
            }
        }
}

TEST_CASE("wavefunction examples") {
    const auto s = ho(2);
    CHECK(models::wavefunction_raw(s, models::eigenstate(s, Level::ground()), 0.0) == -0.5);
    CHECK(models::wavefunction_raw(s, models::eigenstate(s, Level::excited(0)), 0.0) == 0.0);
    const auto m = morse(2, -10.0);
    const auto g = models::eigenstate(m, Level::ground());
    CHECK(std::abs(models::wavefunction_raw(m, g, 40.0)) < 1e-80);
    CHECK(models::wavefunction_raw(m, g, 60.0) == doctest::Approx(0.0));
}

TEST_CASE("wavefunction matches the independent reconstruction") {
    for (int n = -1; n <= 3; ++n) {
        const Level l = n < 0 ? Level::ground() : Level::excited(n);
        const auto st = models::eigenstate(ho(4), l);
        for (double x : {-2.0, 0.1, 1.5})
            CHECK(models::wavefunction_raw(ho(4), st, x) == doctest::Approx(ho_phi(4, n, x)).epsilon(1e-12));
    }
    const auto s = morse(2, -14.0);
    for (const Level& l : models::bound_levels(s)) {
        const auto st = models::eigenstate(s, l);
        for (double x : {-1.0, 0.5, 3.0})
            CHECK(models::wavefunction_raw(s, st, x) ==
                  doctest::Approx(morse_phi(2, -14.0, l.is_ground() ? -1 : l.n(), x)).epsilon(1e-11));
    }
}

TEST_CASE("weight examples") {
    CHECK(models::weight_function(ho(0), 0.0).stated == 1.0);
    CHECK(models::weight_function(ho(2), 0.0).stated == 0.25);
    CHECK(models::weight_function(ho(2), 0.7).measure == models::weight_function(ho(2), 0.7).stated);
    const auto w = models::weight_function(morse(0, -10.0), 1.0);
    CHECK(w.stated == doctest::Approx(std::exp(-1.0)));
    CHECK(w.measure == doctest::Approx(std::exp(-1.0)));
    const auto w2 = models::weight_function(morse(0, -10.0), 2.0);
    CHECK(w2.measure == doctest::Approx(w2.stated / 2.0));
    CHECK_THROWS_AS(models::weight_function(morse(0, -10.0), -1.0), std::domain_error);
}

TEST_CASE("ground state has constant sign") {
    for (const auto& s : admissible_lattice()) {
        const auto g = models::eigenstate(s, Level::ground());
        const double lo = s.is_morse() ? -3.0 : -10.0;
        const double hi = s.is_morse() ? 25.0 : 10.0;
        const models::PointEvaluator ev(s);
        const double sign = std::copysign(1.0, ev.wavefunction(g, 0.5 * (lo + hi)));
        for (int i = 0; i <= 2000; ++i) {
            const double x = lo + (hi - lo) * i / 2000.0;
            REQUIRE(sign * ev.wavefunction(g, x) >= 0.0);
        }
    }
}

TEST_CASE("level labels") {
    CHECK(Level::ground().label() == "ground");
    CHECK(Level::excited(3).label() == "n=3");
    CHECK_THROWS_AS(Level::excited(-1), std::invalid_argument);
    CHECK_THROWS_AS(Level::ground().n(), std::logic_error);
}
