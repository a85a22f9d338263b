#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "solvext/polynomial.hpp"

namespace solvext::models {

using poly::Polynomial;

enum class Family { HarmonicRational, MorseRational };

std::string_view to_string(Family f);

/// Largest ℓ+n for which eigenpolynomials are built in double precision.
inline constexpr int kMaxLevelDegree = 30;

enum class RejectReason { OddEll, KlhViolated, XiZeroFound };

/// Machine-readable tag: "odd-ell", "klh-violated", "xi-zero-found".
std::string_view to_string(RejectReason r);

/// Outcome of the admissibility gate. When the zero scan located a sign
/// change of ξ on the physical domain, xi_zero holds the bracketed root.
struct Admissibility {
    bool admissible = false;
    std::optional<RejectReason> reason;
    std::string detail;
    std::optional<double> xi_zero;
    /// min |ξ| over the scan grid divided by the largest ξ coefficient.
    double min_abs_xi_ratio = 0.0;
};

class ModelSpec;

class InadmissibleSpec : public std::invalid_argument {
public:
    explicit InadmissibleSpec(Admissibility a);
    const Admissibility& admissibility() const { return adm_; }
    RejectReason reason() const { return *adm_.reason; }

private:
    Admissibility adm_;
};

/// A validated model: family, ℓ and (Morse only) α. Only obtainable through
/// validate_spec, so every instance has a nodeless deforming polynomial.
class ModelSpec {
public:
    Family family() const { return family_; }
    int ell() const { return ell_; }
    /// Morse parameter α; throws std::logic_error for the harmonic family.
    double alpha() const;
    std::optional<double> alpha_opt() const { return alpha_; }
    bool is_morse() const { return family_ == Family::MorseRational; }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

private:
    friend ModelSpec validate_spec(Family, int, std::optional<double>);
    ModelSpec(Family f, int ell, std::optional<double> alpha)
        : family_(f), ell_(ell), alpha_(alpha) {}

    Family family_;
    int ell_;
    std::optional<double> alpha_;
};

/// Runs the parameter conditions (even ℓ for the harmonic family;
/// Kienast-Lawton-Hahn bands for Morse) and a sign-change scan of ξ_ℓ over the
/// physical η-domain. Malformed input (negative ℓ, α given for the harmonic
/// family or missing for Morse, non-finite α) throws std::invalid_argument.
Admissibility check_admissibility(Family family, int ell, std::optional<double> alpha);

/// check_admissibility, then construct; throws InadmissibleSpec on rejection.
ModelSpec validate_spec(Family family, int ell, std::optional<double> alpha = std::nullopt);

/// ξ_ℓ and the η-dependent Ẽ of the deforming-function equation
/// c2 ξ'' + c1 ξ' + Ẽ ξ = 0.
struct DeformingFunction {
    Polynomial xi;
    Polynomial xi_prime;
    Polynomial etilde;
    /// Ẽ = etilde_const (harmonic) or etilde_const * η (Morse).
    double etilde_const = 0.0;
};

DeformingFunction deforming_function(const ModelSpec& spec);

/// The family's sinusoidal-coordinate data as polynomials in η:
/// c2 = η̇², Q = Ẇ₀ η̇, c1 = ½ d(η̇²)/dη - 2Q (upper signs).
struct ConstructionCoefficients {
    Polynomial c2;
    Polynomial c1;
    Polynomial q;
};

ConstructionCoefficients construction_coefficients(const ModelSpec& spec);

double eta_of_x(const ModelSpec& spec, double x);
double x_of_eta(const ModelSpec& spec, double eta);
double eta_dot(const ModelSpec& spec, double x);
double eta_ddot(const ModelSpec& spec, double x);

/// Relative coefficient residual of c2 ξ'' + c1 ξ' + Ẽ ξ.
double xi_ode_residual(const ModelSpec& spec);

double prepotential_w0(const ModelSpec& spec, double x);
double prepotential_w0_dot(const ModelSpec& spec, double x);
double prepotential_w0_ddot(const ModelSpec& spec, double x);

/// V(x) = Ẇ₀² + Ẅ₀ + (ξ'/ξ)[2η̇²(ξ'/ξ) - (2Ẇ₀η̇ + η̈) + c1] + Ẽ.
double potential(const ModelSpec& spec, double x);

/// V(x→+∞) for Morse (α²/4); throws std::logic_error for the harmonic family.
double continuum_threshold(const ModelSpec& spec);

class Level {
public:
    enum class Kind { Ground, Excited };

    static constexpr Level ground() { return Level(Kind::Ground, 0); }
    static Level excited(int n);

    Kind kind() const { return kind_; }
    bool is_ground() const { return kind_ == Kind::Ground; }
    /// Excited index; throws std::logic_error for the ground level.
    int n() const;
    /// "ground" or "n=<index>".
    std::string label() const;

    friend bool operator==(const Level&, const Level&) = default;

private:
    constexpr Level(Kind k, int n) : kind_(k), n_(n) {}
    Kind kind_;
    int n_;
};

/// Strict upper bound on the Morse excited index: n < -α/2 - ℓ - 1.
double morse_excited_bound(const ModelSpec& spec);

/// Harmonic: ground plus n = 0..nmax (nmax required). Morse: ground plus all
/// n below morse_excited_bound, optionally capped at nmax. Ascending energy.
std::vector<Level> bound_levels(const ModelSpec& spec, std::optional<int> nmax = std::nullopt);

bool is_bound(const ModelSpec& spec, const Level& level);

/// Closed-form energy; throws std::out_of_range for a Morse level outside
/// the bound set.
double energy(const ModelSpec& spec, const Level& level);

/// Harmonic: p_{ℓ,n} = H_n ξ' + H_{n+1} ξ. Morse: P_{ℓ,n} = η L_n^{(β)} ξ'
/// - (ℓ L_n^{(β)} + (n+1) L_{n+1}^{(β)}) ξ with β = -α - 2(n+ℓ+1).
Polynomial p_polynomial(const ModelSpec& spec, int n);

/// Morse only: -[(α+ℓ) L_{ℓ-1}^{(α)}(-η) L_n^{(β)}(η) + (n+1) L_ℓ^{(α)}(-η) L_{n+1}^{(β)}(η)],
/// with L_{-1} ≡ 0.
Polynomial p_polynomial_closed(const ModelSpec& spec, int n);

/// Morse only: β = -α - 2(n+ℓ+1).
double morse_beta(const ModelSpec& spec, int n);
/// Morse only: γ = -(n+ℓ+2), the exponent in 𝒱 = η^γ U.
double morse_gamma(const ModelSpec& spec, int n);

struct Eigenstate {
    Level level = Level::ground();
    double energy = 0.0;
    /// p_{ℓ,n} (harmonic) or P_{ℓ,n} (Morse); 1 for the ground state.
    Polynomial p = Polynomial::constant(1.0);
    /// 𝒱 = η^gamma U exponent (Morse excited); 0 otherwise.
    double gamma = 0.0;
    /// Laguerre parameter of U (Morse excited); 0 otherwise.
    double beta = 0.0;
    /// Power of η multiplying p in the wavefunction: gamma + 1 for Morse
    /// excited states, 0 otherwise.
    double prefactor_power = 0.0;
};

Eigenstate eigenstate(const ModelSpec& spec, const Level& level);

struct ConstructionResiduals {
    double vcal_equation;  ///< 𝒱 equation (harmonic) or the η^γ U reduction (Morse)
    double assembly;       ///< p = ξ'F + ξG against p_polynomial
};

ConstructionResiduals construction_residuals(const ModelSpec& spec, int n);

/// Relative residual of the general 𝒱 equation
/// c2 𝒱'' + (2c2' - c1) 𝒱' + [c2'' - c1' + Ẽ + E] 𝒱 = 0
/// for 𝒱 = η^gamma U, after clearing the factor η^{gamma-2}.
double vcal_general_residual(const ModelSpec& spec, double gamma, const Polynomial& u,
                             double energy_value);

/// Harmonic only, ℓ = 2m ≥ 2: ½ L_m^{(-1/2)}(-η²) H_{n+1} + η L_{m-1}^{(1/2)}(-η²) H_n.
Polynomial harmonic_reduced_form(const ModelSpec& spec, int n);

/// Harmonic only: relative residual of p_{ℓ,n} - c R with R the reduced form
/// and c the ratio of leading coefficients. Small iff p is proportional to R.
double reduced_form_residual(const ModelSpec& spec, int n);

/// Unnormalized wavefunction. Harmonic: e^{-x²/2} p(x)/ξ(x). Morse:
/// e^{-η/2} η^{-α/2} η^{prefactor_power} P(η)/ξ(η) with η = e^{-x}.
double wavefunction_raw(const ModelSpec& spec, const Eigenstate& state, double x);

struct WeightPair {
    /// e^{-η²}/ξ² (harmonic) or e^{-η} η^{-α}/ξ² (Morse, as stated in closed form)
    double stated;
    /// 𝒲²/|η̇|: identical to stated for harmonic; e^{-η} η^{-α-1}/ξ² for Morse
    double measure;
};

/// Throws std::domain_error for η outside the physical domain.
WeightPair weight_function(const ModelSpec& spec, double eta);

/// Caches ξ, ξ' and the construction coefficients of one spec for repeated
/// pointwise evaluation. The free functions above delegate to it.
class PointEvaluator {
public:
    explicit PointEvaluator(const ModelSpec& spec);

    const ModelSpec& spec() const { return spec_; }
    const DeformingFunction& deforming() const { return deform_; }

    double potential(double x) const;
    double wavefunction(const Eigenstate& state, double x) const;
    WeightPair weight(double eta) const;

private:
    ModelSpec spec_;
    DeformingFunction deform_;
    ConstructionCoefficients coeffs_;
    Polynomial q_prime_;
};

/// Lower bound used by tail estimates: min |ξ| over the physical domain
/// (exact ξ(0) for harmonic; scanned for Morse).
double xi_min_abs(const ModelSpec& spec);

}  // namespace solvext::models
