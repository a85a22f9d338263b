#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solvext/models.hpp"
#include "solvext/quadrature.hpp"
#include "solvext/tridiagonal.hpp"

namespace solvext::spectral {

using models::Eigenstate;
using models::Level;
using models::ModelSpec;

/// Uniform grid on [xmin, xmax] with Dirichlet walls at both ends.
class Grid {
public:
    /// Throws std::invalid_argument unless xmin < xmax (both finite) and n_points >= 3.
    Grid(double xmin, double xmax, int n_points);

    double xmin() const { return xmin_; }
    double xmax() const { return xmax_; }
    int n_points() const { return n_points_; }
    double spacing() const { return (xmax_ - xmin_) / (n_points_ - 1); }
    double x(int i) const { return xmin_ + i * spacing(); }
    int interior_count() const { return n_points_ - 2; }

    /// Same interval with the spacing halved (2n-1 points).
    Grid refined() const { return Grid(xmin_, xmax_, 2 * n_points_ - 1); }

private:
    double xmin_;
    double xmax_;
    int n_points_;
};

/// [-12, 12] x 8000 for the harmonic family; [-4, 28] x 8000 for Morse.
Grid default_grid(const ModelSpec& spec);

/// Excludes numeric Morse eigenvalues at or above α²/4 - kContinuumMargin.
inline constexpr double kContinuumMargin = 0.5;

/// diag_i = V(x_i) + 2/h², offdiag = -1/h² over the interior points.
/// Throws std::domain_error if V is not finite at a grid point.
TridiagonalOperator discretize(const ModelSpec& spec, const Grid& grid);

struct VerificationReport {
    std::string spec_family;
    int ell = 0;
    std::optional<double> alpha;
    std::vector<std::string> levels;
    std::vector<double> analytic;
    std::vector<double> numeric;
    std::vector<double> abs_error;
    double max_error = 0.0;
    double tolerance = 0.0;
    double xmin = 0.0;
    double xmax = 0.0;
    int n_points = 0;
    /// Morse: α²/4 - margin; analytic levels are compared against numeric
    /// eigenvalues below this value.
    std::optional<double> cutoff;
    std::size_t numeric_bound_count = 0;
    bool pass = false;
    /// Empty on pass; "tolerance-exceeded" or "count-mismatch" otherwise.
    std::string reason;
};

/// Pairs closed-form bound energies with the ascending eigenvalues of the
/// discretized Hamiltonian. nmax selects harmonic levels (required there).
VerificationReport compare_spectrum(const ModelSpec& spec, const Grid& grid,
                                    std::optional<int> nmax, double tol);

/// Per-level absolute eigenvalue errors on grid; throws std::runtime_error on
/// a bound-state count mismatch.
std::vector<double> spectrum_errors(const ModelSpec& spec, const Grid& grid,
                                    std::optional<int> nmax);

enum class GramSpace { XSpace, EtaStated, EtaMeasure };

std::string_view to_string(GramSpace s);

using Matrix = std::vector<std::vector<double>>;

/// Pairwise inner products of the unnormalized eigenfunctions. XSpace
/// integrates φ_i φ_j dx; the η variants integrate w(η) p_i p_j dη with the
/// stated or measure-derived weight (identical for the harmonic family).
Matrix gram_matrix(const ModelSpec& spec, const std::vector<Level>& levels, GramSpace space,
                   double tol = 1e-12);

/// max_{i != j} |G_ij| / sqrt(G_ii G_jj)
double max_normalized_offdiag(const Matrix& g);

/// Largest |A_ij - B_ij| / sqrt(A_ii A_jj).
double max_normalized_difference(const Matrix& a, const Matrix& b);

/// max_i |-φ''_fd + (V - E) φ|(x_i) / max_i |φ(x_i)| over interior points.
double schrodinger_residual(const ModelSpec& spec, const Eigenstate& state, const Grid& grid);

/// N such that ∫ (N φ)² dx = 1, with φ from wavefunction_raw; the integral is
/// computed to relative accuracy tol.
double normalization(const ModelSpec& spec, const Eigenstate& state, double tol = 1e-12);

/// Envelope of |φ_i φ_j| in x for the tails; public for tests.
QuadratureOptions eigenfunction_tails(const ModelSpec& spec, const Eigenstate& a,
                                      const Eigenstate& b, double scale = 1.0);

}  // namespace solvext::spectral
