#pragma once

#include <cstddef>
#include <vector>

namespace solvext::spectral {

/// Symmetric tridiagonal matrix with constant off-diagonal, as produced by the
/// three-point stencil on a uniform grid.
struct TridiagonalOperator {
    std::vector<double> diag;
    double offdiag = 0.0;

    std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below lambda (Sturm sequence count).
std::size_t count_below(const TridiagonalOperator& t, double lambda);

/// The k smallest eigenvalues, ascending, each bisected until its bracket
/// cannot shrink further in double precision. Throws std::out_of_range unless
/// 1 <= k <= size.
std::vector<double> eigen_lowest(const TridiagonalOperator& t, std::size_t k);

/// Unit-norm eigenvector for a converged eigenvalue, by inverse iteration.
std::vector<double> eigenvector(const TridiagonalOperator& t, double lambda);

}  // namespace solvext::spectral
