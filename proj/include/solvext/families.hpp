#pragma once

#include "solvext/polynomial.hpp"

namespace solvext::poly {

/// Largest degree accepted by the classical-family builders. Coefficients of
/// H_n grow like 2^n and those of L_n^{(a)} shrink like 1/n!; beyond this the
/// double-precision identities stop holding at the 1e-10 level.
inline constexpr int kMaxFamilyDegree = 40;

/// Physicists' Hermite H_n, from H_{k+1} = 2t H_k - 2k H_{k-1}.
Polynomial hermite(int n);

/// Generalized Laguerre L_n^{(a)} for any real a (negative a included), from
/// (k+1) L_{k+1} = (2k+1+a-t) L_k - (k+a) L_{k-1}.
Polynomial laguerre(int n, double a);

/// The real polynomial equal to H_{2m}(i t):
/// (-1)^m 2^{2m} m! L_m^{(-1/2)}(-t^2). Odd coefficients are exactly zero.
Polynomial hermite_imag_even(int m);

/// L_n^{(a)}(-t).
Polynomial laguerre_reflect(int n, double a);

/// Relative coefficient residual of H'' - 2t H' + 2n H.
double hermite_ode_residual(int n);

/// Relative coefficient residual of t L'' + (a+1-t) L' + n L.
double laguerre_ode_residual(int n, double a);

struct LaguerreIdentityResiduals {
    double derivative;   ///< dL_n^{(a)}/dt + L_{n-1}^{(a+1)}
    double parameter;    ///< L_n^{(a)} - L_n^{(a-1)} - L_{n-1}^{(a)}
    double three_term;   ///< t L_{n-1}^{(a+1)} - a L_{n-1}^{(a)} + n L_n^{(a-1)}

    double max() const;
};

/// Residuals of the three Laguerre identities used to rewrite the Morse
/// eigenpolynomials. Each is relative to the largest operand coefficient.
LaguerreIdentityResiduals laguerre_identity_residuals(int n, double a);

}  // namespace solvext::poly
