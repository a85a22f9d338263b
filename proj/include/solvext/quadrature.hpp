#pragma once

#include <functional>
#include <stdexcept>

namespace solvext::spectral {

using RealFunction = std::function<double(double)>;

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Upper bound on |f| in an infinite tail. Must be unimodal (rise then decay)
/// along the direction of the tail; the integral is truncated where the bound
/// is decreasing and has dropped below tol * 1e-2.
struct Envelope {
    RealFunction bound;
};

/// e^{-rate t²} |t|^power
Envelope gaussian_envelope(double rate, double power, double scale = 1.0);
/// e^{-rate |t|} |t|^power
Envelope exponential_envelope(double rate, double power, double scale = 1.0);

struct QuadratureOptions {
    Envelope lower_tail;  ///< required when a = -inf
    Envelope upper_tail;  ///< required when b = +inf
    int max_depth = 40;
    int panels = 64;
};

/// Finite endpoint that replaces an infinite one. direction is +1 for the
/// upper tail, -1 for the lower tail; the scan starts at anchor.
double truncation_point(const Envelope& env, double anchor, int direction, double tol);

/// Adaptive Simpson over [a, b] split into panels, with absolute error target
/// tol. Infinite endpoints are truncated through the matching envelope.
/// Throws QuadratureError when a panel fails to converge within max_depth.
double quadrature(const RealFunction& f, double a, double b, double tol,
                  const QuadratureOptions& opts = {});

}  // namespace solvext::spectral
