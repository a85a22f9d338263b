#include "solvext/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace solvext::poly {
namespace {

void check_degree(int n, const char* who) {
    if (n < 0) throw std::invalid_argument(std::string(who) + ": negative degree");
    if (n > kMaxFamilyDegree)
        throw std::out_of_range(std::string(who) + ": degree " + std::to_string(n) +
                                " exceeds cap " + std::to_string(kMaxFamilyDegree));
}

const Polynomial kT{0.0, 1.0};

}  // namespace

Polynomial hermite(int n) {
    check_degree(n, "hermite");
    Polynomial prev = Polynomial::constant(1.0);
    if (n == 0) return prev;
    Polynomial cur{0.0, 2.0};
    for (int k = 1; k < n; ++k) {
        Polynomial next = 2.0 * (kT * cur) - (2.0 * k) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Polynomial laguerre(int n, double a) {
    check_degree(n, "laguerre");
    if (!std::isfinite(a)) throw std::domain_error("laguerre: non-finite parameter");
    // Explicit coefficients c_k = (-1)^k/k! * prod_{j=k+1..n}(a+j) / (n-k)!,
    // filled downward from c_n = (-1)^n/n!. For negative integer a the
    // recurrence cancels its low coefficients to round-off instead of zero.
    std::vector<double> c(n + 1);
    c[n] = 1.0;
    for (int k = 1; k <= n; ++k) c[n] /= -double(k);
    for (int k = n - 1; k >= 0; --k) c[k] = c[k + 1] * -double(k + 1) * (a + k + 1) / double(n - k);
    return Polynomial(std::move(c));
}

Polynomial hermite_imag_even(int m) {
    if (m < 1) throw std::invalid_argument("hermite_imag_even: m must be >= 1");
    check_degree(2 * m, "hermite_imag_even");
    double scale = (m % 2 == 0) ? 1.0 : -1.0;
    for (int k = 1; k <= m; ++k) scale *= 4.0 * k;
    const Polynomial minus_t2{0.0, 0.0, -1.0};
    return scale * compose(laguerre(m, -0.5), minus_t2);
}

Polynomial laguerre_reflect(int n, double a) { return reflect(laguerre(n, a)); }

double hermite_ode_residual(int n) {
    const Polynomial h = hermite(n);
    const Polynomial d1 = derivative(h);
    const Polynomial r = derivative(d1) - 2.0 * (kT * d1) + (2.0 * n) * h;
    return relative_residual(r, {&h});
}

double laguerre_ode_residual(int n, double a) {
    const Polynomial l = laguerre(n, a);
    const Polynomial d1 = derivative(l);
    const Polynomial r = kT * derivative(d1) + Polynomial{a + 1.0, -1.0} * d1 + double(n) * l;
    return relative_residual(r, {&l});
}

double LaguerreIdentityResiduals::max() const {
    return std::max({derivative, parameter, three_term});
}

LaguerreIdentityResiduals laguerre_identity_residuals(int n, double a) {
    if (n < 1) throw std::invalid_argument("laguerre_identity_residuals: n must be >= 1");
    const Polynomial ln_a = laguerre(n, a);
    const Polynomial ln_am1 = laguerre(n, a - 1.0);
    const Polynomial lm1_a = laguerre(n - 1, a);
    const Polynomial lm1_ap1 = laguerre(n - 1, a + 1.0);

    LaguerreIdentityResiduals out{};
    out.derivative = relative_residual(derivative(ln_a) + lm1_ap1, {&ln_a, &lm1_ap1});
    out.parameter = relative_residual(ln_a - ln_am1 - lm1_a, {&ln_a, &ln_am1, &lm1_a});
    const Polynomial t_lm1 = kT * lm1_ap1;
    out.three_term = relative_residual(t_lm1 - a * lm1_a + double(n) * ln_am1,
                                       {&t_lm1, &lm1_a, &ln_am1});
    return out;
}

}  // namespace solvext::poly
