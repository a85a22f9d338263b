#include "solvext/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace solvext::poly {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial(std::vector<double>{c}); }

Polynomial Polynomial::monomial(int power, double c) {
    if (power < 0) throw std::invalid_argument("monomial: negative power");
    std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator[](int k) const {
    if (k < 0 || k > degree()) return 0.0;
    return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::leading() const { return is_zero() ? 0.0 : coeffs_.back(); }

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double Polynomial::abs_coeff_sum() const {
    double s = 0.0;
    for (double c : coeffs_) s += std::abs(c);
    return s;
}

double Polynomial::operator()(double t) const {
    if (!std::isfinite(t))
        throw std::domain_error("polynomial evaluated at non-finite argument");
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<double> out(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Polynomial(std::move(out));
}

double eval(const Polynomial& p, double t) { return p(t); }

Polynomial derivative(const Polynomial& p) {
    if (p.degree() < 1) return {};
    std::vector<double> out(static_cast<std::size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k) out[static_cast<std::size_t>(k - 1)] = k * p[k];
    return Polynomial(std::move(out));
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial compose(const Polynomial& p, const Polynomial& q) {
    Polynomial acc;
    for (int k = p.degree(); k >= 0; --k) acc = acc * q + Polynomial::constant(p[k]);
    return acc;
}

Polynomial reflect(const Polynomial& p) {
    std::vector<double> out(p.coeffs().begin(), p.coeffs().end());
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
    return Polynomial(std::move(out));
}

Polynomial shift_up(const Polynomial& p, int k) {
    if (k < 0) throw std::invalid_argument("shift_up: negative shift");
    if (p.is_zero()) return {};
    std::vector<double> out(static_cast<std::size_t>(k), 0.0);
    out.insert(out.end(), p.coeffs().begin(), p.coeffs().end());
    return Polynomial(std::move(out));
}

double coeff_scale(std::initializer_list<const Polynomial*> operands) {
    double s = 0.0;
    for (const Polynomial* p : operands) s = std::max(s, p->max_abs_coeff());
    return s;
}

double relative_residual(const Polynomial& residual, double scale) {
    const double r = residual.max_abs_coeff();
    return scale > 0.0 ? r / scale : r;
}

double relative_residual(const Polynomial& residual,
                         std::initializer_list<const Polynomial*> operands) {
    return relative_residual(residual, coeff_scale(operands));
}

}  // namespace solvext::poly
