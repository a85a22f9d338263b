#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace solvext::poly {

/// Dense real polynomial in one variable. Index k of coeffs() holds the
/// coefficient of t^k. Trailing exact zeros are trimmed on construction, so
/// the leading coefficient is nonzero unless the polynomial is zero. The zero
/// polynomial has degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);
    Polynomial(std::initializer_list<double> coeffs);

    static Polynomial constant(double c);
    /// c * t^power
    static Polynomial monomial(int power, double c = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const double> coeffs() const { return coeffs_; }

    /// Coefficient of t^k; zero outside [0, degree].
    double operator[](int k) const;
    double leading() const;
    double max_abs_coeff() const;
    /// Sum of |c_k|; bounds |p(t)| by abs_coeff_sum() * (1+|t|)^degree.
    double abs_coeff_sum() const;

    /// Horner evaluation. Throws std::domain_error for non-finite t.
    double operator()(double t) const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(double s);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator-(Polynomial p) { return p *= -1.0; }
    friend Polynomial operator*(Polynomial p, double s) { return p *= s; }
    friend Polynomial operator*(double s, Polynomial p) { return p *= s; }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();

    std::vector<double> coeffs_;
};

double eval(const Polynomial& p, double t);
Polynomial derivative(const Polynomial& p);
Polynomial multiply(const Polynomial& p, const Polynomial& q);

/// p(q(t)), by Horner's scheme over polynomials.
Polynomial compose(const Polynomial& p, const Polynomial& q);

/// p(-t): coefficient k picks up (-1)^k.
Polynomial reflect(const Polynomial& p);

/// t^k * p(t)
Polynomial shift_up(const Polynomial& p, int k);

/// Largest max_abs_coeff() among the operands.
double coeff_scale(std::initializer_list<const Polynomial*> operands);

/// Relative coefficient residual: max |coeff of residual| divided by the
/// coefficient scale of the operands that produced it. Returns the absolute
/// value when the scale is zero.
double relative_residual(const Polynomial& residual, double scale);
double relative_residual(const Polynomial& residual,
                         std::initializer_list<const Polynomial*> operands);

}  // namespace solvext::poly
