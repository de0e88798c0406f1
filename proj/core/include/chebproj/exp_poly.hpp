#ifndef CHEBPROJ_EXP_POLY_HPP
#define CHEBPROJ_EXP_POLY_HPP

#include <vector>

#include "chebproj/jet.hpp"

namespace chebproj {

/// Closed-form function on [a, b] of the shape
///     f(x) = sum_j P_j(eta) * exp(mu_j * eta),   eta = (x - a) / (b - a),
/// closed under addition, multiplication, differentiation and integration
/// from a.  This represents iterated weight integrals of the constant,
/// exponential and polynomial weight presets exactly; all derivative jets
/// are symbolic.
class ExpPoly {
public:
    struct Term {
        double mu = 0.0;                // exponent per unit eta
        std::vector<double> coef;       // polynomial in eta, coef[j] * eta^j
    };

    ExpPoly() = default;
    ExpPoly(double a, double b);

    static ExpPoly constant(double a, double b, double value);
    /// exp(rate * x) on [a, b].
    static ExpPoly exponential(double a, double b, double rate);
    /// Polynomial given by coefficients in the raw variable x.
    static ExpPoly from_poly_in_x(double a, double b, const std::vector<double>& coef_x);

    double a() const { return a_; }
    double b() const { return b_; }
    bool zero() const { return terms_.empty(); }

    double eval(double x) const;
    double eval(double x, int deriv) const;
    Jet eval_jet(double x, int orders) const;

    ExpPoly derivative() const;
    /// F(x) = integral_a^x f(s) ds.
    ExpPoly integral_from_a() const;

    ExpPoly operator+(const ExpPoly& o) const;
    ExpPoly operator-(const ExpPoly& o) const;
    ExpPoly operator*(const ExpPoly& o) const;
    ExpPoly scaled(double c) const;

    const std::vector<Term>& terms() const { return terms_; }
    int max_degree() const;

private:
    void add_term(double mu, const std::vector<double>& coef);
    void normalize();

    double a_ = 0.0, b_ = 1.0;
    std::vector<Term> terms_;
};

}  // namespace chebproj

#endif
