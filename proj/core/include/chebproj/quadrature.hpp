#ifndef CHEBPROJ_QUADRATURE_HPP
#define CHEBPROJ_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

namespace chebproj {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending.  Rules are computed once
/// per order (Newton iteration on the Legendre polynomial) and cached.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_rule(int order);

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order);

/// Composite rule over consecutive panels given by breakpoints.
double panel_integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                       int order);

/// Bracketed root refinement (Illinois variant of false position).
/// Requires f(lo) and f(hi) of opposite sign.
double refine_root(const std::function<double(double)>& f, double lo, double hi, double xtol);

/// Integral of |f| over [a, b] for piecewise-smooth f with finitely many sign
/// changes: sign changes are bracketed on a uniform scan of `scan` points,
/// refined to `xtol`, and each one-signed piece is integrated by Gauss rule.
double integrate_abs(const std::function<double(double)>& f, double a, double b, int scan,
                     int order, double xtol);

/// Sign-change locations used by integrate_abs (exposed for reuse).
std::vector<double> locate_sign_changes(const std::function<double(double)>& f, double a, double b,
                                        int scan, double xtol);

}  // namespace chebproj

#endif
