#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "chebproj/bspline_basis.hpp"
#include "chebproj/linalg.hpp"

namespace chebproj {

/// Lebesgue-function survey of the projector over the pinned evaluation
/// grid: all breakpoints (both one-sided limits at interior ones) plus
/// Chebyshev points inside every interval.
struct NormReport {
    std::vector<double> tau;      // evaluation points, duplicates mark one-sided pairs
    std::vector<double> lambda;   // Lebesgue function at each tau
    double norm = 0.0;            // max over the grid
    double at_a = 0.0;
    double at_b = 0.0;
    double decay_c = 0.0;         // fit |a_ij| <= C q^|i-j| / (alpha_i + alpha_j)
    double decay_q = 0.0;
    bool decay_fit_ok = false;
};

/// L2 orthogonal projector onto the spline space of a basis. The banded Gram
/// matrix is assembled from the local representations, factorized once, and
/// its full inverse precomputed for kernel and decay work. Immutable after
/// construction; evaluation methods may run concurrently. The basis must
/// outlive the projector.
class Projector {
  public:
    explicit Projector(const BSplineBasis& basis);

    const BSplineBasis& basis() const { return basis_; }
    int size() const { return basis_.count(); }

    const BandedSPD& gram() const { return gram_; }
    double gram_entry(int i, int j) const;       // <M_i, M_j>
    double n_gram_entry(int i, int j) const;     // <N_i, N_j>
    double inverse_entry(int i, int j) const;    // entries of the inverse M-Gram
    double n_inverse_entry(int i, int j) const;  // entries of the inverse N-Gram

    /// Moment vector <f, M_i>, the right-hand side of the normal equations.
    std::vector<double> moments(const RealFn& f) const;
    /// Coefficients of the projection for a precomputed moment vector.
    std::vector<double> solve_moments(const std::vector<double>& mom) const;
    /// M-coefficients of P f.
    std::vector<double> project(const RealFn& f) const;
    /// Evaluate a spline given by M-coefficients.
    double eval(const std::vector<double>& coef, double x) const;

    /// Reproducing kernel K(tau, t) of the projector.
    double kernel(double tau, double t) const;
    /// Lebesgue function: integral of |K(tau, .)| by sign-adaptive panels.
    double lebesgue(double tau) const;
    /// Full grid survey; cheb_per_interval = 0 picks the default 2k+3.
    NormReport report(int cheb_per_interval = 0) const;
    /// Geometric-decay fit on the inverse N-Gram; ok = false when too few
    /// entries rise above the noise floor to support a fit.
    std::pair<double, double> decay_fit(bool& ok) const;

  private:
    std::vector<double> kernel_row(double tau, int ell) const;
    double lebesgue_on(double tau, int ell) const;
    double m_on_interval(int i, int ell, double x) const;

    const BSplineBasis& basis_;
    std::vector<std::vector<double>> umom_;  // per-interval u-product integrals, k*k
    BandedSPD gram_;
    std::unique_ptr<BandedLDLT> fact_;
    DenseMatrix inv_;
    // Lebesgue-scan caches: local representations of the k active splines
    // per interval, monomial values on the fixed sign-scan grid, per-interval
    // monomial magnitudes for tail pruning, antiderivatives at breakpoints.
    int scan_ = 0;
    std::vector<double> reps_;    // (interval, active spline, monomial)
    std::vector<double> scanu_;   // (interval, scan node, monomial)
    std::vector<double> uscale_;  // (interval, monomial)
    std::vector<double> uprim_;   // (breakpoint, monomial)
};

}  // namespace chebproj
