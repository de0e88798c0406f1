#pragma once

#include <memory>
#include <vector>

#include "chebproj/ect_system.hpp"
#include "chebproj/partition.hpp"
#include "chebproj/smooth_fn.hpp"
#include "chebproj/weight_system.hpp"

namespace chebproj {

/// Cutoff used inside the dual functionals. The polynomial smoothstep of
/// degree 2k+1 is the default: it has exactly the k continuous derivatives
/// the dual chain needs and is exact to differentiate. The infinitely smooth
/// variant exists for experiments.
enum class CutoffKind { PolynomialSmoothstep, ExpInfinite };

/// B-spline basis M_0..M_n of the Chebyshevian spline space over a
/// partition: M_i is the scaled divided difference of the truncated Green
/// kernel over knots t_i..t_{i+k}. Each M_i is stored per breakpoint
/// interval as coefficients in the monomial basis u_1..u_k, so evaluation,
/// differentiation and Gram assembly reduce to small dot products, and M_i
/// vanishes exactly outside its support.
///
/// Immutable after construction; evaluation is safe to call concurrently.
class BSplineBasis {
  public:
    BSplineBasis(Partition partition, WeightSystem weights,
                 CutoffKind cutoff = CutoffKind::PolynomialSmoothstep);
    ~BSplineBasis();
    BSplineBasis(BSplineBasis&&) noexcept;
    BSplineBasis(const BSplineBasis&) = delete;
    BSplineBasis& operator=(const BSplineBasis&) = delete;

    const Partition& partition() const { return partition_; }
    const WeightSystem& weight_system() const { return weights_; }
    const EctSystem& system() const { return *sys_; }
    const DualEctSystem& dual_system() const { return *dual_; }

    int order() const { return partition_.order(); }
    int count() const { return partition_.num_splines(); }

    /// L1-normalized B-spline M_i and its renormalized companion N_i.
    double m_spline(int i, double x) const;
    double n_spline(int i, double x) const;
    /// Derivative jet of M_i taken inside the breakpoint interval of x
    /// (one-sided from the right at interior knots, from the left at b).
    Jet m_jet(int i, double x, int orders) const;

    double alpha(int i) const { return alphas_[std::size_t(i)]; }
    const std::vector<double>& alphas() const { return alphas_; }

    /// First and last breakpoint-interval indices of the support of M_i.
    int support_begin(int i) const;
    int support_end(int i) const;  // inclusive

    /// Coefficients of M_i in u_1..u_k on breakpoint interval ell
    /// (zero vector outside the support).
    std::vector<double> local_rep(int i, int ell) const;

    /// Combined u-coefficients of the spline sum_i coef_i M_i on interval ell.
    std::vector<double> piecewise_u_coeffs(const std::vector<double>& coef, int ell) const;

    /// The divided-difference functional [t_i..t_{i+k}]_{u*} applied to a
    /// smooth function of the knot variable (Peano-representation left side).
    double knot_functional(int i, const SmoothFn& f) const;

    /// phi(i, r): the function in span{u*_1..u*_r} with zeros t_i..t_{i+r-2}
    /// and leading coefficient one, r = 1..k+1, evaluated at s.
    double phi(int i, int r, double s) const;
    Jet phi_jet(int i, int r, double s, int orders) const;

    /// Derivative ladder. h_factor(i) is the positive factor in
    /// D_1 M_i = (lower-order M_i - lower-order M_{i+1}) / h_factor(i);
    /// iterated_derivative applies D_ell ... D_1 to M_j via the coefficient
    /// recursion over lower-order bases.
    double h_factor(int i) const;
    double derivative_m(int i, double x) const;
    double iterated_derivative(int ell, int j, double x) const;
    /// Coefficients beta of D_ell...D_1 M_j in the order-(k-ell) basis,
    /// indexed by full knot position m = j..j+ell.
    std::vector<double> derivative_coeffs(int ell, int j) const;

    /// Basis of order `level` (1..k) over the suffix weight vector, used by
    /// the derivative ladder. level = k returns *this.
    const BSplineBasis& ladder(int level) const;

    /// Dual functionals: lambda_i f = (1/alpha_i) integral of f times the
    /// dual kernel; dual_kernel exposes L*_k psi_i for tests.
    double dual_apply(int i, const RealFn& f) const;
    double dual_kernel(int i, double x) const;
    /// Largest breakpoint interval inside the support (leftmost such).
    std::pair<double, double> dual_interval(int i) const;

    /// Interpolation at points y_i in (t_i, t_{i+k}): coefficients c with
    /// sum c_i M_i matching the given values.
    std::vector<double> interpolate(const std::vector<double>& points,
                                    const std::vector<double>& values) const;

  private:
    struct PerSpline;

    void build_local_reps();
    void build_alphas();
    const EctSystem& rebased_dual(int bp_index) const;
    std::vector<double> phi_coeffs(int i, int r) const;  // in the rebased basis at t_i
    int bp_index_of_knot(int knot_index) const;
    double h_factor_generic(int i) const;
    Jet dual_kernel_jet(int i, double x, int orders) const;

    Partition partition_;
    WeightSystem weights_;
    CutoffKind cutoff_;
    std::unique_ptr<EctSystem> sys_;
    std::unique_ptr<DualEctSystem> dual_;
    // rebased dual monomial systems, one per breakpoint
    std::vector<std::unique_ptr<EctSystem>> rebased_;
    std::vector<PerSpline> splines_;
    std::vector<double> alphas_;
    // coefficients of phi(i, k) in the rebased basis, i = 1..n+1
    std::vector<std::vector<double>> phi_k_cache_;
    std::unique_ptr<BSplineBasis> lower_;  // order k-1 ladder step
};

}  // namespace chebproj
