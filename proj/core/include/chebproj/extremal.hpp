#pragma once

#include <memory>
#include <vector>

#include "chebproj/bspline_basis.hpp"
#include "chebproj/partition.hpp"
#include "chebproj/weight_system.hpp"

namespace chebproj {

/// Monomial system of a weight vector on one short interval, represented by
/// Taylor series at the interval's left endpoint. Exponential closed forms
/// evaluate a high-order monomial near its base as a cancelling sum of
/// order-one terms, which costs the leading digits exactly where the
/// piecewise construction needs them; the series, built recursively from
/// weight jets at the base, is cancellation-free there. Construction checks
/// convergence over the given radius and throws when the interval is too
/// wide for the truncation order.
class LocalBasis {
  public:
    LocalBasis(const WeightSystem& weights, double base, double radius);

    double base() const { return base_; }
    int size() const { return int(coef_.size()); }

    double u(int r, double x) const;                 // r = 1..size()
    Jet u_jet(int r, double x, int orders) const;

  private:
    double base_;
    std::vector<std::vector<double>> coef_;  // Taylor coefficients per monomial
};

/// The boundary weight vector and spline space of the extremizer
/// construction. For a primary system w_1..w_k the extremizer lives in the
/// order 2k-1 spline space of the derived vector
///
///     v = (1, w_k, ..., w_2, w_2, ..., w_k)
///
/// over the same breakpoints. The middle entry w_2 appears twice. Requires
/// k >= 2; the order-one projector needs no extremizer (its norm is one).
class SigmaSystem {
  public:
    SigmaSystem(const WeightSystem& weights, const Partition& partition);
    ~SigmaSystem();
    SigmaSystem(SigmaSystem&&) noexcept;
    SigmaSystem(const SigmaSystem&) = delete;
    SigmaSystem& operator=(const SigmaSystem&) = delete;

    int primary_order() const { return k_; }
    int order() const { return 2 * k_ - 1; }

    const WeightSystem& primary_weights() const { return primary_; }
    const WeightSystem& weights() const;
    const Partition& partition() const;
    const BSplineBasis& basis() const { return *basis_; }

    /// Monomials of the derived vector rebased at the left endpoint of
    /// breakpoint interval ell. High-order global representations lose their
    /// accuracy to cancellation on fine meshes; the per-interval rebased
    /// series keep coefficient sizes commensurate with the represented
    /// values, so the extremizer is built and evaluated through these.
    const LocalBasis& rebased(int ell) const;

    /// Largest scaled residual of the defining operator chain
    ///     f -> D (f / v_j), j = 1..2k-1 in turn,
    /// applied to each generalized monomial of the derived vector, sampled
    /// across the interval. The chain is composed here directly from the
    /// primary weights, so a wrongly assembled vector would not annihilate
    /// the monomials and the residual would be large.
    double kernel_residual() const;

  private:
    int k_;
    WeightSystem primary_;
    std::unique_ptr<BSplineBasis> basis_;
    std::vector<LocalBasis> rebased_;
};

/// The extremizer sigma: the spline of order 2k-1 in the derived space that
/// vanishes at every interior breakpoint, has a zero of chain order k-1 at
/// a and at b, and is normalized by S_{k-1} sigma(a) = 1, where S_i denotes
/// the i-step operator chain of the derived vector. Its middle chain value
/// yields the test function phi whose inner products against the B-splines
/// alternate in sign, and the quadratic form H built from the chain values
/// is constant; both facts drive the mesh-independent projector bound.
class SigmaSpline {
  public:
    /// The system must outlive the spline.
    explicit SigmaSpline(const SigmaSystem& sys);

    const SigmaSystem& system() const { return sys_; }
    const std::vector<double>& coefficients() const { return coef_; }

    double sigma(double x) const;
    /// S_i sigma for i = 0..2k-2 (level 0 is sigma itself).
    double chain_sigma(int i, double x) const;

    /// phi = (w_1 / w_2) S_{k-1} sigma.
    double phi(double x) const;

    /// The conserved quadratic form of the chain values,
    ///     H = (S_{k-1}s / w_2)^2
    ///       + 2 sum_q (-1)^q (S_{k-1-q}s / w_{q+2}) (S_{k-1+q}s / w_{q+1}),
    /// with w_{k+1} read as 1. Constant in exact arithmetic.
    double conserved(double x) const;
    /// The constant value 1 / w_2(a)^2.
    double conserved_reference() const;

    /// Inner products <phi, M_j> against an order-k basis over the same
    /// breakpoints and primary weights. Signs alternate: (-1)^j <phi, M_j> > 0.
    std::vector<double> phi_products(const BSplineBasis& primary_basis) const;

    /// Per-interval ratios  integral of |sigma| over I_j  divided by |I_j|^k.
    /// Bounded away from zero on quasi-uniform meshes; the lower bound feeds
    /// the norm estimate.
    std::vector<double> l1_profile() const;

  private:
    // Chain values are evaluated per interval from the rebased monomial
    // coefficients: the jet of sigma on the interval is reduced step by step
    // through the operator chain. Both the coefficients (from a banded
    // collocation in the rebased representation) and the evaluation stay
    // locally scaled, so every level remains accurate on fine meshes, where
    // global representations and knot-difference ladders lose the high
    // levels to cancellation.
    void chain_values(double x, int top, std::vector<double>& out) const;
    void build_piecewise();

    const SigmaSystem& sys_;
    std::vector<double> coef_;
    // locals_[ell]: rebased u-coefficients of sigma on breakpoint interval ell
    std::vector<std::vector<double>> locals_;
};

}  // namespace chebproj
