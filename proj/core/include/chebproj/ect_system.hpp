#pragma once

#include <memory>
#include <vector>

#include "chebproj/jet.hpp"
#include "chebproj/knot_tuple.hpp"
#include "chebproj/linalg.hpp"
#include "chebproj/smooth_fn.hpp"
#include "chebproj/weight_system.hpp"

namespace chebproj {

/// Row type for confluent collocation determinants: rows are either ordinary
/// derivatives D^{d_i} f(t_i) or chain-operator values L_{d_i} f(t_i).
enum class DetRows { Ordinary, Chain };

class EvalBackend;

/// The generalized monomial system of a weight vector: u_i is w_1 times the
/// (i-1)-fold nested integral of w_2, ..., w_i from the base point. Serves
/// both the primary system and, applied to the reversed-extended weight
/// vector, the dual system. Immutable after construction; evaluation is
/// thread-safe.
class EctSystem {
  public:
    explicit EctSystem(WeightSystem ws);
    EctSystem(WeightSystem ws, double base);
    ~EctSystem();
    EctSystem(EctSystem&&) noexcept;
    EctSystem& operator=(EctSystem&&) noexcept;
    EctSystem(const EctSystem&) = delete;
    EctSystem& operator=(const EctSystem&) = delete;

    int size() const;  // number of monomials = length of the weight vector
    double a() const;
    double b() const;
    double base() const;
    const WeightSystem& weights() const;

    /// Monomial values and derivative jets, i = 1..size().
    double u(int i, double x) const;
    Jet u_jet(int i, double x, int orders) const;
    /// Antiderivative of u_i vanishing at the base point; exact for closed
    /// forms, table-accurate otherwise. Integrals over the span reduce to
    /// endpoint differences.
    double u_antideriv(int i, double x) const;
    SmoothFn monomial(int i) const;

    /// Chain operator L_j = D_j ... D_1 with D_i f = (f / w_i)'. L_0 f = f.
    /// apply_chain_jet returns the jet of L_j f; f must supply j + orders
    /// derivatives at x.
    double apply_chain(int j, const SmoothFn& f, double x) const;
    Jet apply_chain_jet(int j, const SmoothFn& f, double x, int orders) const;
    double chain_u(int j, int i, double x) const;
    Jet chain_u_jet(int j, int i, double x, int orders) const;

    /// Green kernel of order j (1..size()): h_j(x, y) solves L_j h = 0 in x
    /// with L_r h(y, y) = 0 for r < j-1 and L_{j-1} h(., y)(y) = w_j(y).
    /// truncated = true gives g_j = h_j * [x >= y].
    double green(int j, double x, double y, bool truncated = true) const;

    /// Separation h_j(x, y) = sum_r gamma_r(y) u_r(x): returns the y-jets of
    /// gamma_1..gamma_j at y, each with entries 0..orders.
    std::vector<Jet> green_coeffs(int j, double y, int orders) const;

    /// Confluent collocation determinant over funcs (u_1..u_j by default).
    /// Rows are scaled before elimination; sign and log-magnitude are exact
    /// even when the raw value under/overflows.
    DetResult collocation_det(const KnotTuple& knots, DetRows mode) const;
    DetResult collocation_det(const KnotTuple& knots, const std::vector<SmoothFn>& funcs,
                              DetRows mode) const;

    /// Largest jet order available for u_i under the declared weight
    /// smoothness (unlimited for closed-form weights).
    int max_jet_order(int i) const;

  private:
    WeightSystem ws_;
    double base_;
    std::unique_ptr<EvalBackend> backend_;
};

/// The dual system u*_1..u*_{k+1} of a weight system of order k, with the
/// dual chain operators L*_i = D*_{k-i+1} ... D*_k, D*_i f = (Df) / w_i.
/// Internally this is the monomial system of (1, w_k, ..., w_1).
class DualEctSystem {
  public:
    explicit DualEctSystem(const WeightSystem& primal);
    DualEctSystem(const WeightSystem& primal, double base);

    int primal_order() const { return k_; }
    const EctSystem& system() const { return sys_; }

    double u_star(int i, double x) const;              // i = 1..k+1
    Jet u_star_jet(int i, double x, int orders) const;
    SmoothFn monomial_star(int i) const;

    double apply_chain(int i, const SmoothFn& f, double x) const;  // L*_i f
    Jet apply_chain_jet(int i, const SmoothFn& f, double x, int orders) const;

    DetResult collocation_det(const KnotTuple& knots, DetRows mode) const;

  private:
    int k_;
    WeightSystem primal_;
    EctSystem sys_;
};

}  // namespace chebproj
