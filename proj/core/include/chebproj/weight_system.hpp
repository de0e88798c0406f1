#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chebproj/exp_poly.hpp"
#include "chebproj/smooth_fn.hpp"

namespace chebproj {

/// One weight function: positive on the working interval, evaluable together
/// with derivatives up to a declared order. Preset families additionally carry
/// an exact closed form used by the symbolic evaluation backend.
struct Weight {
    SmoothFn fn;
    std::optional<ExpPoly> closed_form;

    static Weight from_closed_form(ExpPoly p, std::string label);
};

/// The ordered vector (w_1, ..., w_k) of weights on [a, b]. This is the only
/// free input of the whole construction; everything else (generalized
/// monomials, B-splines, projectors) is derived from it.
class WeightSystem {
  public:
    WeightSystem(double a, double b, std::vector<Weight> weights, std::string preset_tag = "custom");

    /// w_i == 1 for all i.
    static WeightSystem constant(double a, double b, int order);
    /// w_i(x) = exp(rate_i * x).
    static WeightSystem exponential(double a, double b, const std::vector<double>& rates);
    /// w_i(x) = 1 + eps * (x - c_i)^2 with centers c_i staggered across [a, b].
    static WeightSystem perturbed(double a, double b, int order, double eps);

    int order() const { return int(weights_.size()); }
    double a() const { return a_; }
    double b() const { return b_; }
    const std::string& preset_tag() const { return tag_; }

    /// 1-based access matching the w_1..w_k convention used throughout.
    const Weight& weight(int i) const;
    const std::vector<Weight>& weights() const { return weights_; }

    /// True when every weight has an exact closed form (presets).
    bool analytic() const;

    /// Reversed-and-extended vector (1, w_k, ..., w_1) of length k+1, the
    /// weight vector whose generalized monomials form the dual system.
    WeightSystem dual() const;

    /// Weight vectors assembled by the library itself (dual and boundary
    /// constructions). Positivity is validated; the per-position derivative
    /// budget of the primary constructor does not apply to these.
    static WeightSystem derived(double a, double b, std::vector<Weight> weights, std::string tag);

    /// Scalars the constants of the theory depend on: the sampled minimum of
    /// all weights and the sampled maximum absolute weight derivative within
    /// each weight's declared order.
    double min_weight_value() const;
    double max_weight_derivative() const;

  private:
    WeightSystem(double a, double b, std::vector<Weight> weights, std::string tag,
                 bool enforce_budget);

    double a_, b_;
    std::vector<Weight> weights_;
    std::string tag_;
};

}  // namespace chebproj
