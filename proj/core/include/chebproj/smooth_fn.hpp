#ifndef CHEBPROJ_SMOOTH_FN_HPP
#define CHEBPROJ_SMOOTH_FN_HPP

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "chebproj/jet.hpp"

namespace chebproj {

inline constexpr int kUnlimitedDerivs = std::numeric_limits<int>::max();

/// Plain point evaluator (no derivative information).
using RealFn = std::function<double(double)>;

/// Evaluator with derivatives: eval(x, d) returns the d-th derivative at x.
/// max_deriv declares how many derivative orders are trustworthy.
struct SmoothFn {
    std::function<double(double, int)> eval;
    int max_deriv = kUnlimitedDerivs;
    std::string label = "f";

    double operator()(double x, int d = 0) const {
        if (d > max_deriv)
            throw std::invalid_argument("SmoothFn '" + label + "': derivative order " +
                                        std::to_string(d) + " exceeds declared max " +
                                        std::to_string(max_deriv));
        return eval(x, d);
    }

    Jet jet(double x, int orders) const {
        Jet out(std::size_t(orders) + 1);
        for (int d = 0; d <= orders; ++d) out[std::size_t(d)] = (*this)(x, d);
        return out;
    }
};

inline SmoothFn make_smooth(std::function<double(double, int)> f, int max_deriv = kUnlimitedDerivs,
                            std::string label = "f") {
    return SmoothFn{std::move(f), max_deriv, std::move(label)};
}

}  // namespace chebproj

#endif
