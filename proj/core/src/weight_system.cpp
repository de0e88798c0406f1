#include "chebproj/weight_system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

namespace chebproj {

namespace {
constexpr int kPositivitySamples = 257;
}

Weight Weight::from_closed_form(ExpPoly p, std::string label) {
    Weight w;
    ExpPoly body = p;
    w.fn = make_smooth([body](double x, int d) { return body.eval(x, d); }, kUnlimitedDerivs,
                       std::move(label));
    w.closed_form = std::move(p);
    return w;
}

WeightSystem::WeightSystem(double a, double b, std::vector<Weight> weights, std::string preset_tag)
    : WeightSystem(a, b, std::move(weights), std::move(preset_tag), true) {}

WeightSystem::WeightSystem(double a, double b, std::vector<Weight> weights, std::string tag,
                           bool enforce_budget)
    : a_(a), b_(b), weights_(std::move(weights)), tag_(std::move(tag)) {
    if (!(a_ < b_)) throw std::invalid_argument("WeightSystem: need a < b");
    if (weights_.empty()) throw std::invalid_argument("WeightSystem: need at least one weight");
    const int k = order();
    for (int i = 1; i <= k; ++i) {
        const Weight& w = weights_[std::size_t(i - 1)];
        if (enforce_budget && w.fn.max_deriv < k - i + 1)
            throw std::invalid_argument("WeightSystem: weight " + std::to_string(i) +
                                        " declares fewer than " + std::to_string(k - i + 1) +
                                        " derivatives");
        for (int s = 0; s < kPositivitySamples; ++s) {
            double x = a_ + (b_ - a_) * double(s) / double(kPositivitySamples - 1);
            if (!(w.fn(x) > 0.0)) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "WeightSystem: weight %d is not positive at x = %.17g", i, x);
                throw std::invalid_argument(buf);
            }
        }
    }
}

WeightSystem WeightSystem::derived(double a, double b, std::vector<Weight> weights,
                                   std::string tag) {
    return WeightSystem(a, b, std::move(weights), std::move(tag), false);
}

WeightSystem WeightSystem::constant(double a, double b, int order) {
    if (order < 1) throw std::invalid_argument("WeightSystem: order must be positive");
    std::vector<Weight> ws;
    for (int i = 1; i <= order; ++i)
        ws.push_back(Weight::from_closed_form(ExpPoly::constant(a, b, 1.0), "1"));
    return WeightSystem(a, b, std::move(ws), "constant");
}

WeightSystem WeightSystem::exponential(double a, double b, const std::vector<double>& rates) {
    if (rates.empty()) throw std::invalid_argument("WeightSystem: need at least one rate");
    std::vector<Weight> ws;
    for (double r : rates) {
        char lbl[48];
        std::snprintf(lbl, sizeof lbl, "exp(%g x)", r);
        ws.push_back(Weight::from_closed_form(ExpPoly::exponential(a, b, r), lbl));
    }
    return WeightSystem(a, b, std::move(ws), "exponential");
}

WeightSystem WeightSystem::perturbed(double a, double b, int order, double eps) {
    if (order < 1) throw std::invalid_argument("WeightSystem: order must be positive");
    std::vector<Weight> ws;
    for (int i = 1; i <= order; ++i) {
        double c = a + (b - a) * double(i) / double(order + 1);
        // 1 + eps (x - c)^2 expanded in x
        std::vector<double> coef = {1.0 + eps * c * c, -2.0 * eps * c, eps};
        char lbl[64];
        std::snprintf(lbl, sizeof lbl, "1+%g(x-%g)^2", eps, c);
        ws.push_back(Weight::from_closed_form(ExpPoly::from_poly_in_x(a, b, coef), lbl));
    }
    return WeightSystem(a, b, std::move(ws), "polynomial-perturbation");
}

const Weight& WeightSystem::weight(int i) const {
    if (i < 1 || i > order()) throw std::invalid_argument("WeightSystem: weight index out of range");
    return weights_[std::size_t(i - 1)];
}

bool WeightSystem::analytic() const {
    for (const Weight& w : weights_)
        if (!w.closed_form) return false;
    return true;
}

WeightSystem WeightSystem::dual() const {
    std::vector<Weight> ws;
    ws.push_back(Weight::from_closed_form(ExpPoly::constant(a_, b_, 1.0), "1"));
    for (int i = order(); i >= 1; --i) ws.push_back(weights_[std::size_t(i - 1)]);
    return derived(a_, b_, std::move(ws), tag_ + "-dual");
}

double WeightSystem::min_weight_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Weight& w : weights_)
        for (int s = 0; s < kPositivitySamples; ++s) {
            double x = a_ + (b_ - a_) * double(s) / double(kPositivitySamples - 1);
            m = std::min(m, w.fn(x));
        }
    return m;
}

double WeightSystem::max_weight_derivative() const {
    const int k = order();
    double m = 0.0;
    for (int i = 1; i <= k; ++i) {
        const Weight& w = weights_[std::size_t(i - 1)];
        int dmax = std::min(w.fn.max_deriv, k - i + 1);
        for (int d = 0; d <= dmax; ++d)
            for (int s = 0; s < kPositivitySamples; ++s) {
                double x = a_ + (b_ - a_) * double(s) / double(kPositivitySamples - 1);
                m = std::max(m, std::abs(w.fn(x, d)));
            }
    }
    return m;
}

}  // namespace chebproj
