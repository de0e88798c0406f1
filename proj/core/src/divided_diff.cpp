#include "chebproj/divided_diff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chebproj {

KnotTuple::KnotTuple(std::vector<double> values, double snap_tol) : values_(std::move(values)) {
    for (std::size_t i = 0; i + 1 < values_.size(); ++i)
        if (values_[i + 1] < values_[i] - snap_tol)
            throw std::invalid_argument("KnotTuple: values not sorted");
    if (snap_tol > 0.0 && !values_.empty()) {
        double head = values_[0];
        for (double& v : values_) {
            if (v - head <= snap_tol)
                v = head;
            else
                head = v;
        }
    }
    conf_.resize(values_.size(), 0);
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] == values_[i - 1]) conf_[i] = conf_[i - 1] + 1;
}

int KnotTuple::max_multiplicity() const {
    int m = values_.empty() ? 0 : 1;
    for (int c : conf_) m = std::max(m, c + 1);
    return m;
}

KnotTuple KnotTuple::slice(int first, int count) const {
    if (first < 0 || count < 0 || first + count > size())
        throw std::invalid_argument("KnotTuple: bad slice range");
    std::vector<double> v(values_.begin() + first, values_.begin() + first + count);
    return KnotTuple(std::move(v));
}

namespace {

double det_ratio(const DetResult& num, const DetResult& den) {
    if (den.sign == 0)
        throw std::runtime_error("divided_difference: singular denominator determinant "
                                 "(internal inconsistency, the system should be ECT)");
    if (num.sign == 0) return 0.0;
    return double(num.sign * den.sign) * std::exp(num.log_abs - den.log_abs);
}

KnotTuple snapped(const EctSystem& sys, const KnotTuple& knots) {
    return KnotTuple(knots.values(), kKnotSnapRel * (sys.b() - sys.a()));
}

double dd_impl(const EctSystem& sys, const KnotTuple& knots, const SmoothFn& f) {
    const int m = knots.size();
    if (m != sys.size())
        throw std::invalid_argument("divided_difference: knot count must equal system size");
    KnotTuple t = snapped(sys, knots);
    if (t.max_multiplicity() > m)
        throw std::invalid_argument("divided_difference: knot multiplicity exceeds system size");
    std::vector<SmoothFn> numer, denom;
    for (int i = 1; i < m; ++i) {
        numer.push_back(sys.monomial(i));
        denom.push_back(sys.monomial(i));
    }
    numer.push_back(f);
    denom.push_back(sys.monomial(m));
    return det_ratio(sys.collocation_det(t, numer, DetRows::Ordinary),
                     sys.collocation_det(t, denom, DetRows::Ordinary));
}

// divided difference over a leading subrange u_1..u_j of a larger system
double dd_subrange(const EctSystem& sys, const KnotTuple& t, const SmoothFn& f) {
    const int m = t.size();
    std::vector<SmoothFn> numer, denom;
    for (int i = 1; i < m; ++i) {
        numer.push_back(sys.monomial(i));
        denom.push_back(sys.monomial(i));
    }
    numer.push_back(f);
    denom.push_back(sys.monomial(m));
    return det_ratio(sys.collocation_det(t, numer, DetRows::Ordinary),
                     sys.collocation_det(t, denom, DetRows::Ordinary));
}

}  // namespace

double divided_difference(const EctSystem& sys, const KnotTuple& knots, const SmoothFn& f) {
    return dd_impl(sys, knots, f);
}

double divided_difference(const DualEctSystem& sys, const KnotTuple& knots, const SmoothFn& f) {
    return dd_impl(sys.system(), knots, f);
}

double dd_recursion_residual(const EctSystem& sys, const KnotTuple& knots, const SmoothFn& f) {
    const int m = knots.size();
    if (m < 2) throw std::invalid_argument("dd_recursion_residual: need at least two knots");
    KnotTuple t = snapped(sys, knots);
    if (t.value(0) == t.value(m - 1))
        throw std::invalid_argument("dd_recursion_residual: t_1 = t_m makes the recursion singular");

    double lhs = dd_impl(sys, t, f);

    KnotTuple head = t.slice(0, m - 1);
    KnotTuple tail = t.slice(1, m - 1);
    SmoothFn um = sys.monomial(m);
    double num = dd_subrange(sys, tail, f) - dd_subrange(sys, head, f);
    double den = dd_subrange(sys, tail, um) - dd_subrange(sys, head, um);
    return lhs - num / den;
}

}  // namespace chebproj
