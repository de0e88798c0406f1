#include "chebproj/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace chebproj {

Partition::Partition(std::vector<double> breakpoints, int order)
    : breakpoints_(std::move(breakpoints)), k_(order) {
    if (k_ < 1) throw std::invalid_argument("Partition: order must be positive");
    if (breakpoints_.size() < 2) throw std::invalid_argument("Partition: need at least two breakpoints");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw std::invalid_argument("Partition: breakpoints must be strictly increasing");
    const int m = num_intervals();
    n_ = m + k_ - 2;
    knots_.reserve(std::size_t(n_ + k_ + 1));
    for (int i = 0; i < k_; ++i) knots_.push_back(a());
    for (int i = 1; i < m; ++i) knots_.push_back(breakpoints_[std::size_t(i)]);
    for (int i = 0; i < k_; ++i) knots_.push_back(b());
}

double Partition::mesh() const {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        m = std::max(m, breakpoints_[i + 1] - breakpoints_[i]);
    return m;
}

double Partition::min_gap() const {
    double m = b() - a();
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        m = std::min(m, breakpoints_[i + 1] - breakpoints_[i]);
    return m;
}

int Partition::interval_of(double x) const {
    if (x < a() || x > b()) throw std::invalid_argument("Partition: point outside [a, b]");
    if (x >= breakpoints_[breakpoints_.size() - 2]) return num_intervals() - 1;
    int j = int(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                breakpoints_.begin()) - 1;
    return std::max(0, j);
}

}  // namespace chebproj
