#pragma once

#include <vector>

namespace chebproj {

/// Sorted knot tuple with confluence bookkeeping. Entry i carries
/// d_i = number of immediately preceding entries equal to t_i, which is the
/// derivative order used for its row in confluent collocation matrices.
class KnotTuple {
  public:
    /// Values must be non-decreasing up to `snap_tol`; entries closer than
    /// `snap_tol` to the head of their cluster are snapped onto it.
    explicit KnotTuple(std::vector<double> values, double snap_tol = 0.0);

    int size() const { return int(values_.size()); }
    const std::vector<double>& values() const { return values_; }
    const std::vector<int>& confluence() const { return conf_; }
    double value(int i) const { return values_[std::size_t(i)]; }
    int confluence_at(int i) const { return conf_[std::size_t(i)]; }
    int max_multiplicity() const;

    /// Sub-tuple [first, first + count).
    KnotTuple slice(int first, int count) const;

  private:
    std::vector<double> values_;
    std::vector<int> conf_;
};

}  // namespace chebproj
