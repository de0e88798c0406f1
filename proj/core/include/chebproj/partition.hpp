#pragma once

#include <vector>

namespace chebproj {

/// Breakpoint sequence a = tau_0 < ... < tau_m = b together with the
/// extended knot vector of order k: multiplicity k at both endpoints, simple
/// interior knots. With n = m + k - 2, the extended knots are t_0..t_{n+k}
/// and the spline space has dimension n + 1.
class Partition {
  public:
    Partition(std::vector<double> breakpoints, int order);

    int order() const { return k_; }
    double a() const { return breakpoints_.front(); }
    double b() const { return breakpoints_.back(); }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    int num_intervals() const { return int(breakpoints_.size()) - 1; }

    const std::vector<double>& knots() const { return knots_; }
    double knot(int i) const { return knots_[std::size_t(i)]; }
    int n() const { return n_; }                 // last B-spline index
    int num_splines() const { return n_ + 1; }

    double mesh() const;                         // max breakpoint gap
    double min_gap() const;

    /// Index j of the breakpoint interval [tau_j, tau_{j+1}) containing x
    /// (the last interval is closed at b).
    int interval_of(double x) const;

  private:
    std::vector<double> breakpoints_;
    int k_;
    int n_;
    std::vector<double> knots_;
};

}  // namespace chebproj
