#ifndef CHEBPROJ_CHEB_TABLE_HPP
#define CHEBPROJ_CHEB_TABLE_HPP

#include <functional>
#include <vector>

namespace chebproj {

/// Piecewise tabulation of a smooth scalar function on [a, b]: values on a
/// Chebyshev-Lobatto grid per panel, evaluated between nodes by barycentric
/// interpolation.  Used for the nested weight integrals of non-preset
/// weights; the antiderivative is formed panel-by-panel in coefficient
/// space, so no quadrature error accumulates beyond interpolation error.
class ChebTable {
public:
    ChebTable(std::vector<double> panel_edges, int degree,
              const std::function<double(double)>& f);

    double a() const { return edges_.front(); }
    double b() const { return edges_.back(); }
    int degree() const { return degree_; }
    const std::vector<double>& panel_edges() const { return edges_; }

    double eval(double x) const;

    /// F(x) = F0 + integral_a^x of the tabulated function.
    ChebTable antiderivative(double f0 = 0.0) const;

    /// Same table with a constant added to every value.
    ChebTable shifted(double c) const;

    static std::vector<double> uniform_edges(double a, double b, int panels);

private:
    ChebTable() = default;

    std::vector<double> edges_;
    int degree_ = 0;
    // values_[p * (degree_+1) + j]: value at node j of panel p (nodes ascending)
    std::vector<double> values_;
};

}  // namespace chebproj

#endif
