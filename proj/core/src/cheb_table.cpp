#include "chebproj/cheb_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chebproj {

namespace {

// ascending Chebyshev-Lobatto nodes on [-1, 1]
std::vector<double> lobatto_nodes(int n) {
    std::vector<double> t(std::size_t(n) + 1);
    for (int j = 0; j <= n; ++j) t[std::size_t(j)] = -std::cos(M_PI * double(j) / double(n));
    return t;
}

// Chebyshev coefficients of the degree-n interpolant through values at the
// ascending Lobatto grid.
std::vector<double> cheb_coeffs(const double* v, int n) {
    std::vector<double> c(std::size_t(n) + 1, 0.0);
    for (int m = 0; m <= n; ++m) {
        double s = 0.0;
        for (int j = 0; j <= n; ++j) {
            double term = v[j] * std::cos(M_PI * double(j) * double(m) / double(n));
            if (j == 0 || j == n) term *= 0.5;
            s += term;
        }
        s *= 2.0 / double(n);
        if (m == 0 || m == n) s *= 0.5;
        // nodes are flipped relative to the classical cos grid
        c[std::size_t(m)] = ((m % 2) ? -s : s);
    }
    return c;
}

double clenshaw(const std::vector<double>& c, double t) {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t m = c.size(); m-- > 1;) {
        double b0 = 2.0 * t * b1 - b2 + c[m];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + c[0];
}

}  // namespace

ChebTable::ChebTable(std::vector<double> panel_edges, int degree,
                     const std::function<double(double)>& f)
    : edges_(std::move(panel_edges)), degree_(degree) {
    if (edges_.size() < 2) throw std::invalid_argument("ChebTable: need at least one panel");
    if (degree_ < 2) throw std::invalid_argument("ChebTable: degree must be >= 2");
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
        if (!(edges_[i] < edges_[i + 1]))
            throw std::invalid_argument("ChebTable: panel edges must be strictly increasing");
    const std::vector<double> t = lobatto_nodes(degree_);
    values_.resize((edges_.size() - 1) * std::size_t(degree_ + 1));
    for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
        const double mid = 0.5 * (edges_[p] + edges_[p + 1]);
        const double half = 0.5 * (edges_[p + 1] - edges_[p]);
        for (int j = 0; j <= degree_; ++j)
            values_[p * std::size_t(degree_ + 1) + std::size_t(j)] = f(mid + half * t[std::size_t(j)]);
    }
}

double ChebTable::eval(double x) const {
    const std::size_t np = edges_.size() - 1;
    std::size_t p;
    if (x <= edges_.front())
        p = 0;
    else if (x >= edges_.back())
        p = np - 1;
    else
        p = std::size_t(std::upper_bound(edges_.begin(), edges_.end(), x) - edges_.begin()) - 1;
    const double mid = 0.5 * (edges_[p] + edges_[p + 1]);
    const double half = 0.5 * (edges_[p + 1] - edges_[p]);
    const double t = (x - mid) / half;
    const double* v = values_.data() + p * std::size_t(degree_ + 1);

    // barycentric interpolation on the Lobatto grid
    double num = 0.0, den = 0.0;
    for (int j = 0; j <= degree_; ++j) {
        const double tj = -std::cos(M_PI * double(j) / double(degree_));
        double diff = t - tj;
        if (std::abs(diff) < 1e-15) return v[j];
        double w = (j % 2) ? -1.0 : 1.0;
        if (j == 0 || j == degree_) w *= 0.5;
        num += w / diff * v[j];
        den += w / diff;
    }
    return num / den;
}

ChebTable ChebTable::antiderivative(double f0) const {
    ChebTable out;
    out.edges_ = edges_;
    out.degree_ = degree_;
    out.values_.resize(values_.size());
    const std::vector<double> t = lobatto_nodes(degree_);
    double running = f0;
    for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
        const double half = 0.5 * (edges_[p + 1] - edges_[p]);
        std::vector<double> c = cheb_coeffs(values_.data() + p * std::size_t(degree_ + 1), degree_);
        // coefficients of the antiderivative (degree + 1)
        std::vector<double> bcf(std::size_t(degree_) + 2, 0.0);
        for (int m = 1; m <= degree_ + 1; ++m) {
            double lower = (m - 1 <= degree_) ? c[std::size_t(m - 1)] : 0.0;
            double upper = (m + 1 <= degree_) ? c[std::size_t(m + 1)] : 0.0;
            if (m == 1) lower *= 2.0;  // T_0 contributes twice in the recurrence
            bcf[std::size_t(m)] = half * (lower - upper) / (2.0 * double(m));
        }
        // fix the constant so the antiderivative is `running` at the left edge
        double left = 0.0;
        for (int m = 1; m <= degree_ + 1; ++m) left += ((m % 2) ? -1.0 : 1.0) * bcf[std::size_t(m)];
        bcf[0] = running - left;
        for (int j = 0; j <= degree_; ++j)
            out.values_[p * std::size_t(degree_ + 1) + std::size_t(j)] = clenshaw(bcf, t[std::size_t(j)]);
        running = clenshaw(bcf, 1.0);
    }
    return out;
}

ChebTable ChebTable::shifted(double c) const {
    ChebTable out = *this;
    for (double& v : out.values_) v += c;
    return out;
}

std::vector<double> ChebTable::uniform_edges(double a, double b, int panels) {
    if (!(b > a) || panels < 1) throw std::invalid_argument("ChebTable: bad panel layout");
    std::vector<double> e(std::size_t(panels) + 1);
    for (int i = 0; i <= panels; ++i) e[std::size_t(i)] = a + (b - a) * double(i) / double(panels);
    e.front() = a;
    e.back() = b;
    return e;
}

}  // namespace chebproj
