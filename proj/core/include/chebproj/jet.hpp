#ifndef CHEBPROJ_JET_HPP
#define CHEBPROJ_JET_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace chebproj {

/// Truncated derivative jet of a smooth function at a point:
/// jet[d] = d-th ordinary derivative.  All combinators below are exact
/// (Leibniz / quotient recursions), no finite differencing anywhere.
using Jet = std::vector<double>;

namespace jet {

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

/// Jet of f*g from jets of f and g (orders truncated to the shorter input).
inline Jet product(const Jet& f, const Jet& g) {
    const std::size_t n = std::min(f.size(), g.size());
    Jet out(n, 0.0);
    for (std::size_t d = 0; d < n; ++d) {
        double s = 0.0;
        for (std::size_t j = 0; j <= d; ++j)
            s += binom(int(d), int(j)) * f[j] * g[d - j];
        out[d] = s;
    }
    return out;
}

/// Jet of f/g; requires g[0] != 0.
inline Jet quotient(const Jet& f, const Jet& g) {
    if (g.empty() || g[0] == 0.0)
        throw std::invalid_argument("jet::quotient: division by zero value");
    const std::size_t n = std::min(f.size(), g.size());
    Jet out(n, 0.0);
    for (std::size_t d = 0; d < n; ++d) {
        double s = f[d];
        for (std::size_t j = 0; j < d; ++j)
            s -= binom(int(d), int(j)) * out[j] * g[d - j];
        out[d] = s / g[0];
    }
    return out;
}

/// Jet of f' (one order shorter).
inline Jet derivative(const Jet& f) {
    if (f.empty()) throw std::invalid_argument("jet::derivative: empty jet");
    Jet out(f.size() - 1);
    for (std::size_t d = 0; d + 1 < f.size(); ++d) out[d] = f[d + 1];
    return out;
}

inline Jet scaled(Jet f, double c) {
    for (double& v : f) v *= c;
    return f;
}

inline void add_scaled(Jet& acc, const Jet& f, double c) {
    if (acc.size() < f.size()) acc.resize(f.size(), 0.0);
    for (std::size_t d = 0; d < f.size(); ++d) acc[d] += c * f[d];
}

}  // namespace jet
}  // namespace chebproj

#endif
