#include "chebproj/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace chebproj {

namespace {

GaussRule compute_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(std::size_t(n));
    rule.weights.resize(std::size_t(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - double(j) * p2) / double(j + 1);
            }
            pp = double(n) * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[std::size_t(i)] = -x;
        rule.nodes[std::size_t(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[std::size_t(i)] = w;
        rule.weights[std::size_t(n - 1 - i)] = w;
    }
    return rule;
}

std::map<int, GaussRule>& rule_cache() {
    static std::map<int, GaussRule> cache;
    return cache;
}
std::mutex cache_mutex;

}  // namespace

const GaussRule& gauss_rule(int order) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& cache = rule_cache();
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order) {
    const GaussRule& r = gauss_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

double panel_integrate(const std::function<double(double)>& f, std::span<const double> bp,
                       int order) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) s += gauss_integrate(f, bp[i], bp[i + 1], order);
    return s;
}

double refine_root(const std::function<double(double)>& f, double lo, double hi, double xtol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("refine_root: endpoints do not bracket a sign change");
    int side = 0;
    for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
        double x = (flo * hi - fhi * lo) / (flo - fhi);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> locate_sign_changes(const std::function<double(double)>& f, double a, double b,
                                        int scan, double xtol) {
    std::vector<double> roots;
    double prev_x = a, prev_f = f(a);
    for (int i = 1; i <= scan; ++i) {
        double x = a + (b - a) * double(i) / double(scan);
        double fx = f(x);
        if (prev_f != 0.0 && fx != 0.0 && (prev_f > 0.0) != (fx > 0.0))
            roots.push_back(refine_root(f, prev_x, x, xtol));
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

double integrate_abs(const std::function<double(double)>& f, double a, double b, int scan,
                     int order, double xtol) {
    std::vector<double> cuts{a};
    for (double r : locate_sign_changes(f, a, b, scan, xtol)) cuts.push_back(r);
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += std::abs(gauss_integrate(f, cuts[i], cuts[i + 1], order));
    return total;
}

}  // namespace chebproj
