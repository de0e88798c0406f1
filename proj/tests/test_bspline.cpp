#include "doctest.h"

#include <cmath>
#include <vector>

#include "chebproj/bspline_basis.hpp"
#include "chebproj/linalg.hpp"
#include "chebproj/quadrature.hpp"

using namespace chebproj;

namespace {

const std::vector<double> kBreaks = {0.0, 0.3, 0.45, 0.8, 1.25, 1.5};

// classical normalized B-spline recursion over the extended knot vector,
// with the last nonempty interval closed at b
double cox_norm(const std::vector<double>& t, int i, int k, double x, double b) {
    if (k == 1) {
        double lo = t[std::size_t(i)], hi = t[std::size_t(i) + 1];
        if (lo == hi) return 0.0;
        if (x == b) return hi == b ? 1.0 : 0.0;
        return (lo <= x && x < hi) ? 1.0 : 0.0;
    }
    double acc = 0.0;
    double d1 = t[std::size_t(i + k) - 1] - t[std::size_t(i)];
    if (d1 > 0.0) acc += (x - t[std::size_t(i)]) / d1 * cox_norm(t, i, k - 1, x, b);
    double d2 = t[std::size_t(i + k)] - t[std::size_t(i) + 1];
    if (d2 > 0.0) acc += (t[std::size_t(i + k)] - x) / d2 * cox_norm(t, i + 1, k - 1, x, b);
    return acc;
}

double cox_m(const std::vector<double>& t, int i, int k, double x, double b) {
    return double(k) / (t[std::size_t(i + k)] - t[std::size_t(i)]) * cox_norm(t, i, k, x, b);
}

std::vector<double> sample_points(const Partition& part) {
    std::vector<double> xs;
    const auto& bp = part.breakpoints();
    for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
        xs.push_back(bp[j]);
        xs.push_back(0.75 * bp[j] + 0.25 * bp[j + 1]);
        xs.push_back(0.5 * (bp[j] + bp[j + 1]));
        xs.push_back(0.25 * bp[j] + 0.75 * bp[j + 1]);
    }
    xs.push_back(bp.back());
    return xs;
}

double support_integral(const BSplineBasis& bs, int i, const std::function<double(double)>& f) {
    const auto& bp = bs.partition().breakpoints();
    double s = 0.0;
    for (int ell = bs.support_begin(i); ell <= bs.support_end(i); ++ell)
        s += gauss_integrate(f, bp[std::size_t(ell)], bp[std::size_t(ell) + 1],
                             2 * bs.order() + 6);
    return s;
}

Jet rep_jet(const BSplineBasis& bs, int i, int ell, double x, int orders) {
    auto rep = bs.local_rep(i, ell);
    Jet out(std::size_t(orders) + 1, 0.0);
    for (int r = 1; r <= bs.order(); ++r)
        jet::add_scaled(out, bs.system().u_jet(r, x, orders), rep[std::size_t(r) - 1]);
    return out;
}

SmoothFn smooth_sin(double freq) {
    return make_smooth(
        [freq](double x, int d) {
            switch (d % 4) {
                case 0: return std::pow(freq, d) * std::sin(freq * x);
                case 1: return std::pow(freq, d) * std::cos(freq * x);
                case 2: return -std::pow(freq, d) * std::sin(freq * x);
                default: return -std::pow(freq, d) * std::cos(freq * x);
            }
        },
        kUnlimitedDerivs, "sin");
}

}  // namespace

TEST_CASE("constant-weight B-splines match the classical recursion") {
    for (int k : {2, 3, 4}) {
        Partition part(kBreaks, k);
        BSplineBasis bs(part, WeightSystem::constant(0.0, 1.5, k));
        const auto& t = part.knots();
        for (int i = 0; i <= part.n(); ++i)
            for (double x : sample_points(part)) {
                double want = cox_m(t, i, k, x, 1.5);
                CHECK(std::abs(bs.m_spline(i, x) - want) < 1e-10);
            }
    }
}

TEST_CASE("unit integrals and partition of unity") {
    std::vector<WeightSystem> systems;
    systems.push_back(WeightSystem::constant(0.0, 1.5, 4));
    systems.push_back(WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    systems.push_back(WeightSystem::perturbed(0.0, 1.5, 3, 0.15));
    for (auto& ws : systems) {
        Partition part(kBreaks, ws.order());
        BSplineBasis bs(part, ws);
        for (int i = 0; i < bs.count(); ++i) {
            double integral =
                support_integral(bs, i, [&](double x) { return bs.m_spline(i, x); });
            CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
        }
        double u1max = 0.0;
        for (double x : sample_points(part)) u1max = std::max(u1max, std::abs(bs.system().u(1, x)));
        for (double x : sample_points(part)) {
            double sum = 0.0;
            for (int i = 0; i < bs.count(); ++i) sum += bs.n_spline(i, x);
            CHECK(std::abs(sum - bs.system().u(1, x)) < 1e-8 * u1max);
        }
    }
}

TEST_CASE("supports are exact and splines positive inside") {
    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    const auto& t = part.knots();
    for (int i = 0; i < bs.count(); ++i) {
        double lo = t[std::size_t(i)], hi = t[std::size_t(i) + 3];
        for (double x : sample_points(part)) {
            if (x < lo || x >= hi) {
                if (x == 1.5 && hi == 1.5)
                    continue;  // right endpoint keeps its left-limit value
                CHECK(bs.m_spline(i, x) == 0.0);
            }
        }
        // positive at midpoints of the support intervals
        for (int ell = bs.support_begin(i); ell <= bs.support_end(i); ++ell) {
            double mid = 0.5 * (part.breakpoints()[std::size_t(ell)] +
                                part.breakpoints()[std::size_t(ell) + 1]);
            CHECK(bs.m_spline(i, mid) > 0.0);
        }
    }
    CHECK(bs.m_spline(bs.count() - 1, 1.5) > 0.0);
    // value at an interior knot agrees with the limit from the right
    CHECK(bs.m_spline(2, 0.45) == doctest::Approx(rep_jet(bs, 2, 2, 0.45, 0)[0]));
}

TEST_CASE("alpha matches knot spacing for constant weights") {
    for (int k : {1, 2, 3, 4}) {
        Partition part(kBreaks, k);
        BSplineBasis bs(part, WeightSystem::constant(0.0, 1.5, k));
        const auto& t = part.knots();
        for (int i = 0; i < bs.count(); ++i) {
            double want = (t[std::size_t(i + k)] - t[std::size_t(i)]) / double(k);
            CHECK(bs.alpha(i) == doctest::Approx(want).epsilon(1e-10));
        }
    }
    // general weights: positive and comparable to the knot span
    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    const auto& t = part.knots();
    for (int i = 0; i < bs.count(); ++i) {
        double span = t[std::size_t(i) + 3] - t[std::size_t(i)];
        CHECK(bs.alpha(i) > 0.1 * span / 3.0);
        CHECK(bs.alpha(i) < 10.0 * span);
    }
}

TEST_CASE("phi functions: normalization, zeros, positivity") {
    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    const auto& t = part.knots();
    for (double s : {0.1, 0.8, 1.4}) CHECK(bs.phi(1, 1, s) == doctest::Approx(1.0));
    for (int i : {0, 2, 4}) {
        for (int r = 2; r <= 4; ++r) {
            KnotTuple zeros(std::vector<double>(t.begin() + i, t.begin() + i + r - 1));
            for (std::size_t p = 0; p < zeros.size(); ++p) {
                int d = zeros.confluence()[p];
                CHECK(std::abs(bs.phi_jet(i, r, zeros.values()[p], d)[std::size_t(d)]) < 1e-10);
            }
            double last = t[std::size_t(i + r) - 2];
            for (double s : {last + 0.01, 0.5 * (last + 1.5), 1.5})
                CHECK(bs.phi(i, r, s) > 0.0);
        }
    }
    // constant weights: phi is the scaled product of the root factors
    BSplineBasis cb(part, WeightSystem::constant(0.0, 1.5, 3));
    for (int i : {1, 3}) {
        for (int r = 2; r <= 4; ++r) {
            for (double s : {0.2, 0.9, 1.35}) {
                double want = 1.0;
                for (int p = 0; p <= r - 2; ++p) want *= s - t[std::size_t(i + p)];
                for (int q = 2; q < r; ++q) want /= double(q);
                CHECK(cb.phi(i, r, s) == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("derivative ladder: h factors and first derivative identity") {
    for (int k : {2, 3, 4}) {
        Partition part(kBreaks, k);
        BSplineBasis bs(part, WeightSystem::constant(0.0, 1.5, k));
        const auto& t = part.knots();
        for (int i = 0; i < bs.count(); ++i) {
            double want = (t[std::size_t(i + k)] - t[std::size_t(i)]) / double(k);
            CHECK(bs.h_factor(i) == doctest::Approx(want).epsilon(1e-9));
        }
    }

    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    const SmoothFn w1 = bs.weight_system().weight(1).fn;
    for (int i = 0; i < bs.count(); ++i) {
        CHECK(bs.h_factor(i) > 0.0);
        for (int ell = bs.support_begin(i); ell <= bs.support_end(i); ++ell) {
            const auto& bp = part.breakpoints();
            double x = 0.5 * (bp[std::size_t(ell)] + bp[std::size_t(ell) + 1]);
            // D_1 M = (M / w_1)' computed from the local representation
            Jet m = bs.m_jet(i, x, 1);
            Jet w = w1.jet(x, 1);
            double direct = (m[1] * w[0] - m[0] * w[1]) / (w[0] * w[0]);
            CHECK(bs.derivative_m(i, x) == doctest::Approx(direct).epsilon(1e-8));
        }
    }
    // interior derivative integrates to zero (the two lower integrals cancel)
    for (int j = 1; j + 1 < bs.count(); ++j) {
        double integral =
            support_integral(bs, j, [&](double x) { return bs.derivative_m(j, x); });
        CHECK(std::abs(integral) < 1e-9);
    }
}

TEST_CASE("iterated derivatives alternate in sign") {
    for (auto ws : {WeightSystem::constant(0.0, 1.5, 4),
                    WeightSystem::exponential(0.0, 1.5, {0.5, -0.3, 0.8, 0.2})}) {
        Partition part(kBreaks, 4);
        BSplineBasis bs(part, ws);
        const int j = 3;  // interior spline, no degenerate neighbors
        auto beta = bs.derivative_coeffs(3, j);
        for (int m = 0; m < 4; ++m) {
            double expect_sign = (m % 2) ? -1.0 : 1.0;
            CHECK(beta[std::size_t(m)] * expect_sign > 0.0);
        }
        const auto& t = part.knots();
        for (int piece = 0; piece < 4; ++piece) {
            double lo = t[std::size_t(j + piece)], hi = t[std::size_t(j + piece) + 1];
            if (!(hi > lo)) continue;
            double x = 0.5 * (lo + hi);
            double v = bs.iterated_derivative(3, j, x);
            double expect_sign = (piece % 2) ? -1.0 : 1.0;
            CHECK(v * expect_sign > 0.0);
        }
    }
}

TEST_CASE("dual functionals reproduce B-spline coefficients") {
    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    for (int i : {0, 3, bs.count() - 1}) {
        for (int j = 0; j < bs.count(); ++j) {
            double want = (i == j) ? 1.0 : 0.0;
            double got = bs.dual_apply(i, [&](double x) { return bs.n_spline(j, x); });
            CHECK(std::abs(got - want) < 1e-6);
        }
        double one = bs.dual_apply(i, [&](double x) { return bs.system().u(1, x); });
        CHECK(one == doctest::Approx(1.0).epsilon(1e-6));
    }
    // kernel is supported on the chosen interval only
    auto [lo, hi] = bs.dual_interval(3);
    const auto& t = part.knots();
    double scale = 0.0;
    for (double x = lo; x < hi; x += (hi - lo) / 16.0)
        scale = std::max(scale, std::abs(bs.dual_kernel(3, x + 1e-3)));
    for (double x : {t[3] + 1e-3, lo - 1e-3, hi + 1e-3, t[6] - 1e-3}) {
        if (x > lo && x < hi) continue;
        if (x < t[3] || x > t[6]) continue;
        CHECK(std::abs(bs.dual_kernel(3, x)) < 1e-8 * scale);
    }
}

TEST_CASE("dual functionals stay bounded relative to their interval") {
    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    for (int i = 0; i < bs.count(); ++i) {
        auto [lo, hi] = bs.dual_interval(i);
        double mass = integrate_abs([&](double x) { return bs.dual_kernel(i, x); }, lo, hi, 64,
                                    24, 1e-12);
        CHECK(mass / bs.alpha(i) < 500.0);
    }
}

TEST_CASE("infinitely smooth cutoff yields the same duality") {
    Partition part({0.0, 0.5, 1.0, 1.5}, 2);
    BSplineBasis bs(part, WeightSystem::constant(0.0, 1.5, 2), CutoffKind::ExpInfinite);
    for (int i : {0, 1, 2}) {
        for (int j = 0; j < bs.count(); ++j) {
            double want = (i == j) ? 1.0 : 0.0;
            double got = bs.dual_apply(i, [&](double x) { return bs.n_spline(j, x); });
            CHECK(std::abs(got - want) < 1e-4);
        }
    }
}

TEST_CASE("knot functional equals the integral against the dual chain") {
    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    SmoothFn f = smooth_sin(1.3);
    for (int i : {0, 2, 5, bs.count() - 1}) {
        double lhs = bs.knot_functional(i, f);
        double rhs = support_integral(bs, i, [&](double x) {
            return bs.m_spline(i, x) * bs.dual_system().apply_chain(3, f, x);
        });
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("interpolation recovers the partition-of-unity coefficients") {
    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    const auto& t = part.knots();
    std::vector<double> pts, vals;
    for (int i = 0; i < bs.count(); ++i) {
        double y = 0.5 * (t[std::size_t(i)] + t[std::size_t(i) + 3]);
        pts.push_back(y);
        vals.push_back(bs.system().u(1, y));
    }
    auto coef = bs.interpolate(pts, vals);
    for (int i = 0; i < bs.count(); ++i)
        CHECK(coef[std::size_t(i)] == doctest::Approx(bs.alpha(i)).epsilon(1e-7));

    std::vector<double> bad = pts;
    bad[0] = t[3] + 0.01;  // outside (t_0, t_3)
    CHECK_THROWS_AS(bs.interpolate(bad, vals), std::invalid_argument);
}

TEST_CASE("collocation minors are nonnegative") {
    Partition part({0.0, 0.4, 0.7, 1.0, 1.5}, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    const auto& t = part.knots();
    const int n1 = bs.count();
    std::vector<double> pts;
    for (int i = 0; i < n1; ++i) pts.push_back(0.5 * (t[std::size_t(i)] + t[std::size_t(i) + 3]));
    DenseMatrix c(n1, n1);
    for (int r = 0; r < n1; ++r)
        for (int j = 0; j < n1; ++j) c.at(r, j) = bs.m_spline(j, pts[std::size_t(r)]);
    for (int size = 1; size <= n1; ++size)
        for (int r0 = 0; r0 + size <= n1; ++r0)
            for (int c0 = 0; c0 + size <= n1; ++c0) {
                DenseMatrix sub(size, size);
                for (int r = 0; r < size; ++r)
                    for (int j = 0; j < size; ++j) sub.at(r, j) = c.at(r0 + r, c0 + j);
                CHECK(dense_determinant(std::move(sub)).value >= -1e-10);
            }
}

TEST_CASE("order-one basis is the normalized weight indicator") {
    Partition part(kBreaks, 1);
    WeightSystem ws = WeightSystem::exponential(0.0, 1.5, {0.6});
    BSplineBasis bs(part, ws);
    const auto& bp = part.breakpoints();
    for (int i = 0; i < bs.count(); ++i) {
        double lo = bp[std::size_t(i)], hi = bp[std::size_t(i) + 1];
        double mass = gauss_integrate([&](double x) { return std::exp(0.6 * x); }, lo, hi, 12);
        double mid = 0.5 * (lo + hi);
        CHECK(bs.m_spline(i, mid) == doctest::Approx(std::exp(0.6 * mid) / mass).epsilon(1e-10));
        CHECK(bs.alpha(i) == doctest::Approx(mass).epsilon(1e-10));
        if (i > 0) CHECK(bs.m_spline(i, lo - 0.01) == 0.0);
        if (i + 1 < bs.count()) CHECK(bs.m_spline(i, hi) == 0.0);
    }
}

TEST_CASE("local representations cancel to the first monomial") {
    Partition part(kBreaks, 3);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.7, -0.4, 1.1}));
    std::vector<double> alphas = bs.alphas();
    double scale = 0.0;
    for (int i = 0; i < bs.count(); ++i)
        for (int ell = bs.support_begin(i); ell <= bs.support_end(i); ++ell)
            for (double v : bs.local_rep(i, ell)) scale = std::max(scale, std::abs(v));
    for (int ell = 0; ell < part.num_intervals(); ++ell) {
        auto c = bs.piecewise_u_coeffs(alphas, ell);
        CHECK(std::abs(c[0] - 1.0) < 1e-10 * scale);
        for (int r = 1; r < 3; ++r) CHECK(std::abs(c[std::size_t(r)]) < 1e-10 * scale);
    }
}

TEST_CASE("splines join with the expected smoothness at interior knots") {
    Partition part(kBreaks, 4);
    BSplineBasis bs(part, WeightSystem::exponential(0.0, 1.5, {0.5, -0.3, 0.8, 0.2}));
    for (int ell = 1; ell < part.num_intervals(); ++ell) {
        double tau = part.breakpoints()[std::size_t(ell)];
        for (int i = 0; i < bs.count(); ++i) {
            if (ell - 1 < bs.support_begin(i) || ell > bs.support_end(i)) continue;
            Jet left = rep_jet(bs, i, ell - 1, tau, 3);
            Jet right = rep_jet(bs, i, ell, tau, 3);
            for (int d = 0; d <= 2; ++d)
                CHECK(std::abs(left[std::size_t(d)] - right[std::size_t(d)]) <
                      1e-7 * (1.0 + std::abs(left[std::size_t(d)])));
            // order k-1 jumps whenever tau is a knot of the spline
            CHECK(std::abs(left[3] - right[3]) > 1e-6);
        }
    }
}
