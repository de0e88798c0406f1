#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "chebproj/extremal.hpp"
#include "chebproj/projection.hpp"

using namespace chebproj;

namespace {

const std::vector<double> kBreaks = {0.0, 0.3, 0.45, 0.8, 1.25, 1.5};

std::vector<double> uniform_breaks(double a, double b, int m) {
    std::vector<double> bp;
    for (int j = 0; j <= m; ++j) bp.push_back(a + (b - a) * j / double(m));
    return bp;
}

// interior sample points of every breakpoint interval plus the endpoints
std::vector<double> sample_points(const std::vector<double>& bp, int per) {
    std::vector<double> xs;
    xs.push_back(bp.front());
    for (std::size_t j = 0; j + 1 < bp.size(); ++j)
        for (int q = 1; q <= per; ++q)
            xs.push_back(bp[j] + (bp[j + 1] - bp[j]) * q / double(per + 1));
    xs.push_back(bp.back());
    return xs;
}

double sup_abs_sigma(const SigmaSpline& s, const std::vector<double>& bp) {
    double m = 0.0;
    for (double x : sample_points(bp, 7)) m = std::max(m, std::abs(s.sigma(x)));
    return m;
}

}  // namespace

TEST_CASE("boundary weight vector composes to an annihilating chain") {
    for (int k = 2; k <= 4; ++k) {
        WeightSystem w = WeightSystem::perturbed(0.0, 1.5, k, 0.2);
        Partition part(kBreaks, k);
        SigmaSystem sys(w, part);
        CHECK(sys.order() == 2 * k - 1);
        CHECK(sys.weights().order() == 2 * k - 1);
        CHECK(sys.kernel_residual() < 1e-7);
    }
    WeightSystem we = WeightSystem::exponential(0.0, 1.5, {0.5, -0.3, 0.8});
    SigmaSystem sys(we, Partition(kBreaks, 3));
    CHECK(sys.kernel_residual() < 1e-7);
}

TEST_CASE("order-one primary systems are rejected") {
    WeightSystem w = WeightSystem::constant(0.0, 1.0, 1);
    Partition part(uniform_breaks(0.0, 1.0, 3), 1);
    CHECK_THROWS_AS(SigmaSystem(w, part), std::invalid_argument);
}

TEST_CASE("sigma vanishes at interior breakpoints and is normalized at a") {
    struct Case {
        WeightSystem w;
        std::vector<double> bp;
    };
    std::vector<Case> cases;
    cases.push_back({WeightSystem::constant(0.0, 1.5, 3), kBreaks});
    cases.push_back({WeightSystem::exponential(0.0, 1.5, {0.5, -0.3, 0.8}), kBreaks});
    cases.push_back({WeightSystem::perturbed(0.0, 2.0, 2, 0.15), uniform_breaks(0.0, 2.0, 5)});
    for (const Case& c : cases) {
        const int k = c.w.order();
        SigmaSystem sys(c.w, Partition(c.bp, k));
        SigmaSpline s(sys);

        const double scale = sup_abs_sigma(s, c.bp);
        CHECK(scale > 0.0);
        for (std::size_t j = 1; j + 1 < c.bp.size(); ++j)
            CHECK(std::abs(s.sigma(c.bp[j])) <= 1e-9 * scale);
        CHECK(s.chain_sigma(k - 1, c.bp.front()) == doctest::Approx(1.0).epsilon(1e-9));

        // boundary coefficients vanish identically by construction
        const std::vector<double>& a = s.coefficients();
        for (int j = 0; j < k - 1; ++j) {
            CHECK(a[std::size_t(j)] == 0.0);
            CHECK(a[a.size() - 1 - std::size_t(j)] == 0.0);
        }
    }
}

TEST_CASE("sigma alternates sign across intervals with no interior zeros") {
    WeightSystem w = WeightSystem::exponential(0.0, 1.5, {0.4, -0.6, 0.9});
    SigmaSystem sys(w, Partition(kBreaks, 3));
    SigmaSpline s(sys);
    for (std::size_t ell = 0; ell + 1 < kBreaks.size(); ++ell) {
        const double want = (ell % 2 == 0) ? 1.0 : -1.0;
        for (int q = 1; q <= 9; ++q) {
            const double x = kBreaks[ell] + (kBreaks[ell + 1] - kBreaks[ell]) * q / 10.0;
            CHECK(want * s.sigma(x) > 0.0);
        }
    }
}

TEST_CASE("constant weights on one interval give the parabola x - x^2") {
    WeightSystem w = WeightSystem::constant(0.0, 1.0, 2);
    SigmaSystem sys(w, Partition({0.0, 1.0}, 2));
    SigmaSpline s(sys);
    for (double x : {0.0, 0.1, 0.37, 0.5, 0.81, 1.0}) {
        CHECK(s.sigma(x) == doctest::Approx(x - x * x).epsilon(1e-10));
        CHECK(s.phi(x) == doctest::Approx(1.0 - 2.0 * x).epsilon(1e-10));
        CHECK(s.conserved(x) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(s.conserved_reference() == doctest::Approx(1.0));
}

TEST_CASE("chain values match direct derivatives for constant weights") {
    const int k = 3;
    WeightSystem w = WeightSystem::constant(0.0, 1.0, k);
    SigmaSystem sys(w, Partition(uniform_breaks(0.0, 1.0, 4), k));
    SigmaSpline s(sys);
    const BSplineBasis& bas = sys.basis();
    for (int lev : {1, 2, k - 1, 2 * k - 2}) {
        for (double x : {0.031, 0.3, 0.56, 0.77, 0.99}) {
            double direct = 0.0;
            for (int j = 0; j < bas.count(); ++j) {
                const double c = s.coefficients()[std::size_t(j)];
                if (c != 0.0) direct += c * bas.m_jet(j, x, lev)[std::size_t(lev)];
            }
            const double got = s.chain_sigma(lev, x);
            CHECK(got == doctest::Approx(direct).epsilon(1e-7));
        }
    }
}

TEST_CASE("the quadratic form of the chain values is conserved") {
    struct Case {
        WeightSystem w;
        std::vector<double> bp;
    };
    std::vector<Case> cases;
    for (int k = 2; k <= 4; ++k)
        cases.push_back({WeightSystem::constant(0.0, 1.5, k), kBreaks});
    cases.push_back({WeightSystem::exponential(0.0, 1.5, {0.5, -0.3, 0.8}), kBreaks});
    cases.push_back({WeightSystem::perturbed(0.0, 1.5, 3, 0.2), kBreaks});
    for (const Case& c : cases) {
        SigmaSystem sys(c.w, Partition(c.bp, c.w.order()));
        SigmaSpline s(sys);
        const double ref = s.conserved_reference();
        for (double x : sample_points(c.bp, 16))
            CHECK(s.conserved(x) == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("phi starts at the weight ratio and its products alternate") {
    WeightSystem w = WeightSystem::exponential(0.0, 1.5, {0.5, -0.3, 0.8});
    const int k = w.order();
    Partition part(kBreaks, k);
    SigmaSystem sys(w, part);
    SigmaSpline s(sys);

    const double w1a = w.weight(1).fn.eval(0.0, 0);
    const double w2a = w.weight(2).fn.eval(0.0, 0);
    CHECK(s.phi(0.0) == doctest::Approx(w1a / w2a).epsilon(1e-8));

    BSplineBasis primary(part, w);
    const std::vector<double> p = s.phi_products(primary);
    REQUIRE(int(p.size()) == primary.count());
    for (int j = 0; j < primary.count(); ++j) {
        const double want = (j % 2 == 0) ? 1.0 : -1.0;
        CHECK(want * p[std::size_t(j)] > 0.0);
    }
}

TEST_CASE("projecting phi reproduces its left endpoint value") {
    struct Case {
        WeightSystem w;
        std::vector<double> bp;
    };
    std::vector<Case> cases;
    cases.push_back({WeightSystem::constant(0.0, 1.0, 2), uniform_breaks(0.0, 1.0, 6)});
    cases.push_back({WeightSystem::exponential(0.0, 1.5, {0.5, -0.3, 0.8}), kBreaks});
    for (const Case& c : cases) {
        const int k = c.w.order();
        Partition part(c.bp, k);
        SigmaSystem sys(c.w, part);
        SigmaSpline s(sys);
        BSplineBasis primary(part, c.w);
        Projector proj(primary);

        // coefficients of the kernel section K(a, .) in the basis
        const double a = c.bp.front();
        const std::vector<double> p = s.phi_products(primary);
        double acc = 0.0;
        for (int j = 0; j < primary.count(); ++j) {
            double cj = 0.0;
            for (int i = 0; i < primary.count(); ++i)
                cj += proj.inverse_entry(i, j) * primary.m_spline(i, a);
            acc += cj * p[std::size_t(j)];
        }
        CHECK(acc == doctest::Approx(s.phi(a)).epsilon(1e-6));
    }
}

TEST_CASE("classical order-two l1 profile is one sixth on any mesh") {
    WeightSystem w = WeightSystem::constant(0.0, 1.5, 2);
    for (const std::vector<double>& bp : {uniform_breaks(0.0, 1.5, 4), kBreaks}) {
        SigmaSystem sys(w, Partition(bp, 2));
        SigmaSpline s(sys);
        for (double r : s.l1_profile()) CHECK(r == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
    }
}

TEST_CASE("l1 profile stays positive on random meshes") {
    std::mt19937_64 rng(20240819u);
    std::uniform_real_distribution<double> gap(0.03, 0.12);
    WeightSystem w = WeightSystem::exponential(0.0, 1.0, {0.5, -0.3, 0.8});
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> bp = {0.0};
        for (int j = 0; j < 6; ++j) bp.push_back(bp.back() + gap(rng));
        const double scale = 1.0 / bp.back();
        for (double& x : bp) x *= scale;
        bp.back() = 1.0;
        SigmaSystem sys(w, Partition(bp, 3));
        SigmaSpline s(sys);
        for (double r : s.l1_profile()) CHECK(r > 0.0);
    }
}
