#include "chebproj/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chebproj/quadrature.hpp"

namespace chebproj {

namespace {
constexpr double kRootTol = 1e-12;
constexpr double kNoiseFloorRel = 1e-12;
// kernel-tail intervals whose bounded contribution falls under this fraction
// of the largest one are dropped from the Lebesgue integral
constexpr double kTailSkipRel = 1e-16;
}  // namespace

Projector::Projector(const BSplineBasis& basis) : basis_(basis), gram_(basis.count(), basis.order() - 1) {
    const int k = basis_.order();
    const int n1 = basis_.count();
    const Partition& part = basis_.partition();
    const auto& bp = part.breakpoints();
    const int rule = std::max(2 * k + 2, 16);

    // per-interval integrals of u_r u_s drive every Gram entry
    umom_.resize(std::size_t(part.num_intervals()));
    for (int ell = 0; ell < part.num_intervals(); ++ell) {
        std::vector<double>& um = umom_[std::size_t(ell)];
        um.assign(std::size_t(k) * std::size_t(k), 0.0);
        const GaussRule& gr = gauss_rule(rule);
        double c = 0.5 * (bp[std::size_t(ell)] + bp[std::size_t(ell) + 1]);
        double h = 0.5 * (bp[std::size_t(ell) + 1] - bp[std::size_t(ell)]);
        std::vector<double> uval(std::size_t(k), 0.0);
        for (std::size_t q = 0; q < gr.nodes.size(); ++q) {
            double x = c + h * gr.nodes[q];
            for (int r = 0; r < k; ++r) uval[std::size_t(r)] = basis_.system().u(r + 1, x);
            double w = h * gr.weights[q];
            for (int r = 0; r < k; ++r)
                for (int s = 0; s < k; ++s)
                    um[std::size_t(r) * std::size_t(k) + std::size_t(s)] +=
                        w * uval[std::size_t(r)] * uval[std::size_t(s)];
        }
    }

    for (int i = 0; i < n1; ++i)
        for (int j = std::max(0, i - k + 1); j <= i; ++j) {
            int lo = std::max(basis_.support_begin(i), basis_.support_begin(j));
            int hi = std::min(basis_.support_end(i), basis_.support_end(j));
            double s = 0.0;
            for (int ell = lo; ell <= hi; ++ell) {
                auto ri = basis_.local_rep(i, ell);
                auto rj = basis_.local_rep(j, ell);
                const auto& um = umom_[std::size_t(ell)];
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c)
                        s += ri[std::size_t(r)] * rj[std::size_t(c)] *
                             um[std::size_t(r) * std::size_t(k) + std::size_t(c)];
            }
            gram_.band(i, i - j) = s;
        }

    fact_ = std::make_unique<BandedLDLT>(gram_);
    if (!fact_->positive_definite())
        throw std::runtime_error("Projector: Gram matrix not positive definite "
                                 "(internal inconsistency)");

    inv_ = DenseMatrix(n1, n1);
    std::vector<double> e(std::size_t(n1), 0.0);
    for (int j = 0; j < n1; ++j) {
        e[std::size_t(j)] = 1.0;
        std::vector<double> col = fact_->solve(e);
        e[std::size_t(j)] = 0.0;
        for (int i = 0; i < n1; ++i) inv_.at(i, j) = col[std::size_t(i)];
    }

    // caches for the Lebesgue scan: everything the inner loop needs that does
    // not depend on the evaluation point
    const int n = part.num_intervals();
    const std::size_t sk = std::size_t(k);
    scan_ = 4 * k;
    reps_.assign(std::size_t(n) * sk * sk, 0.0);
    scanu_.assign(std::size_t(n) * std::size_t(scan_ + 1) * sk, 0.0);
    uscale_.assign(std::size_t(n) * sk, 0.0);
    uprim_.assign(std::size_t(n + 1) * sk, 0.0);
    for (int j = 0; j <= n; ++j)
        for (int r = 0; r < k; ++r)
            uprim_[std::size_t(j) * sk + std::size_t(r)] =
                basis_.system().u_antideriv(r + 1, bp[std::size_t(j)]);
    for (int ell = 0; ell < n; ++ell) {
        for (int dj = 0; dj < k; ++dj) {
            auto rep = basis_.local_rep(ell + dj, ell);
            for (int r = 0; r < k; ++r)
                reps_[(std::size_t(ell) * sk + std::size_t(dj)) * sk + std::size_t(r)] =
                    rep[std::size_t(r)];
        }
        const double lo = bp[std::size_t(ell)], hi = bp[std::size_t(ell) + 1];
        for (int q = 0; q <= scan_; ++q) {
            double x = lo + (hi - lo) * double(q) / double(scan_);
            for (int r = 0; r < k; ++r) {
                double v = basis_.system().u(r + 1, x);
                scanu_[(std::size_t(ell) * std::size_t(scan_ + 1) + std::size_t(q)) * sk +
                       std::size_t(r)] = v;
                double& sc = uscale_[std::size_t(ell) * sk + std::size_t(r)];
                sc = std::max(sc, std::abs(v));
            }
        }
    }
}

double Projector::gram_entry(int i, int j) const { return gram_.entry(i, j); }

double Projector::n_gram_entry(int i, int j) const {
    return basis_.alpha(i) * basis_.alpha(j) * gram_.entry(i, j);
}

double Projector::inverse_entry(int i, int j) const { return inv_.at(i, j); }

double Projector::n_inverse_entry(int i, int j) const {
    return inv_.at(i, j) / (basis_.alpha(i) * basis_.alpha(j));
}

std::vector<double> Projector::moments(const RealFn& f) const {
    const int k = basis_.order();
    const int n1 = basis_.count();
    const Partition& part = basis_.partition();
    const auto& bp = part.breakpoints();
    const GaussRule& gr = gauss_rule(std::max(2 * k + 2, 16));
    std::vector<double> mom(std::size_t(n1), 0.0);
    std::vector<double> uval(std::size_t(k), 0.0);
    for (int ell = 0; ell < part.num_intervals(); ++ell) {
        double c = 0.5 * (bp[std::size_t(ell)] + bp[std::size_t(ell) + 1]);
        double h = 0.5 * (bp[std::size_t(ell) + 1] - bp[std::size_t(ell)]);
        int ilo = std::max(0, ell), ihi = std::min(n1 - 1, ell + k - 1);
        for (std::size_t q = 0; q < gr.nodes.size(); ++q) {
            double x = c + h * gr.nodes[q];
            double fw = f(x) * h * gr.weights[q];
            for (int r = 0; r < k; ++r) uval[std::size_t(r)] = basis_.system().u(r + 1, x);
            for (int i = ilo; i <= ihi; ++i) {
                auto rep = basis_.local_rep(i, ell);
                double m = 0.0;
                for (int r = 0; r < k; ++r) m += rep[std::size_t(r)] * uval[std::size_t(r)];
                mom[std::size_t(i)] += fw * m;
            }
        }
    }
    return mom;
}

std::vector<double> Projector::solve_moments(const std::vector<double>& mom) const {
    if (int(mom.size()) != basis_.count())
        throw std::invalid_argument("Projector: moment vector length mismatch");
    return fact_->solve(mom);
}

std::vector<double> Projector::project(const RealFn& f) const { return solve_moments(moments(f)); }

double Projector::eval(const std::vector<double>& coef, double x) const {
    if (int(coef.size()) != basis_.count())
        throw std::invalid_argument("Projector: coefficient vector length mismatch");
    if (x < basis_.partition().a() || x > basis_.partition().b()) return 0.0;
    const int k = basis_.order();
    int ell = basis_.partition().interval_of(x);
    double s = 0.0;
    for (int i = std::max(0, ell); i <= std::min(basis_.count() - 1, ell + k - 1); ++i)
        s += coef[std::size_t(i)] * basis_.m_spline(i, x);
    return s;
}

double Projector::m_on_interval(int i, int ell, double x) const {
    const int k = basis_.order();
    if (i < ell || i >= ell + k) return 0.0;
    const double* rep =
        &reps_[(std::size_t(ell) * std::size_t(k) + std::size_t(i - ell)) * std::size_t(k)];
    double s = 0.0;
    for (int r = 0; r < k; ++r) s += rep[std::size_t(r)] * basis_.system().u(r + 1, x);
    return s;
}

double Projector::kernel(double tau, double t) const {
    const int k = basis_.order();
    const int n1 = basis_.count();
    const Partition& part = basis_.partition();
    int lt = part.interval_of(tau);
    int lx = part.interval_of(t);
    double s = 0.0;
    for (int i = std::max(0, lt); i <= std::min(n1 - 1, lt + k - 1); ++i) {
        double mi = basis_.m_spline(i, tau);
        if (mi == 0.0) continue;
        for (int j = std::max(0, lx); j <= std::min(n1 - 1, lx + k - 1); ++j)
            s += mi * inv_.at(i, j) * basis_.m_spline(j, t);
    }
    return s;
}

std::vector<double> Projector::kernel_row(double tau, int ell) const {
    const int k = basis_.order();
    const int n1 = basis_.count();
    std::vector<double> row(std::size_t(n1), 0.0);
    for (int i = std::max(0, ell); i <= std::min(n1 - 1, ell + k - 1); ++i) {
        double mi = m_on_interval(i, ell, tau);
        if (mi == 0.0) continue;
        for (int j = 0; j < n1; ++j) row[std::size_t(j)] += mi * inv_.at(i, j);
    }
    return row;
}

double Projector::lebesgue_on(double tau, int ell) const {
    const int k = basis_.order();
    const Partition& part = basis_.partition();
    const auto& bp = part.breakpoints();
    const int n = part.num_intervals();
    const std::size_t sk = std::size_t(k);
    const EctSystem& sys = basis_.system();
    std::vector<double> row = kernel_row(tau, ell);

    // fold the kernel row into per-interval u-coefficients and bound each
    // interval's contribution so the geometric tail can be pruned
    std::vector<double> cof(std::size_t(n) * sk, 0.0);
    std::vector<double> bound(std::size_t(n), 0.0);
    double bmax = 0.0;
    for (int lx = 0; lx < n; ++lx) {
        double bsum = 0.0;
        for (int r = 0; r < k; ++r) {
            double c = 0.0;
            for (int dj = 0; dj < k; ++dj)
                c += row[std::size_t(lx + dj)] *
                     reps_[(std::size_t(lx) * sk + std::size_t(dj)) * sk + std::size_t(r)];
            cof[std::size_t(lx) * sk + std::size_t(r)] = c;
            bsum += std::abs(c) * uscale_[std::size_t(lx) * sk + std::size_t(r)];
        }
        bound[std::size_t(lx)] = bsum * (bp[std::size_t(lx) + 1] - bp[std::size_t(lx)]);
        bmax = std::max(bmax, bound[std::size_t(lx)]);
    }

    double total = 0.0;
    std::vector<double> cuts;
    std::vector<double> uprev(sk), ucur(sk);
    for (int lx = 0; lx < n; ++lx) {
        if (!(bound[std::size_t(lx)] > kTailSkipRel * bmax)) continue;
        const double* c = &cof[std::size_t(lx) * sk];
        const double* su = &scanu_[std::size_t(lx) * std::size_t(scan_ + 1) * sk];
        const double lo = bp[std::size_t(lx)], hi = bp[std::size_t(lx) + 1];

        cuts.clear();
        auto g = [&](double t) {
            double s = 0.0;
            for (int r = 0; r < k; ++r) s += c[std::size_t(r)] * sys.u(r + 1, t);
            return s;
        };
        double prev = 0.0;
        for (int r = 0; r < k; ++r) prev += c[std::size_t(r)] * su[std::size_t(r)];
        for (int q = 1; q <= scan_; ++q) {
            double cur = 0.0;
            for (int r = 0; r < k; ++r)
                cur += c[std::size_t(r)] * su[std::size_t(q) * sk + std::size_t(r)];
            if (prev != 0.0 && cur != 0.0 && (prev > 0.0) != (cur > 0.0))
                cuts.push_back(refine_root(g, lo + (hi - lo) * double(q - 1) / double(scan_),
                                           lo + (hi - lo) * double(q) / double(scan_), kRootTol));
            prev = cur;
        }

        // segment integrals are exact endpoint differences of the monomial
        // antiderivatives
        for (int r = 0; r < k; ++r)
            uprev[std::size_t(r)] = uprim_[std::size_t(lx) * sk + std::size_t(r)];
        for (std::size_t s = 0; s <= cuts.size(); ++s) {
            if (s < cuts.size())
                for (int r = 0; r < k; ++r)
                    ucur[std::size_t(r)] = sys.u_antideriv(r + 1, cuts[s]);
            else
                for (int r = 0; r < k; ++r)
                    ucur[std::size_t(r)] = uprim_[std::size_t(lx + 1) * sk + std::size_t(r)];
            double seg = 0.0;
            for (int r = 0; r < k; ++r)
                seg += c[std::size_t(r)] * (ucur[std::size_t(r)] - uprev[std::size_t(r)]);
            total += std::abs(seg);
            uprev.swap(ucur);
        }
    }
    return total;
}

double Projector::lebesgue(double tau) const {
    return lebesgue_on(tau, basis_.partition().interval_of(tau));
}

NormReport Projector::report(int cheb_per_interval) const {
    const int k = basis_.order();
    const Partition& part = basis_.partition();
    const auto& bp = part.breakpoints();
    const int p = cheb_per_interval > 0 ? cheb_per_interval : 2 * k + 3;

    NormReport rep;
    auto add = [&](double tau, int ell) {
        rep.tau.push_back(tau);
        rep.lambda.push_back(lebesgue_on(tau, ell));
    };
    add(bp.front(), 0);
    rep.at_a = rep.lambda.back();
    for (int ell = 0; ell < part.num_intervals(); ++ell) {
        double lo = bp[std::size_t(ell)], hi = bp[std::size_t(ell) + 1];
        for (int q = 0; q < p; ++q) {
            double theta = M_PI * (2.0 * q + 1.0) / (2.0 * p);
            add(0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(theta), ell);
        }
        if (ell + 1 < part.num_intervals()) {
            add(hi, ell);      // left-sided limit at the interior breakpoint
            add(hi, ell + 1);  // right-sided value
        }
    }
    add(bp.back(), part.num_intervals() - 1);
    rep.at_b = rep.lambda.back();
    rep.norm = *std::max_element(rep.lambda.begin(), rep.lambda.end());

    bool ok = false;
    auto [c, q] = decay_fit(ok);
    rep.decay_c = c;
    rep.decay_q = q;
    rep.decay_fit_ok = ok;
    return rep;
}

std::pair<double, double> Projector::decay_fit(bool& ok) const {
    const int n1 = basis_.count();
    double vmax = 0.0;
    DenseMatrix v(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            double aij = n_inverse_entry(i, j);
            v.at(i, j) = std::abs(aij) * (basis_.alpha(i) + basis_.alpha(j));
            vmax = std::max(vmax, v.at(i, j));
        }
    double floor = kNoiseFloorRel * vmax;

    // least squares of log v against |i - j| over entries above the floor
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    long cnt = 0;
    int dmax = 0;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            if (v.at(i, j) <= floor) continue;
            double x = std::abs(i - j), y = std::log(v.at(i, j));
            dmax = std::max(dmax, int(x));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++cnt;
        }
    if (dmax == 0) {
        // diagonal inverse: no off-band mass at all (order-one bases)
        ok = basis_.order() == 1;
        return {cnt ? std::exp(sy / double(cnt)) : 0.0, 0.0};
    }
    double det = double(cnt) * sxx - sx * sx;
    if (cnt < 3 || det <= 0.0) {
        ok = false;
        return {0.0, 0.0};
    }
    double slope = (double(cnt) * sxy - sx * sy) / det;
    double inter = (sy - slope * sx) / double(cnt);
    ok = true;
    return {std::exp(inter), std::exp(slope)};
}

}  // namespace chebproj
