#include "chebproj/bspline_basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chebproj/linalg.hpp"
#include "chebproj/quadrature.hpp"

namespace chebproj {

struct BSplineBasis::PerSpline {
    std::vector<double> omega;              // dd-functional weights per knot position
    std::vector<int> conf;                  // derivative order per knot position
    std::vector<std::vector<double>> rep;   // u-coefficients per support interval
};

namespace {

int count_equal(const std::vector<double>& knots, int from, int to, double v) {
    int c = 0;
    for (int p = from; p <= to; ++p)
        if (knots[std::size_t(p)] == v) ++c;
    return c;
}

// jet (in x) of the cutoff profile g((x - lo) / len)
Jet cutoff_jet(CutoffKind kind, int order, double lo, double len, double x, int orders) {
    Jet out(std::size_t(orders) + 1, 0.0);
    const double u = (x - lo) / len;

    if (kind == CutoffKind::PolynomialSmoothstep) {
        if (u <= 0.0) return out;
        if (u >= 1.0) {
            out[0] = 1.0;
            return out;
        }
        // g' proportional to u^k (1-u)^k, so g has exactly k vanishing
        // derivatives at both ends; expand the binomial once
        std::vector<double> gp(std::size_t(2 * order) + 1, 0.0);
        for (int q = 0; q <= order; ++q)
            gp[std::size_t(order + q)] = jet::binom(order, q) * ((q % 2) ? -1.0 : 1.0);
        double norm = 0.0;
        for (std::size_t d = 0; d < gp.size(); ++d) norm += gp[d] / double(d + 1);
        double val = 0.0, up = u;
        for (std::size_t d = 0; d < gp.size(); ++d) {
            val += gp[d] * up / double(d + 1);
            up *= u;
        }
        out[0] = val / norm;
        std::vector<double> poly = gp;  // holds (d/du)^{m-1} g' as the loop runs
        double scale = 1.0 / len;
        for (int m = 1; m <= orders; ++m) {
            double s = 0.0, pw = 1.0;
            for (std::size_t d = 0; d < poly.size(); ++d) {
                s += poly[d] * pw;
                pw *= u;
            }
            out[std::size_t(m)] = s / norm * scale;
            scale /= len;
            std::vector<double> next;
            for (std::size_t d = 1; d < poly.size(); ++d) next.push_back(double(d) * poly[d]);
            poly = std::move(next);
            if (poly.empty()) break;
        }
        return out;
    }

    // infinitely smooth variant r(u) / (r(u) + r(1 - u)), r(u) = exp(-1/u)
    if (u <= 1e-8) return out;
    if (u >= 1.0 - 1e-8) {
        out[0] = 1.0;
        return out;
    }
    auto r_jet = [&](double v, int sign) {
        // jet in x of exp(-1/v(x)) where dv/dx = sign / len
        const double c = double(sign) / len;
        Jet inv(std::size_t(orders) + 1, 0.0);  // jet of -1/v
        inv[0] = -1.0 / v;
        if (orders >= 1) inv[1] = c / (v * v);
        for (int d = 2; d <= orders; ++d)
            inv[std::size_t(d)] = -double(d) * inv[std::size_t(d - 1)] * c / v;
        Jet e(std::size_t(orders) + 1, 0.0);
        e[0] = std::exp(inv[0]);
        for (int d = 1; d <= orders; ++d) {
            double s = 0.0;
            for (int q = 1; q <= d; ++q)
                s += jet::binom(d - 1, q - 1) * inv[std::size_t(q)] * e[std::size_t(d - q)];
            e[std::size_t(d)] = s;
        }
        return e;
    };
    Jet ra = r_jet(u, +1);
    Jet den = r_jet(1.0 - u, -1);
    jet::add_scaled(den, ra, 1.0);
    return jet::quotient(ra, den);
}

}  // namespace

BSplineBasis::BSplineBasis(Partition partition, WeightSystem weights, CutoffKind cutoff)
    : partition_(std::move(partition)), weights_(std::move(weights)), cutoff_(cutoff) {
    if (weights_.order() != partition_.order())
        throw std::invalid_argument("BSplineBasis: partition order and weight count differ");
    if (weights_.a() != partition_.a() || weights_.b() != partition_.b())
        throw std::invalid_argument("BSplineBasis: partition and weights cover different intervals");
    sys_ = std::make_unique<EctSystem>(weights_);
    dual_ = std::make_unique<DualEctSystem>(weights_);
    const auto& bp = partition_.breakpoints();
    for (double t0 : bp) rebased_.push_back(std::make_unique<EctSystem>(weights_.dual(), t0));
    build_local_reps();
    phi_k_cache_.resize(std::size_t(partition_.n()) + 2);
    for (int i = 1; i <= partition_.n() + 1; ++i)
        phi_k_cache_[std::size_t(i)] = phi_coeffs(i, order());
    build_alphas();
    if (order() > 1) {
        std::vector<Weight> suffix(weights_.weights().begin() + 1, weights_.weights().end());
        WeightSystem reduced = WeightSystem::derived(weights_.a(), weights_.b(), std::move(suffix),
                                                     weights_.preset_tag() + "-reduced");
        lower_ = std::make_unique<BSplineBasis>(Partition(bp, order() - 1), std::move(reduced),
                                                cutoff_);
    }
}

BSplineBasis::~BSplineBasis() = default;
BSplineBasis::BSplineBasis(BSplineBasis&&) noexcept = default;

int BSplineBasis::bp_index_of_knot(int knot_index) const {
    const int k = order();
    if (knot_index <= k - 1) return 0;
    if (knot_index >= partition_.n() + 1) return partition_.num_intervals();
    return knot_index - k + 1;
}

int BSplineBasis::support_begin(int i) const { return std::max(0, i - order() + 1); }

int BSplineBasis::support_end(int i) const { return std::min(partition_.num_intervals() - 1, i); }

const EctSystem& BSplineBasis::rebased_dual(int bp_index) const {
    return *rebased_[std::size_t(bp_index)];
}

void BSplineBasis::build_local_reps() {
    const int k = order();
    const int n = partition_.n();
    const auto& knots = partition_.knots();
    const auto& bp = partition_.breakpoints();

    // y-jets of the Green separation coefficients at each breakpoint, to the
    // order demanded by the knot multiplicity there
    std::vector<std::vector<Jet>> gamma(bp.size());
    for (std::size_t j = 0; j < bp.size(); ++j) {
        int mult = (j == 0 || j + 1 == bp.size()) ? k : 1;
        gamma[j] = sys_->green_coeffs(k, bp[j], mult - 1);
    }

    splines_.resize(std::size_t(n) + 1);
    const double sign = (k % 2) ? -1.0 : 1.0;
    for (int i = 0; i <= n; ++i) {
        PerSpline& ps = splines_[std::size_t(i)];
        ps.conf.resize(std::size_t(k) + 1);
        for (int p = 0; p <= k; ++p)
            ps.conf[std::size_t(p)] = count_equal(knots, i, i + p, knots[std::size_t(i + p)]) - 1;

        // dd-functional weights: solve B^T w = e_{k+1}, B the confluent
        // collocation matrix of the rebased dual monomials at the knots
        const EctSystem& rd = rebased_dual(bp_index_of_knot(i));
        DenseMatrix bt(k + 1, k + 1);
        for (int p = 0; p <= k; ++p) {
            double t = knots[std::size_t(i + p)];
            int d = ps.conf[std::size_t(p)];
            for (int r = 1; r <= k + 1; ++r)
                bt.at(r - 1, p) = rd.u_jet(r, t, d)[std::size_t(d)];
        }
        std::vector<double> rhs(std::size_t(k) + 1, 0.0);
        rhs[std::size_t(k)] = 1.0;
        DenseLU lu(std::move(bt));
        if (lu.singular())
            throw std::runtime_error(
                "BSplineBasis: singular knot-functional system (internal inconsistency)");
        ps.omega = lu.solve(rhs);

        // per-interval u-coefficients: knots at or left of the interval
        // contribute their Green-coefficient jets
        const int lo = support_begin(i), hi = support_end(i);
        ps.rep.assign(std::size_t(hi - lo) + 1, std::vector<double>(std::size_t(k), 0.0));
        for (int ell = lo; ell <= hi; ++ell) {
            std::vector<double>& rep = ps.rep[std::size_t(ell - lo)];
            for (int p = 0; p <= k; ++p) {
                double t = knots[std::size_t(i + p)];
                if (t > bp[std::size_t(ell)]) continue;
                int d = ps.conf[std::size_t(p)];
                const auto& g = gamma[std::size_t(bp_index_of_knot(i + p))];
                for (int r = 1; r <= k; ++r)
                    rep[std::size_t(r - 1)] +=
                        sign * ps.omega[std::size_t(p)] * g[std::size_t(r - 1)][std::size_t(d)];
            }
        }
    }
}

std::vector<double> BSplineBasis::phi_coeffs(int i, int r) const {
    const auto& knots = partition_.knots();
    std::vector<double> c(std::size_t(r) - 1, 0.0);
    if (r == 1) return c;
    const EctSystem& rd = rebased_dual(bp_index_of_knot(i));
    DenseMatrix A(r - 1, r - 1);
    std::vector<double> rhs(std::size_t(r) - 1);
    for (int p = 0; p < r - 1; ++p) {
        double t = knots[std::size_t(i + p)];
        int d = count_equal(knots, i, i + p, t) - 1;
        rhs[std::size_t(p)] = -rd.u_jet(r, t, d)[std::size_t(d)];
        for (int j = 1; j <= r - 1; ++j) A.at(p, j - 1) = rd.u_jet(j, t, d)[std::size_t(d)];
    }
    DenseLU lu(std::move(A));
    if (lu.singular())
        throw std::runtime_error("BSplineBasis: singular system for phi coefficients");
    return lu.solve(rhs);
}

Jet BSplineBasis::phi_jet(int i, int r, double s, int orders) const {
    if (r < 1 || r > order() + 1)
        throw std::invalid_argument("BSplineBasis: phi order out of range");
    if (i < 0 || i + r - 2 > partition_.n() + order())
        throw std::invalid_argument("BSplineBasis: phi index out of range");
    const EctSystem& rd = rebased_dual(bp_index_of_knot(i));
    std::vector<double> c = phi_coeffs(i, r);
    Jet out = rd.u_jet(r, s, orders);
    for (int j = 1; j <= r - 1; ++j)
        jet::add_scaled(out, rd.u_jet(j, s, orders), c[std::size_t(j - 1)]);
    return out;
}

double BSplineBasis::phi(int i, int r, double s) const { return phi_jet(i, r, s, 0)[0]; }

void BSplineBasis::build_alphas() {
    const int k = order();
    const int n = partition_.n();
    const auto& knots = partition_.knots();
    alphas_.resize(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
        double t = knots[std::size_t(i + k)];
        int mu = count_equal(knots, i + 1, i + k - 1, t);
        double num = phi_jet(i, k + 1, t, mu)[std::size_t(mu)];
        double den = phi_jet(i + 1, k, t, mu)[std::size_t(mu)];
        if (den == 0.0)
            throw std::runtime_error(
                "BSplineBasis: degenerate knots, vanishing phi denominator at index " +
                std::to_string(i));
        double alpha = num / den;
        if (!(alpha > 0.0))
            throw std::runtime_error("BSplineBasis: nonpositive alpha (internal inconsistency)");
        alphas_[std::size_t(i)] = alpha;
    }
}

double BSplineBasis::m_spline(int i, double x) const {
    if (i < 0 || i >= count())
        throw std::invalid_argument("BSplineBasis: spline index out of range");
    if (x < partition_.a() || x > partition_.b()) return 0.0;
    int ell = partition_.interval_of(x);
    const int lo = support_begin(i), hi = support_end(i);
    if (ell < lo || ell > hi) return 0.0;
    const auto& rep = splines_[std::size_t(i)].rep[std::size_t(ell - lo)];
    double s = 0.0;
    for (int r = 1; r <= order(); ++r) s += rep[std::size_t(r - 1)] * sys_->u(r, x);
    return s;
}

double BSplineBasis::n_spline(int i, double x) const { return alpha(i) * m_spline(i, x); }

Jet BSplineBasis::m_jet(int i, double x, int orders) const {
    if (i < 0 || i >= count())
        throw std::invalid_argument("BSplineBasis: spline index out of range");
    Jet out(std::size_t(orders) + 1, 0.0);
    if (x < partition_.a() || x > partition_.b()) return out;
    int ell = partition_.interval_of(x);
    const int lo = support_begin(i), hi = support_end(i);
    if (ell < lo || ell > hi) return out;
    const auto& rep = splines_[std::size_t(i)].rep[std::size_t(ell - lo)];
    for (int r = 1; r <= order(); ++r)
        jet::add_scaled(out, sys_->u_jet(r, x, orders), rep[std::size_t(r - 1)]);
    return out;
}

std::vector<double> BSplineBasis::local_rep(int i, int ell) const {
    if (i < 0 || i >= count())
        throw std::invalid_argument("BSplineBasis: spline index out of range");
    if (ell < 0 || ell >= partition_.num_intervals())
        throw std::invalid_argument("BSplineBasis: interval index out of range");
    const int lo = support_begin(i), hi = support_end(i);
    if (ell < lo || ell > hi) return std::vector<double>(std::size_t(order()), 0.0);
    return splines_[std::size_t(i)].rep[std::size_t(ell - lo)];
}

std::vector<double> BSplineBasis::piecewise_u_coeffs(const std::vector<double>& coef,
                                                     int ell) const {
    if (int(coef.size()) != count())
        throw std::invalid_argument("BSplineBasis: coefficient count mismatch");
    if (ell < 0 || ell >= partition_.num_intervals())
        throw std::invalid_argument("BSplineBasis: interval index out of range");
    std::vector<double> out(std::size_t(order()), 0.0);
    for (int i = 0; i < count(); ++i) {
        if (coef[std::size_t(i)] == 0.0) continue;
        if (ell < support_begin(i) || ell > support_end(i)) continue;
        const auto& rep = splines_[std::size_t(i)].rep[std::size_t(ell - support_begin(i))];
        for (int r = 0; r < order(); ++r)
            out[std::size_t(r)] += coef[std::size_t(i)] * rep[std::size_t(r)];
    }
    return out;
}

double BSplineBasis::knot_functional(int i, const SmoothFn& f) const {
    if (i < 0 || i >= count())
        throw std::invalid_argument("BSplineBasis: spline index out of range");
    const auto& ps = splines_[std::size_t(i)];
    const auto& knots = partition_.knots();
    double s = 0.0;
    for (int p = 0; p <= order(); ++p) {
        int d = ps.conf[std::size_t(p)];
        s += ps.omega[std::size_t(p)] * f.jet(knots[std::size_t(i + p)], d)[std::size_t(d)];
    }
    return s;
}

double BSplineBasis::h_factor_generic(int i) const {
    const int k = order();
    const auto& knots = partition_.knots();
    const EctSystem& rd = rebased_dual(bp_index_of_knot(i));

    // dd over k knots with respect to the first k dual monomials, applied to
    // the top monomial; the rebasing offset cancels in the difference below
    auto subrange_dd = [&](int first) {
        std::vector<double> vals(knots.begin() + first, knots.begin() + first + k);
        KnotTuple t(std::move(vals));
        std::vector<SmoothFn> numer, denom;
        for (int j = 1; j < k; ++j) {
            numer.push_back(rd.monomial(j));
            denom.push_back(rd.monomial(j));
        }
        numer.push_back(rd.monomial(k + 1));
        denom.push_back(rd.monomial(k));
        DetResult dn = rd.collocation_det(t, numer, DetRows::Ordinary);
        DetResult dd = rd.collocation_det(t, denom, DetRows::Ordinary);
        if (dd.sign == 0)
            throw std::runtime_error("BSplineBasis: singular dd denominator (internal)");
        if (dn.sign == 0) return 0.0;
        return double(dn.sign * dd.sign) * std::exp(dn.log_abs - dd.log_abs);
    };
    return subrange_dd(i + 1) - subrange_dd(i);
}

double BSplineBasis::h_factor(int i) const {
    if (order() < 2) throw std::invalid_argument("BSplineBasis: h factor needs order >= 2");
    if (i < 0 || i >= count())
        throw std::invalid_argument("BSplineBasis: spline index out of range");
    double h = h_factor_generic(i);
    if (!(h > 0.0))
        throw std::runtime_error("BSplineBasis: nonpositive derivative factor (internal)");
    return h;
}

const BSplineBasis& BSplineBasis::ladder(int level) const {
    if (level < 1 || level > order())
        throw std::invalid_argument("BSplineBasis: ladder level out of range");
    if (level == order()) return *this;
    return lower_->ladder(level);
}

std::vector<double> BSplineBasis::derivative_coeffs(int ell, int j) const {
    const int k = order();
    const int n = partition_.n();
    if (ell < 0 || ell > k - 1)
        throw std::invalid_argument("BSplineBasis: derivative level out of range");
    if (j < 0 || j > n) throw std::invalid_argument("BSplineBasis: spline index out of range");

    // beta[m - j] is the coefficient of the order-(k - lev) spline with full
    // knot index m; entries of vanished boundary splines stay at zero
    std::vector<double> beta(std::size_t(ell) + 1, 0.0);
    beta[0] = 1.0;
    for (int lev = 1; lev <= ell; ++lev) {
        const int r = k - lev + 1;  // order being differentiated at this level
        const BSplineBasis& src = ladder(r);
        const int off = k - r;
        auto exists = [&](int m) { return m >= off && m - off < src.count(); };
        std::vector<double> next(std::size_t(ell) + 1, 0.0);
        for (int m = j; m <= j + lev; ++m) {
            double v = 0.0;
            if (m <= j + lev - 1 && exists(m) && beta[std::size_t(m - j)] != 0.0)
                v += beta[std::size_t(m - j)] / src.h_factor(m - off);
            if (m - 1 >= j && exists(m - 1) && beta[std::size_t(m - 1 - j)] != 0.0)
                v -= beta[std::size_t(m - 1 - j)] / src.h_factor(m - 1 - off);
            next[std::size_t(m - j)] = v;
        }
        const BSplineBasis& dst = ladder(k - lev);
        for (int m = j; m <= j + lev; ++m)
            if (m < lev || m - lev >= dst.count()) next[std::size_t(m - j)] = 0.0;
        beta = std::move(next);
    }
    return beta;
}

double BSplineBasis::iterated_derivative(int ell, int j, double x) const {
    if (ell == 0) return m_spline(j, x);
    std::vector<double> beta = derivative_coeffs(ell, j);
    const BSplineBasis& dst = ladder(order() - ell);
    double s = 0.0;
    for (int m = j; m <= j + ell; ++m) {
        double c = beta[std::size_t(m - j)];
        if (c == 0.0) continue;
        s += c * dst.m_spline(m - ell, x);
    }
    return s;
}

double BSplineBasis::derivative_m(int i, double x) const { return iterated_derivative(1, i, x); }

std::pair<double, double> BSplineBasis::dual_interval(int i) const {
    const auto& bp = partition_.breakpoints();
    int best = support_begin(i);
    for (int ell = support_begin(i); ell <= support_end(i); ++ell)
        if (bp[std::size_t(ell) + 1] - bp[std::size_t(ell)] >
            bp[std::size_t(best) + 1] - bp[std::size_t(best)])
            best = ell;
    return {bp[std::size_t(best)], bp[std::size_t(best) + 1]};
}

Jet BSplineBasis::dual_kernel_jet(int i, double x, int orders) const {
    auto [lo, hi] = dual_interval(i);
    Jet g = cutoff_jet(cutoff_, order(), lo, hi - lo, x, orders);
    const EctSystem& rd = rebased_dual(bp_index_of_knot(i + 1));
    const auto& c = phi_k_cache_[std::size_t(i) + 1];
    Jet p = rd.u_jet(order(), x, orders);
    for (int j = 1; j <= order() - 1; ++j)
        jet::add_scaled(p, rd.u_jet(j, x, orders), c[std::size_t(j - 1)]);
    return jet::scaled(jet::product(p, g), alpha(i));
}

double BSplineBasis::dual_kernel(int i, double x) const {
    if (i < 0 || i >= count())
        throw std::invalid_argument("BSplineBasis: spline index out of range");
    SmoothFn psi = make_smooth(
        [this, i](double t, int d) { return dual_kernel_jet(i, t, d)[std::size_t(d)]; },
        kUnlimitedDerivs, "psi");
    return dual_->apply_chain(order(), psi, x);
}

double BSplineBasis::dual_apply(int i, const RealFn& f) const {
    if (i < 0 || i >= count())
        throw std::invalid_argument("BSplineBasis: spline index out of range");
    const auto& bp = partition_.breakpoints();
    const int rule = std::max(2 * order(), 16);
    const int sub = 4;  // composite panels, needed for the non-polynomial cutoff
    double s = 0.0;
    for (int ell = support_begin(i); ell <= support_end(i); ++ell) {
        double lo = bp[std::size_t(ell)], w = (bp[std::size_t(ell) + 1] - lo) / sub;
        for (int q = 0; q < sub; ++q)
            s += gauss_integrate([&](double x) { return f(x) * dual_kernel(i, x); }, lo + q * w,
                                 lo + (q + 1) * w, rule);
    }
    return s / alpha(i);
}

std::vector<double> BSplineBasis::interpolate(const std::vector<double>& points,
                                              const std::vector<double>& values) const {
    const int n1 = count();
    if (int(points.size()) != n1 || int(values.size()) != n1)
        throw std::invalid_argument("BSplineBasis: need exactly one point and value per spline");
    const auto& knots = partition_.knots();
    for (int i = 0; i < n1; ++i) {
        double y = points[std::size_t(i)];
        if (!(knots[std::size_t(i)] < y && y < knots[std::size_t(i) + std::size_t(order())]))
            throw std::invalid_argument(
                "BSplineBasis: interpolation point " + std::to_string(i) +
                " violates the interlacing condition, collocation would be singular");
        if (i > 0 && !(points[std::size_t(i) - 1] < y))
            throw std::invalid_argument("BSplineBasis: interpolation points must increase");
    }
    DenseMatrix c(n1, n1);
    for (int r = 0; r < n1; ++r)
        for (int j = 0; j < n1; ++j) c.at(r, j) = m_spline(j, points[std::size_t(r)]);
    DenseLU lu(std::move(c));
    if (lu.singular()) throw std::runtime_error("BSplineBasis: singular collocation system");
    return lu.solve(values);
}

}  // namespace chebproj
