#include "chebproj/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "chebproj/jet.hpp"
#include "chebproj/linalg.hpp"
#include "chebproj/quadrature.hpp"

namespace chebproj {

namespace {

std::vector<Weight> boundary_vector(const WeightSystem& w) {
    const int k = w.order();
    std::vector<Weight> v;
    v.reserve(std::size_t(2 * k - 1));
    v.push_back(Weight::from_closed_form(ExpPoly::constant(w.a(), w.b(), 1.0), "1"));
    for (int i = k; i >= 2; --i) v.push_back(w.weight(i));
    for (int i = 2; i <= k; ++i) v.push_back(w.weight(i));
    return v;
}

// divisor index of step s (1-based) in the operator chain: the chain divides
// by 1, w_k, ..., w_2, then w_2, ..., w_k, differentiating after each division
int divisor_index(int k, int s) { return s <= k ? k + 2 - s : s - k + 1; }

// truncated Taylor arithmetic for the local monomial series
std::vector<double> series_product(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<double> series_integral(const std::vector<double>& a) {
    std::vector<double> out(a.size(), 0.0);
    for (std::size_t n = 0; n + 1 < a.size(); ++n) out[n + 1] = a[n] / double(n + 1);
    return out;
}

// chain values L_0 u_r, ..., L_top u_r at x through a local basis; divisions
// use the weight vector directly. L_d u_r vanishes identically for d >= r, so
// rows built from these values keep the triangular structure of the system.
void chain_ladder(const LocalBasis& lb, const WeightSystem& v, int top, int r, double x,
                  std::vector<double>& out) {
    Jet cur = lb.u_jet(r, x, top);
    out.assign(std::size_t(top) + 1, 0.0);
    out[0] = cur[0];
    for (int i = 1; i <= top; ++i) {
        Jet w = v.weight(i).fn.jet(x, int(cur.size()) - 1);
        cur = jet::derivative(jet::quotient(cur, w));
        out[std::size_t(i)] = cur[0];
    }
}

}  // namespace

LocalBasis::LocalBasis(const WeightSystem& weights, double base, double radius) : base_(base) {
    const int k = weights.order();
    if (!(radius > 0.0)) throw std::invalid_argument("LocalBasis: radius must be positive");
    for (int terms = 48;; terms *= 2) {
        std::vector<std::vector<double>> w;
        w.resize(std::size_t(k));
        for (int j = 1; j <= k; ++j) {
            const Jet jw = weights.weight(j).fn.jet(base, terms - 1);
            std::vector<double> s(std::size_t(terms), 0.0);
            double fact = 1.0;
            for (int n = 0; n < terms; ++n) {
                if (n > 0) fact *= double(n);
                s[std::size_t(n)] = jw[std::size_t(n)] / fact;
            }
            w[std::size_t(j - 1)] = std::move(s);
        }
        coef_.clear();
        for (int i = 1; i <= k; ++i) {
            std::vector<double> inner(std::size_t(terms), 0.0);
            inner[0] = 1.0;
            for (int j = i; j >= 2; --j)
                inner = series_integral(series_product(w[std::size_t(j - 1)], inner));
            coef_.push_back(series_product(w[0], inner));
        }
        bool ok = true;
        for (const auto& c : coef_) {
            double peak = 0.0, tail = 0.0, p = 1.0;
            for (std::size_t n = 0; n < c.size(); ++n) {
                const double mag = std::abs(c[n]) * p;
                peak = std::max(peak, mag);
                if (n + 2 >= c.size()) tail = std::max(tail, mag);
                p *= radius;
            }
            if (tail > 1e-16 * peak) ok = false;
        }
        if (ok) return;
        if (terms >= 192)
            throw std::runtime_error("LocalBasis: series did not converge over the interval");
    }
}

double LocalBasis::u(int r, double x) const {
    if (r < 1 || r > size()) throw std::invalid_argument("LocalBasis: monomial index out of range");
    const std::vector<double>& c = coef_[std::size_t(r - 1)];
    const double t = x - base_;
    double s = 0.0;
    for (std::size_t n = c.size(); n-- > 0;) s = s * t + c[n];
    return s;
}

Jet LocalBasis::u_jet(int r, double x, int orders) const {
    if (r < 1 || r > size()) throw std::invalid_argument("LocalBasis: monomial index out of range");
    if (orders < 0) throw std::invalid_argument("LocalBasis: negative derivative order");
    const std::vector<double>& c = coef_[std::size_t(r - 1)];
    const double t = x - base_;
    Jet out(std::size_t(orders) + 1, 0.0);
    for (int d = 0; d <= orders; ++d) {
        double s = 0.0;
        for (std::size_t n = c.size(); n-- > std::size_t(d);) {
            double f = 1.0;
            for (int q = 0; q < d; ++q) f *= double(n - std::size_t(q));
            s = s * t + c[n] * f;
        }
        out[std::size_t(d)] = s;
    }
    return out;
}

SigmaSystem::SigmaSystem(const WeightSystem& weights, const Partition& partition)
    : k_(weights.order()), primary_(weights) {
    if (k_ < 2)
        throw std::invalid_argument("SigmaSystem: the construction needs order at least two");
    if (partition.order() != k_)
        throw std::invalid_argument("SigmaSystem: partition order does not match the weights");
    WeightSystem v = WeightSystem::derived(weights.a(), weights.b(), boundary_vector(weights),
                                           weights.preset_tag() + "-boundary");
    Partition wide(partition.breakpoints(), 2 * k_ - 1);
    rebased_.reserve(std::size_t(wide.num_intervals()));
    const std::vector<double>& bp = wide.breakpoints();
    for (int ell = 0; ell < wide.num_intervals(); ++ell)
        rebased_.emplace_back(v, bp[std::size_t(ell)],
                              bp[std::size_t(ell) + 1] - bp[std::size_t(ell)]);
    basis_ = std::make_unique<BSplineBasis>(std::move(wide), std::move(v));
}

SigmaSystem::~SigmaSystem() = default;
SigmaSystem::SigmaSystem(SigmaSystem&&) noexcept = default;

const WeightSystem& SigmaSystem::weights() const { return basis_->weight_system(); }
const Partition& SigmaSystem::partition() const { return basis_->partition(); }

const LocalBasis& SigmaSystem::rebased(int ell) const {
    if (ell < 0 || ell >= int(rebased_.size()))
        throw std::invalid_argument("SigmaSystem: interval index out of range");
    return rebased_[std::size_t(ell)];
}

double SigmaSystem::kernel_residual() const {
    const int kk = 2 * k_ - 1;
    const EctSystem& sys = basis_->system();
    const Partition& part = basis_->partition();
    double worst = 0.0;
    for (int ell = 0; ell < part.num_intervals(); ++ell) {
        const double lo = part.breakpoints()[std::size_t(ell)];
        const double len = part.breakpoints()[std::size_t(ell) + 1] - lo;
        for (int q = 0; q < 4; ++q) {
            const double x = lo + (q + 0.5) / 4.0 * len;
            for (int i = 1; i <= kk; ++i) {
                Jet cur = sys.u_jet(i, x, kk);
                double ref = 1.0;
                for (int s = 1; s <= kk; ++s) {
                    if (s > 1) {
                        const Weight& d = primary_.weight(divisor_index(k_, s));
                        cur = jet::quotient(cur, d.fn.jet(x, int(cur.size()) - 1));
                    }
                    cur = jet::derivative(cur);
                    ref = std::max(ref, std::abs(cur[0]));
                }
                worst = std::max(worst, std::abs(cur[0]) / ref);
            }
        }
    }
    return worst;
}

SigmaSpline::SigmaSpline(const SigmaSystem& sys) : sys_(sys) {
    const BSplineBasis& bas = sys.basis();
    const int k = sys.primary_order();
    const int kk = sys.order();
    const Partition& part = bas.partition();
    const int m = part.num_intervals();
    const int count = bas.count();

    coef_.assign(std::size_t(count), 0.0);

    // chain-order zeros at a force the leading k-1 coefficients to vanish;
    // the normalization S_{k-1} sigma(a) = 1 then pins the next one. The
    // chain value of M_{k-1} at a comes from its local representation; the
    // chain annihilates the first k-1 monomials exactly.
    const std::vector<double> repm = bas.local_rep(k - 1, 0);
    double den = 0.0;
    for (int r = k; r <= kk; ++r)
        if (repm[std::size_t(r - 1)] != 0.0)
            den += repm[std::size_t(r - 1)] * bas.system().chain_u(k - 1, r, part.a());
    if (!(std::abs(den) > 0.0))
        throw std::runtime_error("SigmaSpline: degenerate normalization at the left endpoint");
    coef_[std::size_t(k - 1)] = 1.0 / den;

    // chain-order zeros at b force the trailing k-1 coefficients to vanish;
    // the remaining m-1 coefficients come from collocation at the interior
    // breakpoints
    if (m > 1) {
        const int cnt = m - 1;
        DenseMatrix mat(cnt, cnt);
        std::vector<double> rhs(std::size_t(cnt), 0.0);
        for (int i = 1; i < m; ++i) {
            const double tj = part.breakpoints()[std::size_t(i)];
            for (int j = 0; j < cnt; ++j) mat.at(i - 1, j) = bas.m_spline(k + j, tj);
            rhs[std::size_t(i - 1)] = -coef_[std::size_t(k - 1)] * bas.m_spline(k - 1, tj);
        }
        DenseLU lu(std::move(mat));
        if (lu.singular())
            throw std::runtime_error("SigmaSpline: interior collocation system is singular");
        const std::vector<double> sol = lu.solve(rhs);
        for (int j = 0; j < cnt; ++j) coef_[std::size_t(k + j)] = sol[std::size_t(j)];
    }

    build_piecewise();
}

// The defining conditions assembled directly in the rebased per-interval
// representation: smoothness across each interior breakpoint, a zero there,
// chain-order zeros at both endpoints, and the normalization. One row block
// per knot keeps the system banded; rebasing keeps every entry locally
// scaled, so the solve stays accurate on fine meshes.
void SigmaSpline::build_piecewise() {
    const int k = sys_.primary_order();
    const int kk = sys_.order();
    const Partition& part = sys_.partition();
    const std::vector<double>& bp = part.breakpoints();
    const int m = part.num_intervals();
    const int nn = m * kk;

    // columns scale as h^{r-1} so the band stays well conditioned on fine meshes
    std::vector<double> cscale(std::size_t(nn), 1.0);
    for (int ell = 0; ell < m; ++ell) {
        const double h = bp[std::size_t(ell) + 1] - bp[std::size_t(ell)];
        double p = 1.0;
        for (int r = 1; r <= kk; ++r, p *= h) cscale[std::size_t(ell * kk + r - 1)] = p;
    }

    BandedGeneral mat(nn, k + kk - 2, 2 * kk - 1 - k);
    std::vector<double> rhs(std::size_t(nn), 0.0);
    const WeightSystem& v = sys_.weights();
    int row = 0;

    // at a: L_i sigma = 0 for i < k-1 and L_{k-1} sigma = 1
    const LocalBasis& s0 = sys_.rebased(0);
    std::vector<double> lad;
    for (int r = 1; r <= kk; ++r) {
        chain_ladder(s0, v, k - 1, r, part.a(), lad);
        for (int i = 0; i < k; ++i)
            mat.at(row + i, r - 1) = cscale[std::size_t(r - 1)] * lad[std::size_t(i)];
    }
    row += k;
    rhs[std::size_t(row - 1)] = 1.0;

    // at each interior knot: continuity of the chain values 0..2k-3 and a
    // zero of sigma, written in the right interval's representation
    for (int i = 1; i < m; ++i) {
        const double t = bp[std::size_t(i)];
        const LocalBasis& sl = sys_.rebased(i - 1);
        const LocalBasis& sr = sys_.rebased(i);
        const int cl = (i - 1) * kk, cr = i * kk;
        for (int r = 1; r <= kk; ++r) {
            chain_ladder(sl, v, kk - 2, r, t, lad);
            for (int d = 0; d <= kk - 2; ++d)
                mat.at(row + d, cl + r - 1) = cscale[std::size_t(cl + r - 1)] * lad[std::size_t(d)];
            chain_ladder(sr, v, kk - 2, r, t, lad);
            for (int d = 0; d <= kk - 2; ++d)
                mat.at(row + d, cr + r - 1) = -cscale[std::size_t(cr + r - 1)] * lad[std::size_t(d)];
        }
        row += kk - 1;
        for (int r = 1; r <= kk; ++r)
            mat.at(row, cr + r - 1) = cscale[std::size_t(cr + r - 1)] * sr.u(r, t);
        ++row;
    }

    // at b: L_i sigma = 0 for i < k-1
    const LocalBasis& sm = sys_.rebased(m - 1);
    for (int r = 1; r <= kk; ++r) {
        chain_ladder(sm, v, k - 2, r, part.b(), lad);
        for (int i = 0; i < k - 1; ++i)
            mat.at(row + i, (m - 1) * kk + r - 1) =
                cscale[std::size_t((m - 1) * kk + r - 1)] * lad[std::size_t(i)];
    }
    row += k - 1;

    BandedLU lu(mat);
    if (lu.singular())
        throw std::runtime_error("SigmaSpline: piecewise collocation system is singular");
    std::vector<double> sol = lu.solve(rhs);
    for (int c = 0; c < nn; ++c) sol[std::size_t(c)] *= cscale[std::size_t(c)];
    locals_.assign(std::size_t(m), {});
    for (int ell = 0; ell < m; ++ell)
        locals_[std::size_t(ell)].assign(sol.begin() + std::ptrdiff_t(ell) * kk,
                                         sol.begin() + std::ptrdiff_t(ell + 1) * kk);
}

void SigmaSpline::chain_values(double x, int top, std::vector<double>& out) const {
    const int kk = sys_.order();
    const WeightSystem& v = sys_.weights();
    const int ell = sys_.partition().interval_of(x);
    const LocalBasis& sys = sys_.rebased(ell);
    const std::vector<double>& c = locals_[std::size_t(ell)];
    Jet cur(std::size_t(top) + 1, 0.0);
    for (int r = 1; r <= kk; ++r)
        if (c[std::size_t(r - 1)] != 0.0)
            jet::add_scaled(cur, sys.u_jet(r, x, top), c[std::size_t(r - 1)]);
    out.assign(std::size_t(top) + 1, 0.0);
    out[0] = cur[0];
    for (int i = 1; i <= top; ++i) {
        Jet w = v.weight(i).fn.jet(x, int(cur.size()) - 1);
        cur = jet::derivative(jet::quotient(cur, w));
        out[std::size_t(i)] = cur[0];
    }
}

double SigmaSpline::chain_sigma(int i, double x) const {
    if (i < 0 || i >= sys_.order())
        throw std::invalid_argument("SigmaSpline: chain level out of range");
    std::vector<double> vals;
    chain_values(x, i, vals);
    return vals[std::size_t(i)];
}

double SigmaSpline::sigma(double x) const {
    const int kk = sys_.order();
    const int ell = sys_.partition().interval_of(x);
    const LocalBasis& sys = sys_.rebased(ell);
    const std::vector<double>& c = locals_[std::size_t(ell)];
    double s = 0.0;
    for (int r = 1; r <= kk; ++r) s += c[std::size_t(r - 1)] * sys.u(r, x);
    return s;
}

double SigmaSpline::phi(double x) const {
    const WeightSystem& w = sys_.primary_weights();
    std::vector<double> vals;
    chain_values(x, sys_.primary_order() - 1, vals);
    return w.weight(1).fn.eval(x, 0) / w.weight(2).fn.eval(x, 0) * vals.back();
}

double SigmaSpline::conserved(double x) const {
    const int k = sys_.primary_order();
    std::vector<double> vals;
    chain_values(x, 2 * k - 2, vals);
    const WeightSystem& w = sys_.primary_weights();
    auto wv = [&](int i) { return i == k + 1 ? 1.0 : w.weight(i).fn.eval(x, 0); };
    const double mid = vals[std::size_t(k - 1)] / wv(2);
    double h = mid * mid;
    double sign = -1.0;
    for (int q = 1; q <= k - 1; ++q) {
        h += 2.0 * sign * (vals[std::size_t(k - 1 - q)] / wv(q + 2)) *
             (vals[std::size_t(k - 1 + q)] / wv(q + 1));
        sign = -sign;
    }
    return h;
}

double SigmaSpline::conserved_reference() const {
    const double w2a =
        sys_.primary_weights().weight(2).fn.eval(sys_.primary_weights().a(), 0);
    return 1.0 / (w2a * w2a);
}

std::vector<double> SigmaSpline::phi_products(const BSplineBasis& primary_basis) const {
    const int k = sys_.primary_order();
    if (primary_basis.order() != k)
        throw std::invalid_argument("SigmaSpline: basis order does not match the system");
    if (primary_basis.partition().breakpoints() != sys_.partition().breakpoints())
        throw std::invalid_argument("SigmaSpline: basis breakpoints do not match the system");
    const std::vector<double>& bp = primary_basis.partition().breakpoints();
    const int rule = std::max(2 * k + 2, 20);
    std::vector<double> out(std::size_t(primary_basis.count()), 0.0);
    for (int j = 0; j < primary_basis.count(); ++j) {
        double s = 0.0;
        for (int ell = primary_basis.support_begin(j); ell <= primary_basis.support_end(j);
             ++ell) {
            auto f = [&](double x) { return phi(x) * primary_basis.m_spline(j, x); };
            s += gauss_integrate(f, bp[std::size_t(ell)], bp[std::size_t(ell) + 1], rule);
        }
        out[std::size_t(j)] = s;
    }
    return out;
}

std::vector<double> SigmaSpline::l1_profile() const {
    const int k = sys_.primary_order();
    const Partition& part = sys_.partition();
    const std::vector<double>& bp = part.breakpoints();
    std::vector<double> out(std::size_t(part.num_intervals()), 0.0);
    for (int ell = 0; ell < part.num_intervals(); ++ell) {
        const double lo = bp[std::size_t(ell)];
        const double hi = bp[std::size_t(ell) + 1];
        auto f = [&](double x) { return sigma(x); };
        const double mass =
            integrate_abs(f, lo, hi, std::max(4 * k, 8), std::max(2 * k, 16), 1e-12);
        out[std::size_t(ell)] = mass / std::pow(hi - lo, double(k));
    }
    return out;
}

}  // namespace chebproj
