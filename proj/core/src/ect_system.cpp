#include "chebproj/ect_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chebproj/cheb_table.hpp"
#include "chebproj/exp_poly.hpp"

namespace chebproj {

/// Evaluation engine behind EctSystem: supplies derivative jets of the
/// generalized monomials. Two implementations: exact closed forms for preset
/// weights, tabulated nested integrals for custom ones.
class EvalBackend {
  public:
    virtual ~EvalBackend() = default;
    virtual Jet u_jet(int i, double x, int orders) const = 0;
    virtual int max_jet_order(int i) const = 0;
    /// Allocation-free value path for evaluation-heavy loops.
    virtual double u_value(int i, double x) const { return u_jet(i, x, 0)[0]; }
    /// Antiderivative of u_i vanishing at the base point.
    virtual double u_antideriv(int i, double x) const = 0;
};

namespace {

ExpPoly integral_from(const ExpPoly& p, double t0) {
    ExpPoly f = p.integral_from_a();
    return f + ExpPoly::constant(f.a(), f.b(), -f.eval(t0));
}

class AnalyticBackend final : public EvalBackend {
  public:
    AnalyticBackend(const WeightSystem& ws, double base) {
        const double a = ws.a(), b = ws.b();
        for (int i = 1; i <= ws.order(); ++i) {
            ExpPoly inner = ExpPoly::constant(a, b, 1.0);
            for (int j = i; j >= 2; --j)
                inner = integral_from(*ws.weight(j).closed_form * inner, base);
            us_.push_back(*ws.weight(1).closed_form * inner);
            prims_.push_back(integral_from(us_.back(), base));
        }
    }

    Jet u_jet(int i, double x, int orders) const override {
        return us_[std::size_t(i - 1)].eval_jet(x, orders);
    }
    int max_jet_order(int) const override { return kUnlimitedDerivs; }
    double u_value(int i, double x) const override { return us_[std::size_t(i - 1)].eval(x); }
    double u_antideriv(int i, double x) const override {
        return prims_[std::size_t(i - 1)].eval(x);
    }

    const ExpPoly& closed_form(int i) const { return us_[std::size_t(i - 1)]; }

  private:
    std::vector<ExpPoly> us_;
    std::vector<ExpPoly> prims_;
};

class TabulatedBackend final : public EvalBackend {
  public:
    TabulatedBackend(const WeightSystem& ws, double base, int panels, int degree)
        : ws_(ws), base_(base) {
        auto edges = ChebTable::uniform_edges(ws.a(), ws.b(), panels);
        const int k = ws.order();
        towers_.resize(std::size_t(k));
        for (int i = 1; i <= k; ++i) {
            // levels stored innermost-last: tower[j - 2] holds the running
            // integral whose integrand involves w_j, ..., w_i
            auto& tower = towers_[std::size_t(i - 1)];
            tower.reserve(std::size_t(std::max(0, i - 1)));
            for (int j = i; j >= 2; --j) {
                const SmoothFn& wj = ws_.weight(j).fn;
                if (j == i) {
                    ChebTable raw(edges, degree, [&](double x) { return wj(x); });
                    tower.push_back(rebase(raw));
                } else {
                    const ChebTable& prev = tower.back();
                    ChebTable raw(edges, degree,
                                  [&](double x) { return wj(x) * prev.eval(x); });
                    tower.push_back(rebase(raw));
                }
            }
            std::reverse(tower.begin(), tower.end());
        }
        for (int i = 1; i <= k; ++i) {
            ChebTable raw(edges, degree, [&](double x) { return u_value(i, x); });
            prims_.push_back(rebase(raw));
        }
    }

    Jet u_jet(int i, double x, int orders) const override {
        if (orders > max_jet_order(i))
            throw std::invalid_argument(
                "EctSystem: derivative order " + std::to_string(orders) + " of u_" +
                std::to_string(i) + " exceeds the declared weight smoothness");
        Jet w1 = ws_.weight(1).fn.jet(x, orders);
        return jet::product(w1, level_jet(i, 2, x, orders));
    }

    int max_jet_order(int i) const override {
        int cap = kUnlimitedDerivs;
        for (int j = 1; j <= i; ++j) {
            int md = ws_.weight(j).fn.max_deriv;
            if (md < kUnlimitedDerivs - (j - 1)) cap = std::min(cap, md + j - 1);
        }
        return cap;
    }

    double u_value(int i, double x) const override {
        if (i == 1) return ws_.weight(1).fn(x);
        return ws_.weight(1).fn(x) * towers_[std::size_t(i - 1)].front().eval(x);
    }
    double u_antideriv(int i, double x) const override {
        return prims_[std::size_t(i - 1)].eval(x);
    }

  private:
    ChebTable rebase(const ChebTable& raw) const {
        ChebTable f = raw.antiderivative(0.0);
        return f.shifted(-f.eval(base_));
    }

    // jet of the nested integral whose outermost level multiplies w_level
    Jet level_jet(int i, int level, double x, int orders) const {
        if (level > i) {
            Jet one(std::size_t(orders) + 1, 0.0);
            one[0] = 1.0;
            return one;
        }
        Jet out(std::size_t(orders) + 1, 0.0);
        out[0] = towers_[std::size_t(i - 1)][std::size_t(level - 2)].eval(x);
        if (orders >= 1) {
            Jet w = ws_.weight(level).fn.jet(x, orders - 1);
            Jet inner = level_jet(i, level + 1, x, orders - 1);
            Jet prod = jet::product(w, inner);
            for (int q = 0; q < orders; ++q) out[std::size_t(q + 1)] = prod[std::size_t(q)];
        }
        return out;
    }

    WeightSystem ws_;
    double base_;
    std::vector<std::vector<ChebTable>> towers_;
    std::vector<ChebTable> prims_;
};

constexpr int kCoarsePanels = 64;
constexpr int kTableDegree = 24;
constexpr double kTabulationTol = 1e-10;

std::unique_ptr<EvalBackend> make_backend(const WeightSystem& ws, double base) {
    if (ws.analytic()) return std::make_unique<AnalyticBackend>(ws, base);
    auto coarse = std::make_unique<TabulatedBackend>(ws, base, kCoarsePanels, kTableDegree);
    auto fine = std::make_unique<TabulatedBackend>(ws, base, 2 * kCoarsePanels, kTableDegree);
    // convergence probe: one panel-halving step must agree to tolerance
    for (int i = 1; i <= ws.order(); ++i) {
        double scale = 1.0;
        for (int s = 0; s <= 32; ++s) {
            double x = ws.a() + (ws.b() - ws.a()) * double(s) / 32.0;
            scale = std::max(scale, std::abs(fine->u_value(i, x)));
        }
        for (int s = 0; s <= 32; ++s) {
            double x = ws.a() + (ws.b() - ws.a()) * double(s) / 32.0;
            double diff = std::abs(fine->u_value(i, x) - coarse->u_value(i, x));
            if (diff > kTabulationTol * scale)
                throw std::runtime_error(
                    "EctSystem: tabulated monomial u_" + std::to_string(i) +
                    " failed the convergence check (difference " + std::to_string(diff) + ")");
        }
    }
    return fine;
}

}  // namespace

EctSystem::EctSystem(WeightSystem ws) : EctSystem(ws, ws.a()) {}

EctSystem::EctSystem(WeightSystem ws, double base)
    : ws_(std::move(ws)), base_(base), backend_(make_backend(ws_, base)) {}

EctSystem::~EctSystem() = default;
EctSystem::EctSystem(EctSystem&&) noexcept = default;
EctSystem& EctSystem::operator=(EctSystem&&) noexcept = default;

int EctSystem::size() const { return ws_.order(); }
double EctSystem::a() const { return ws_.a(); }
double EctSystem::b() const { return ws_.b(); }
double EctSystem::base() const { return base_; }
const WeightSystem& EctSystem::weights() const { return ws_; }

double EctSystem::u(int i, double x) const {
    if (i < 1 || i > size()) throw std::invalid_argument("EctSystem: monomial index out of range");
    return backend_->u_value(i, x);
}

double EctSystem::u_antideriv(int i, double x) const {
    if (i < 1 || i > size()) throw std::invalid_argument("EctSystem: monomial index out of range");
    return backend_->u_antideriv(i, x);
}

Jet EctSystem::u_jet(int i, double x, int orders) const {
    if (i < 1 || i > size()) throw std::invalid_argument("EctSystem: monomial index out of range");
    if (orders < 0) throw std::invalid_argument("EctSystem: negative derivative order");
    return backend_->u_jet(i, x, orders);
}

SmoothFn EctSystem::monomial(int i) const {
    if (i < 1 || i > size()) throw std::invalid_argument("EctSystem: monomial index out of range");
    const EvalBackend* bp = backend_.get();
    return make_smooth([bp, i](double x, int d) { return bp->u_jet(i, x, d)[std::size_t(d)]; },
                       backend_->max_jet_order(i), "u_" + std::to_string(i));
}

int EctSystem::max_jet_order(int i) const { return backend_->max_jet_order(i); }

namespace {

// applies D_j ... D_1 in jet space: each step divides by the weight jet and
// shifts down one derivative order
Jet chain_reduce(const WeightSystem& ws, int j, Jet g, double x) {
    for (int i = 1; i <= j; ++i) {
        Jet w = ws.weight(i).fn.jet(x, int(g.size()) - 1);
        g = jet::derivative(jet::quotient(g, w));
    }
    return g;
}

}  // namespace

Jet EctSystem::apply_chain_jet(int j, const SmoothFn& f, double x, int orders) const {
    if (j < 0 || j > size()) throw std::invalid_argument("EctSystem: chain order out of range");
    return chain_reduce(ws_, j, f.jet(x, j + orders), x);
}

double EctSystem::apply_chain(int j, const SmoothFn& f, double x) const {
    return apply_chain_jet(j, f, x, 0)[0];
}

Jet EctSystem::chain_u_jet(int j, int i, double x, int orders) const {
    if (j < 0 || j > size()) throw std::invalid_argument("EctSystem: chain order out of range");
    return chain_reduce(ws_, j, u_jet(i, x, j + orders), x);
}

double EctSystem::chain_u(int j, int i, double x) const { return chain_u_jet(j, i, x, 0)[0]; }

std::vector<Jet> EctSystem::green_coeffs(int j, double y, int orders) const {
    if (j < 1 || j > size()) throw std::invalid_argument("EctSystem: green kernel order out of range");
    // initial-value system at x = y: rows r = 0..j-1 demand
    // L_r h(., y)(y) = 0 (r < j-1) and L_{j-1} h(., y)(y) = w_j(y)
    std::vector<std::vector<Jet>> A;
    A.assign(std::size_t(j), std::vector<Jet>(std::size_t(j)));
    for (int r = 0; r < j; ++r)
        for (int c = 1; c <= j; ++c) A[std::size_t(r)][std::size_t(c - 1)] = chain_u_jet(r, c, y, orders);
    Jet wj = ws_.weight(j).fn.jet(y, orders);

    std::vector<Jet> gamma(std::size_t(j), Jet(std::size_t(orders) + 1, 0.0));
    for (int p = 0; p <= orders; ++p) {
        std::vector<double> rhs(std::size_t(j), 0.0);
        rhs[std::size_t(j - 1)] = wj[std::size_t(p)];
        for (int q = 1; q <= p; ++q) {
            double bc = jet::binom(p, q);
            for (int r = 0; r < j; ++r) {
                double s = 0.0;
                for (int c = 0; c < j; ++c)
                    s += A[std::size_t(r)][std::size_t(c)][std::size_t(q)] *
                         gamma[std::size_t(c)][std::size_t(p - q)];
                rhs[std::size_t(r)] -= bc * s;
            }
        }
        // A(0) is upper triangular against the shifted column index: entry
        // (r, c) vanishes for r > c and the diagonal is w_{r+1}(y) > 0
        for (int r = j - 1; r >= 0; --r) {
            double s = rhs[std::size_t(r)];
            for (int c = r + 1; c < j; ++c)
                s -= A[std::size_t(r)][std::size_t(c)][0] * gamma[std::size_t(c)][std::size_t(p)];
            gamma[std::size_t(r)][std::size_t(p)] = s / A[std::size_t(r)][std::size_t(r)][0];
        }
    }
    return gamma;
}

double EctSystem::green(int j, double x, double y, bool truncated) const {
    if (x < a() || x > b() || y < a() || y > b())
        throw std::invalid_argument("EctSystem: green kernel arguments outside the interval");
    if (truncated && x < y) return 0.0;
    std::vector<Jet> gamma = green_coeffs(j, y, 0);
    double s = 0.0;
    for (int r = 1; r <= j; ++r) s += gamma[std::size_t(r - 1)][0] * u(r, x);
    return s;
}

DetResult EctSystem::collocation_det(const KnotTuple& knots, const std::vector<SmoothFn>& funcs,
                                     DetRows mode) const {
    const int n = knots.size();
    if (int(funcs.size()) != n)
        throw std::invalid_argument("EctSystem: knot count and function count differ");
    if (knots.max_multiplicity() > size())
        throw std::invalid_argument("EctSystem: knot multiplicity exceeds system order");
    DenseMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const double t = knots.value(r);
        const int d = knots.confluence_at(r);
        for (int c = 0; c < n; ++c)
            m.at(r, c) = (mode == DetRows::Ordinary) ? funcs[std::size_t(c)].jet(t, d)[std::size_t(d)]
                                                     : apply_chain(d, funcs[std::size_t(c)], t);
    }
    return DenseLU(std::move(m)).determinant();
}

DetResult EctSystem::collocation_det(const KnotTuple& knots, DetRows mode) const {
    const int n = knots.size();
    if (n > size())
        throw std::invalid_argument("EctSystem: more knots than monomials");
    std::vector<SmoothFn> funcs;
    funcs.reserve(std::size_t(n));
    for (int i = 1; i <= n; ++i) funcs.push_back(monomial(i));
    return collocation_det(knots, funcs, mode);
}

DualEctSystem::DualEctSystem(const WeightSystem& primal)
    : DualEctSystem(primal, primal.a()) {}

DualEctSystem::DualEctSystem(const WeightSystem& primal, double base)
    : k_(primal.order()), primal_(primal), sys_(primal.dual(), base) {}

double DualEctSystem::u_star(int i, double x) const { return sys_.u(i, x); }

Jet DualEctSystem::u_star_jet(int i, double x, int orders) const { return sys_.u_jet(i, x, orders); }

SmoothFn DualEctSystem::monomial_star(int i) const { return sys_.monomial(i); }

Jet DualEctSystem::apply_chain_jet(int i, const SmoothFn& f, double x, int orders) const {
    if (i == 0) return f.jet(x, orders);
    if (i < 1 || i > k_) throw std::invalid_argument("DualEctSystem: chain order out of range");
    // L*_i f = (chain of the reversed-extended system of length i) / w_{k-i+1}
    Jet g = sys_.apply_chain_jet(i, f, x, orders);
    Jet w = primal_.weight(k_ - i + 1).fn.jet(x, orders);
    return jet::quotient(g, w);
}

double DualEctSystem::apply_chain(int i, const SmoothFn& f, double x) const {
    return apply_chain_jet(i, f, x, 0)[0];
}

DetResult DualEctSystem::collocation_det(const KnotTuple& knots, DetRows mode) const {
    return sys_.collocation_det(knots, mode);
}

}  // namespace chebproj
