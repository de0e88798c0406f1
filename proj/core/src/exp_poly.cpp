#include "chebproj/exp_poly.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace chebproj {

namespace {

// Exponents smaller than this (per unit eta) are expanded into the
// polynomial part instead of integrating by parts, which would be
// cancellation-prone.
constexpr double kTaylorMergeThreshold = 8.0;
constexpr int kMaxDegree = 400;

void trim(std::vector<double>& c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.empty() || q.empty()) return {};
    std::vector<double> r(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

double poly_eval(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

std::vector<double> poly_deriv(const std::vector<double>& c) {
    if (c.size() <= 1) return {};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
    return d;
}

// Truncated series of exp(mu * eta), accurate to ~1e-19 absolute on [0, 1].
std::vector<double> exp_series(double mu) {
    std::vector<double> s{1.0};
    double term = 1.0;
    for (int m = 1; m < 80; ++m) {
        term *= mu / double(m);
        s.push_back(term);
        if (std::abs(term) < 1e-19) break;
    }
    return s;
}

}  // namespace

ExpPoly::ExpPoly(double a, double b) : a_(a), b_(b) {
    if (!(b > a)) throw std::invalid_argument("ExpPoly: requires b > a");
}

ExpPoly ExpPoly::constant(double a, double b, double value) {
    ExpPoly f(a, b);
    if (value != 0.0) f.terms_.push_back({0.0, {value}});
    return f;
}

ExpPoly ExpPoly::exponential(double a, double b, double rate) {
    ExpPoly f(a, b);
    f.terms_.push_back({rate * (b - a), {std::exp(rate * a)}});
    f.normalize();
    return f;
}

ExpPoly ExpPoly::from_poly_in_x(double a, double b, const std::vector<double>& coef_x) {
    ExpPoly f(a, b);
    // substitute x = a + (b-a) * eta
    std::vector<double> acc;  // polynomial in eta
    std::vector<double> pw{1.0};
    const double L = b - a;
    for (std::size_t j = 0; j < coef_x.size(); ++j) {
        if (acc.size() < pw.size()) acc.resize(pw.size(), 0.0);
        for (std::size_t i = 0; i < pw.size(); ++i) acc[i] += coef_x[j] * pw[i];
        pw = poly_mul(pw, {a, L});
    }
    trim(acc);
    if (!acc.empty()) f.terms_.push_back({0.0, std::move(acc)});
    return f;
}

void ExpPoly::add_term(double mu, const std::vector<double>& coef) {
    for (Term& t : terms_) {
        if (std::abs(t.mu - mu) <= 1e-12 * (1.0 + std::abs(mu))) {
            if (t.coef.size() < coef.size()) t.coef.resize(coef.size(), 0.0);
            for (std::size_t i = 0; i < coef.size(); ++i) t.coef[i] += coef[i];
            return;
        }
    }
    terms_.push_back({mu, coef});
}

void ExpPoly::normalize() {
    // Fold small nonzero exponents into the polynomial part so that later
    // integration by parts only divides by exponents of magnitude >= threshold.
    std::vector<Term> merged;
    for (Term& t : terms_) {
        if (t.mu != 0.0 && std::abs(t.mu) < kTaylorMergeThreshold) {
            Term folded{0.0, poly_mul(t.coef, exp_series(t.mu))};
            bool found = false;
            for (Term& m : merged)
                if (m.mu == 0.0) {
                    if (m.coef.size() < folded.coef.size()) m.coef.resize(folded.coef.size(), 0.0);
                    for (std::size_t i = 0; i < folded.coef.size(); ++i) m.coef[i] += folded.coef[i];
                    found = true;
                    break;
                }
            if (!found) merged.push_back(std::move(folded));
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::vector<Term> kept;
    for (Term& t : merged) {
        trim(t.coef);
        if (t.coef.size() > std::size_t(kMaxDegree))
            throw std::runtime_error("ExpPoly: polynomial degree overflow");
        if (!t.coef.empty()) kept.push_back(std::move(t));
    }
    terms_ = std::move(kept);
}

double ExpPoly::eval(double x) const {
    const double eta = (x - a_) / (b_ - a_);
    double v = 0.0;
    for (const Term& t : terms_) v += poly_eval(t.coef, eta) * std::exp(t.mu * eta);
    return v;
}

double ExpPoly::eval(double x, int deriv) const {
    if (deriv == 0) return eval(x);
    return eval_jet(x, deriv)[std::size_t(deriv)];
}

Jet ExpPoly::eval_jet(double x, int orders) const {
    const double L = b_ - a_;
    const double eta = (x - a_) / L;
    Jet out(std::size_t(orders) + 1, 0.0);
    for (const Term& t : terms_) {
        const double e = std::exp(t.mu * eta);
        std::vector<double> p = t.coef;
        double scale = 1.0;
        for (int d = 0; d <= orders; ++d) {
            out[std::size_t(d)] += scale * poly_eval(p, eta) * e;
            // d/deta of P * exp(mu eta) = (P' + mu P) * exp(mu eta)
            std::vector<double> np = poly_deriv(p);
            if (t.mu != 0.0) {
                if (np.size() < p.size()) np.resize(p.size(), 0.0);
                for (std::size_t i = 0; i < p.size(); ++i) np[i] += t.mu * p[i];
            }
            p = std::move(np);
            scale /= L;
            if (p.empty()) break;
        }
    }
    return out;
}

ExpPoly ExpPoly::derivative() const {
    ExpPoly out(a_, b_);
    const double inv = 1.0 / (b_ - a_);
    for (const Term& t : terms_) {
        std::vector<double> d = poly_deriv(t.coef);
        if (t.mu != 0.0) {
            if (d.size() < t.coef.size()) d.resize(t.coef.size(), 0.0);
            for (std::size_t i = 0; i < t.coef.size(); ++i) d[i] += t.mu * t.coef[i];
        }
        for (double& c : d) c *= inv;
        if (!d.empty()) out.add_term(t.mu, d);
    }
    out.normalize();
    return out;
}

ExpPoly ExpPoly::integral_from_a() const {
    ExpPoly out(a_, b_);
    const double L = b_ - a_;
    for (const Term& t : terms_) {
        if (t.mu == 0.0) {
            std::vector<double> q(t.coef.size() + 1, 0.0);
            for (std::size_t i = 0; i < t.coef.size(); ++i) q[i + 1] = t.coef[i] / double(i + 1);
            for (double& c : q) c *= L;
            out.add_term(0.0, q);
        } else {
            // solve Q' + mu Q = P, integral = (Q(eta) e^{mu eta} - Q(0)) * L
            std::vector<double> q(t.coef.size(), 0.0);
            for (std::size_t i = t.coef.size(); i-- > 0;) {
                double next = (i + 1 < t.coef.size()) ? double(i + 1) * q[i + 1] : 0.0;
                q[i] = (t.coef[i] - next) / t.mu;
            }
            for (double& c : q) c *= L;
            out.add_term(t.mu, q);
            out.add_term(0.0, {-q[0]});
        }
    }
    out.normalize();
    return out;
}

ExpPoly ExpPoly::operator+(const ExpPoly& o) const {
    ExpPoly out = *this;
    for (const Term& t : o.terms_) out.add_term(t.mu, t.coef);
    out.normalize();
    return out;
}

ExpPoly ExpPoly::operator-(const ExpPoly& o) const { return *this + o.scaled(-1.0); }

ExpPoly ExpPoly::operator*(const ExpPoly& o) const {
    ExpPoly out(a_, b_);
    for (const Term& s : terms_)
        for (const Term& t : o.terms_) out.add_term(s.mu + t.mu, poly_mul(s.coef, t.coef));
    out.normalize();
    return out;
}

ExpPoly ExpPoly::scaled(double c) const {
    ExpPoly out = *this;
    for (Term& t : out.terms_)
        for (double& v : t.coef) v *= c;
    out.normalize();
    return out;
}

int ExpPoly::max_degree() const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, int(t.coef.size()) - 1);
    return d;
}

}  // namespace chebproj
