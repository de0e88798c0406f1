#include "chebproj/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chebproj {

namespace {
DetResult make_det(double log_abs, int sign) {
    DetResult r;
    r.sign = sign;
    r.log_abs = log_abs;
    r.value = (sign == 0) ? 0.0 : sign * std::exp(log_abs);
    return r;
}
}  // namespace

DenseLU::DenseLU(DenseMatrix a) : lu_(std::move(a)) {
    const int n = lu_.rows();
    if (n != lu_.cols()) throw std::invalid_argument("DenseLU: matrix must be square");
    perm_.resize(std::size_t(n));
    row_scale_.assign(std::size_t(n), 1.0);
    for (int i = 0; i < n; ++i) {
        perm_[std::size_t(i)] = i;
        double m = 0.0;
        for (int j = 0; j < n; ++j) m = std::max(m, std::abs(lu_.at(i, j)));
        if (m == 0.0) {
            singular_ = true;
            continue;
        }
        row_scale_[std::size_t(i)] = m;
        for (int j = 0; j < n; ++j) lu_.at(i, j) /= m;
    }
    for (int col = 0; col < n && !singular_; ++col) {
        int pivot = col;
        double best = std::abs(lu_.at(col, col));
        for (int i = col + 1; i < n; ++i) {
            double v = std::abs(lu_.at(i, col));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0) {
            singular_ = true;
            break;
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(lu_.at(pivot, j), lu_.at(col, j));
            std::swap(perm_[std::size_t(pivot)], perm_[std::size_t(col)]);
            std::swap(row_scale_[std::size_t(pivot)], row_scale_[std::size_t(col)]);
            perm_sign_ = -perm_sign_;
        }
        const double inv = 1.0 / lu_.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            const double f = lu_.at(i, col) * inv;
            lu_.at(i, col) = f;
            if (f != 0.0)
                for (int j = col + 1; j < n; ++j) lu_.at(i, j) -= f * lu_.at(col, j);
        }
    }
}

DetResult DenseLU::determinant() const {
    if (singular_) return make_det(0.0, 0);
    const int n = lu_.rows();
    double log_abs = 0.0;
    int sign = perm_sign_;
    for (int i = 0; i < n; ++i) {
        double u = lu_.at(i, i);
        if (u < 0.0) {
            sign = -sign;
            u = -u;
        }
        log_abs += std::log(u) + std::log(row_scale_[std::size_t(i)]);
    }
    return make_det(log_abs, sign);
}

std::vector<double> DenseLU::solve(std::span<const double> rhs) const {
    if (singular_) throw std::runtime_error("DenseLU::solve: singular matrix");
    const int n = lu_.rows();
    if (int(rhs.size()) != n) throw std::invalid_argument("DenseLU::solve: size mismatch");
    std::vector<double> x(rhs.size());
    for (int i = 0; i < n; ++i)
        x[std::size_t(i)] = rhs[std::size_t(perm_[std::size_t(i)])] / row_scale_[std::size_t(i)];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) x[std::size_t(i)] -= lu_.at(i, j) * x[std::size_t(j)];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[std::size_t(i)] -= lu_.at(i, j) * x[std::size_t(j)];
        x[std::size_t(i)] /= lu_.at(i, i);
    }
    return x;
}

DetResult dense_determinant(DenseMatrix a) { return DenseLU(std::move(a)).determinant(); }

BandedGeneral::BandedGeneral(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), data_(std::size_t(n) * std::size_t(kl + ku + 1), 0.0) {
    if (n < 1 || kl < 0 || ku < 0) throw std::invalid_argument("BandedGeneral: bad dimensions");
}

double& BandedGeneral::at(int i, int j) {
    if (i < 0 || i >= n_ || j < i - kl_ || j > i + ku_ || j < 0 || j >= n_)
        throw std::invalid_argument("BandedGeneral: entry outside the band");
    return data_[std::size_t(i) * std::size_t(kl_ + ku_ + 1) + std::size_t(j - i + kl_)];
}

double BandedGeneral::at(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::invalid_argument("BandedGeneral: index out of range");
    if (j < i - kl_ || j > i + ku_) return 0.0;
    return data_[std::size_t(i) * std::size_t(kl_ + ku_ + 1) + std::size_t(j - i + kl_)];
}

BandedLU::BandedLU(const BandedGeneral& a)
    : n_(a.size()), kl_(a.lower()), ku_(a.upper() + a.lower()) {
    ab_.assign(std::size_t(n_) * width(), 0.0);
    piv_.assign(std::size_t(n_), 0);
    row_scale_.assign(std::size_t(n_), 1.0);
    for (int i = 0; i < n_; ++i) {
        const int jlo = std::max(0, i - kl_), jhi = std::min(n_ - 1, i + a.upper());
        double m = 0.0;
        for (int j = jlo; j <= jhi; ++j) m = std::max(m, std::abs(a.at(i, j)));
        if (m == 0.0) {
            singular_ = true;
            continue;
        }
        row_scale_[std::size_t(i)] = m;
        for (int j = jlo; j <= jhi; ++j) ab(i, j) = a.at(i, j) / m;
    }
    for (int col = 0; col < n_ && !singular_; ++col) {
        int pivot = col;
        double best = std::abs(ab(col, col));
        for (int r = col + 1; r <= std::min(n_ - 1, col + kl_); ++r) {
            double v = std::abs(ab(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) {
            singular_ = true;
            break;
        }
        piv_[std::size_t(col)] = pivot;
        if (pivot != col)
            for (int j = col; j <= std::min(n_ - 1, col + ku_); ++j)
                std::swap(ab(col, j), ab(pivot, j));
        const double inv = 1.0 / ab(col, col);
        for (int r = col + 1; r <= std::min(n_ - 1, col + kl_); ++r) {
            const double f = ab(r, col) * inv;
            ab(r, col) = f;
            if (f != 0.0)
                for (int j = col + 1; j <= std::min(n_ - 1, col + ku_); ++j)
                    ab(r, j) -= f * ab(col, j);
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
    if (singular_) throw std::runtime_error("BandedLU::solve: singular matrix");
    if (int(rhs.size()) != n_) throw std::invalid_argument("BandedLU::solve: size mismatch");
    std::vector<double> x(rhs.size());
    for (int i = 0; i < n_; ++i) x[std::size_t(i)] = rhs[std::size_t(i)] / row_scale_[std::size_t(i)];
    for (int col = 0; col < n_; ++col) {
        if (piv_[std::size_t(col)] != col) std::swap(x[std::size_t(col)], x[std::size_t(piv_[std::size_t(col)])]);
        for (int r = col + 1; r <= std::min(n_ - 1, col + kl_); ++r)
            x[std::size_t(r)] -= ab(r, col) * x[std::size_t(col)];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        for (int j = i + 1; j <= std::min(n_ - 1, i + ku_); ++j)
            x[std::size_t(i)] -= ab(i, j) * x[std::size_t(j)];
        x[std::size_t(i)] /= ab(i, i);
    }
    return x;
}

BandedSPD::BandedSPD(int n, int bandwidth)
    : n_(n), bw_(bandwidth), data_(std::size_t(n) * (bandwidth + 1), 0.0) {
    if (n < 1 || bandwidth < 0) throw std::invalid_argument("BandedSPD: bad dimensions");
}

double BandedSPD::entry(int i, int j) const {
    int d = i - j;
    if (d < 0) {
        std::swap(i, j);
        d = -d;
    }
    if (d > bw_) return 0.0;
    return band(i, d);
}

BandedLDLT::BandedLDLT(const BandedSPD& a) : n_(a.size()), bw_(a.bandwidth()) {
    l_.assign(std::size_t(n_) * (bw_ + 1), 0.0);
    d_.assign(std::size_t(n_), 0.0);
    auto L = [&](int i, int d) -> double& { return l_[std::size_t(i) * (bw_ + 1) + d]; };
    min_pivot_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i) {
        for (int d = std::min(bw_, i); d >= 1; --d) {
            const int j = i - d;
            double s = a.band(i, d);
            for (int t = 1; t + d <= bw_ && j - t >= 0; ++t)
                s -= L(i, d + t) * L(j, t) * d_[std::size_t(j - t)];
            L(i, d) = s / d_[std::size_t(j)];
        }
        double s = a.band(i, 0);
        for (int t = 1; t <= std::min(bw_, i); ++t)
            s -= L(i, t) * L(i, t) * d_[std::size_t(i - t)];
        d_[std::size_t(i)] = s;
        min_pivot_ = std::min(min_pivot_, s);
        if (!(s > 0.0)) {
            spd_ = false;
            // keep factoring impossible; caller must check positive_definite()
            d_[std::size_t(i)] = (s == 0.0) ? 1e-300 : s;
        }
        L(i, 0) = 1.0;
    }
}

std::vector<double> BandedLDLT::solve(std::span<const double> rhs) const {
    if (int(rhs.size()) != n_) throw std::invalid_argument("BandedLDLT::solve: size mismatch");
    auto L = [&](int i, int d) { return l_[std::size_t(i) * (bw_ + 1) + d]; };
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int i = 0; i < n_; ++i)
        for (int d = 1; d <= std::min(bw_, i); ++d) x[std::size_t(i)] -= L(i, d) * x[std::size_t(i - d)];
    for (int i = 0; i < n_; ++i) x[std::size_t(i)] /= d_[std::size_t(i)];
    for (int i = n_ - 1; i >= 0; --i)
        for (int d = 1; d <= std::min(bw_, n_ - 1 - i); ++d)
            x[std::size_t(i)] -= L(i + d, d) * x[std::size_t(i + d)];
    return x;
}

}  // namespace chebproj
