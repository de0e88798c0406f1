#ifndef CHEBPROJ_LINALG_HPP
#define CHEBPROJ_LINALG_HPP

#include <span>
#include <vector>

namespace chebproj {

/// Determinant reported with the sign and log-magnitude separated so that
/// sign decisions stay meaningful when the raw value under- or overflows.
struct DetResult {
    double value = 0.0;
    int sign = 0;         // -1, 0, +1
    double log_abs = 0.0; // log |det|, meaningful when sign != 0
};

/// Row-major dense matrix, sized for small collocation systems.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& at(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    double at(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }
    std::span<double> row(int i) { return {data_.data() + std::size_t(i) * cols_, std::size_t(cols_)}; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// LU with partial pivoting.  Rows are scaled to unit max-abs before
/// factorization; the scaling is tracked so determinants come back exact.
class DenseLU {
public:
    explicit DenseLU(DenseMatrix a);

    bool singular() const { return singular_; }
    DetResult determinant() const;
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    DenseMatrix lu_;
    std::vector<int> perm_;
    std::vector<double> row_scale_;
    int perm_sign_ = 1;
    bool singular_ = false;
};

DetResult dense_determinant(DenseMatrix a);

/// General banded matrix with kl subdiagonals and ku superdiagonals; row i
/// holds the logical entries A(i, j) for j in [i - kl, i + ku].
class BandedGeneral {
public:
    BandedGeneral(int n, int kl, int ku);

    int size() const { return n_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }
    double& at(int i, int j);       // throws outside the band
    double at(int i, int j) const;  // 0 outside the band

private:
    int n_ = 0, kl_ = 0, ku_ = 0;
    std::vector<double> data_;
};

/// LU with partial pivoting for banded systems. Rows are scaled to unit
/// max-abs first; pivoting fill widens the upper band by at most kl, which
/// the factorization stores in place.
class BandedLU {
public:
    explicit BandedLU(const BandedGeneral& a);

    bool singular() const { return singular_; }
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    double& ab(int i, int j) { return ab_[std::size_t(i) * width() + std::size_t(j - i + kl_)]; }
    double ab(int i, int j) const {
        return ab_[std::size_t(i) * width() + std::size_t(j - i + kl_)];
    }
    std::size_t width() const { return std::size_t(kl_ + ku_ + 1); }

    int n_ = 0, kl_ = 0, ku_ = 0;  // ku_ includes the pivoting fill
    std::vector<double> ab_;
    std::vector<int> piv_;
    std::vector<double> row_scale_;
    bool singular_ = false;
};

/// Symmetric positive definite banded matrix, lower storage:
/// band(i, d) = A(i, i - d) for d = 0..bandwidth, i >= d.
class BandedSPD {
public:
    BandedSPD(int n, int bandwidth);

    int size() const { return n_; }
    int bandwidth() const { return bw_; }
    double& band(int i, int d) { return data_[std::size_t(i) * (bw_ + 1) + d]; }
    double band(int i, int d) const { return data_[std::size_t(i) * (bw_ + 1) + d]; }
    double entry(int i, int j) const;  // 0 outside the band

private:
    int n_ = 0, bw_ = 0;
    std::vector<double> data_;
};

/// LDL^T factorization of a BandedSPD matrix; solve() is the workhorse for
/// Gram systems and inverse columns.
class BandedLDLT {
public:
    explicit BandedLDLT(const BandedSPD& a);

    bool positive_definite() const { return spd_; }
    double min_pivot() const { return min_pivot_; }
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    int n_ = 0, bw_ = 0;
    std::vector<double> l_;  // unit lower band
    std::vector<double> d_;
    bool spd_ = true;
    double min_pivot_ = 0.0;
};

}  // namespace chebproj

#endif
