#include "opm/matrix.hpp"

#include <sstream>

namespace opm {

Vec zero_vec(const RingSpec& ring, std::size_t n) { return Vec(n, Scalar::zero(ring)); }

Vec unit_vec(const RingSpec& ring, std::size_t n, std::size_t i) {
    Vec v = zero_vec(ring, n);
    v.at(i) = Scalar::one(ring);
    return v;
}

bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw MathError("vector length mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_scale(const Scalar& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x = c * x;
    return r;
}

Vec vec_to_ring(const Vec& v, const RingSpec& ring) {
    Vec r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(x.to_ring(ring));
    return r;
}

Matrix::Matrix(RingSpec ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(ring)) {}

Matrix Matrix::identity(const RingSpec& ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(ring);
    return m;
}

Matrix Matrix::from_rows(const RingSpec& ring, const std::vector<std::vector<long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(ring, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw MathError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar::from_int(ring, rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_columns(const RingSpec& ring, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(ring, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
}

Matrix Matrix::diagonal(const RingSpec& ring, const Vec& diag) {
    Matrix m(ring, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Vec Matrix::column(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
}

Vec Matrix::row(std::size_t i) const {
    return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

void Matrix::set_column(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw MathError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Matrix::is_zero() const { return is_zero_vec(data_); }

Matrix Matrix::transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::to_ring(const RingSpec& ring) const {
    Matrix m(ring, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k].to_ring(ring);
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    Matrix m(ring_, r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) m(i - r0, j - c0) = (*this)(i, j);
    return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(ring_, rows_, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, idx[k]);
    return m;
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw MathError("matrix-vector size mismatch");
    Vec y = zero_vec(ring_, rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (x[j].is_zero()) continue;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& a = (*this)(i, j);
            if (!a.is_zero()) y[i] += a * x[j];
        }
    }
    return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw MathError("matrix product size mismatch");
    Matrix c(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& y = b(k, j);
                if (!y.is_zero()) c(i, j) += x * y;
            }
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MathError("matrix sum size mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix Matrix::operator-() const {
    Matrix c = *this;
    for (auto& x : c.data_) x = -x;
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

void Matrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void Matrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, const Scalar& c) {
    if (c.is_zero()) return;
    for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& s = (*this)(source, k);
        if (!s.is_zero()) (*this)(target, k) += c * s;
    }
}

void Matrix::add_col_multiple(std::size_t target, std::size_t source, const Scalar& c) {
    if (c.is_zero()) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const Scalar& s = (*this)(r, source);
        if (!s.is_zero()) (*this)(r, target) += c * s;
    }
}

void Matrix::scale_row(std::size_t i, const Scalar& c) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) *= c;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << (*this)(i, j).to_string();
        }
    }
    os << ']';
    return os.str();
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw MathError("hcat row mismatch");
    Matrix m(a.ring(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw MathError("vcat column mismatch");
    Matrix m(a.ring(), a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
    }
    return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

Matrix kron_identity(const Matrix& a, std::size_t g) {
    Matrix m(a.ring(), a.rows() * g, a.cols() * g);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < g; ++k) m(i * g + k, j * g + k) = a(i, j);
        }
    return m;
}

Matrix scalar_identity(const Scalar& c, std::size_t n) {
    Matrix m(c.ring(), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

}  // namespace opm
