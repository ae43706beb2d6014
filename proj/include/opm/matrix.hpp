#pragma once

#include "opm/ring.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace opm {

using Vec = std::vector<Scalar>;

Vec zero_vec(const RingSpec& ring, std::size_t n);
Vec unit_vec(const RingSpec& ring, std::size_t n, std::size_t i);
bool is_zero_vec(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);
Vec vec_to_ring(const Vec& v, const RingSpec& ring);

// Dense matrix with exact entries, all in one ring. Row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(RingSpec ring, std::size_t rows, std::size_t cols);

    static Matrix identity(const RingSpec& ring, std::size_t n);
    static Matrix from_rows(const RingSpec& ring, const std::vector<std::vector<long>>& rows);
    static Matrix from_columns(const RingSpec& ring, std::size_t rows, const std::vector<Vec>& cols);
    static Matrix diagonal(const RingSpec& ring, const Vec& diag);

    const RingSpec& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec column(std::size_t j) const;
    Vec row(std::size_t i) const;
    void set_column(std::size_t j, const Vec& v);

    bool is_zero() const;
    Matrix transpose() const;
    Matrix to_ring(const RingSpec& ring) const;
    // Rows [r0, r1) and columns [c0, c1).
    Matrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    Matrix select_columns(const std::vector<std::size_t>& idx) const;

    Vec apply(const Vec& x) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix operator-() const;
    friend bool operator==(const Matrix& a, const Matrix& b);

    // Row operations (used by elimination).
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t target, std::size_t source, const Scalar& c);  // row_t += c*row_s
    void add_col_multiple(std::size_t target, std::size_t source, const Scalar& c);  // col_t += c*col_s
    void scale_row(std::size_t i, const Scalar& c);

    std::string to_string() const;

  private:
    RingSpec ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix hcat(const Matrix& a, const Matrix& b);
Matrix vcat(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
// a ⊗ I_g (each entry a_ij becomes a_ij·I_g).
Matrix kron_identity(const Matrix& a, std::size_t g);
Matrix scalar_identity(const Scalar& c, std::size_t n);

}  // namespace opm
