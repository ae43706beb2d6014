#pragma once

#include "opm/matrix.hpp"

#include <optional>

namespace opm {

// U * A * V == D with D diagonal, d_1 | d_2 | ... and each d_i normalized
// (positive over Z, monic over Q[t], 1 over a field). A must be over a
// Euclidean ring; lift Z/n data to Z first.
struct SmithForm {
    Matrix D;
    Matrix U, U_inv;
    Matrix V, V_inv;
    std::size_t rank = 0;

    Scalar diag(std::size_t i) const { return D(i, i); }
};

SmithForm smith(const Matrix& A);

// Columns form a basis of ker A (A over a Euclidean ring).
Matrix kernel(const Matrix& A);

// Some x with A x == b, or nullopt.
std::optional<Vec> solve(const Matrix& A, const Vec& b);
std::optional<Matrix> solve(const Matrix& A, const Matrix& B);
// Same, reusing a precomputed decomposition of A.
std::optional<Vec> solve_with(const SmithForm& s, const Vec& b);

std::size_t rank(const Matrix& A);

// Over Z/n: the lift of A to Z with n·I appended on the right, so that
// solving over Z/n becomes solving over Z. Identity for other rings.
Matrix lift_with_modulus(const Matrix& A);

// Solve / kernel for any supported ring, including Z/n. The returned
// kernel generators need not be independent over Z/n.
std::optional<Vec> solve_any(const Matrix& A, const Vec& b);
Matrix kernel_any(const Matrix& A);

}  // namespace opm
