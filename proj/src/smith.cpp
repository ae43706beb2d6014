#include "opm/smith.hpp"

namespace opm {

namespace {

struct Elim {
    Matrix A, U, U_inv, V, V_inv;

    void row_add(std::size_t t, std::size_t s, const Scalar& c) {
        A.add_row_multiple(t, s, c);
        U.add_row_multiple(t, s, c);
        U_inv.add_col_multiple(s, t, -c);
    }
    void col_add(std::size_t t, std::size_t s, const Scalar& c) {
        A.add_col_multiple(t, s, c);
        V.add_col_multiple(t, s, c);
        V_inv.add_row_multiple(s, t, -c);
    }
    void row_swap(std::size_t i, std::size_t j) {
        A.swap_rows(i, j);
        U.swap_rows(i, j);
        U_inv.swap_cols(i, j);
    }
    void col_swap(std::size_t i, std::size_t j) {
        A.swap_cols(i, j);
        V.swap_cols(i, j);
        V_inv.swap_rows(i, j);
    }
    void row_scale(std::size_t i, const Scalar& u) {
        A.scale_row(i, u);
        U.scale_row(i, u);
        Scalar v = u.inverse();
        for (std::size_t r = 0; r < U_inv.rows(); ++r) U_inv(r, i) *= v;
    }
};

// Smallest-norm nonzero entry in the trailing block starting at (t, t).
bool find_pivot(const Matrix& A, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    euclid::Norm best;
    for (std::size_t i = t; i < A.rows(); ++i)
        for (std::size_t j = t; j < A.cols(); ++j) {
            const Scalar& x = A(i, j);
            if (x.is_zero()) continue;
            euclid::Norm n = euclid::norm(x);
            if (!found || n < best) {
                best = n;
                pi = i;
                pj = j;
                found = true;
                if (best.primary <= 1 && best.secondary == 0) return true;
            }
        }
    return found;
}

}  // namespace

SmithForm smith(const Matrix& A) {
    const RingSpec& R = A.ring();
    if (!R.is_euclidean()) throw MathError("smith: ring " + R.name() + " is not Euclidean");
    const std::size_t m = A.rows(), n = A.cols();
    Elim e{A, Matrix::identity(R, m), Matrix::identity(R, m), Matrix::identity(R, n),
           Matrix::identity(R, n)};
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        std::size_t pi = 0, pj = 0;
        if (!find_pivot(e.A, t, pi, pj)) break;
        e.row_swap(t, pi);
        e.col_swap(t, pj);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (e.A(i, t).is_zero()) continue;
                auto [q, r] = euclid::divmod(e.A(i, t), e.A(t, t));
                e.row_add(i, t, -q);
                if (!r.is_zero()) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (e.A(t, j).is_zero()) continue;
                auto [q, r] = euclid::divmod(e.A(t, j), e.A(t, t));
                e.col_add(j, t, -q);
                if (!r.is_zero()) dirty = true;
            }
            if (dirty) {
                // move the smallest remainder in row/column t onto the pivot
                std::size_t bi = t, bj = t;
                euclid::Norm best = euclid::norm(e.A(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (!e.A(i, t).is_zero() && euclid::norm(e.A(i, t)) < best) {
                        best = euclid::norm(e.A(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!e.A(t, j).is_zero() && euclid::norm(e.A(t, j)) < best) {
                        best = euclid::norm(e.A(t, j));
                        bi = t;
                        bj = j;
                    }
                e.row_swap(t, bi);
                e.col_swap(t, bj);
                continue;
            }
            // divisibility of the trailing block
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (!euclid::divides(e.A(t, t), e.A(i, j))) {
                        e.row_add(t, i, Scalar::one(R));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        Scalar u = euclid::unit_normalizer(e.A(t, t));
        if (!u.is_one()) e.row_scale(t, u);
    }
    SmithForm s{e.A, e.U, e.U_inv, e.V, e.V_inv, t};
    return s;
}

Matrix kernel(const Matrix& A) {
    SmithForm s = smith(A);
    std::vector<std::size_t> idx;
    for (std::size_t j = s.rank; j < A.cols(); ++j) idx.push_back(j);
    return s.V.select_columns(idx);
}

std::optional<Vec> solve(const Matrix& A, const Vec& b) {
    if (b.size() != A.rows()) throw MathError("solve: right-hand side size mismatch");
    return solve_with(smith(A), b);
}

std::optional<Vec> solve_with(const SmithForm& s, const Vec& b) {
    if (b.size() != s.U.cols()) throw MathError("solve: right-hand side size mismatch");
    Vec c = s.U.apply(b);
    Vec y = zero_vec(s.D.ring(), s.V.rows());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            auto [q, r] = euclid::divmod(c[i], s.diag(i));
            if (!r.is_zero()) return std::nullopt;
            y[i] = q;
        } else if (!c[i].is_zero()) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

std::optional<Matrix> solve(const Matrix& A, const Matrix& B) {
    if (B.rows() != A.rows()) throw MathError("solve: right-hand side size mismatch");
    SmithForm s = smith(A);
    Matrix C = s.U * B;
    Matrix Y(A.ring(), A.cols(), B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j)
        for (std::size_t i = 0; i < C.rows(); ++i) {
            if (i < s.rank) {
                auto [q, r] = euclid::divmod(C(i, j), s.diag(i));
                if (!r.is_zero()) return std::nullopt;
                Y(i, j) = q;
            } else if (!C(i, j).is_zero()) {
                return std::nullopt;
            }
        }
    return s.V * Y;
}

std::size_t rank(const Matrix& A) {
    if (A.ring().kind() == RingKind::IntegersMod)
        throw MathError("rank is not defined over " + A.ring().name());
    return smith(A).rank;
}

Matrix lift_with_modulus(const Matrix& A) {
    if (A.ring().kind() != RingKind::IntegersMod) return A;
    Matrix L = A.to_ring(RingSpec::integers());
    return hcat(L, scalar_identity(Scalar::from_int(RingSpec::integers(), A.ring().modulus()), A.rows()));
}

namespace {

// U * A * V = D (diagonal) over Z/n by unimodular row and column steps with
// entries kept in [0, n). Bezout 2x2 steps have determinant one.
class ModDiagonal {
  public:
    using I = std::int64_t;

    explicit ModDiagonal(const Matrix& M) : n_(M.ring().modulus()), m_(M.rows()), k_(M.cols()) {
        A_.resize(m_ * k_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < k_; ++j) A_[i * k_ + j] = M(i, j).as_mpz().get_si();
        U_.assign(m_ * m_, 0);
        for (std::size_t i = 0; i < m_; ++i) U_[i * m_ + i] = 1 % n_;
        V_.assign(k_ * k_, 0);
        for (std::size_t i = 0; i < k_; ++i) V_[i * k_ + i] = 1 % n_;
        run();
    }

    I n() const { return n_; }
    std::size_t rank() const { return rank_; }
    I d(std::size_t i) const { return a(i, i); }
    I v(std::size_t i, std::size_t j) const { return V_[i * k_ + j]; }
    std::vector<I> apply_u(const std::vector<I>& b) const {
        std::vector<I> c(m_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j) c[i] = add(c[i], mul(U_[i * m_ + j], b[j]));
        return c;
    }

    static I gcd(I a, I b) {
        while (b != 0) {
            I r = a % b;
            a = b;
            b = r;
        }
        return a < 0 ? -a : a;
    }
    // g = s a + t b with g = gcd(a, b)
    static I gcdext(I a, I b, I& s, I& t) {
        I s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (b != 0) {
            I q = a / b, r = a - q * b;
            a = b;
            b = r;
            I s2 = s0 - q * s1, t2 = t0 - q * t1;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        s = s0;
        t = t0;
        return a;
    }
    // x with a x = b (mod n), assuming gcd(a, n) | b
    I divide(I a, I b) const {
        I g = gcd(a, n_), m = n_ / g, s, t;
        gcdext(a / g % m, m, s, t);
        return mul(mod(s), b / g % m);
    }
    bool divides(I a, I b) const { return b % gcd(a, n_) == 0; }

  private:
    I n_;
    std::size_t m_, k_, rank_ = 0;
    std::vector<I> A_, U_, V_;

    I mod(I x) const {
        x %= n_;
        return x < 0 ? x + n_ : x;
    }
    I mul(I x, I y) const { return I((__int128)x * y % n_); }
    I add(I x, I y) const { return mod(x + y); }
    I& a(std::size_t i, std::size_t j) { return A_[i * k_ + j]; }
    I a(std::size_t i, std::size_t j) const { return A_[i * k_ + j]; }

    // (row_p, row_q) <- (x row_p + y row_q, z row_p + w row_q) on A and U
    void rows(std::size_t p, std::size_t q, I x, I y, I z, I w) {
        auto step = [&](std::vector<I>& M, std::size_t width) {
            for (std::size_t j = 0; j < width; ++j) {
                I P = M[p * width + j], Q = M[q * width + j];
                if (P == 0 && Q == 0) continue;
                M[p * width + j] = add(mul(x, P), mul(y, Q));
                M[q * width + j] = add(mul(z, P), mul(w, Q));
            }
        };
        step(A_, k_);
        step(U_, m_);
    }
    // (col_p, col_q) <- (x col_p + y col_q, z col_p + w col_q) on A and V
    void cols(std::size_t p, std::size_t q, I x, I y, I z, I w) {
        auto step = [&](std::vector<I>& M, std::size_t height, std::size_t width) {
            for (std::size_t i = 0; i < height; ++i) {
                I P = M[i * width + p], Q = M[i * width + q];
                if (P == 0 && Q == 0) continue;
                M[i * width + p] = add(mul(x, P), mul(y, Q));
                M[i * width + q] = add(mul(z, P), mul(w, Q));
            }
        };
        step(A_, m_, k_);
        step(V_, k_, k_);
    }

    // Clears entry (i, t) against the pivot; true when a Bezout step was used.
    bool clear_row(std::size_t t, std::size_t i) {
        I p = a(t, t), b = a(i, t);
        if (divides(p, b)) {
            rows(t, i, 1, 0, mod(-divide(p, b)), 1);
            return false;
        }
        I s, u, g = gcdext(p, b, s, u);
        rows(t, i, mod(s), mod(u), mod(-(b / g)), mod(p / g));
        return true;
    }
    bool clear_col(std::size_t t, std::size_t j) {
        I p = a(t, t), b = a(t, j);
        if (divides(p, b)) {
            cols(t, j, 1, 0, mod(-divide(p, b)), 1);
            return false;
        }
        I s, u, g = gcdext(p, b, s, u);
        cols(t, j, mod(s), mod(u), mod(-(b / g)), mod(p / g));
        return true;
    }

    void run() {
        const std::size_t r = std::min(m_, k_);
        for (std::size_t t = 0; t < r; ++t) {
            std::size_t pi = 0, pj = 0;
            I best = 0;
            for (std::size_t j = t; j < k_ && best != 1; ++j)
                for (std::size_t i = t; i < m_; ++i) {
                    if (a(i, j) == 0) continue;
                    I g = gcd(a(i, j), n_);
                    if (best == 0 || g < best) {
                        best = g;
                        pi = i;
                        pj = j;
                        if (g == 1) break;
                    }
                }
            if (best == 0) break;
            if (pi != t) rows(t, pi, 0, 1, 1, 0);
            if (pj != t) cols(t, pj, 0, 1, 1, 0);
            for (;;) {
                for (std::size_t i = t + 1; i < m_; ++i)
                    if (a(i, t) != 0) clear_row(t, i);
                bool again = false;
                for (std::size_t j = t + 1; j < k_; ++j)
                    if (a(t, j) != 0 && clear_col(t, j)) again = true;
                if (!again) break;
            }
            rank_ = t + 1;
        }
    }
};

}  // namespace

std::optional<Vec> solve_any(const Matrix& A, const Vec& b) {
    if (A.ring().kind() != RingKind::IntegersMod) return solve(A, b);
    if (b.size() != A.rows()) throw MathError("solve: right-hand side size mismatch");
    using I = ModDiagonal::I;
    ModDiagonal D(A);
    std::vector<I> bb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bb[i] = b[i].as_mpz().get_si();
    std::vector<I> c = D.apply_u(bb), y(A.cols(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < D.rank()) {
            if (!D.divides(D.d(i), c[i])) return std::nullopt;
            y[i] = D.divide(D.d(i), c[i]);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    Vec x = zero_vec(A.ring(), A.cols());
    for (std::size_t i = 0; i < A.cols(); ++i)
        for (std::size_t j = 0; j < D.rank(); ++j)
            if (y[j] != 0) x[i] += Scalar::from_int(A.ring(), long((__int128)D.v(i, j) * y[j] % D.n()));
    return x;
}

Matrix kernel_any(const Matrix& A) {
    if (A.ring().kind() != RingKind::IntegersMod) return kernel(A);
    ModDiagonal D(A);
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        ModDiagonal::I c = 1;
        if (j < D.rank()) {
            c = D.n() / ModDiagonal::gcd(D.d(j), D.n());
            if (c == D.n()) continue;
        }
        Vec v(A.cols());
        for (std::size_t i = 0; i < A.cols(); ++i)
            v[i] = Scalar::from_int(A.ring(), long((__int128)D.v(i, j) * c % D.n()));
        cols.push_back(v);
    }
    return Matrix::from_columns(A.ring(), A.cols(), cols);
}

}  // namespace opm
