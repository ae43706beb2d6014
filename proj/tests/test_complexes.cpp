#include "doctest.h"
#include "opm/complexes.hpp"
#include "oracles.hpp"

#include <random>

using namespace opm;

namespace {

std::vector<std::string> names(std::size_t n, const std::string& stem) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

ChainComplex sagave() {
    auto R = RingSpec::integers_mod(4);
    ChainComplex C(R, {0, 3});
    C.set_degree(1, {"u"});
    C.set_degree(2, {"e"});
    C.set_differential(2, Matrix::from_rows(R, {{2}}));
    return C;
}

Matrix random_matrix(std::mt19937& rng, const RingSpec& R, std::size_t m, std::size_t n) {
    Matrix A(R, m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = Scalar::from_int(R, long(rng() % 7) - 3);
    return A;
}

// d_{k+1} = (generators of ker d_k) * random, so that d∘d = 0.
Matrix next_differential(std::mt19937& rng, const Matrix& d, std::size_t n) {
    Matrix K = kernel_any(d);
    if (K.cols() == 0) return Matrix(d.ring(), d.cols(), n);
    return K * random_matrix(rng, d.ring(), K.cols(), n);
}

oracle::IntMatrix to_int(const Matrix& A) {
    oracle::IntMatrix M(A.rows(), std::vector<long>(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) M[i][j] = A(i, j).to_ring(A.ring().cover()).as_mpz().get_si();
    return M;
}

std::vector<std::vector<mpz_class>> to_mpz(const Matrix& A) {
    std::vector<std::vector<mpz_class>> M(A.rows(), std::vector<mpz_class>(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) M[i][j] = A(i, j).as_mpz();
    return M;
}

long killed_by(const CanonicalForm& c, long n, long k) {
    long r = 1;
    for (const auto& d : c.torsion) r *= std::gcd(k, d.as_mpz().get_si());
    for (std::size_t i = 0; i < c.free_rank; ++i) r *= std::gcd(k, n);
    return r;
}

}  // namespace

TEST_CASE("homology of the Z/4 complex 2: Z/4 -> Z/4") {
    auto H = homology(sagave());
    auto R = RingSpec::integers_mod(4);
    CHECK(H.at(1).module().canonical_form() == cokernel(Matrix::from_rows(R, {{2}})).canonical_form());
    CHECK(H.at(2).module().canonical_form() == cokernel(Matrix::from_rows(R, {{2}})).canonical_form());
    CHECK_FALSE(H.available(0));
    CHECK_FALSE(H.available(3));
    CHECK_THROWS_AS(H.at(3), MathError);
    // the cycle 2e represents the generator of H_2
    auto x = H.at(2).project(Vec{Scalar::from_int(R, 2)});
    CHECK_FALSE(H.at(2).module().contains(x));
}

TEST_CASE("trivial homology examples") {
    auto Z = RingSpec::integers();
    ChainComplex C(Z, {0, 3});
    C.set_degree(1, {"a", "b"});
    C.set_degree(2, {"c"});
    auto H = homology(C);
    CHECK(H.at(1).module().canonical_form().free_rank == 2);
    CHECK(H.at(2).module().canonical_form().free_rank == 1);

    ChainComplex D(Z, {0, 3});
    D.set_degree(1, {"a"});
    D.set_degree(2, {"b"});
    D.set_differential(2, Matrix::identity(Z, 1));
    auto HD = homology(D);
    CHECK(HD.at(1).module().is_zero());
    CHECK(HD.at(2).module().is_zero());
}

TEST_CASE("homology contracts and brute-force oracle") {
    std::mt19937 rng(2024);
    int checked = 0;
    for (auto R : {RingSpec::integers(), RingSpec::integers_mod(4), RingSpec::prime_field(5)}) {
        for (int trial = 0; trial < 80; ++trial) {
            std::size_t n0 = rng() % 3, n1 = 1 + rng() % 3, n2 = 1 + rng() % 3, n3 = rng() % 3;
            ChainComplex C(R, {0, 3});
            C.set_degree(0, names(n0, "a"));
            C.set_degree(1, names(n1, "b"));
            C.set_degree(2, names(n2, "c"));
            C.set_degree(3, names(n3, "e"));
            Matrix d1 = random_matrix(rng, R, n0, n1);
            Matrix d2 = next_differential(rng, d1, n2);
            Matrix d3 = next_differential(rng, d2, n3);
            C.set_differential(1, d1);
            C.set_differential(2, d2);
            C.set_differential(3, d3);
            REQUIRE(C.validate().empty());
            for (int q : {1, 2}) {
                auto h = homology_at(C, q);
                auto cf = h.module().canonical_form();
                // contracts
                for (std::size_t g = 0; g < h.rank(); ++g) {
                    Vec z = h.cycle_lift(g);
                    CHECK(is_zero_vec(C.d(q).apply(z)));
                    CHECK(h.module().equal(h.project(z), unit_vec(R, h.rank(), g)));
                }
                for (std::size_t j = 0; j < C.dim(q + 1); ++j)
                    CHECK(h.module().contains(h.project(C.d(q + 1).column(j))));
                // oracle
                if (R.kind() == RingKind::Integers) {
                    auto out = to_mpz(C.d(q)), in = to_mpz(C.d(q + 1));
                    std::size_t free_rank = C.dim(q) - (C.dim(q - 1) ? oracle::rational_rank(out) : 0) -
                                            (C.dim(q + 1) ? oracle::rational_rank(in) : 0);
                    std::vector<mpz_class> tors;
                    if (C.dim(q + 1))
                        for (const auto& d : oracle::invariant_factors(in))
                            if (d != 1) tors.push_back(d);
                    CHECK(cf.free_rank == free_rank);
                    REQUIRE(cf.torsion.size() == tors.size());
                    for (std::size_t i = 0; i < tors.size(); ++i) CHECK(cf.torsion[i].as_mpz() == tors[i]);
                } else {
                    long n = R.modulus();
                    auto out = C.dim(q - 1) ? to_int(C.d(q)) : oracle::IntMatrix{};
                    auto in = to_int(C.d(q + 1));
                    for (long k : {1L, 2L, n}) {
                        if (n % k) continue;
                        long expected = oracle::killed_by(out, in, C.dim(q), C.dim(q + 1), n, k == 1 ? n : k);
                        CHECK(killed_by(cf, n, k == 1 ? n : k) == expected);
                    }
                }
                ++checked;
            }
        }
    }
    CHECK(checked >= 200);
}

TEST_CASE("extension class of the Z/4 complex") {
    auto e = extension_class(sagave(), 1);
    auto R = RingSpec::integers_mod(4);
    CHECK(e.ext.module().canonical_form() == cokernel(Matrix::from_rows(R, {{2}})).canonical_form());
    CHECK_FALSE(e.is_zero());
}

TEST_CASE("extension class vanishes for split and Z complexes") {
    auto Z = RingSpec::integers();
    ChainComplex C(Z, {0, 3});
    C.set_degree(1, {"u"});
    C.set_degree(2, {"e"});
    C.set_differential(2, Matrix::from_rows(Z, {{2}}));
    CHECK(extension_class(C, 1).is_zero());

    // split: Z/4 in degree 1 and Z/2 in degree 2 with zero differential
    auto R = RingSpec::integers_mod(4);
    ChainComplex S(R, {0, 3});
    S.set_degree(1, {"u"});
    S.set_degree(2, {"e", "f"});
    S.set_differential(2, Matrix(R, 1, 2));
    CHECK(extension_class(S, 1).is_zero());

    // free H_1
    ChainComplex F(R, {0, 3});
    F.set_degree(1, {"u"});
    F.set_degree(2, {"e"});
    CHECK(extension_class(F, 1).is_zero());
}

TEST_CASE("extension class is invariant under basis changes") {
    auto R = RingSpec::integers_mod(4);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        // Z/4 -> Z/4 (x2) plus a contractible pair, conjugated by unimodular P, Q
        Matrix d = Matrix::from_rows(R, {{2, 0}, {0, 1}});
        Matrix P = Matrix::identity(R, 2), Q = Matrix::identity(R, 2);
        Matrix Pinv = P, Qinv = Q;
        for (int s = 0; s < 4; ++s) {
            long c = long(rng() % 4);
            std::size_t i = rng() % 2, j = 1 - i;
            P.add_row_multiple(i, j, Scalar::from_int(R, c));
            Pinv.add_col_multiple(j, i, Scalar::from_int(R, -c));
            Q.add_row_multiple(j, i, Scalar::from_int(R, c));
            Qinv.add_col_multiple(i, j, Scalar::from_int(R, -c));
        }
        REQUIRE(P * Pinv == Matrix::identity(R, 2));
        ChainComplex C(R, {0, 3});
        C.set_degree(1, {"u", "v"});
        C.set_degree(2, {"e", "f"});
        C.set_differential(2, P * d * Qinv);
        CHECK_FALSE(extension_class(C, 1).is_zero());
    }
}
