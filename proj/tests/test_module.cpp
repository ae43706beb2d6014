#include "doctest.h"
#include "opm/module.hpp"

#include <numeric>
#include <random>

using namespace opm;

namespace {

Scalar Zi(long v) { return Scalar::from_int(RingSpec::integers(), v); }

CanonicalForm cf(std::vector<long> torsion, std::size_t free_rank) {
    CanonicalForm c;
    for (long t : torsion) c.torsion.push_back(Zi(t));
    c.free_rank = free_rank;
    return c;
}

// |{x in Z/b : k x = 0}| / |{k' y : y in Z/b}| counted by enumeration.
long brute_subquotient_order(long b, long kill, long image) {
    long ker = 0;
    for (long x = 0; x < b; ++x)
        if ((kill * x) % b == 0) ++ker;
    std::vector<bool> seen(b, false);
    long im = 0;
    for (long y = 0; y < b; ++y) {
        long v = (image * y) % b;
        if (!seen[v]) {
            seen[v] = true;
            ++im;
        }
    }
    return ker / im;
}

long order_of(const CanonicalForm& c, long n) {
    long o = 1;
    for (const auto& t : c.torsion) o *= t.as_mpz().get_si();
    for (std::size_t i = 0; i < c.free_rank; ++i) o *= n;
    return o;
}

}  // namespace

TEST_CASE("cokernel canonical forms") {
    auto Z = RingSpec::integers();
    CHECK(cokernel(Matrix::from_rows(Z, {{6}})).canonical_form() == cf({6}, 0));
    CHECK(cokernel(Matrix::identity(Z, 3)).is_zero());
    CHECK(cokernel(Matrix::from_rows(Z, {{2, 0}, {0, 0}})).canonical_form() == cf({2}, 1));
    auto s = snf(Matrix::from_rows(Z, {{2, 4}, {6, 8}}));
    CHECK(s.diag(0) == Zi(2));
    CHECK(s.diag(1) == Zi(4));

    auto R4 = RingSpec::integers_mod(4);
    auto M = cokernel(Matrix::from_rows(R4, {{2}}));
    CHECK(M.canonical_form() == cf({2}, 0));
    CHECK(PresentedModule::free(R4, 2).canonical_form().free_rank == 2);
    CHECK(M.equal(Vec{Scalar::from_int(R4, 1)}, Vec{Scalar::from_int(R4, 3)}));
    CHECK_FALSE(M.equal(Vec{Scalar::from_int(R4, 1)}, Vec{Scalar::from_int(R4, 2)}));
}

TEST_CASE("kernel of multiplication by 2 on Z/4") {
    auto R4 = RingSpec::integers_mod(4);
    Matrix K = kernel_any(Matrix::from_rows(R4, {{2}}));
    auto sub = cokernel(hcat(K, Matrix(R4, 1, 0)));
    // the submodule generated by the kernel is {0, 2}
    bool has_two = false;
    for (std::size_t j = 0; j < K.cols(); ++j) {
        CHECK((K(0, j).as_mpz() % 2) == 0);
        if (K(0, j).as_mpz() == 2) has_two = true;
    }
    CHECK(has_two);
    CHECK(sub.canonical_form() == cf({2}, 0));
}

TEST_CASE("free resolutions") {
    auto Z = RingSpec::integers();
    auto r = free_resolution(cokernel(Matrix::from_rows(Z, {{6}})), 2);
    CHECK(r.ranks[0] == 1);
    CHECK(r.ranks[1] == 1);
    CHECK(r.ranks[2] == 0);
    CHECK(r.terminated);

    auto R4 = RingSpec::integers_mod(4);
    auto p = free_resolution(cokernel(Matrix::from_rows(R4, {{2}})), 4);
    for (std::size_t k = 0; k < 4; ++k) {
        REQUIRE(p.maps[k].rows() == 1);
        REQUIRE(p.maps[k].cols() == 1);
        CHECK(p.maps[k](0, 0) == Scalar::from_int(R4, 2));
    }

    auto Q = RingSpec::rationals();
    auto f = free_resolution(cokernel(Matrix::from_rows(Q, {{1, 2}, {2, 4}})), 1);
    CHECK(f.ranks[1] == 0);
}

TEST_CASE("resolution contract on random presentations") {
    std::mt19937 rng(7);
    for (auto R : {RingSpec::integers(), RingSpec::integers_mod(4), RingSpec::integers_mod(12),
                   RingSpec::prime_field(5)}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t m = 1 + rng() % 3, c = rng() % 4;
            Matrix A(R, m, c);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < c; ++j) A(i, j) = Scalar::from_int(R, long(rng() % 9) - 4);
            auto res = free_resolution(cokernel(A), 4);
            for (std::size_t k = 0; k + 1 < res.maps.size(); ++k) {
                CHECK((res.maps[k] * res.maps[k + 1]).is_zero());
                // exact at F_{k+1}
                Subquotient h(res.maps[k], Matrix(R, res.maps[k].rows(), 0), res.maps[k + 1],
                              Matrix(R, res.maps[k].cols(), 0));
                CHECK(h.module().is_zero());
            }
            // F_0 / im ∂_1 recovers M
            CHECK(cokernel(res.maps[0]).canonical_form() == cokernel(A).canonical_form());
        }
    }
}

TEST_CASE("ext examples") {
    auto R4 = RingSpec::integers_mod(4);
    auto Z2 = cokernel(Matrix::from_rows(R4, {{2}}));
    auto e2 = ext(Z2, Z2, 2);
    CHECK(e2.module().canonical_form() == cf({2}, 0));

    auto Z = RingSpec::integers();
    auto e1 = ext(cokernel(Matrix::from_rows(Z, {{6}})), PresentedModule::free(Z, 1), 1);
    CHECK(e1.module().canonical_form() == cf({6}, 0));
    CHECK(ext(cokernel(Matrix::from_rows(Z, {{6}})), PresentedModule::free(Z, 1), 2).module().is_zero());

    auto Q = RingSpec::rationals();
    auto M = cokernel(Matrix(Q, 2, 0));
    for (std::size_t w = 1; w <= 3; ++w) CHECK(ext(M, M, w).module().is_zero());
    CHECK(ext(M, M, 0).module().canonical_form().free_rank == 4);
}

TEST_CASE("ext over Z/n against enumeration") {
    // Ext^w_{Z/n}(Z/a, Z/b) for a | n is the homology of Z/b with maps
    // alternating between a and n/a.
    int checked = 0;
    for (long n : {4L, 6L, 8L, 9L, 12L}) {
        auto R = RingSpec::integers_mod(n);
        for (long a = 1; a <= n; ++a) {
            if (n % a) continue;
            for (long b = 1; b <= n; ++b) {
                if (n % b) continue;
                auto M = cokernel(Matrix::from_rows(R, {{a}}));
                auto N = cokernel(Matrix::from_rows(R, {{b}}));
                for (std::size_t w = 0; w <= 3; ++w) {
                    long expected;
                    if (w == 0) expected = brute_subquotient_order(b, a, 0);
                    else if (w % 2 == 1) expected = brute_subquotient_order(b, n / a, a);
                    else expected = brute_subquotient_order(b, a, n / a);
                    if (a == n) expected = (w == 0 ? b : 1);
                    CHECK(order_of(ext(M, N, w).module().canonical_form(), n) == expected);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked >= 200);
}

TEST_CASE("ext is invariant under padded presentations") {
    auto Z = RingSpec::integers();
    auto M = cokernel(Matrix::from_rows(Z, {{4, 0}, {0, 6}}));
    auto padded = cokernel(Matrix::from_rows(Z, {{4, 0, 1, 8}, {0, 6, 0, 0}, {0, 0, -1, 0}}));
    auto N = cokernel(Matrix::from_rows(Z, {{10}}));
    for (std::size_t w = 0; w <= 2; ++w)
        CHECK(ext(M, N, w).module().canonical_form() == ext(padded, N, w).module().canonical_form());
}
