#include "doctest.h"
#include "opm/smith.hpp"
#include "oracles.hpp"

#include <set>
#include <random>

using namespace opm;


TEST_CASE("smith normal form against determinantal divisors") {
    std::mt19937 rng(12345);
    auto Z = RingSpec::integers();
    int checked = 0;
    for (int trial = 0; trial < 600; ++trial) {
        std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
        int spread = 1 + trial % 9;
        std::vector<std::vector<mpz_class>> a(m, std::vector<mpz_class>(n));
        Matrix A(Z, m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long v = static_cast<long>(rng() % (2 * spread + 1)) - spread;
                if (rng() % 3 == 0) v = 0;
                a[i][j] = v;
                A(i, j) = Scalar::from_int(Z, v);
            }
        SmithForm s = smith(A);
        REQUIRE(s.U * A * s.V == s.D);
        REQUIRE(s.U * s.U_inv == Matrix::identity(Z, m));
        REQUIRE(s.V_inv * s.V == Matrix::identity(Z, n));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) REQUIRE(s.D(i, j).is_zero());
        auto oracle = oracle::invariant_factors(a);
        REQUIRE(oracle.size() == s.rank);
        for (std::size_t i = 0; i < s.rank; ++i) {
            CHECK(s.diag(i).as_mpz() == oracle[i]);
            if (i + 1 < s.rank) CHECK(euclid::divides(s.diag(i), s.diag(i + 1)));
        }
        ++checked;
    }
    CHECK(checked >= 500);
}

TEST_CASE("smith over Q[t] and a field") {
    auto P = RingSpec::rational_polynomials();
    auto t = Scalar::from_poly(QPoly::t());
    Matrix A(P, 2, 2);
    A(0, 0) = t;
    A(1, 1) = t * t - Scalar::one(P);
    A(0, 1) = Scalar::one(P);
    SmithForm s = smith(A);
    CHECK(s.U * A * s.V == s.D);
    CHECK(s.rank == 2);
    CHECK(s.diag(0).is_one());
    CHECK(s.diag(1).as_poly().degree() == 3);

    auto F = RingSpec::prime_field(5);
    Matrix B = Matrix::from_rows(F, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
    CHECK(rank(B) == 2);
    Matrix K = kernel(B);
    CHECK(K.cols() == 1);
    CHECK((B * K).is_zero());
}

TEST_CASE("solving over Z and Z/n") {
    auto Z = RingSpec::integers();
    Matrix A = Matrix::from_rows(Z, {{2, 0}, {0, 3}});
    CHECK(solve(A, Vec{Scalar::from_int(Z, 4), Scalar::from_int(Z, 9)}).has_value());
    CHECK_FALSE(solve(A, Vec{Scalar::from_int(Z, 1), Scalar::from_int(Z, 0)}).has_value());

    auto R = RingSpec::integers_mod(4);
    Matrix B = Matrix::from_rows(R, {{2}});
    auto x = solve_any(B, Vec{Scalar::from_int(R, 2)});
    REQUIRE(x.has_value());
    CHECK(B.apply(*x) == Vec{Scalar::from_int(R, 2)});
    CHECK_FALSE(solve_any(B, Vec{Scalar::from_int(R, 1)}).has_value());
    Matrix K = kernel_any(B);
    CHECK((B * K).is_zero());
    CHECK_FALSE(K.is_zero());
}

TEST_CASE("solve and kernel over Z/n against enumeration") {
    std::mt19937 rng(31337);
    for (long n : {4L, 6L, 8L, 9L, 12L}) {
        RingSpec R = RingSpec::integers_mod(n);
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t m = 1 + rng() % 3, k = 1 + rng() % 3;
            Matrix A(R, m, k);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < k; ++j) A(i, j) = Scalar::from_int(R, long(rng() % n));
            // all x in (Z/n)^k
            std::size_t total = 1;
            for (std::size_t j = 0; j < k; ++j) total *= std::size_t(n);
            auto nth = [&](std::size_t f) {
                Vec x(k);
                for (std::size_t j = 0; j < k; ++j) {
                    x[j] = Scalar::from_int(R, long(f % std::size_t(n)));
                    f /= std::size_t(n);
                }
                return x;
            };
            std::set<std::vector<long>> image;
            std::set<std::vector<long>> ker;
            auto key = [](const Vec& v) {
                std::vector<long> out;
                for (const Scalar& s : v) out.push_back(s.as_mpz().get_si());
                return out;
            };
            for (std::size_t f = 0; f < total; ++f) {
                Vec x = nth(f);
                Vec y = A.apply(x);
                image.insert(key(y));
                if (is_zero_vec(y)) ker.insert(key(x));
            }
            // a few right-hand sides, solvable or not
            for (int r = 0; r < 6; ++r) {
                Vec b(m);
                for (auto& s : b) s = Scalar::from_int(R, long(rng() % n));
                auto x = solve_any(A, b);
                CHECK(x.has_value() == (image.count(key(b)) > 0));
                if (x) CHECK(A.apply(*x) == b);
            }
            // the kernel generators span exactly the kernel
            Matrix K = kernel_any(A);
            std::set<std::vector<long>> span{key(zero_vec(R, k))};
            for (bool grew = true; grew;) {
                grew = false;
                for (std::size_t c = 0; c < K.cols(); ++c) {
                    CHECK(is_zero_vec(A.apply(K.column(c))));
                    std::vector<std::vector<long>> cur(span.begin(), span.end());
                    for (const auto& s : cur) {
                        Vec v(k);
                        for (std::size_t j = 0; j < k; ++j) v[j] = Scalar::from_int(R, s[j]) + K(j, c);
                        if (span.insert(key(v)).second) grew = true;
                    }
                }
            }
            CHECK(span == ker);
        }
    }
}
