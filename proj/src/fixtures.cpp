#include "opm/fixtures.hpp"

namespace opm::fixtures {

namespace {

int parity(long k) { return static_cast<int>(((k % 2) + 2) % 2); }

std::string power(long k) {
    if (k == 0) return "1";
    if (k == 1) return "x";
    return "x^" + std::to_string(k);
}

Expression word(std::initializer_list<std::string> w, const RingSpec& R, long c = 1) {
    return {Term{Scalar::from_int(R, c), std::vector<std::string>(w)}};
}

AlgebraPresentation qt_generators(OperadPreset O, int top) {
    RingSpec R = RingSpec::rational_polynomials();
    AlgebraPresentation P;
    P.ring = R;
    P.operad = std::move(O);
    P.window = {0, top};
    P.generators = {{"x", 2}, {"y", 2}, {"x_t", 3}, {"y_t", 3}};
    Scalar t = Scalar::from_poly(QPoly::t());
    P.differential["x_t"] = {Term{t, {"x"}}};
    P.differential["y_t"] = {Term{t, {"y"}}};
    return P;
}

}  // namespace

DGAlgebra dugger_shipley(long p, const RingSpec& R, DegreeWindow W) {
    DGAlgebra A(R, OperadPreset::associative(), W);
    for (int n = W.lo; n <= W.hi; ++n) {
        std::string ex = n - 1 == 0 ? "e" : "e*" + power(n - 1);
        A.set_degree(n, {power(n), ex});
    }
    for (int n = W.lo + 1; n <= W.hi; ++n) {
        Matrix d(R, 2, 2);
        d(0, 1) = Scalar::from_int(R, p);
        A.set_differential(n, d);
    }
    auto sc = [&](long v) { return Scalar::from_int(R, v); };
    // degree n: index 0 is x^n, index 1 is e·x^(n-1)
    for (int a = W.lo; a <= W.hi; ++a)
        for (int b = W.lo; b <= W.hi; ++b) {
            if (!W.contains(a + b)) continue;
            A.set_product(a, 0, b, 0, {sc(1), sc(0)});
            // x^a · e x^(b-1) = (a mod 2) x^(a+b) + (-1)^a e x^(a+b-1)
            A.set_product(a, 0, b, 1, {sc(parity(a)), sc(parity(a) ? -1 : 1)});
            // e x^(a-1) · x^b = e x^(a+b-1)
            A.set_product(a, 1, b, 0, {sc(0), sc(1)});
            // e x^(a-1) · e x^(b-1) = ((a-1) mod 2) e x^(a+b-1)
            A.set_product(a, 1, b, 1, {sc(0), sc(parity(a - 1))});
        }
    if (W.contains(0)) A.set_unit(0);
    return A;
}

DGAlgebra sagave_algebra(long p) {
    RingSpec R = RingSpec::integers_mod(p * p);
    DGAlgebra A(R, OperadPreset::associative(), {-1, 3});
    A.set_degree(0, {"1"});
    A.set_degree(1, {"x"});
    A.set_differential(1, Matrix::from_columns(R, 1, {{Scalar::from_int(R, p)}}));
    A.set_product(0, 0, 0, 0, {Scalar::one(R)});
    A.set_product(0, 0, 1, 0, {Scalar::one(R)});
    A.set_product(1, 0, 0, 0, {Scalar::one(R)});
    A.set_unit(0);
    return A;
}

AlgebraPresentation comm_qt_presentation(bool quotient, int top) {
    AlgebraPresentation P = qt_generators(OperadPreset::commutative(), top);
    P.quotient = quotient;
    if (quotient) {
        const RingSpec& R = P.ring;
        P.relations = {word({"x", "x"}, R),   word({"y", "y"}, R),   word({"x", "y"}, R),
                       word({"x", "x_t"}, R), word({"y", "y_t"}, R), word({"x_t", "y"}, R)};
    }
    return P;
}

AlgebraPresentation lie_qt_presentation(bool quotient, int top) {
    AlgebraPresentation P = qt_generators(OperadPreset::lie(), top);
    P.quotient = quotient;
    if (!quotient) return P;
    const RingSpec& R = P.ring;
    std::vector<std::string> g{"x", "y", "x_t", "y_t"};
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a; b < g.size(); ++b) {
            bool kept = (g[a] == "x" && g[b] == "y_t") || (g[a] == "x_t" && g[b] == "y_t");
            if (!kept) P.relations.push_back(word({g[a], g[b]}, R));
        }
    for (const auto& a : g)
        for (const auto& b : g)
            for (const auto& c : g) P.relations.push_back(word({a, b, c}, R));
    return P;
}

}  // namespace opm::fixtures

namespace opm::fixtures {

namespace {

SparseVec one(const RingSpec& R, std::size_t i, long c = 1) { return {{i, Scalar::from_int(R, c)}}; }

Vec basis(const DGAlgebra& A, int q, std::size_t i, long c = 1) {
    return vec_scale(Scalar::from_int(A.ring(), c), unit_vec(A.ring(), A.dim(q), i));
}

std::size_t label_index(const DGAlgebra& A, int q, const std::string& label) {
    const auto& L = A.labels(q);
    for (std::size_t i = 0; i < L.size(); ++i)
        if (L[i] == label) return i;
    throw MathError("fixture label '" + label + "' missing in degree " + std::to_string(q));
}

}  // namespace

DGAlgebra sagave_complex() {
    RingSpec R = RingSpec::integers_mod(4);
    DGAlgebra A(R, OperadPreset::initial(), {-1, 4});
    A.set_degree(1, {"u"});
    A.set_degree(2, {"e"});
    A.set_differential(2, Matrix::from_rows(R, {{2}}));
    return A;
}

FragmentFixture sagave_fragment(int hmax) {
    RingSpec R = RingSpec::integers_mod(4);
    Fragment M(R, OperadPreset::initial(), hmax, {1, 2}, true);
    std::map<std::pair<int, int>, std::size_t> g;
    for (int h = 0; h <= hmax; ++h)
        for (int q = 1; q <= 2; ++q) g[{h, q}] = M.add(h, q, "g" + std::to_string(h) + std::to_string(q));
    for (int h = 1; h <= hmax; ++h)
        for (int q = 1; q <= 2; ++q) M.set_d1(g[{h, q}], one(R, g[{h - 1, q}], 2));
    for (int h = 2; h <= hmax; ++h) M.set_d2(g[{h, 1}], one(R, g[{h - 2, 2}]));

    InfinityFragment f{sagave_complex(), {}, {}, {}, {}, {}};
    f.f1_0[g[{0, 1}]] = basis(f.target, 1, 0);
    f.f1_0[g[{0, 2}]] = basis(f.target, 2, 0, 2);
    f.f1_1[g[{1, 1}]] = basis(f.target, 2, 0);
    f.f1_1[g[{1, 2}]] = zero_vec(R, f.target.dim(3));
    f.f1_2[g[{2, 1}]] = zero_vec(R, f.target.dim(3));
    return {M, f};
}

FragmentFixture dugger_shipley_fragment(long p, DegreeWindow W) {
    RingSpec R = RingSpec::integers();
    DegreeWindow V{W.lo + 1, W.hi - 1};
    Fragment M(R, OperadPreset::associative(), 2, V, false);
    std::map<int, std::size_t> u, v;
    for (int n = V.lo; n <= V.hi; ++n) {
        u[n] = M.add(0, n, "u" + std::to_string(n));
        v[n] = M.add(1, n, "v" + std::to_string(n));
    }
    auto par = [](long k) { return ((k % 2) + 2) % 2; };
    for (int n = V.lo; n <= V.hi; ++n) M.set_d1(v[n], one(R, u[n], p));
    for (int a = V.lo; a <= V.hi; ++a)
        for (int b = V.lo; b <= V.hi; ++b) {
            if (V.contains(a + b)) {
                M.set_mu0(u[a], u[b], one(R, u[a + b]));
                M.set_mu0(u[a], v[b], one(R, v[a + b], par(a) ? -1 : 1));
                M.set_mu0(v[a], u[b], one(R, v[a + b]));
            }
            if (V.contains(a + b + 1) && par(a)) {
                M.set_mu1(u[a], v[b], one(R, u[a + b + 1]));
                M.set_mu1(v[a], v[b], one(R, v[a + b + 1]));
            }
        }

    InfinityFragment f{dugger_shipley(p, R, W), {}, {}, {}, {}, {}};
    for (int n = V.lo; n <= V.hi; ++n) {
        f.f1_0[u[n]] = basis(f.target, n, 0);
        f.f1_1[v[n]] = basis(f.target, n + 1, 1);
    }
    return {M, f};
}

namespace {

FragmentFixture qt_fragment(const AlgebraPresentation& P, long swapped_sign) {
    RingSpec R = P.ring;
    Fragment M(R, P.operad, 2, {1, 5}, false);
    std::size_t X = M.add(0, 2, "X"), Y = M.add(0, 2, "Y");
    std::size_t Xp = M.add(1, 2, "X'"), Yp = M.add(1, 2, "Y'");
    std::size_t Z = M.add(0, 5, "Z"), Zp = M.add(1, 5, "Z'");
    Scalar t = Scalar::from_poly(QPoly::t());
    M.set_d1(Xp, {{X, t}});
    M.set_d1(Yp, {{Y, t}});
    M.set_d1(Zp, {{Z, t}});
    M.set_mu1(X, Yp, one(R, Z));
    M.set_mu1(Yp, X, one(R, Z, swapped_sign));
    M.set_mu1(Xp, Yp, one(R, Zp));
    M.set_mu1(Yp, Xp, one(R, Zp, -swapped_sign));

    InfinityFragment f{realize(P), {}, {}, {}, {}, {}};
    const DGAlgebra& A = f.target;
    Vec x = basis(A, 2, label_index(A, 2, "x")), y = basis(A, 2, label_index(A, 2, "y"));
    Vec xt = basis(A, 3, label_index(A, 3, "x_t")), yt = basis(A, 3, label_index(A, 3, "y_t"));
    f.f1_0[X] = x;
    f.f1_0[Y] = y;
    f.f1_0[Z] = A.multiply(2, x, 3, yt);
    f.f1_1[Xp] = xt;
    f.f1_1[Yp] = yt;
    f.f1_1[Zp] = A.multiply(3, xt, 3, yt);
    return {M, f};
}

}  // namespace

FragmentFixture comm_qt_fragment() { return qt_fragment(comm_qt_presentation(true), 1); }

FragmentFixture lie_qt_fragment() { return qt_fragment(lie_qt_presentation(true), -1); }

FragmentFixture formal_fragment(const DGAlgebra& A, bool vertical_exhaustive) {
    const RingSpec& R = A.ring();
    const DegreeWindow& W = A.window();
    for (int q = W.lo + 1; q <= W.hi; ++q)
        if (!A.complex().d(q).is_zero()) throw MathError("formal fragment needs a zero differential");
    OperadPreset O = A.operad();
    DegreeWindow V{W.lo + 1, W.hi - 1};
    Fragment M(R, O, 2, V, vertical_exhaustive);
    std::map<std::pair<int, std::size_t>, std::size_t> idx;
    for (int q = V.lo; q <= V.hi; ++q)
        for (std::size_t i = 0; i < A.dim(q); ++i) {
            const auto& L = A.labels(q);
            idx[{q, i}] = M.add(0, q, i < L.size() ? L[i] : "e" + std::to_string(q) + "_" + std::to_string(i));
        }
    if (O.has_generator())
        for (int p = V.lo; p <= V.hi; ++p)
            for (int q = V.lo; q <= V.hi; ++q) {
                if (!V.contains(p + q)) continue;
                for (std::size_t i = 0; i < A.dim(p); ++i)
                    for (std::size_t j = 0; j < A.dim(q); ++j) {
                        Vec v = A.product_basis(p, i, q, j);
                        SparseVec s;
                        for (std::size_t k = 0; k < v.size(); ++k)
                            if (!v[k].is_zero()) s.emplace(idx[{p + q, k}], v[k]);
                        if (!s.empty()) M.set_mu0(idx[{p, i}], idx[{q, j}], s);
                    }
            }
    InfinityFragment f{A, {}, {}, {}, {}, {}};
    for (auto& [key, i] : idx) f.f1_0[i] = basis(A, key.first, key.second);
    return {M, f};
}

DGAlgebra massey_triple_algebra() {
    RingSpec R = RingSpec::rationals();
    DGAlgebra A(R, OperadPreset::associative(), {0, 5});
    A.set_degree(1, {"a", "b", "c"});
    A.set_degree(2, {"ab", "bc"});
    A.set_degree(3, {"u", "v"});
    A.set_degree(4, {"w"});
    A.set_differential(3, Matrix::from_rows(R, {{1, 0}, {0, 1}}));
    A.set_product(1, 0, 1, 1, basis(A, 2, 0));
    A.set_product(1, 1, 1, 2, basis(A, 2, 1));
    A.set_product(3, 0, 1, 2, basis(A, 4, 0));
    return A;
}

FragmentFixture massey_triple_fragment() {
    RingSpec R = RingSpec::rationals();
    Fragment M(R, OperadPreset::associative(), 2, {1, 4}, false);
    std::size_t a = M.add(0, 1, "a"), b = M.add(0, 1, "b"), c = M.add(0, 1, "c");
    std::size_t w = M.add(0, 4, "w");
    M.set_gamma0(a, b, c, one(R, w));
    InfinityFragment f{massey_triple_algebra(), {}, {}, {}, {}, {}};
    f.f1_0[a] = basis(f.target, 1, 0);
    f.f1_0[b] = basis(f.target, 1, 1);
    f.f1_0[c] = basis(f.target, 1, 2);
    f.f1_0[w] = basis(f.target, 4, 0);
    f.fmu_0[{a, b}] = basis(f.target, 3, 0);
    f.fmu_0[{b, c}] = basis(f.target, 3, 1);
    return {M, f};
}

}  // namespace opm::fixtures
