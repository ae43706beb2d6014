#include "opm/cli.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace opm;
using namespace opm::support;
using io::json;

namespace {

struct Check {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

int failed = 0;

void criterion(const std::string& id, const std::string& title, double limit_ms, const std::function<void(Check&)>& body) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (limit_ms > 0 && ms > limit_ms) c.failures.push_back("runtime above " + std::to_string(long(limit_ms)) + " ms");
    bool ok = c.failures.empty();
    if (!ok) ++failed;
    std::ostringstream os;
    os << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << long(ms) << " ms)";
    for (const auto& n : c.notes) os << "; " << n;
    for (const auto& f : c.failures) os << "; " << f;
    std::cout << os.str() << std::endl;
}

Scalar sc(const RingSpec& R, long v) { return Scalar::from_int(R, v); }
Scalar tt() { return Scalar::from_poly(QPoly::t()); }

Vec element(const DGAlgebra& A, int q, const std::vector<std::pair<std::string, long>>& terms) {
    Vec v = zero_vec(A.ring(), A.dim(q));
    const auto& L = A.labels(q);
    for (auto& [label, c] : terms) {
        auto it = std::find(L.begin(), L.end(), label);
        if (it == L.end()) throw std::runtime_error("no basis element " + label);
        v[std::size_t(it - L.begin())] += sc(A.ring(), c);
    }
    return v;
}

Vec class_of(const HomologyAlgebra& H, int q, const std::string& label) {
    return H.at(q).project(element(H.algebra, q, {{label, 1}}));
}

MasseyInput input(const HomologyAlgebra& H, const std::string& op, std::vector<Scalar> t,
                  std::vector<std::pair<int, std::string>> xs) {
    MasseyInput in;
    in.op = OpSpec::parse(op);
    in.t = std::move(t);
    for (auto& [q, label] : xs) {
        in.degrees.push_back(q);
        in.classes.push_back(class_of(H, q, label));
    }
    return in;
}

bool zero_in(const HomologyAlgebra& H, int q, const Vec& v) { return H.at(q).module().contains(v); }

bool zero_indeterminacy(const HomologyAlgebra& H, const MasseyCoset& m) {
    for (std::size_t j = 0; j < m.indeterminacy.generators.cols(); ++j)
        if (!zero_in(H, m.degree, m.indeterminacy.generators.column(j))) return false;
    return m.indeterminacy.complete;
}

// Q-dimension of a torsion Q[t]-module.
long q_dimension(const PresentedModule& M) {
    CanonicalForm c = M.canonical_form();
    if (c.free_rank > 0) return -1;
    long d = 0;
    for (const auto& f : c.torsion) d += long(f.as_poly().degree());
    return d;
}

std::string module_text(const PresentedModule& M) { return M.canonical_form().to_string(); }

// ---- 1 ----

void sagave(Check& c) {
    cli::Options o;
    o.command = "unit-massey";
    o.fixture = "sagave-zp2";
    o.format = "json";
    cli::Outcome r = cli::run(o);
    c.expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    json out = json::parse(r.output);
    bool found = false;
    for (const json& k : out["results"]["classes"]) {
        if (k["degree"] != 1) continue;
        found = true;
        c.expect(k["ext"]["torsion"] == json::array({"2"}) && k["ext"]["free_rank"] == 0, "Ext^2 is " + k["ext"]["module"].dump());
        c.expect(k["class"] == json::array({"1"}), "class is " + k["class"].dump());
        c.expect(k["nonzero"] == true, "class is zero");
    }
    c.expect(found, "no class for Z/4 -> Z/4 in degrees 2 -> 1");

    // the same class straight from the library, against Ext computed independently
    DGAlgebra A = fixtures::sagave_complex();
    ExtensionClass2 e = extension_class(A.complex(), 1);
    PresentedModule Z2 = PresentedModule::diagonal(A.ring(), {sc(A.ring(), 2)});
    c.expect(ext(Z2, Z2, 2).module().canonical_form().to_string() == e.ext.module().canonical_form().to_string(),
             "Ext^2(Z/2, Z/2) mismatch");
    c.expect(!e.is_zero(), "library class is zero");
    c.note("Ext^2 = " + module_text(e.ext.module()));
}

// ---- 2 ----

void dugger_shipley(Check& c) {
    const RingSpec Z = RingSpec::integers();
    {
        HomologyAlgebra H = homology_algebra(fixtures::dugger_shipley(2, Z, {-2, 4}));
        MasseyCoset m = torsion_massey(H, input(H, "commutator", {sc(Z, 2), sc(Z, -2)}, {{0, "1"}, {1, "x"}}));
        c.expect(m.degree == 2, "p=2: wrong degree");
        c.expect(H.at(2).module().equal(m.representative, class_of(H, 2, "x^2")), "p=2: representative is not x^2");
        c.expect(!zero_in(H, 2, m.representative), "p=2: representative is zero");
        c.expect(zero_indeterminacy(H, m), "p=2: indeterminacy is not zero");
        c.expect(m.vanishing() == Vanishing::Nonvanishing, "p=2: verdict " + to_string(m.vanishing()));
    }
    {
        HomologyAlgebra H = homology_algebra(fixtures::dugger_shipley(3, Z, {-2, 4}));
        MasseyCoset m = torsion_massey(H, input(H, "commutator", {sc(Z, 3), sc(Z, -3)}, {{0, "1"}, {1, "x"}}));
        Vec xx = H.apply_op(OpSpec::parse("commutator"), 1, class_of(H, 1, "x"), 1, class_of(H, 1, "x"));
        c.expect(H.at(2).module().equal(xx, vec_scale(sc(Z, 2), class_of(H, 2, "x^2"))), "p=3: [x,x] != 2x^2");
        c.expect(m.indeterminacy.is_full(), "p=3: indeterminacy is not H_2");
        // [x,x] generates H_2 = Z/3
        c.expect(H.at(2).rank() == 1 && !zero_in(H, 2, xx), "p=3: [x,x] does not generate H_2");
        bool in_span = false;
        for (long k = 0; k < 3; ++k)
            in_span = in_span || H.at(2).module().equal(vec_scale(sc(Z, k), xx), class_of(H, 2, "x^2"));
        c.expect(in_span, "p=3: x^2 not in the span of [x,x]");
        c.expect(m.vanishing() == Vanishing::Vanishes, "p=3: verdict " + to_string(m.vanishing()));
    }
}

// ---- 3 ----

void commutative(Check& c) {
    const RingSpec R = RingSpec::rational_polynomials();
    {
        HomologyAlgebra H = homology_algebra(realize(fixtures::comm_qt_presentation(true, 6)));
        long total = 0;
        for (int q = 0; q <= 5; ++q) {
            if (!H.available(q)) continue;
            long d = q_dimension(H.at(q).module());
            c.expect(d >= 0, "quotient: H_" + std::to_string(q) + " is not torsion");
            total += d;
            for (std::size_t g = 0; g < H.at(q).rank(); ++g)
                c.expect(zero_in(H, q, vec_scale(tt(), unit_vec(R, H.at(q).rank(), g))), "quotient: t does not annihilate H");
        }
        c.expect(total == 3, "quotient: H has Q-dimension " + std::to_string(total));
        Vec x = class_of(H, 2, "x"), y = class_of(H, 2, "y");
        Scalar det = x[0] * y[1] - x[1] * y[0];
        c.expect(H.at(2).rank() == 2 && !euclid::divides(tt(), det), "quotient: x, y do not span H_2");
        c.expect(H.at(5).rank() == 1 && !zero_in(H, 5, class_of(H, 5, "x*y_t")), "quotient: x*y_t does not span H_5");
        for (int p = 0; p <= 5; ++p)
            for (int q = 0; q <= 5; ++q) {
                if (!H.available(p) || !H.available(q) || !H.available(p + q)) continue;
                for (std::size_t i = 0; i < H.at(p).rank(); ++i)
                    for (std::size_t j = 0; j < H.at(q).rank(); ++j)
                        c.expect(zero_in(H, p + q, H.multiply(p, unit_vec(R, H.at(p).rank(), i), q, unit_vec(R, H.at(q).rank(), j))),
                                 "quotient: nonzero product in H");
            }
        MasseyCoset m = torsion_massey(H, input(H, "mu", {tt(), -tt()}, {{2, "x"}, {2, "y"}}));
        c.expect(H.at(5).module().equal(m.representative, vec_scale(sc(R, -1), class_of(H, 5, "x*y_t"))),
                 "quotient: product is not -x*y_t");
        c.expect(zero_indeterminacy(H, m), "quotient: indeterminacy is not zero");
    }
    {
        HomologyAlgebra H = homology_algebra(realize(fixtures::comm_qt_presentation(false, 6)));
        c.expect(q_dimension(H.at(5).module()) == 1, "free: H_5 is " + module_text(H.at(5).module()));
        c.expect(H.at(3).module().is_zero(), "free: H_3 is not zero");
        MasseyCoset m = torsion_massey(H, input(H, "mu", {tt(), -tt()}, {{2, "x"}, {2, "y"}}));
        // x_t y = y x_t since |y| is even
        Vec expected = H.at(5).project(element(H.algebra, 5, {{"y*x_t", 1}, {"x*y_t", -1}}));
        c.expect(H.at(5).module().equal(m.representative, expected), "free: product is not x_t y - x y_t");
        c.expect(!zero_in(H, 5, m.representative), "free: product is zero");
        c.expect(zero_indeterminacy(H, m), "free: indeterminacy is not zero");
        c.note("free H_5 = " + module_text(H.at(5).module()));
    }
}

// ---- 4 ----

void lie_quotient(Check& c) {
    const RingSpec R = RingSpec::rational_polynomials();
    HomologyAlgebra H = homology_algebra(realize(fixtures::lie_qt_presentation(true, 6)));
    MasseyCoset m = torsion_massey(H, input(H, "mu", {tt(), -tt()}, {{2, "x"}, {2, "y"}}));
    c.expect(H.at(5).module().equal(m.representative, vec_scale(sc(R, -1), class_of(H, 5, "[x,y_t]"))),
             "product is not -[x,y_t]");
    c.expect(!zero_in(H, 5, m.representative), "product is zero");
    c.expect(zero_indeterminacy(H, m), "indeterminacy is not zero");
}

void lie_free(Check& c) {
    HomologyAlgebra H = homology_algebra(realize(fixtures::lie_qt_presentation(false, 6)));
    MasseyCoset m = torsion_massey(H, input(H, "mu", {tt(), -tt()}, {{2, "x"}, {2, "y"}}));
    // [x_t, y] = -[y, x_t]
    Vec expected = H.at(5).project(element(H.algebra, 5, {{"[y,x_t]", -1}, {"[x,y_t]", -1}}));
    c.expect(H.at(5).module().equal(m.representative, expected), "product is not [x_t,y] - [x,y_t]");
    c.expect(!zero_in(H, 5, m.representative), "product is zero");
    c.expect(H.at(3).module().is_zero() && zero_indeterminacy(H, m), "indeterminacy is not zero");
    long d = q_dimension(H.at(5).module());
    c.expect(d == 1, "H_5 = " + module_text(H.at(5).module()) + " (Q-dimension " + std::to_string(d) +
                         "): [x,x_t] and [y,y_t] are cycles and not boundaries, so H_5 is not Q");
}

// ---- 5 ----

void universal_cocycle(Check& c) {
    struct F {
        std::string name;
        fixtures::FragmentFixture f;
    };
    std::vector<F> all{{"sagave", fixtures::sagave_fragment()},
                       {"dugger-shipley p=2", fixtures::dugger_shipley_fragment(2, {-2, 4})},
                       {"dugger-shipley p=3", fixtures::dugger_shipley_fragment(3, {-2, 4})},
                       {"comm quotient", fixtures::comm_qt_fragment()},
                       {"lie quotient", fixtures::lie_qt_fragment()},
                       {"triple massey", fixtures::massey_triple_fragment()},
                       {"formal", fixtures::formal_fragment(formal_dugger_shipley())}};
    std::size_t passed = 0;
    for (const F& f : all) {
        Report a = verify_minimal_fragment(f.f.model);
        Report b = verify_infinity_fragment(f.f.morphism, f.f.model);
        c.expect(a.ok(), f.name + ": fragment relations fail: " + (a.ok() ? "" : a.violations.front()));
        c.expect(b.ok(), f.name + ": morphism fails: " + (b.ok() ? "" : b.violations.front()));
        if (!a.ok() || !b.ok()) continue;
        HorizontalResolution R = induced_horizontal_resolution(f.f.morphism, f.f.model);
        Report r = verify_horizontal_resolution(R);
        c.expect(r.ok(), f.name + ": not a horizontal resolution");
        Cochain m = universal_massey_cocycle(R);
        bool cocycle = zero_on_exact_rows(R, m);
        c.expect(cocycle, f.name + ": d(m) != 0");
        if (r.ok() && cocycle) ++passed;
    }
    c.expect(passed >= 5, "only " + std::to_string(passed) + " fixtures");
    c.note(std::to_string(passed) + " fixtures");
}

// ---- 6a ----

void d_squared(Check& c) {
    std::mt19937 rng(20261017);
    std::vector<Named> all = all_resolutions();
    for (int k = 0; k < 2; ++k)
        all.push_back({"random Z/4", resolve_initial(homology_algebra(random_initial(rng, RingSpec::integers_mod(4), {-1, 4})), 3, false)});
    std::map<OperadKind, std::size_t> per_preset;
    std::size_t trials = 0;
    for (const Named& N : all) {
        for (int w = 0; w <= N.R.P.hmax(); ++w)
            for (int t = -2; t <= 1; ++t) {
                CochainSpace C = cochain_space(N.R, w, t);
                if (C.dim == 0 || cochain_space(N.R, w + 2, t).dim > 1500) continue;
                Matrix G = C.equivariant_generators();
                for (int r = 0; r < 5; ++r) {
                    bool ok = true;
                    std::size_t checked = check_d_squared(N.R, w, t, random_combination(rng, G), ok);
                    c.expect(ok, N.name + ": d^2 != 0 at w=" + std::to_string(w) + " t=" + std::to_string(t));
                    if (checked == 0) continue;
                    ++trials;
                    ++per_preset[N.R.P.operad().kind];
                }
            }
    }
    c.expect(trials >= 200, "only " + std::to_string(trials) + " cochains");
    for (OperadKind k : {OperadKind::Initial, OperadKind::Associative, OperadKind::Commutative, OperadKind::Lie})
        c.expect(per_preset[k] > 0, "a preset has no checked cochain");
    c.note(std::to_string(trials) + " cochains (initial " + std::to_string(per_preset[OperadKind::Initial]) + ", assoc " +
           std::to_string(per_preset[OperadKind::Associative]) + ", comm " + std::to_string(per_preset[OperadKind::Commutative]) +
           ", lie " + std::to_string(per_preset[OperadKind::Lie]) + ")");
}

// ---- 6b ----

void smith_contract(Check& c) {
    std::mt19937 rng(606);
    const RingSpec Z = RingSpec::integers();
    int n_checked = 0;
    for (int trial = 0; trial < 520; ++trial) {
        std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
        long spread = 1 + trial % 12;
        Matrix A(Z, m, n);
        std::vector<std::vector<mpz_class>> a(m, std::vector<mpz_class>(n));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long v = rng() % 3 == 0 ? 0 : long(rng() % (2 * spread + 1)) - spread;
                a[i][j] = v;
                A(i, j) = sc(Z, v);
            }
        SmithForm s = smith(A);
        bool ok = s.U * A * s.V == s.D && s.U * s.U_inv == Matrix::identity(Z, m) && s.V_inv * s.V == Matrix::identity(Z, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && !s.D(i, j).is_zero()) ok = false;
        for (std::size_t i = 0; i + 1 < s.rank; ++i) ok = ok && euclid::divides(s.diag(i), s.diag(i + 1));
        auto oracle = oracle::invariant_factors(a);
        ok = ok && oracle.size() == s.rank;
        for (std::size_t i = 0; ok && i < s.rank; ++i) ok = s.diag(i).as_mpz() == oracle[i];
        c.expect(ok, "SNF contract fails on trial " + std::to_string(trial));
        ++n_checked;
    }
    c.expect(n_checked >= 500, "too few matrices");
    c.note(std::to_string(n_checked) + " matrices up to 6x6");
}

// ---- 6c ----

Matrix random_matrix(std::mt19937& rng, const RingSpec& R, std::size_t m, std::size_t n) {
    Matrix A(R, m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = sc(R, long(rng() % 7) - 3);
    return A;
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

void homology_oracle(Check& c) {
    std::mt19937 rng(77);
    int n_checked = 0;
    for (auto R : {RingSpec::integers(), RingSpec::integers_mod(4), RingSpec::prime_field(5)}) {
        for (int trial = 0; trial < 70; ++trial) {
            std::size_t n0 = rng() % 3, n1 = 1 + rng() % 3, n2 = 1 + rng() % 3;
            ChainComplex C(R, {0, 2});
            std::vector<std::string> a, b, e;
            for (std::size_t i = 0; i < n0; ++i) a.push_back("a" + std::to_string(i));
            for (std::size_t i = 0; i < n1; ++i) b.push_back("b" + std::to_string(i));
            for (std::size_t i = 0; i < n2; ++i) e.push_back("c" + std::to_string(i));
            C.set_degree(0, a);
            C.set_degree(1, b);
            C.set_degree(2, e);
            Matrix d1 = random_matrix(rng, R, n0, n1);
            Matrix K = kernel_any(d1);
            Matrix d2 = K.cols() == 0 ? Matrix(R, n1, n2) : K * random_matrix(rng, R, K.cols(), n2);
            C.set_differential(1, d1);
            C.set_differential(2, d2);
            CanonicalForm cf = homology_at(C, 1).module().canonical_form();
            if (R.kind() == RingKind::Integers) {
                std::size_t free_rank = n1 - (n0 ? oracle::rational_rank(to_mpz(d1)) : 0) - oracle::rational_rank(to_mpz(d2));
                std::vector<mpz_class> tors;
                for (const auto& d : oracle::invariant_factors(to_mpz(d2)))
                    if (d != 1) tors.push_back(d);
                bool ok = cf.free_rank == free_rank && cf.torsion.size() == tors.size();
                for (std::size_t i = 0; ok && i < tors.size(); ++i) ok = cf.torsion[i].as_mpz() == tors[i];
                c.expect(ok, "Z complex " + std::to_string(trial));
            } else {
                // |H_1| counted by enumerating cycles and boundaries
                long n = R.modulus();
                auto out = n0 ? to_int(d1) : oracle::IntMatrix{};
                long expected = oracle::killed_by(out, to_int(d2), n1, n2, n, n);
                long order = 1;
                for (const auto& d : cf.torsion) order *= std::gcd(n, d.to_ring(R.cover()).as_mpz().get_si());
                for (std::size_t i = 0; i < cf.free_rank; ++i) order *= n;
                c.expect(order == expected, R.name() + " complex " + std::to_string(trial));
            }
            ++n_checked;
        }
    }
    c.expect(n_checked >= 200, "too few complexes");
    c.note(std::to_string(n_checked) + " complexes over Z, Z/4, F5");
}

// ---- 6d ----

struct MasseyCase {
    std::string name;
    HomologyAlgebra H;
    MasseyInput in;
};

std::vector<MasseyCase> massey_cases() {
    const RingSpec Z = RingSpec::integers();
    std::vector<MasseyCase> out;
    for (long p : {2L, 3L}) {
        HomologyAlgebra H = homology_algebra(fixtures::dugger_shipley(p, Z, {-2, 4}));
        std::string n = "dugger-shipley p=" + std::to_string(p);
        out.push_back({n, H, input(H, "commutator", {sc(Z, p), sc(Z, -p)}, {{0, "1"}, {1, "x"}})});
        out.push_back({n, H, input(H, "mu", {sc(Z, p), sc(Z, -p)}, {{1, "x"}, {0, "1"}})});
        out.push_back({n, H, input(H, "commutator", {sc(Z, p), sc(Z, -p)}, {{-1, "x^-1"}, {1, "x"}})});
    }
    for (bool lie : {false, true})
        for (bool quotient : {true, false}) {
            auto P = lie ? fixtures::lie_qt_presentation(quotient, 6) : fixtures::comm_qt_presentation(quotient, 6);
            HomologyAlgebra H = homology_algebra(realize(P));
            std::string n = std::string(lie ? "lie" : "comm") + (quotient ? " quotient" : " free");
            out.push_back({n, H, input(H, "mu", {tt(), -tt()}, {{2, "x"}, {2, "y"}})});
            out.push_back({n, H, input(H, "mu", {tt(), -tt()}, {{2, "y"}, {2, "x"}})});
        }
    return out;
}

void choice_independence(Check& c) {
    std::mt19937 rng(99);
    std::set<std::string> fixtures_seen;
    int trials = 0;
    for (MasseyCase& mc : massey_cases()) {
        const DGAlgebra& A = mc.H.algebra;
        MasseyCoset base = torsion_massey(mc.H, mc.in);
        for (int k = 0; k < 6; ++k) {
            MasseyChoices ch;
            for (std::size_t i = 0; i < 2; ++i) {
                int q = mc.in.degrees[i] + 1;
                Vec b = zero_vec(A.ring(), A.dim(q));
                for (auto& x : b) x = sc(A.ring(), long(rng() % 9) - 4);
                ch.boundary_sources.push_back(b);
                Matrix K = kernel_any(A.complex().d(q));
                Vec z = zero_vec(A.ring(), A.dim(q));
                for (std::size_t j = 0; j < K.cols(); ++j) z = vec_add(z, vec_scale(sc(A.ring(), long(rng() % 9) - 4), K.column(j)));
                ch.cycles.push_back(z);
            }
            MasseyCoset other = torsion_massey(mc.H, mc.in, &ch);
            Vec diff = vec_add(other.representative, vec_scale(sc(A.ring(), -1), base.representative));
            c.expect(base.indeterminacy.contains(diff), mc.name + ": coset moved");
            ++trials;
        }
        fixtures_seen.insert(mc.name);
    }
    c.note(std::to_string(trials) + " perturbations on " + std::to_string(fixtures_seen.size()) + " fixtures");
}

// ---- 6e ----

// k[x]/(x^a) ⊗ Λ(e, f) over Z/n, |x| even, |e| and |f| odd, zero differential.
DGAlgebra random_formal(std::mt19937& rng, long n) {
    const RingSpec R = RingSpec::integers_mod(n);
    int a = 2 + int(rng() % 3);
    int dx = (rng() % 2 ? 2 : -2), de = (rng() % 2 ? 1 : -1), df = (rng() % 2 ? 3 : -1);
    struct Mono {
        int i, e, f;
    };
    std::vector<Mono> monos;
    for (int i = 0; i < a; ++i)
        for (int e = 0; e < 2; ++e)
            for (int f = 0; f < 2; ++f) monos.push_back({i, e, f});
    auto deg = [&](const Mono& m) { return m.i * dx + m.e * de + m.f * df; };
    int lo = 0, hi = 0;
    for (const Mono& m : monos) lo = std::min(lo, deg(m)), hi = std::max(hi, deg(m));
    DegreeWindow W{lo - 2, hi + 3};
    DGAlgebra A(R, OperadPreset::associative(), W);
    std::map<int, std::vector<std::size_t>> cell;
    for (std::size_t k = 0; k < monos.size(); ++k) cell[deg(monos[k])].push_back(k);
    auto label = [](const Mono& m) {
        return "x" + std::to_string(m.i) + (m.e ? "e" : "") + (m.f ? "f" : "");
    };
    std::map<std::size_t, std::pair<int, std::size_t>> where;
    for (auto& [q, ks] : cell) {
        std::vector<std::string> L;
        for (std::size_t k : ks) {
            where[k] = {q, L.size()};
            L.push_back(label(monos[k]));
        }
        A.set_degree(q, L);
    }
    for (std::size_t u = 0; u < monos.size(); ++u)
        for (std::size_t v = 0; v < monos.size(); ++v) {
            const Mono &m1 = monos[u], &m2 = monos[v];
            if (m1.i + m2.i >= a || (m1.e && m2.e) || (m1.f && m2.f)) continue;
            Mono p{m1.i + m2.i, m1.e + m2.e, m1.f + m2.f};
            std::size_t k = 0;
            while (monos[k].i != p.i || monos[k].e != p.e || monos[k].f != p.f) ++k;
            auto [qp, ip] = where[k];
            if (!W.contains(qp)) continue;
            Vec val = zero_vec(R, A.dim(qp));
            val[ip] = sc(R, (m1.f && m2.e) ? -1 : 1);
            A.set_product(where[u].first, where[u].second, where[v].first, where[v].second, val);
        }
    A.set_unit(where[0].second);
    return A;
}

void formality(Check& c) {
    std::mt19937 rng(5150);
    int algebras = 0, products = 0;
    const long moduli[] = {4, 6, 8, 9, 12};
    for (int trial = 0; trial < 24; ++trial) {
        long n = moduli[trial % 5];
        DGAlgebra A = random_formal(rng, n);
        Report v = validate(A);
        c.expect(v.ok(), "random algebra fails validation");
        if (!v.ok()) continue;
        HomologyAlgebra H = homology_algebra(A);
        const RingSpec& R = A.ring();
        long t0 = 1;
        for (long d = 2; d < n; ++d)
            if (n % d == 0) t0 = d;
        if (rng() % 2) t0 = n % 2 == 0 ? 2 : 3;
        std::vector<int> degs;
        for (int q = A.window().lo; q <= A.window().hi; ++q)
            if (H.available(q) && H.at(q).rank() > 0) degs.push_back(q);
        int done = 0;
        for (int k = 0; k < 8 && done < 3; ++k) {
            int q0 = degs[rng() % degs.size()], q1 = degs[rng() % degs.size()];
            if (!H.available(q0 + q1 + 1) || !H.available(q0 + 1) || !H.available(q1 + 1)) continue;
            MasseyInput in;
            const char* ops[] = {"mu", "commutator", "2,1"};
            in.op = OpSpec::parse(ops[rng() % 3]);
            long s = long(rng() % 4);
            in.t = {sc(R, s * t0), sc(R, -s * t0)};
            in.degrees = {q0, q1};
            for (int q : {q0, q1}) {
                Vec x = zero_vec(R, H.at(q).rank());
                for (auto& e : x) e = sc(R, (n / t0) * long(rng() % t0));
                in.classes.push_back(x);
            }
            MasseyCoset m = torsion_massey(H, in);
            c.expect(m.vanishing() == Vanishing::Vanishes, "nonvanishing product on a formal algebra over Z/" + std::to_string(n));
            ++done;
            ++products;
        }
        if (done > 0) ++algebras;
    }
    c.expect(algebras >= 20, "only " + std::to_string(algebras) + " algebras");
    c.note(std::to_string(products) + " products on " + std::to_string(algebras) + " random algebras");
}

// ---- 6f ----

void routes_agree(Check& c) {
    const RingSpec Z = RingSpec::integers();
    int compared = 0, fragments = 0, formal = 0;
    auto compare = [&](const std::string& name, const HorizontalResolution& R, const MasseyInput& in) {
        MasseyCoset direct = torsion_massey(R.H, in);
        Vec model = torsion_massey_via_model(R, in);
        c.expect(direct.indeterminacy.contains(vec_add(model, vec_scale(sc(R.P.ring(), -1), direct.representative))),
                 name + ": routes disagree");
        ++compared;
    };
    auto lab = [](int k) { return k == 0 ? std::string("1") : (k == 1 ? std::string("x") : "x^" + std::to_string(k)); };
    for (long p : {2L, 3L}) {
        auto F = fixtures::dugger_shipley_fragment(p, {-3, 4});
        HorizontalResolution R = induced_horizontal_resolution(F.morphism, F.model);
        for (const char* op : {"mu", "commutator", "2,1"})
            for (int a = -2; a <= 2; ++a)
                for (int b = -2; b <= 2; ++b)
                    if (a + b + 1 <= 3 && a + b >= -2)
                        compare("dugger-shipley", R, input(R.H, op, {sc(Z, p), sc(Z, -p)}, {{a, lab(a)}, {b, lab(b)}}));
        ++fragments;
    }
    for (bool lie : {false, true}) {
        auto F = lie ? fixtures::lie_qt_fragment() : fixtures::comm_qt_fragment();
        HorizontalResolution R = induced_horizontal_resolution(F.morphism, F.model);
        compare(lie ? "lie" : "comm", R, input(R.H, "mu", {tt(), -tt()}, {{2, "x"}, {2, "y"}}));
        compare(lie ? "lie" : "comm", R, input(R.H, "mu", {tt(), -tt()}, {{2, "y"}, {2, "x"}}));
        ++fragments;
    }
    {
        auto F = fixtures::formal_fragment(formal_dugger_shipley());
        HorizontalResolution R = induced_horizontal_resolution(F.morphism, F.model);
        const RingSpec& Q = R.P.ring();
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) {
                if (!R.H.available(a + b + 1)) continue;
                MasseyInput in = input(R.H, "commutator", {sc(Q, 2), sc(Q, -2)}, {{a, lab(a)}, {b, lab(b)}});
                for (auto& x : in.classes) x = vec_scale(sc(Q, 2), x);
                try {
                    compare("formal", R, in);
                    ++formal;
                } catch (const WindowError&) {
                }
            }
        c.expect(formal > 0, "formal: nothing compared");
        ++fragments;
    }
    {
        // Γ route against the classical triple product U·c - (-1)^{|a|} a·V
        auto F = fixtures::massey_triple_fragment();
        HorizontalResolution R = induced_horizontal_resolution(F.morphism, F.model);
        const DGAlgebra& A = F.morphism.target;
        Vec a = element(A, 1, {{"a", 1}}), b = element(A, 1, {{"b", 1}}), cc = element(A, 1, {{"c", 1}});
        auto U = solve_any(A.complex().d(3), A.multiply(1, a, 1, b));
        auto V = solve_any(A.complex().d(3), A.multiply(1, b, 1, cc));
        Vec classical = R.H.at(4).project(vec_add(A.multiply(3, *U, 1, cc), A.multiply(1, a, 3, *V)));
        const Fragment& P = R.P;
        Vec model = gamma_massey_via_model(R, {P.basis_vec(P.find("a")), P.basis_vec(P.find("b")), P.basis_vec(P.find("c"))});
        c.expect(R.H.at(4).module().equal(model, classical), "triple massey: routes disagree");
        ++compared;
        ++fragments;
    }
    c.note(std::to_string(compared) + " comparisons on " + std::to_string(fragments) + " fragments");
}

}  // namespace

int main() {
    auto start = std::chrono::steady_clock::now();
    criterion("1", "Sagave complex: Ext^2(Z/2, Z/2) = Z/2, extension class is its generator", 1000, sagave);
    criterion("2", "Dugger-Shipley: <ell;2>(1,x) = x^2 nonvanishing; p = 3 indeterminacy H_2, vanishes", 5000, dugger_shipley);
    criterion("3", "commutative Q[t]: H, products, <mu;t>(x,y) = -x y_t; free H_5 = Q, H_3 = 0", 10000, commutative);
    criterion("4a", "Lie Q[t] quotient: <mu;t>(x,y) = -[x,y_t]", 10000, lie_quotient);
    criterion("4b", "Lie Q[t] free: [x_t,y] - [x,y_t] generates H_5 = Q", 10000, lie_free);
    criterion("5", "universal class d(m) = 0 and weight-3 certification on bundled fragments", 0, universal_cocycle);
    criterion("6a", "d^2 = 0 on random cochains across the four presets", 0, d_squared);
    criterion("6b", "SNF contract on random integer matrices", 0, smith_contract);
    criterion("6c", "homology against brute force", 0, homology_oracle);
    criterion("6d", "Massey coset independent of choices", 0, choice_independence);
    criterion("6e", "formal algebras: torsion Massey products vanish", 0, formality);
    criterion("6f", "model route agrees with the definition", 0, routes_agree);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "acceptance: " << failed << " failing, " << s << " s" << std::endl;
    return failed == 0 ? 0 : 1;
}
