#pragma once

#include "opm/cochains.hpp"
#include "opm/fixtures.hpp"
#include "opm/massey.hpp"

#include <map>
#include <random>
#include <tuple>

namespace opm::support {

inline HorizontalResolution resolution_of(const fixtures::FragmentFixture& F) {
    return verified_resolution(F.morphism, F.model);
}

// Entries of d(psi) on output slots whose rows are exact.
inline bool zero_on_exact_rows(const HorizontalResolution& R, const Cochain& psi) {
    CochainSpace from = cochain_space(R, psi.w, psi.t), to = cochain_space(R, psi.w + 1, psi.t);
    CochainDifferential D = cochain_differential(R, from, to);
    Vec v = D.matrix.apply(psi.values);
    for (std::size_t o = 0; o < to.slots.size(); ++o) {
        if (D.inexact[o]) continue;
        const PresentedModule& M = R.H.at(to.slots[o].degree).module();
        Vec part(v.begin() + long(to.offset[o]), v.begin() + long(to.offset[o] + to.rank[o]));
        if (!M.contains(part)) return false;
    }
    return true;
}


struct Named {
    std::string name;
    HorizontalResolution R;
};

inline Scalar random_entry(std::mt19937& rng, const RingSpec& R, bool poly) {
    long a = long(rng() % 5) - 2;
    if (!poly) return Scalar::from_int(R, a);
    return Scalar::parse(R, "[" + std::to_string(a) + "," + std::to_string(long(rng() % 3) - 1) + "]");
}

inline DGAlgebra random_initial(std::mt19937& rng, const RingSpec& R, DegreeWindow W, bool poly = false) {
    DGAlgebra A(R, OperadPreset::initial(), W);
    std::map<int, std::size_t> n;
    for (int q = W.lo; q <= W.hi; ++q) {
        n[q] = 1 + rng() % 2;
        std::vector<std::string> L;
        for (std::size_t i = 0; i < n[q]; ++i) L.push_back("e" + std::to_string(q) + "_" + std::to_string(i));
        A.set_degree(q, L);
    }
    Matrix prev;
    for (int q = W.lo + 1; q <= W.hi; ++q) {
        Matrix d(R, n[q - 1], n[q]);
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = random_entry(rng, R, poly);
        if (q > W.lo + 1) {
            Matrix K = kernel_any(prev);
            Matrix c(R, K.cols(), n[q]);
            for (std::size_t i = 0; i < c.rows(); ++i)
                for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = random_entry(rng, R, poly);
            d = K.cols() == 0 ? Matrix(R, n[q - 1], n[q]) : K * c;
        }
        A.set_differential(q, d);
        prev = d;
    }
    return A;
}

// P = A ⊗ E for A with zero differential and E = <1, z, s>, z at (0,0),
// s at (1,0), d1 s = z, all products of z and s zero. The rows are
// A s -> A ⊕ A z -> A, so d1 has unit coefficients on P.
inline HorizontalResolution cone_resolution(const DGAlgebra& A) {
    const RingSpec& R = A.ring();
    DegreeWindow V{A.window().lo + 1, A.window().hi - 1};
    Fragment P(R, A.operad(), 2, V, false);
    std::map<std::tuple<int, std::size_t, int>, std::size_t> idx;  // (q, i, e) with e = 0 (1), 1 (z), 2 (s)
    for (int q = V.lo; q <= V.hi; ++q)
        for (int e = 0; e < 3; ++e)
            for (std::size_t i = 0; i < A.dim(q); ++i)
                idx[{q, i, e}] = P.add(e == 2 ? 1 : 0, q, A.labels(q)[i] + (e == 0 ? "" : e == 1 ? "z" : "s"));
    for (int q = V.lo; q <= V.hi; ++q)
        for (std::size_t i = 0; i < A.dim(q); ++i)
            P.set_d1(idx[{q, i, 2}], {{idx[{q, i, 1}], Scalar::from_int(R, signs::sign(q))}});
    for (int p = V.lo; p <= V.hi; ++p)
        for (int q = V.lo; q <= V.hi; ++q) {
            if (!V.contains(p + q)) continue;
            for (std::size_t i = 0; i < A.dim(p); ++i)
                for (std::size_t j = 0; j < A.dim(q); ++j) {
                    Vec v = A.product_basis(p, i, q, j);
                    for (auto [e, f, g] : {std::tuple{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {0, 2, 2}, {2, 0, 2}}) {
                        Scalar c = Scalar::from_int(R, e == 2 ? signs::sign(q) : 1);
                        SparseVec out;
                        for (std::size_t k = 0; k < v.size(); ++k)
                            if (!v[k].is_zero()) out.emplace(idx[{p + q, k, g}], c * v[k]);
                        if (!out.empty()) P.set_mu0(idx[{p, i, e}], idx[{q, j, f}], out);
                    }
                }
        }
    HorizontalResolution Res;
    Res.P = P;
    Res.H = homology_algebra(A);
    for (int q = V.lo; q <= V.hi; ++q) {
        if (!Res.H.available(q)) continue;
        std::vector<std::size_t> cell = P.cell(0, q);
        Matrix rho(R, Res.H.at(q).rank(), cell.size());
        for (std::size_t c = 0; c < cell.size(); ++c)
            for (std::size_t i = 0; i < A.dim(q); ++i)
                if (cell[c] == idx[{q, i, 0}]) rho.set_column(c, Res.H.at(q).project(unit_vec(R, A.dim(q), i)));
        Res.rho.emplace(q, rho);
    }
    return Res;
}

inline DGAlgebra formal_dugger_shipley(DegreeWindow W = {-2, 3}) {
    DGAlgebra A = fixtures::dugger_shipley(2, RingSpec::integers_mod(4), W);
    for (int q = W.lo + 1; q <= W.hi; ++q) A.set_differential(q, Matrix(A.ring(), 2, 2));
    return A;
}

inline std::vector<Named> all_resolutions() {
    std::vector<Named> out;
    out.push_back({"sagave", resolution_of(fixtures::sagave_fragment())});
    out.push_back({"dugger-shipley p=2", resolution_of(fixtures::dugger_shipley_fragment(2, {-2, 3}))});
    out.push_back({"dugger-shipley p=3", resolution_of(fixtures::dugger_shipley_fragment(3, {-3, 4}))});
    out.push_back({"comm quotient", resolution_of(fixtures::comm_qt_fragment())});
    out.push_back({"lie quotient", resolution_of(fixtures::lie_qt_fragment())});
    out.push_back({"triple massey", resolution_of(fixtures::massey_triple_fragment())});
    out.push_back({"formal", resolution_of(fixtures::formal_fragment(formal_dugger_shipley()))});
    out.push_back({"cone", cone_resolution(formal_dugger_shipley({-1, 2}))});
    return out;
}

inline Vec random_combination(std::mt19937& rng, const Matrix& G) {
    Vec c(G.cols());
    for (auto& x : c) x = Scalar::from_int(G.ring(), long(rng() % 5) - 2);
    return G.apply(c);
}

// Number of output slots of d∘d that could be checked; false via `ok` if
// one of them is nonzero.
inline std::size_t check_d_squared(const HorizontalResolution& R, int w, int t, const Vec& phi, bool& ok) {
    CochainSpace C0 = cochain_space(R, w, t), C1 = cochain_space(R, w + 1, t), C2 = cochain_space(R, w + 2, t);
    CochainDifferential D0 = cochain_differential(R, C0, C1), D1 = cochain_differential(R, C1, C2);
    Vec v = D1.matrix.apply(D0.matrix.apply(phi));
    std::vector<std::size_t> slot_of(C1.dim);
    for (std::size_t s = 0; s < C1.slots.size(); ++s)
        for (std::size_t i = 0; i < C1.rank[s]; ++i) slot_of[C1.offset[s] + i] = s;
    std::size_t checked = 0;
    for (std::size_t o = 0; o < C2.slots.size(); ++o) {
        if (D1.inexact[o]) continue;
        bool support_exact = true;
        for (std::size_t i = 0; i < C2.rank[o]; ++i)
            for (std::size_t j = 0; j < C1.dim; ++j)
                if (!D1.matrix(C2.offset[o] + i, j).is_zero() && D0.inexact[slot_of[j]]) support_exact = false;
        if (!support_exact) continue;
        Vec part(v.begin() + long(C2.offset[o]), v.begin() + long(C2.offset[o] + C2.rank[o]));
        if (!R.H.at(C2.slots[o].degree).module().contains(part)) ok = false;
        ++checked;
    }
    return checked;
}


}  // namespace opm::support
