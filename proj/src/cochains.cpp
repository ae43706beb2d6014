#include "opm/cochains.hpp"
#include "opm/smith.hpp"

#include <algorithm>

namespace opm {

namespace {

int pm(long parity) { return signs::sign(signs::parity(parity)); }

Matrix select_rows(const Matrix& A, const std::vector<std::size_t>& rows) {
    Matrix out(A.ring(), rows.size(), A.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) out(i, j) = A(rows[i], j);
    return out;
}

Matrix block_diagonal(const RingSpec& R, const std::vector<Matrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const Matrix& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix out(R, r, c);
    std::size_t i0 = 0, j0 = 0;
    for (const Matrix& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(i0 + i, j0 + j) = b(i, j);
        i0 += b.rows();
        j0 += b.cols();
    }
    return out;
}

void add_block(Matrix& M, std::size_t r0, std::size_t c0, const Matrix& B, const Scalar& c) {
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) M(r0 + i, c0 + j) += c * B(i, j);
}

// All tuples of basis elements of length r with horizontal degrees summing to h.
void tuples(const Fragment& P, std::size_t r, int h, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == r) {
        if (h == 0) out.push_back(cur);
        return;
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
        int hi = P.element(i).h;
        if (hi > h) continue;
        cur.push_back(i);
        tuples(P, r, h - hi, cur, out);
        cur.pop_back();
    }
}

int total_degree(const Fragment& P, const std::vector<std::size_t>& x) {
    int s = 0;
    for (std::size_t i : x) s += P.element(i).total();
    return s;
}

CoopElement coop_of(int u) {
    return u == 0 ? CoopElement::One : (u == 1 ? CoopElement::SMu : CoopElement::S2Gamma);
}

}  // namespace

std::optional<std::size_t> CochainSpace::find(int u, const std::vector<std::size_t>& inputs) const {
    auto it = index.find({u, inputs});
    if (it == index.end()) return std::nullopt;
    return it->second;
}

Matrix CochainSpace::equivariant_generators() const {
    const RingSpec& R = relations.ring();
    if (constraints.rows() == 0) return Matrix::identity(R, dim);
    Matrix K = kernel_any(hcat(constraints, constraint_relations));
    return K.block(0, dim, 0, K.cols());
}

CochainSpace cochain_space(const HorizontalResolution& Res, int w, int t) {
    const Fragment& P = Res.P;
    const HomologyAlgebra& H = Res.H;
    const RingSpec& R = P.ring();
    const OperadPreset& O = P.operad();
    CochainSpace C;
    C.w = w;
    C.t = t;
    if (!P.vertical_exhaustive()) {
        C.complete = false;
        C.gaps.push_back("the fragment is not exhaustive in vertical degrees");
    }
    if (w > P.hmax()) {
        C.complete = false;
        C.gaps.push_back("horizontal degree " + std::to_string(w) + " exceeds the fragment");
    }
    if (O.has_generator() && w >= 3) {
        C.complete = false;
        C.gaps.push_back("components of weight three and more are not materialized");
    }
    std::vector<Matrix> rel_blocks;
    const int umax = O.has_generator() ? std::min(w, 2) : std::min(w, 0);
    for (int u = 0; u <= umax; ++u) {
        std::vector<std::vector<std::size_t>> tup;
        std::vector<std::size_t> cur;
        tuples(P, std::size_t(u + 1), w - u, cur, tup);
        for (auto& x : tup) {
            const int n = u + total_degree(P, x) - w - t;
            if (!H.available(n)) {
                if (C.complete || C.gaps.empty() || C.gaps.back().rfind("H_", 0) != 0)
                    C.gaps.push_back("H_" + std::to_string(n) + " is outside the window");
                C.complete = false;
                continue;
            }
            C.index[{u, x}] = C.slots.size();
            C.slots.push_back({u, x, n});
            C.offset.push_back(C.dim);
            C.rank.push_back(H.at(n).rank());
            C.dim += H.at(n).rank();
            rel_blocks.push_back(H.at(n).module().relations());
        }
    }
    C.relations = block_diagonal(R, rel_blocks);
    if (C.relations.rows() != C.dim) C.relations = Matrix(R, C.dim, 0);

    std::vector<Matrix> cons_rows, cons_rel;
    for (int u = 1; u <= umax; ++u) {
        auto rels = symmetry_relations(O, coop_of(u));
        if (rels.empty()) continue;
        auto perms = all_perms(u + 1);
        for (std::size_t k = 0; k < C.slots.size(); ++k) {
            const CochainSlot& s = C.slots[k];
            if (s.u != u) continue;
            std::vector<int> degs;
            for (std::size_t i : s.inputs) degs.push_back(P.element(i).total());
            for (const auto& c : rels) {
                Matrix row(R, C.rank[k], C.dim);
                for (std::size_t p = 0; p < perms.size(); ++p) {
                    if (c[p] == 0) continue;
                    Perm inv = inverse(perms[p]);
                    std::vector<std::size_t> y(s.inputs.size());
                    for (std::size_t i = 0; i < y.size(); ++i) y[i] = s.inputs[inv[i]];
                    std::size_t j = *C.find(u, y);
                    Scalar coeff = Scalar::from_int(R, c[p] * pm(signs::alpha(perms[p], degs)));
                    add_block(row, 0, C.offset[j], Matrix::identity(R, C.rank[j]), coeff);
                }
                cons_rows.push_back(row);
                cons_rel.push_back(H.at(s.degree).module().relations());
            }
        }
    }
    Matrix cons(R, 0, C.dim);
    for (const Matrix& m : cons_rows) cons = vcat(cons, m);
    C.constraints = cons;
    C.constraint_relations = block_diagonal(R, cons_rel);
    if (C.constraint_relations.rows() != C.constraints.rows())
        C.constraint_relations = Matrix(R, C.constraints.rows(), 0);
    return C;
}

bool CochainDifferential::complete() const {
    return std::none_of(inexact.begin(), inexact.end(), [](bool b) { return b; });
}

CochainDifferential cochain_differential(const HorizontalResolution& Res, const CochainSpace& from,
                                         const CochainSpace& to) {
    const Fragment& P = Res.P;
    const HomologyAlgebra& H = Res.H;
    const RingSpec& R = P.ring();
    const int w = from.w, t = from.t;
    if (to.w != w + 1 || to.t != t) throw MathError("cochain differential goes from (w,t) to (w+1,t)");

    CochainDifferential D;
    D.matrix = Matrix(R, to.dim, from.dim);
    D.inexact.assign(to.slots.size(), false);
    auto sc = [&](long v) { return Scalar::from_int(R, v); };
    auto deg = [&](std::size_t i) { return P.element(i).total(); };
    auto hor = [&](std::size_t i) { return P.element(i).h; };

    for (std::size_t o = 0; o < to.slots.size(); ++o) {
        const CochainSlot& so = to.slots[o];
        const std::vector<std::size_t>& x = so.inputs;
        bool bad = false;
        const std::size_t ro = to.offset[o];

        // coefficient c times the identity from slot (u, y) of `from`
        auto ident = [&](int u, const std::vector<std::size_t>& y, const Scalar& c) {
            auto s = from.find(u, y);
            if (!s) {
                bad = true;
                return;
            }
            add_block(D.matrix, ro, from.offset[*s], Matrix::identity(R, from.rank[*s]), c);
        };
        // ρ(a)·(-) or (-)·ρ(a) on the values of slot (u, y)
        auto act = [&](int u, const std::vector<std::size_t>& y, std::size_t a, bool left, const Scalar& c) {
            if (hor(a) != 0) return;
            auto s = from.find(u, y);
            const int q = P.element(a).v;
            if (!s || !Res.rho.count(q)) {
                bad = true;
                return;
            }
            const int n = from.slots[*s].degree;
            if (left ? !H.product_known(q, n) : !H.product_known(n, q)) {
                bad = true;
                return;
            }
            Vec r = Res.apply_rho(P.basis_vec(a), q);
            Matrix L(R, to.rank[o], from.rank[*s]);
            for (std::size_t k = 0; k < from.rank[*s]; ++k) {
                Vec e = unit_vec(R, from.rank[*s], k);
                L.set_column(k, left ? H.multiply(q, r, n, e) : H.multiply(n, e, q, r));
            }
            add_block(D.matrix, ro, from.offset[*s], L, c);
        };
        auto mu0_known = [&](std::size_t a, std::size_t b) {
            if (P.cell_known(hor(a) + hor(b), P.element(a).v + P.element(b).v)) return true;
            bad = true;
            return false;
        };

        if (so.u == 0) {
            for (auto& [y, c] : P.d1(P.basis_vec(x[0]))) ident(0, {y}, sc(pm(w + 1)) * c);
        } else if (so.u == 1) {
            const std::size_t a = x[0], b = x[1];
            if (hor(b) == 0 && hor(a) == w) act(0, {a}, b, false, sc(pm(t + (w + t))));
            if (hor(a) == 0 && hor(b) == w) act(0, {b}, a, true, sc(pm(t + long(deg(a) + 1) * (w + t))));
            if (mu0_known(a, b))
                for (auto& [y, c] : P.mu0(P.basis_vec(a), P.basis_vec(b))) ident(0, {y}, sc(-pm(w)) * c);
            for (auto& [y, c] : P.d1(P.basis_vec(a))) ident(1, {y, b}, sc(pm(w)) * c);
            for (auto& [y, c] : P.d1(P.basis_vec(b))) ident(1, {a, y}, sc(pm(w + deg(a))) * c);
        } else {
            std::vector<int> degs{deg(x[0]), deg(x[1]), deg(x[2])};
            for (const RelationTerm& term : P.operad().relation) {
                Perm inv = inverse(term.sigma);
                std::vector<std::size_t> y{x[inv[0]], x[inv[1]], x[inv[2]]};
                Scalar th = sc(term.coeff * pm(signs::theta(w, t, term.sigma, 0, 0, degs, term.l)));
                Scalar de = sc(term.coeff * pm(w + signs::delta(term.sigma, 0, degs, term.l)));
                if (term.l == 1) {
                    act(1, {y[0], y[1]}, y[2], false, th);
                    if (mu0_known(y[0], y[1]))
                        for (auto& [z, c] : P.mu0(P.basis_vec(y[0]), P.basis_vec(y[1]))) ident(1, {z, y[2]}, de * c);
                } else {
                    act(1, {y[1], y[2]}, y[0], true, th);
                    if (mu0_known(y[1], y[2]))
                        for (auto& [z, c] : P.mu0(P.basis_vec(y[1]), P.basis_vec(y[2]))) ident(1, {y[0], z}, de * c);
                }
            }
            long prefix = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                for (auto& [z, c] : P.d1(P.basis_vec(x[i]))) {
                    std::vector<std::size_t> y = x;
                    y[i] = z;
                    ident(2, y, sc(-pm(w + prefix)) * c);
                }
                prefix += deg(x[i]);
            }
        }
        D.inexact[o] = bad;
    }
    return D;
}

Cochain apply_differential(const HorizontalResolution& R, const Cochain& psi) {
    CochainSpace from = cochain_space(R, psi.w, psi.t), to = cochain_space(R, psi.w + 1, psi.t);
    if (psi.values.size() != from.dim) throw MathError("cochain has the wrong number of coordinates");
    CochainDifferential D = cochain_differential(R, from, to);
    return {psi.w + 1, psi.t, D.matrix.apply(psi.values)};
}

CohomologyWindowResult cohomology_window(const HorizontalResolution& Res, int w, int t) {
    const RingSpec& R = Res.P.ring();
    CohomologyWindowResult out;
    out.w = w;
    out.t = t;
    CochainSpace C = cochain_space(Res, w, t), C1 = cochain_space(Res, w + 1, t);
    CochainDifferential D = cochain_differential(Res, C, C1);

    std::vector<std::size_t> rows;
    std::vector<Matrix> kept_rel;
    for (std::size_t o = 0; o < C1.slots.size(); ++o) {
        if (!D.inexact[o]) {
            for (std::size_t i = 0; i < C1.rank[o]; ++i) rows.push_back(C1.offset[o] + i);
            kept_rel.push_back(Res.H.at(C1.slots[o].degree).module().relations());
        }
    }
    Matrix Dk = select_rows(D.matrix, rows);
    Matrix out_map = vcat(C.constraints, Dk);
    Matrix Krel = block_diagonal(R, kept_rel);
    if (Krel.rows() != Dk.rows()) Krel = Matrix(R, Dk.rows(), 0);
    Matrix out_rel = block_diag(C.constraint_relations, Krel);

    Matrix in(R, C.dim, 0);
    bool prev_ok = true;
    if (w >= 1) {
        CochainSpace Cm = cochain_space(Res, w - 1, t);
        CochainDifferential Dm = cochain_differential(Res, Cm, C);
        in = Dm.matrix * Cm.equivariant_generators();
        prev_ok = Cm.complete && Dm.complete();
        for (auto& g : Cm.gaps) out.gaps.push_back("C^" + std::to_string(w - 1) + ": " + g);
    }
    out.cohomology = std::make_shared<Subquotient>(out_map, out_rel, in, C.relations);
    for (auto& g : C.gaps) out.gaps.push_back("C^" + std::to_string(w) + ": " + g);
    for (auto& g : C1.gaps) out.gaps.push_back("C^" + std::to_string(w + 1) + ": " + g);
    if (!D.complete()) out.gaps.push_back("some components of d need data outside the window");
    out.complete = C.complete && C1.complete && D.complete() && prev_ok;
    return out;
}

HorizontalResolution verified_resolution(const InfinityFragment& f, const Fragment& M) {
    Report a = verify_minimal_fragment(M);
    if (!a.ok()) throw PreconditionError("fragment fails verification: " + a.violations.front());
    Report b = verify_infinity_fragment(f, M);
    if (!b.ok()) throw PreconditionError("infinity morphism fails verification: " + b.violations.front());
    HorizontalResolution R = induced_horizontal_resolution(f, M);
    Report c = verify_horizontal_resolution(R);
    if (!c.ok()) throw PreconditionError("horizontal resolution fails verification: " + c.violations.front());
    return R;
}

Cochain universal_massey_cocycle(const HorizontalResolution& Res) {
    const Fragment& P = Res.P;
    const RingSpec& R = P.ring();
    CochainSpace C = cochain_space(Res, 2, -1);
    Cochain m{2, -1, zero_vec(R, C.dim)};
    for (std::size_t k = 0; k < C.slots.size(); ++k) {
        const CochainSlot& s = C.slots[k];
        const int n = s.degree;
        if (!P.cell_known(0, n) || !Res.rho.count(n)) continue;
        std::vector<SparseVec> x;
        for (std::size_t i : s.inputs) x.push_back(P.basis_vec(i));
        SparseVec y = s.u == 0 ? P.d2(x[0]) : (s.u == 1 ? P.mu1(x[0], x[1]) : P.gamma0(x[0], x[1], x[2]));
        Vec v = Res.apply_rho(y, n);
        for (std::size_t i = 0; i < v.size(); ++i) m.values[C.offset[k] + i] = v[i];
    }
    return m;
}

std::string to_string(CoboundaryVerdict v) {
    switch (v) {
        case CoboundaryVerdict::Coboundary: return "coboundary";
        case CoboundaryVerdict::NotCoboundaryInWindow: return "not-coboundary-in-window";
        case CoboundaryVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

CoboundaryResult is_coboundary(const HorizontalResolution& Res, const Cochain& psi) {
    CochainSpace C = cochain_space(Res, psi.w, psi.t);
    if (psi.values.size() != C.dim) throw MathError("cochain has the wrong number of coordinates");
    CoboundaryResult out;
    if (psi.w == 0) {
        bool zero = C.relations.cols() == 0 ? is_zero_vec(psi.values)
                                            : solve_any(C.relations, psi.values).has_value();
        if (zero) {
            out.verdict = CoboundaryVerdict::Coboundary;
            return out;
        }
        out.verdict = C.complete ? CoboundaryVerdict::NotCoboundaryInWindow : CoboundaryVerdict::Inconclusive;
        return out;
    }
    CochainSpace Cm = cochain_space(Res, psi.w - 1, psi.t);
    CochainDifferential D = cochain_differential(Res, Cm, C);
    Matrix G = Cm.equivariant_generators();
    Matrix A = hcat(D.matrix * G, C.relations);
    auto sol = solve_any(A, psi.values);
    const bool exact = C.complete && Cm.complete && D.complete();
    if (sol) {
        Vec z(sol->begin(), sol->begin() + long(G.cols()));
        out.witness = Cochain{psi.w - 1, psi.t, G.apply(z)};
        out.verdict = exact ? CoboundaryVerdict::Coboundary : CoboundaryVerdict::Inconclusive;
    } else {
        out.verdict = exact ? CoboundaryVerdict::NotCoboundaryInWindow : CoboundaryVerdict::Inconclusive;
    }
    return out;
}

HorizontalResolution resolve_initial(const HomologyAlgebra& H, int hmax, bool vertical_exhaustive) {
    const RingSpec& R = H.algebra.ring();
    if (H.data.groups.empty()) throw MathError("no homology is available");
    DegreeWindow V{H.data.groups.begin()->first, H.data.groups.rbegin()->first};
    HorizontalResolution Res;
    Res.P = Fragment(R, OperadPreset::initial(), hmax, V, vertical_exhaustive);
    Res.H = H;
    for (auto& [q, g] : H.data.groups) {
        FreeResolution res = free_resolution(g.module(), std::size_t(hmax));
        std::vector<std::vector<std::size_t>> idx(hmax + 1);
        for (int h = 0; h <= hmax; ++h) {
            std::size_t n = std::size_t(h) < res.ranks.size() ? res.ranks[h] : 0;
            for (std::size_t i = 0; i < n; ++i)
                idx[h].push_back(Res.P.add(h, q, "F" + std::to_string(h) + "," + std::to_string(q) + "#" + std::to_string(i)));
        }
        for (int h = 1; h <= hmax; ++h) {
            if (idx[h].empty()) continue;
            const Matrix& d = res.maps[h - 1];
            for (std::size_t j = 0; j < idx[h].size(); ++j) {
                SparseVec v;
                for (std::size_t i = 0; i < idx[h - 1].size(); ++i)
                    if (!d(i, j).is_zero()) v.emplace(idx[h - 1][i], d(i, j));
                Res.P.set_d1(idx[h][j], v);
            }
        }
        Res.rho.emplace(q, res.simplified.from_simple);
    }
    return Res;
}

std::vector<ExtensionClass2> unit_universal_massey(const ChainComplex& C) {
    std::vector<ExtensionClass2> out;
    const DegreeWindow& W = C.window();
    for (int q = W.lo + 1; q + 2 <= W.hi; ++q) out.push_back(extension_class(C, q));
    return out;
}

}  // namespace opm
