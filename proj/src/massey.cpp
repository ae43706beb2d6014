#include "opm/massey.hpp"
#include "opm/smith.hpp"

namespace opm {

std::string to_string(Vanishing v) {
    switch (v) {
        case Vanishing::Vanishes: return "vanishes";
        case Vanishing::Nonvanishing: return "nonvanishing";
        case Vanishing::WindowInsufficient: return "window-insufficient";
    }
    return "?";
}

bool Submodule::contains(const Vec& v) const {
    return solve_any(hcat(generators, ambient.relations()), v).has_value();
}

bool Submodule::is_full() const {
    const RingSpec& R = ambient.ring();
    for (std::size_t g = 0; g < ambient.ambient_rank(); ++g)
        if (!contains(unit_vec(R, ambient.ambient_rank(), g))) return false;
    return true;
}

Vanishing MasseyCoset::vanishing() const {
    if (indeterminacy.contains(representative)) return Vanishing::Vanishes;
    return indeterminacy.complete ? Vanishing::Nonvanishing : Vanishing::WindowInsufficient;
}

Vanishing is_vanishing(const MasseyCoset& c) { return c.vanishing(); }

namespace {

int total(const std::vector<int>& d) {
    int s = 0;
    for (int x : d) s += x;
    return s;
}

Vec op_slots(const HomologyAlgebra& H, const OpSpec& op, const std::vector<int>& d, const std::vector<Vec>& v) {
    return H.apply_op(op, d[0], v[0], d[1], v[1]);
}

void check_input(const HomologyAlgebra& H, const MasseyInput& in) {
    if (in.t.size() != 2 || in.degrees.size() != 2 || in.classes.size() != 2)
        throw PreconditionError("torsion Massey products take two scalars and two classes");
    if (!(in.t[0] + in.t[1]).is_zero()) throw PreconditionError("the scalars t_i do not sum to zero");
    for (std::size_t i = 0; i < 2; ++i) {
        if (!H.available(in.degrees[i])) throw WindowError("H_" + std::to_string(in.degrees[i]) + " is outside the window");
        const HomologyGroup& h = H.at(in.degrees[i]);
        if (in.classes[i].size() != h.rank()) throw PreconditionError("class has the wrong number of coordinates");
        if (!h.module().contains(vec_scale(in.t[i], in.classes[i])))
            throw PreconditionError("t_" + std::to_string(i + 1) + "·x_" + std::to_string(i + 1) + " is not zero");
    }
}

}  // namespace

Submodule indeterminacy(const HomologyAlgebra& H, const OpSpec& op, const std::vector<int>& degrees,
                        const std::vector<Vec>& classes) {
    if (degrees.size() != 2 || classes.size() != 2) throw PreconditionError("torsion Massey products are binary here");
    const RingSpec& R = H.algebra.ring();
    const int n = total(degrees) + 1;
    if (!H.available(n)) throw WindowError("H_" + std::to_string(n) + " is outside the window");
    Submodule S;
    S.degree = n;
    S.ambient = H.at(n).module();
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<int> d = degrees;
        d[i] += 1;
        if (!H.available(d[i]) || !H.product_known(d[0], d[1]) || !H.product_known(d[1], d[0])) {
            S.complete = false;
            continue;
        }
        for (std::size_t h = 0; h < H.at(d[i]).rank(); ++h) {
            std::vector<Vec> v = classes;
            v[i] = unit_vec(R, H.at(d[i]).rank(), h);
            gens.push_back(op_slots(H, op, d, v));
        }
    }
    S.generators = Matrix::from_columns(R, S.ambient.ambient_rank(), gens);
    return S;
}

MasseyCoset torsion_massey(const HomologyAlgebra& H, const MasseyInput& in, const MasseyChoices* choices) {
    const DGAlgebra& A = H.algebra;
    const RingSpec& R = A.ring();
    check_input(H, in);
    const int n = total(in.degrees) + 1;
    if (!H.available(n)) throw WindowError("H_" + std::to_string(n) + " is outside the window");

    std::vector<Vec> y(2), z(2);
    for (std::size_t i = 0; i < 2; ++i) {
        const int q = in.degrees[i];
        if (!A.window().contains(q + 1)) throw WindowError("cannot solve d z = t y: degree " + std::to_string(q + 1) + " is outside the window");
        y[i] = H.at(q).lift(in.classes[i]);
        if (choices && i < choices->boundary_sources.size() && !choices->boundary_sources[i].empty())
            y[i] = vec_add(y[i], A.d(q + 1, choices->boundary_sources[i]));
        auto sol = solve_any(A.complex().d(q + 1), vec_scale(in.t[i], y[i]));
        if (!sol) throw WindowError("cannot solve d z = t y inside the window");
        z[i] = *sol;
        if (choices && i < choices->cycles.size() && !choices->cycles[i].empty()) {
            if (!is_zero_vec(A.d(q + 1, choices->cycles[i]))) throw PreconditionError("perturbation is not a cycle");
            z[i] = vec_add(z[i], choices->cycles[i]);
        }
    }
    const int d0 = in.degrees[0], d1 = in.degrees[1];
    if (!A.product_known(d0 + 1, d1) || !A.product_known(d1, d0 + 1) || !A.product_known(d0, d1 + 1) ||
        !A.product_known(d1 + 1, d0))
        throw WindowError("products needed for the Massey representative are outside the window");

    MasseyCoset c;
    c.degree = n;
    c.cycle = A.apply_op(in.op, d0 + 1, z[0], d1, y[1]);
    Vec second = A.apply_op(in.op, d0, y[0], d1 + 1, z[1]);
    c.cycle = vec_add(c.cycle, vec_scale(Scalar::from_int(R, signs::sign(d0)), second));
    if (!is_zero_vec(A.d(n, c.cycle))) throw MathError("Massey representative is not a cycle");
    c.representative = H.at(n).project(c.cycle);
    c.indeterminacy = indeterminacy(H, in.op, in.degrees, in.classes);
    return c;
}

}  // namespace opm

namespace opm {

namespace {

int homogeneous_degree(const Fragment& P, const SparseVec& x, int h) {
    if (x.empty()) throw PreconditionError("zero input has no degree");
    int v = P.element(x.begin()->first).v;
    for (auto& [k, c] : x)
        if (P.element(k).h != h || P.element(k).v != v)
            throw PreconditionError("input is not homogeneous of horizontal degree " + std::to_string(h));
    return v;
}

SparseVec to_sparse(const std::vector<std::size_t>& cell, const Vec& coords) {
    SparseVec out;
    for (std::size_t j = 0; j < cell.size(); ++j)
        if (!coords[j].is_zero()) out.emplace(cell[j], coords[j]);
    return out;
}

Vec to_dense(const std::vector<std::size_t>& cell, const SparseVec& x, const RingSpec& R) {
    Vec out = zero_vec(R, cell.size());
    for (std::size_t j = 0; j < cell.size(); ++j) {
        auto it = x.find(cell[j]);
        if (it != x.end()) out[j] = it->second;
    }
    return out;
}

// d1 : P_{h,q} -> P_{h-1,q} restricted to the cells.
SparseVec solve_d1(const Fragment& P, int h, int q, const SparseVec& target, const std::string& what) {
    if (!P.cell_known(h, q)) throw WindowError("fragment window insufficient for " + what);
    std::vector<std::size_t> src = P.cell(h, q), dst = P.cell(h - 1, q);
    Matrix d = underlying_bicomplex(P).d1(h, q);
    if (dst.empty()) {
        if (!target.empty()) throw WindowError("fragment window insufficient for " + what);
        return {};
    }
    if (src.empty()) d = Matrix(P.ring(), dst.size(), 0);
    auto sol = solve_any(d, to_dense(dst, target, P.ring()));
    if (!sol) throw WindowError("fragment window insufficient for " + what);
    return to_sparse(src, *sol);
}

SparseVec op_model(const Fragment& P, const OpSpec& op, bool weight_one, const SparseVec& a, int da,
                   const SparseVec& b, int db) {
    const RingSpec& R = P.ring();
    auto m = [&](const SparseVec& x, const SparseVec& y) { return weight_one ? P.mu1(x, y) : P.mu0(x, y); };
    SparseVec out;
    if (op.a != 0) out = sparse_add(out, sparse_scale(Scalar::from_int(R, op.a), m(a, b)));
    if (op.b != 0) {
        int k = signs::sign(signs::parity(long(da) * db));
        out = sparse_add(out, sparse_scale(Scalar::from_int(R, op.b * k), m(b, a)));
    }
    return out;
}

}  // namespace

Vec torsion_massey_via_model(const HorizontalResolution& R, const MasseyInput& in) {
    const Fragment& P = R.P;
    const RingSpec& K = P.ring();
    if (!P.operad().has_generator()) throw PreconditionError("the " + P.operad().name + " operad has no generator");
    check_input(R.H, in);
    const int n = total(in.degrees);
    if (!R.H.available(n + 1)) throw WindowError("H_" + std::to_string(n + 1) + " is outside the window");

    std::vector<SparseVec> u(2), v(2);
    std::vector<int> tot(2);
    for (std::size_t i = 0; i < 2; ++i) {
        const int q = in.degrees[i];
        if (!R.rho.count(q)) throw WindowError("rho is unavailable in degree " + std::to_string(q));
        std::vector<std::size_t> c0 = P.cell(0, q);
        Matrix rho = R.rho.at(q);
        if (c0.empty()) rho = Matrix(K, R.H.at(q).rank(), 0);
        auto sol = solve_any(hcat(rho, R.H.at(q).module().relations()), in.classes[i]);
        if (!sol) throw WindowError("no lift of x_" + std::to_string(i + 1) + " to the fragment");
        u[i] = to_sparse(c0, Vec(sol->begin(), sol->begin() + long(c0.size())));
        v[i] = solve_d1(P, 1, q, sparse_scale(in.t[i], u[i]), "d1 v = t u");
        tot[i] = q;
    }
    // tot[i] = |u_i|, |v_i| = |u_i| + 1
    auto sgn_beta = [&](std::size_t i) { return Scalar::from_int(K, signs::sign(signs::beta(0, tot, int(i) + 1))); };

    SparseVec rhs = op_model(P, in.op, false, v[0], tot[0] + 1, u[1], tot[1]);
    rhs = sparse_add(rhs, sparse_scale(sgn_beta(1), op_model(P, in.op, false, u[0], tot[0], v[1], tot[1] + 1)));
    if (!P.cell_known(1, n) || !P.cell_known(0, n + 1)) throw WindowError("fragment window insufficient");
    SparseVec w = solve_d1(P, 2, n, rhs, "d1 w");

    SparseVec m = op_model(P, in.op, true, v[0], tot[0] + 1, u[1], tot[1]);
    m = sparse_add(m, sparse_scale(sgn_beta(1), op_model(P, in.op, true, u[0], tot[0], v[1], tot[1] + 1)));
    m = sparse_add(m, sparse_scale(Scalar::from_int(K, -1), P.d2(w)));
    return R.apply_rho(m, n + 1);
}

Vec gamma_massey_via_model(const HorizontalResolution& R, const std::vector<SparseVec>& u) {
    const Fragment& P = R.P;
    if (!P.operad().has_generator()) throw PreconditionError("the " + P.operad().name + " operad has no relation");
    if (u.size() != 3) throw PreconditionError("the relation has arity three");
    int n = 1;
    for (const SparseVec& x : u) n += homogeneous_degree(P, x, 0);
    if (!P.cell_known(0, n) || !R.rho.count(n)) throw WindowError("H_" + std::to_string(n) + " is outside the window");
    return R.apply_rho(P.gamma0(u[0], u[1], u[2]), n);
}

}  // namespace opm
