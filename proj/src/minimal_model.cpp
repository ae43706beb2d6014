#include "opm/minimal_model.hpp"

#include <sstream>

namespace opm {

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
    SparseVec out = a;
    for (auto& [k, v] : b) {
        auto it = out.find(k);
        if (it == out.end()) {
            if (!v.is_zero()) out.emplace(k, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

SparseVec sparse_scale(const Scalar& c, const SparseVec& a) {
    SparseVec out;
    for (auto& [k, v] : a) {
        Scalar s = c * v;
        if (!s.is_zero()) out.emplace(k, s);
    }
    return out;
}

namespace {

void accumulate(SparseVec& acc, const Scalar& c, const SparseVec& v) {
    for (auto& [k, x] : v) {
        Scalar s = c * x;
        auto it = acc.find(k);
        if (it == acc.end()) {
            if (!s.is_zero()) acc.emplace(k, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

Scalar sgn(const RingSpec& R, int parity_or_sign) {
    return Scalar::from_int(R, parity_or_sign);
}

int pm(int parity) { return signs::sign(parity); }

}  // namespace

Fragment::Fragment(RingSpec ring, OperadPreset operad, int hmax, DegreeWindow vertical, bool vertical_exhaustive)
    : ring_(std::move(ring)), operad_(std::move(operad)), hmax_(hmax), vertical_(vertical),
      exhaustive_(vertical_exhaustive) {
    if (hmax_ < 2) throw MathError("a minimal fragment needs horizontal degrees 0..2 at least");
    if (operad_.requires_rationals() && !ring_.contains_rationals())
        throw MathError("the " + operad_.name + " operad needs a ring containing Q, got " + ring_.name());
}

std::size_t Fragment::add(int h, int v, std::string label) {
    if (h < 0 || h > hmax_ || !vertical_.contains(v))
        throw MathError("basis element '" + label + "' lies outside the fragment window");
    if (index_.count(label)) throw MathError("duplicate basis label '" + label + "'");
    index_.emplace(label, basis_.size());
    basis_.push_back({h, v, std::move(label)});
    return basis_.size() - 1;
}

std::size_t Fragment::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw MathError("unknown basis element '" + label + "'");
    return it->second;
}

std::vector<std::size_t> Fragment::cell(int h, int v) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].h == h && basis_[i].v == v) out.push_back(i);
    return out;
}

bool Fragment::cell_known(int h, int v) const {
    if (h < 0) return true;
    if (h > hmax_) return false;
    return vertical_.contains(v) || exhaustive_;
}

SparseVec Fragment::basis_vec(std::size_t i) const { return {{i, Scalar::one(ring_)}}; }

void Fragment::set_d1(std::size_t x, SparseVec v) { d1_[x] = std::move(v); }
void Fragment::set_d2(std::size_t x, SparseVec v) { d2_[x] = std::move(v); }
void Fragment::set_mu0(std::size_t x, std::size_t y, SparseVec v) { mu0_[{x, y}] = std::move(v); }
void Fragment::set_mu1(std::size_t x, std::size_t y, SparseVec v) { mu1_[{x, y}] = std::move(v); }
void Fragment::set_gamma0(std::size_t x, std::size_t y, std::size_t z, SparseVec v) {
    gamma0_[{x, y, z}] = std::move(v);
}

namespace {

SparseVec apply_linear(const std::map<std::size_t, SparseVec>& table, const SparseVec& x) {
    SparseVec out;
    for (auto& [k, c] : x) {
        auto it = table.find(k);
        if (it != table.end()) accumulate(out, c, it->second);
    }
    return out;
}

SparseVec apply_bilinear(const std::map<std::pair<std::size_t, std::size_t>, SparseVec>& table, const SparseVec& x,
                         const SparseVec& y) {
    SparseVec out;
    for (auto& [i, a] : x)
        for (auto& [j, b] : y) {
            auto it = table.find({i, j});
            if (it != table.end()) accumulate(out, a * b, it->second);
        }
    return out;
}

}  // namespace

SparseVec Fragment::d1(const SparseVec& x) const { return apply_linear(d1_, x); }
SparseVec Fragment::d2(const SparseVec& x) const { return apply_linear(d2_, x); }
SparseVec Fragment::mu0(const SparseVec& x, const SparseVec& y) const { return apply_bilinear(mu0_, x, y); }
SparseVec Fragment::mu1(const SparseVec& x, const SparseVec& y) const { return apply_bilinear(mu1_, x, y); }

SparseVec Fragment::gamma0(const SparseVec& x, const SparseVec& y, const SparseVec& z) const {
    SparseVec out;
    for (auto& [i, a] : x)
        for (auto& [j, b] : y)
            for (auto& [k, c] : z) {
                auto it = gamma0_.find({i, j, k});
                if (it != gamma0_.end()) accumulate(out, a * b * c, it->second);
            }
    return out;
}

std::string Fragment::format(const SparseVec& x) const {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : x) {
        if (!first) os << " + ";
        first = false;
        if (!c.is_one()) os << "(" << c.to_string() << ")*";
        os << basis_[k].label;
    }
    return first ? "0" : os.str();
}

namespace {

struct Cells {
    const Fragment& M;
    bool ok = true;
    void need(int h, int v) {
        if (!M.cell_known(h, v)) ok = false;
    }
};

void check_support(const Fragment& M, Report& rep, const std::string& what, const SparseVec& value, int h, int v) {
    ++rep.checked;
    for (auto& [k, c] : value) {
        const BasisElement& e = M.element(k);
        if (e.h != h || e.v != v) {
            rep.fail(what + " has a term " + e.label + " outside bidegree (" + std::to_string(h) + "," +
                     std::to_string(v) + ")");
            return;
        }
    }
}

}  // namespace

Report verify_minimal_fragment(const Fragment& M) {
    Report rep;
    const RingSpec& R = M.ring();
    const OperadPreset& O = M.operad();
    const std::size_t N = M.size();
    auto lab = [&](std::size_t i) { return M.element(i).label; };
    auto deg = [&](std::size_t i) { return M.element(i).total(); };

    for (auto& [x, v] : M.d1_table())
        check_support(M, rep, "d1(" + lab(x) + ")", v, M.element(x).h - 1, M.element(x).v);
    for (auto& [x, v] : M.d2_table())
        check_support(M, rep, "d2(" + lab(x) + ")", v, M.element(x).h - 2, M.element(x).v + 1);
    for (auto& [k, v] : M.mu0_table()) {
        auto [a, b] = k;
        check_support(M, rep, "mu0(" + lab(a) + ", " + lab(b) + ")", v, M.element(a).h + M.element(b).h,
                      M.element(a).v + M.element(b).v);
    }
    for (auto& [k, v] : M.mu1_table()) {
        auto [a, b] = k;
        check_support(M, rep, "mu1(" + lab(a) + ", " + lab(b) + ")", v, M.element(a).h + M.element(b).h - 1,
                      M.element(a).v + M.element(b).v + 1);
    }
    for (auto& [k, v] : M.gamma0_table()) {
        auto [a, b, c] = k;
        check_support(M, rep, "gamma0(" + lab(a) + ", " + lab(b) + ", " + lab(c) + ")", v,
                      M.element(a).h + M.element(b).h + M.element(c).h,
                      M.element(a).v + M.element(b).v + M.element(c).v + 1);
    }
    if (!O.has_generator() && (!M.mu0_table().empty() || !M.mu1_table().empty() || !M.gamma0_table().empty()))
        rep.fail("the " + O.name + " operad has no operations but the fragment lists some");

    for (std::size_t x = 0; x < N; ++x) {
        const BasisElement& e = M.element(x);
        SparseVec bx = M.basis_vec(x);
        ++rep.checked;
        if (!M.d1(M.d1(bx)).empty()) rep.fail("d1∘d1 != 0 on " + e.label);
        Cells c{M};
        c.need(e.h - 2, e.v + 1);
        c.need(e.h - 3, e.v + 1);
        if (!c.ok) {
            ++rep.skipped;
            continue;
        }
        ++rep.checked;
        if (!sparse_add(M.d1(M.d2(bx)), M.d2(M.d1(bx))).empty()) rep.fail("d1 d2 + d2 d1 != 0 on " + e.label);
    }

    if (!O.has_generator()) return rep;

    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            const BasisElement &ea = M.element(a), &eb = M.element(b);
            SparseVec xa = M.basis_vec(a), xb = M.basis_vec(b);
            const int H = ea.h + eb.h, V = ea.v + eb.v;
            std::string where = "(" + ea.label + ", " + eb.label + ")";
            const Scalar s1 = sgn(R, pm(signs::parity(deg(a))));

            if (O.transposition_sign) {
                Scalar c = sgn(R, -*O.transposition_sign * pm(signs::parity(long(deg(a)) * deg(b))));
                Cells k{M};
                k.need(H, V);
                if (k.ok) {
                    ++rep.checked;
                    if (!sparse_add(M.mu0(xa, xb), sparse_scale(c, M.mu0(xb, xa))).empty())
                        rep.fail("mu0 symmetry fails on " + where);
                } else {
                    ++rep.skipped;
                }
                Cells k1{M};
                k1.need(H - 1, V + 1);
                if (k1.ok) {
                    ++rep.checked;
                    if (!sparse_add(M.mu1(xa, xb), sparse_scale(c, M.mu1(xb, xa))).empty())
                        rep.fail("mu1 symmetry fails on " + where);
                } else {
                    ++rep.skipped;
                }
            }

            {
                Cells k{M};
                k.need(H, V);
                k.need(H - 1, V);
                if (k.ok) {
                    ++rep.checked;
                    SparseVec lhs = M.d1(M.mu0(xa, xb));
                    accumulate(lhs, sgn(R, -1), M.mu0(M.d1(xa), xb));
                    accumulate(lhs, -s1, M.mu0(xa, M.d1(xb)));
                    if (!lhs.empty()) rep.fail("d1 is not a derivation on " + where);
                } else {
                    ++rep.skipped;
                }
            }

            {
                Cells k{M};
                k.need(H, V);
                k.need(H - 1, V + 1);
                k.need(H - 2, V + 1);
                k.need(ea.h - 2, ea.v + 1);
                k.need(eb.h - 2, eb.v + 1);
                if (k.ok) {
                    ++rep.checked;
                    SparseVec e2 = M.d1(M.mu1(xa, xb));
                    e2 = sparse_add(e2, M.d2(M.mu0(xa, xb)));
                    accumulate(e2, sgn(R, -1), M.mu0(M.d2(xa), xb));
                    accumulate(e2, sgn(R, -1), M.mu1(M.d1(xa), xb));
                    accumulate(e2, -s1, M.mu0(xa, M.d2(xb)));
                    accumulate(e2, -s1, M.mu1(xa, M.d1(xb)));
                    if (!e2.empty()) rep.fail("weight one equation fails on " + where + ": " + M.format(e2));
                } else {
                    ++rep.skipped;
                }
            }
        }

    const auto gamma_sym = symmetry_relations(O, CoopElement::S2Gamma);
    const auto perms3 = all_perms(3);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
            for (std::size_t c = 0; c < N; ++c) {
                std::vector<std::size_t> idx{a, b, c};
                std::vector<int> degs{deg(a), deg(b), deg(c)};
                std::vector<SparseVec> xs{M.basis_vec(a), M.basis_vec(b), M.basis_vec(c)};
                int H = 0, V = 0;
                for (std::size_t i : idx) {
                    H += M.element(i).h;
                    V += M.element(i).v;
                }
                std::string where = "(" + lab(a) + ", " + lab(b) + ", " + lab(c) + ")";
                Cells k{M};
                k.need(H, V);
                k.need(H, V + 1);
                k.need(H - 1, V + 1);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        if (i == j) continue;
                        const BasisElement &ei = M.element(idx[i]), &ej = M.element(idx[j]);
                        k.need(ei.h + ej.h, ei.v + ej.v);
                        k.need(ei.h + ej.h - 1, ei.v + ej.v + 1);
                    }
                if (!k.ok) {
                    rep.skipped += 2;
                    continue;
                }

                SparseVec o0, r1 = M.d1(M.gamma0(xs[0], xs[1], xs[2]));
                for (int i = 0; i < 3; ++i) {
                    std::vector<SparseVec> ys = xs;
                    ys[i] = M.d1(xs[i]);
                    accumulate(r1, sgn(R, pm(signs::gamma(0, degs, i + 1))), M.gamma0(ys[0], ys[1], ys[2]));
                }
                for (const RelationTerm& term : O.relation) {
                    Perm inv = inverse(term.sigma);
                    std::vector<SparseVec> y(3);
                    for (int i = 0; i < 3; ++i) y[i] = xs[inv[i]];
                    SparseVec comp0, comp1;
                    if (term.l == 1) {
                        comp0 = M.mu0(M.mu0(y[0], y[1]), y[2]);
                        comp1 = sparse_add(M.mu0(M.mu1(y[0], y[1]), y[2]), M.mu1(M.mu0(y[0], y[1]), y[2]));
                    } else {
                        comp0 = M.mu0(y[0], M.mu0(y[1], y[2]));
                        comp1 = sparse_add(M.mu0(y[0], M.mu1(y[1], y[2])), M.mu1(y[0], M.mu0(y[1], y[2])));
                    }
                    int a_sign = term.coeff * pm(signs::alpha(term.sigma, degs));
                    int d_sign = term.coeff * pm(signs::delta(term.sigma, 0, degs, term.l));
                    accumulate(o0, sgn(R, a_sign), comp0);
                    accumulate(r1, sgn(R, -d_sign), comp1);
                }
                rep.checked += 2;
                if (!o0.empty()) rep.fail("relation fails for mu0 on " + where + ": " + M.format(o0));
                if (!r1.empty()) rep.fail("weight two equation fails on " + where + ": " + M.format(r1));

                for (const auto& rel : gamma_sym) {
                    SparseVec s;
                    for (std::size_t p = 0; p < perms3.size(); ++p) {
                        if (rel[p] == 0) continue;
                        Perm inv = inverse(perms3[p]);
                        SparseVec g = M.gamma0(xs[inv[0]], xs[inv[1]], xs[inv[2]]);
                        accumulate(s, sgn(R, rel[p] * pm(signs::alpha(perms3[p], degs))), g);
                    }
                    ++rep.checked;
                    if (!s.empty()) rep.fail("gamma0 symmetry fails on " + where);
                }
            }
    return rep;
}

Vec InfinityFragment::f1(int i, const Fragment& M, const SparseVec& x, int degree) const {
    const std::map<std::size_t, Vec>& table = i == 0 ? f1_0 : (i == 1 ? f1_1 : f1_2);
    Vec out = zero_vec(target.ring(), target.dim(degree));
    for (auto& [k, c] : x) {
        if (M.element(k).h != i) continue;
        auto it = table.find(k);
        if (it != table.end()) out = vec_add(out, vec_scale(c, it->second));
    }
    return out;
}

Vec InfinityFragment::fmu(int i, const Fragment& M, const SparseVec& x, const SparseVec& y, int degree) const {
    const auto& table = i == 0 ? fmu_0 : fmu_1;
    Vec out = zero_vec(target.ring(), target.dim(degree));
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) {
            if (M.element(a).h + M.element(b).h != i) continue;
            auto it = table.find({a, b});
            if (it != table.end()) out = vec_add(out, vec_scale(ca * cb, it->second));
        }
    return out;
}

namespace {

void check_f_shape(const InfinityFragment& f, const Fragment& M, Report& rep) {
    auto bad = [&](const std::string& what, std::size_t n, int degree) {
        ++rep.checked;
        if (!f.target.window().contains(degree) || n != f.target.dim(degree)) rep.fail(what + " has the wrong shape");
    };
    const std::map<std::size_t, Vec>* tables[3] = {&f.f1_0, &f.f1_1, &f.f1_2};
    for (int i = 0; i < 3; ++i)
        for (auto& [k, v] : *tables[i]) {
            if (k >= M.size() || M.element(k).h != i) {
                rep.fail("f(1)_" + std::to_string(i) + " is given on an element of the wrong horizontal degree");
                continue;
            }
            bad("f(1)_" + std::to_string(i) + "(" + M.element(k).label + ")", v.size(), M.element(k).total());
        }
    for (int i = 0; i < 2; ++i)
        for (auto& [k, v] : (i == 0 ? f.fmu_0 : f.fmu_1)) {
            if (k.first >= M.size() || k.second >= M.size() ||
                M.element(k.first).h + M.element(k.second).h != i) {
                rep.fail("f(smu)_" + std::to_string(i) + " is given on elements of the wrong horizontal degree");
                continue;
            }
            bad("f(smu)_" + std::to_string(i), v.size(), M.element(k.first).total() + M.element(k.second).total() + 1);
        }
}

}  // namespace

Report verify_infinity_fragment(const InfinityFragment& f, const Fragment& M) {
    Report rep;
    const DGAlgebra& A = f.target;
    const RingSpec& R = A.ring();
    const DegreeWindow& W = A.window();
    if (R != M.ring()) {
        rep.fail("source and target rings differ");
        return rep;
    }
    check_f_shape(f, M, rep);
    if (!rep.ok()) return rep;

    for (std::size_t x = 0; x < M.size(); ++x) {
        const BasisElement& e = M.element(x);
        const int n = e.total();
        SparseVec bx = M.basis_vec(x);
        if (e.h > 2) continue;
        Cells k{M};
        k.need(e.h - 2, e.v + 1);
        if (!W.contains(n) || !W.contains(n - 1) || !k.ok) {
            ++rep.skipped;
            continue;
        }
        ++rep.checked;
        Vec lhs = A.d(n, f.f1(e.h, M, bx, n));
        if (e.h == 1) lhs = vec_add(lhs, vec_scale(sgn(R, -1), f.f1(0, M, M.d1(bx), n - 1)));
        if (e.h == 2) {
            lhs = vec_add(lhs, vec_scale(sgn(R, -1), f.f1(0, M, M.d2(bx), n - 1)));
            lhs = vec_add(lhs, vec_scale(sgn(R, -1), f.f1(1, M, M.d1(bx), n - 1)));
        }
        if (!is_zero_vec(lhs))
            rep.fail("f(1)_" + std::to_string(e.h) + " equation fails on " + e.label + ": " + A.format(n - 1, lhs));
    }

    if (M.operad().has_generator())
        for (std::size_t a = 0; a < M.size(); ++a)
            for (std::size_t b = 0; b < M.size(); ++b) {
                const BasisElement &ea = M.element(a), &eb = M.element(b);
                if (ea.h + eb.h != 1) continue;
                const int n = ea.total() + eb.total();
                std::string where = "(" + ea.label + ", " + eb.label + ")";
                Cells k{M};
                k.need(1, ea.v + eb.v);
                k.need(0, ea.v + eb.v + 1);
                if (!W.contains(n) || !W.contains(n + 1) || !W.contains(ea.total()) || !W.contains(eb.total()) ||
                    !A.product_known(ea.total(), eb.total()) || !k.ok) {
                    ++rep.skipped;
                    continue;
                }
                SparseVec xa = M.basis_vec(a), xb = M.basis_vec(b);
                Vec lhs = A.d(n + 1, f.fmu(1, M, xa, xb, n + 1));
                lhs = vec_add(lhs, f.fmu(0, M, M.d1(xa), xb, n));
                lhs = vec_add(lhs, vec_scale(sgn(R, pm(signs::parity(ea.total()))), f.fmu(0, M, xa, M.d1(xb), n)));
                Vec rhs = f.f1(0, M, M.mu1(xa, xb), n);
                rhs = vec_add(rhs, f.f1(1, M, M.mu0(xa, xb), n));
                Vec m1 = A.multiply(ea.total(), f.f1(1, M, xa, ea.total()), eb.total(), f.f1(0, M, xb, eb.total()));
                Vec m2 = A.multiply(ea.total(), f.f1(0, M, xa, ea.total()), eb.total(), f.f1(1, M, xb, eb.total()));
                rhs = vec_add(rhs, vec_scale(sgn(R, -1), vec_add(m1, m2)));
                ++rep.checked;
                if (lhs != rhs) rep.fail("f(smu)_1 equation fails on " + where);
            }

    Bicomplex B = underlying_bicomplex(M);
    HomologyData H = homology(A.complex());
    std::map<int, Matrix> rho;
    std::map<int, PresentedModule> Hm;
    for (int q = M.vertical().lo; q <= M.vertical().hi; ++q) {
        if (!H.available(q)) continue;
        std::vector<std::size_t> c0 = M.cell(0, q);
        Matrix r(R, H.at(q).rank(), c0.size());
        for (std::size_t j = 0; j < c0.size(); ++j) {
            Vec y = f.f1(0, M, M.basis_vec(c0[j]), q);
            if (!is_zero_vec(A.d(q, y))) {
                rep.fail("f(1)_0(" + M.element(c0[j]).label + ") is not a cycle");
                return rep;
            }
            r.set_column(j, H.at(q).project(y));
        }
        rho.emplace(q, r);
        Hm.emplace(q, H.at(q).module());
    }
    rep.merge(verify_resolution_rows(B, rho, Hm));
    return rep;
}

Bicomplex underlying_bicomplex(const Fragment& M) {
    const RingSpec& R = M.ring();
    Bicomplex B(R, M.hmax(), M.vertical());
    for (int h = 0; h <= M.hmax(); ++h)
        for (int v = M.vertical().lo; v <= M.vertical().hi; ++v) B.set_dim(h, v, M.cell(h, v).size());
    for (int h = 1; h <= M.hmax(); ++h)
        for (int v = M.vertical().lo; v <= M.vertical().hi; ++v) {
            std::vector<std::size_t> src = M.cell(h, v), dst = M.cell(h - 1, v);
            Matrix d(R, dst.size(), src.size());
            for (std::size_t j = 0; j < src.size(); ++j) {
                SparseVec y = M.d1(M.basis_vec(src[j]));
                for (std::size_t i = 0; i < dst.size(); ++i) {
                    auto it = y.find(dst[i]);
                    if (it != y.end()) d(i, j) = it->second;
                }
            }
            B.set_d1(h, v, d);
        }
    return B;
}

Vec HorizontalResolution::apply_rho(const SparseVec& x, int q) const {
    const RingSpec& R = P.ring();
    if (!H.available(q) || !rho.count(q)) throw WindowError("homology in degree " + std::to_string(q) + " is unavailable");
    const Matrix& r = rho.at(q);
    std::vector<std::size_t> c0 = P.cell(0, q);
    Vec out = zero_vec(R, r.rows());
    for (std::size_t j = 0; j < c0.size(); ++j) {
        auto it = x.find(c0[j]);
        if (it == x.end()) continue;
        out = vec_add(out, vec_scale(it->second, r.column(j)));
    }
    return out;
}

HorizontalResolution induced_horizontal_resolution(const InfinityFragment& f, const Fragment& M) {
    HorizontalResolution R;
    R.P = M;
    R.H = homology_algebra(f.target);
    for (int q = M.vertical().lo; q <= M.vertical().hi; ++q) {
        if (!R.H.available(q)) continue;
        std::vector<std::size_t> c0 = M.cell(0, q);
        Matrix r(M.ring(), R.H.at(q).rank(), c0.size());
        for (std::size_t j = 0; j < c0.size(); ++j)
            r.set_column(j, R.H.at(q).project(f.f1(0, M, M.basis_vec(c0[j]), q)));
        R.rho.emplace(q, r);
    }
    return R;
}

Report verify_horizontal_resolution(const HorizontalResolution& R) {
    Report rep;
    const Fragment& P = R.P;
    std::map<int, PresentedModule> Hm;
    for (auto& [q, r] : R.rho) Hm.emplace(q, R.H.at(q).module());
    rep.merge(verify_resolution_rows(underlying_bicomplex(P), R.rho, Hm));
    if (!P.operad().has_generator()) return rep;
    for (std::size_t a = 0; a < P.size(); ++a)
        for (std::size_t b = 0; b < P.size(); ++b) {
            const BasisElement &ea = P.element(a), &eb = P.element(b);
            if (ea.h != 0 || eb.h != 0) continue;
            const int p = ea.v, q = eb.v;
            if (!R.rho.count(p) || !R.rho.count(q) || !R.rho.count(p + q) || !R.H.product_known(p, q) ||
                !P.cell_known(0, p + q)) {
                ++rep.skipped;
                continue;
            }
            ++rep.checked;
            SparseVec xa = P.basis_vec(a), xb = P.basis_vec(b);
            Vec lhs = R.apply_rho(P.mu0(xa, xb), p + q);
            Vec rhs = R.H.multiply(p, R.apply_rho(xa, p), q, R.apply_rho(xb, q));
            if (!R.H.at(p + q).module().equal(lhs, rhs))
                rep.fail("rho is not multiplicative on (" + ea.label + ", " + eb.label + ")");
        }
    return rep;
}

}  // namespace opm
