#include "opm/dg_algebra.hpp"
#include "opm/smith.hpp"

#include <algorithm>
#include <functional>

namespace opm {

namespace {

using Key = std::tuple<int, std::size_t, int, std::size_t>;

// Free algebra on the generators up to degree hi. Basis element b is built
// from a generator g and a shorter element r (or is g itself): b = g·r for
// words and monomials, b = [r, g] for brackets.
struct FreeAlgebra {
    RingSpec R;
    int hi = 0;
    std::vector<int> gen_deg;
    std::vector<std::string> gen_name;
    std::map<int, std::vector<std::string>> labels;
    std::map<int, std::vector<std::pair<int, long>>> build;  // (generator, rest index or -1)
    std::map<Key, Vec> prod;
    std::vector<std::size_t> gen_index;

    std::size_t dim(int n) const {
        auto it = labels.find(n);
        return it == labels.end() ? 0 : it->second.size();
    }
    Vec zero(int n) const { return zero_vec(R, dim(n)); }
    Vec gen(int g) const { return unit_vec(R, dim(gen_deg[g]), gen_index[g]); }
    Vec mult(int p, const Vec& x, int q, const Vec& y) const {
        Vec out = zero(p + q);
        if (p + q > hi) return out;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < y.size(); ++j) {
                if (y[j].is_zero()) continue;
                auto it = prod.find({p, i, q, j});
                if (it == prod.end()) continue;
                for (std::size_t k = 0; k < out.size(); ++k) out[k] += x[i] * y[j] * it->second[k];
            }
        }
        return out;
    }
};

int koszul(int p, int q) { return ((p * q) % 2 == 0) ? 1 : -1; }

std::string join_word(const FreeAlgebra& F, const std::vector<int>& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "*" : "") + F.gen_name[w[k]];
    return s;
}

int word_degree(const FreeAlgebra& F, const std::vector<int>& w) {
    int d = 0;
    for (int g : w) d += F.gen_deg[g];
    return d;
}

// Words (associative) or nondecreasing monomials (commutative), each degree
// sorted lexicographically.
std::map<int, std::vector<std::vector<int>>> enumerate_words(const FreeAlgebra& F, bool commutative) {
    std::map<int, std::vector<std::vector<int>>> out;
    const int ng = static_cast<int>(F.gen_deg.size());
    std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& w, int deg) {
        if (!w.empty()) out[deg].push_back(w);
        int start = commutative && !w.empty() ? w.back() : 0;
        for (int g = start; g < ng; ++g) {
            if (deg + F.gen_deg[g] > F.hi) continue;
            if (commutative && !w.empty() && w.back() == g && F.gen_deg[g] % 2 != 0) continue;
            w.push_back(g);
            rec(w, deg + F.gen_deg[g]);
            w.pop_back();
        }
    };
    std::vector<int> w;
    rec(w, 0);
    for (auto& [d, v] : out) std::sort(v.begin(), v.end());
    return out;
}

FreeAlgebra words_algebra(const FreeAlgebra& base, bool commutative) {
    FreeAlgebra F = base;
    auto words = enumerate_words(F, commutative);
    std::map<std::vector<int>, std::pair<int, std::size_t>> index;
    for (auto& [d, ws] : words)
        for (std::size_t i = 0; i < ws.size(); ++i) {
            index[ws[i]] = {d, i};
            F.labels[d].push_back(join_word(F, ws[i]));
        }
    for (auto& [d, ws] : words)
        for (const auto& w : ws) {
            std::vector<int> rest(w.begin() + 1, w.end());
            F.build[d].push_back({w[0], rest.empty() ? -1L : static_cast<long>(index[rest].second)});
        }
    F.gen_index.resize(F.gen_deg.size());
    for (std::size_t g = 0; g < F.gen_deg.size(); ++g)
        if (F.gen_deg[g] <= F.hi) F.gen_index[g] = index[{static_cast<int>(g)}].second;
    for (auto& [p, a] : words)
        for (auto& [q, b] : words) {
            if (p + q > F.hi) continue;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) {
                    std::vector<int> w = a[i];
                    w.insert(w.end(), b[j].begin(), b[j].end());
                    int sign = 1;
                    bool zero = false;
                    if (commutative) {
                        for (std::size_t s = 0; s < w.size(); ++s)
                            for (std::size_t t = 0; t + 1 < w.size() - s; ++t)
                                if (w[t] > w[t + 1]) {
                                    sign *= koszul(F.gen_deg[w[t]], F.gen_deg[w[t + 1]]);
                                    std::swap(w[t], w[t + 1]);
                                }
                        for (std::size_t t = 0; t + 1 < w.size(); ++t)
                            if (w[t] == w[t + 1] && F.gen_deg[w[t]] % 2 != 0) zero = true;
                    }
                    if (zero) continue;
                    Vec v = F.zero(p + q);
                    v[index[w].second] = Scalar::from_int(F.R, sign);
                    F.prod[{p, i, q, j}] = v;
                }
        }
    return F;
}

// Graded brackets inside the tensor algebra over Q; a basis is selected
// greedily among [b, g] with b a basis element and g a generator.
FreeAlgebra lie_algebra(const FreeAlgebra& base) {
    RingSpec Q = RingSpec::rationals();
    FreeAlgebra T = base;
    T.R = Q;
    T = words_algebra(T, false);
    auto bracket_T = [&](int p, const Vec& x, int q, const Vec& y) {
        Vec a = T.mult(p, x, q, y), b = T.mult(q, y, p, x);
        Scalar s = Scalar::from_int(Q, -koszul(p, q));
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * b[k];
        return a;
    };

    FreeAlgebra F = base;
    F.gen_index.assign(F.gen_deg.size(), 0);
    std::map<int, std::vector<Vec>> image;  // tensor images of the basis
    std::map<int, Matrix> image_matrix;
    auto independent = [&](int n, const Vec& v) {
        if (is_zero_vec(v)) return false;
        std::vector<Vec> cols = image[n];
        cols.push_back(v);
        return rank(Matrix::from_columns(Q, T.dim(n), cols)) == cols.size();
    };
    for (int n = 1; n <= F.hi; ++n) {
        for (std::size_t g = 0; g < F.gen_deg.size(); ++g)
            if (F.gen_deg[g] == n) {
                F.gen_index[g] = image[n].size();
                image[n].push_back(T.gen(static_cast<int>(g)));
                F.labels[n].push_back(F.gen_name[g]);
                F.build[n].push_back({static_cast<int>(g), -1});
            }
        for (int m = 1; m < n; ++m)
            for (std::size_t b = 0; b < F.dim(m); ++b)
                for (std::size_t g = 0; g < F.gen_deg.size(); ++g) {
                    if (m + F.gen_deg[g] != n) continue;
                    Vec v = bracket_T(m, image[m][b], F.gen_deg[g], T.gen(static_cast<int>(g)));
                    if (!independent(n, v)) continue;
                    image[n].push_back(v);
                    F.labels[n].push_back("[" + F.labels[m][b] + "," + F.gen_name[g] + "]");
                    F.build[n].push_back({static_cast<int>(g), static_cast<long>(b)});
                }
        image_matrix[n] = Matrix::from_columns(Q, T.dim(n), image[n]);
    }
    for (int p = 1; p <= F.hi; ++p)
        for (int q = 1; p + q <= F.hi; ++q)
            for (std::size_t i = 0; i < F.dim(p); ++i)
                for (std::size_t j = 0; j < F.dim(q); ++j) {
                    if (F.dim(p + q) == 0) continue;
                    Vec v = bracket_T(p, image[p][i], q, image[q][j]);
                    auto c = solve(image_matrix[p + q], v);
                    if (!c) throw MathError("bracket outside the span of the Lie basis");
                    F.prod[{p, i, q, j}] = vec_to_ring(*c, F.R);
                }
    return F;
}

// Incremental row echelon form with unit pivots.
struct Echelon {
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;

    Vec reduce(Vec v) const {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            Scalar c = v[pivots[k]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * rows[k][j];
        }
        return v;
    }
    bool add(Vec v) {
        v = reduce(std::move(v));
        std::size_t c = 0;
        while (c < v.size() && v[c].is_zero()) ++c;
        if (c == v.size()) return false;
        if (!v[c].is_unit()) throw MathError("quotient relations do not have unit leading coefficients");
        Scalar inv = v[c].inverse();
        for (auto& x : v) x *= inv;
        for (auto& r : rows) {
            Scalar f = r[c];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * v[j];
        }
        rows.push_back(std::move(v));
        pivots.push_back(c);
        return true;
    }
};

}  // namespace

DGAlgebra realize(const AlgebraPresentation& P) {
    const RingSpec& R = P.ring;
    const DegreeWindow& W = P.window;
    if (P.operad.kind == OperadKind::Initial) throw MathError("presentations need a binary generator");
    DGAlgebra A(R, P.operad, W);

    FreeAlgebra base;
    base.R = R;
    base.hi = W.hi;
    std::map<std::string, int> gid;
    for (auto& [name, deg] : P.generators) {
        if (deg < 1) throw MathError("generator " + name + " must have positive degree");
        if (gid.count(name)) throw MathError("duplicate generator " + name);
        gid[name] = static_cast<int>(base.gen_deg.size());
        base.gen_deg.push_back(deg);
        base.gen_name.push_back(name);
    }
    FreeAlgebra F;
    switch (P.operad.kind) {
        case OperadKind::Associative: F = words_algebra(base, false); break;
        case OperadKind::Commutative: F = words_algebra(base, true); break;
        default: F = lie_algebra(base); break;
    }

    auto value = [&](const Expression& e, const std::string& what) -> std::pair<int, Vec> {
        std::optional<int> deg;
        Vec out;
        for (const Term& t : e) {
            if (t.word.empty()) throw MathError("empty word in " + what);
            std::vector<int> w;
            for (const auto& n : t.word) {
                auto it = gid.find(n);
                if (it == gid.end()) throw MathError("unknown generator " + n + " in " + what);
                w.push_back(it->second);
            }
            int d = word_degree(F, w);
            if (deg && *deg != d) throw MathError("inconsistent degrees in " + what);
            if (!deg) {
                deg = d;
                out = F.zero(d);
            }
            if (d > F.hi) continue;
            Vec v = F.gen(w[0]);
            int dv = F.gen_deg[w[0]];
            for (std::size_t k = 1; k < w.size(); ++k) {
                v = F.mult(dv, v, F.gen_deg[w[k]], F.gen(w[k]));
                dv += F.gen_deg[w[k]];
            }
            Scalar c = t.coeff.to_ring(R);
            for (std::size_t k = 0; k < v.size(); ++k) out[k] += c * v[k];
        }
        return {deg.value_or(0), out};
    };

    // differential on the free algebra
    std::vector<std::pair<int, Vec>> dgen(F.gen_deg.size());
    for (std::size_t g = 0; g < F.gen_deg.size(); ++g) {
        dgen[g] = {F.gen_deg[g] - 1, F.zero(F.gen_deg[g] - 1)};
        auto it = P.differential.find(F.gen_name[g]);
        if (it == P.differential.end() || it->second.empty()) continue;
        auto [d, v] = value(it->second, "d(" + F.gen_name[g] + ")");
        if (d != F.gen_deg[g] - 1) throw MathError("d(" + F.gen_name[g] + ") has the wrong degree");
        dgen[g].second = v;
    }
    for (auto& [name, e] : P.differential)
        if (!gid.count(name)) throw MathError("differential of unknown generator " + name);

    std::map<int, std::vector<Vec>> dfree;
    const bool lie = P.operad.kind == OperadKind::Lie;
    for (auto& [n, bl] : F.build)
        for (auto& [g, rest] : bl) {
            if (rest < 0) {
                dfree[n].push_back(dgen[g].second);
                continue;
            }
            int dg = F.gen_deg[g], dr = n - dg;
            Vec r = unit_vec(R, F.dim(dr), static_cast<std::size_t>(rest));
            const Vec& drest = dfree[dr][rest];
            Vec v;
            if (lie) {
                v = F.mult(dr - 1, drest, dg, F.gen(g));
                Vec w = F.mult(dr, r, dg - 1, dgen[g].second);
                Scalar s = Scalar::from_int(R, koszul(dr, 1));
                for (std::size_t k = 0; k < v.size(); ++k) v[k] += s * w[k];
            } else {
                v = F.mult(dg - 1, dgen[g].second, dr, r);
                Vec w = F.mult(dg, F.gen(g), dr - 1, drest);
                Scalar s = Scalar::from_int(R, koszul(dg, 1));
                for (std::size_t k = 0; k < v.size(); ++k) v[k] += s * w[k];
            }
            dfree[n].push_back(v);
        }

    // ideal closure, degree by degree
    std::map<int, Echelon> ideal;
    if (P.quotient) {
        std::map<int, std::vector<Vec>> gens;
        for (std::size_t k = 0; k < P.relations.size(); ++k) {
            auto [d, v] = value(P.relations[k], "relation " + std::to_string(k + 1));
            if (d <= F.hi) gens[d].push_back(v);
        }
        for (int n = 1; n <= F.hi; ++n) {
            Echelon& E = ideal[n];
            for (auto& v : gens[n]) E.add(v);
            for (int m = 1; m < n; ++m) {
                if (!ideal.count(m)) continue;
                for (const Vec& v : ideal[m].rows)
                    for (std::size_t b = 0; b < F.dim(n - m); ++b) {
                        Vec e = unit_vec(R, F.dim(n - m), b);
                        E.add(F.mult(m, v, n - m, e));
                        if (P.operad.kind == OperadKind::Associative) E.add(F.mult(n - m, e, m, v));
                    }
            }
        }
    }

    std::map<int, std::vector<std::size_t>> keep;
    auto normal = [&](int n, const Vec& v) {
        Vec r = ideal.count(n) ? ideal[n].reduce(v) : v;
        Vec out;
        for (std::size_t k : keep[n]) out.push_back(r[k]);
        return out;
    };
    for (int n = 1; n <= F.hi; ++n) {
        std::vector<bool> piv(F.dim(n), false);
        if (ideal.count(n))
            for (std::size_t c : ideal[n].pivots) piv[c] = true;
        for (std::size_t k = 0; k < F.dim(n); ++k)
            if (!piv[k]) keep[n].push_back(k);
    }
    for (auto& [n, E] : ideal)
        for (const Vec& v : E.rows) {
            Vec dv = F.zero(n - 1);
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!v[k].is_zero())
                    for (std::size_t j = 0; j < dv.size(); ++j) dv[j] += v[k] * dfree[n][k][j];
            if (n - 1 >= 1 && !is_zero_vec(normal(n - 1, dv)))
                throw MathError("relations are not closed under the differential");
        }

    for (int n = std::max(W.lo, 1); n <= W.hi; ++n) {
        std::vector<std::string> labels;
        for (std::size_t k : keep[n]) labels.push_back(F.labels[n][k]);
        A.set_degree(n, labels);
    }
    for (int n = std::max(W.lo, 1); n <= W.hi; ++n) {
        if (A.dim(n) == 0 || !W.contains(n - 1)) continue;
        std::vector<Vec> cols;
        for (std::size_t k : keep[n]) cols.push_back(n - 1 >= 1 ? normal(n - 1, dfree[n][k]) : Vec{});
        A.set_differential(n, Matrix::from_columns(R, A.dim(n - 1), cols));
    }
    for (int p = std::max(W.lo, 1); p <= W.hi; ++p)
        for (int q = std::max(W.lo, 1); p + q <= W.hi; ++q)
            for (std::size_t i = 0; i < A.dim(p); ++i)
                for (std::size_t j = 0; j < A.dim(q); ++j) {
                    Vec x = unit_vec(R, F.dim(p), keep[p][i]), y = unit_vec(R, F.dim(q), keep[q][j]);
                    Vec v = normal(p + q, F.mult(p, x, q, y));
                    if (!is_zero_vec(v)) A.set_product(p, i, q, j, v);
                }
    return A;
}

}  // namespace opm
