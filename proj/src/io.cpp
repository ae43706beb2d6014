#include "opm/io.hpp"

#include <set>

namespace opm::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) throw ParseError(path, what);
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& path) {
    require(j.is_object(), path, "expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        require(allowed.count(it.key()) > 0, at(path, it.key()), "unknown field");
}

const json& get(const json& j, const char* key, const std::string& path) {
    require(j.contains(key), at(path, key), "missing field");
    return j.at(key);
}

int to_int(const json& j, const std::string& path) {
    require(j.is_number_integer(), path, "expected an integer");
    return j.get<int>();
}

std::string to_str(const json& j, const std::string& path) {
    require(j.is_string(), path, "expected a string");
    return j.get<std::string>();
}

DegreeWindow window_from_json(const json& j, const std::string& path) {
    require(j.is_array() && j.size() == 2, path, "expected [lo, hi]");
    DegreeWindow W{to_int(j[0], at(path, 0)), to_int(j[1], at(path, 1))};
    require(W.lo <= W.hi, path, "empty window");
    return W;
}

int degree_key(const std::string& key, const std::string& path) {
    try {
        std::size_t used = 0;
        int q = std::stoi(key, &used);
        if (used == key.size()) return q;
    } catch (const std::exception&) {
    }
    throw ParseError(path, "degree keys are integers");
}

struct LabelIndex {
    std::map<std::string, std::pair<int, std::size_t>> where;

    explicit LabelIndex(const DGAlgebra& A) {
        for (int q = A.window().lo; q <= A.window().hi; ++q)
            for (std::size_t i = 0; i < A.dim(q); ++i) where[A.labels(q)[i]] = {q, i};
    }
    std::pair<int, std::size_t> find(const std::string& label, const std::string& path) const {
        auto it = where.find(label);
        require(it != where.end(), path, "unknown basis element '" + label + "'");
        return it->second;
    }
};

// {label: c} with all labels in one degree; `degree` is fixed by the caller or
// read off the labels.
Vec element_from_json(const DGAlgebra& A, const LabelIndex& L, const json& j, std::optional<int> degree,
                      const std::string& path, int* found = nullptr) {
    require(j.is_object(), path, "expected {label: coefficient}");
    std::optional<int> q = degree;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int d = L.find(it.key(), at(path, it.key())).first;
        require(!q || *q == d, at(path, it.key()), "element mixes degrees");
        q = d;
    }
    require(q.has_value(), path, "cannot infer the degree of an empty element");
    require(A.window().contains(*q), path, "degree outside the window");
    Vec v = zero_vec(A.ring(), A.dim(*q));
    for (auto it = j.begin(); it != j.end(); ++it)
        v[L.find(it.key(), path).second] += scalar_from_json(A.ring(), it.value(), at(path, it.key()));
    if (found) *found = *q;
    return v;
}

ordered_json element_to_json(const DGAlgebra& A, int q, const Vec& v) {
    ordered_json out = ordered_json::object();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out[A.labels(q)[i]] = to_json(v[i]);
    return out;
}

SparseVec sparse_from_json(const Fragment& M, const json& j, const std::string& path) {
    require(j.is_object(), path, "expected {label: coefficient}");
    SparseVec v;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::size_t k;
        try {
            k = M.find(it.key());
        } catch (const MathError&) {
            throw ParseError(at(path, it.key()), "unknown fragment basis element '" + it.key() + "'");
        }
        Scalar c = scalar_from_json(M.ring(), it.value(), at(path, it.key()));
        if (c.is_zero()) continue;
        auto [pos, fresh] = v.emplace(k, c);
        if (!fresh) pos->second += c;
    }
    return v;
}

ordered_json sparse_to_json(const Fragment& M, const SparseVec& v) {
    ordered_json out = ordered_json::object();
    for (auto& [k, c] : v)
        if (!c.is_zero()) out[M.element(k).label] = to_json(c);
    return out;
}

std::size_t fragment_label(const Fragment& M, const json& j, const std::string& path) {
    std::string s = to_str(j, path);
    try {
        return M.find(s);
    } catch (const MathError&) {
        throw ParseError(path, "unknown fragment basis element '" + s + "'");
    }
}

Expression expression_from_json(const RingSpec& R, const json& j, const std::string& path) {
    require(j.is_array(), path, "expected [[coefficient, [generators]], ..]");
    Expression e;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        require(t.is_array() && t.size() == 2 && t[1].is_array(), at(path, i), "expected [coefficient, [generators]]");
        Term term{scalar_from_json(R, t[0], at(at(path, i), 0)), {}};
        for (std::size_t k = 0; k < t[1].size(); ++k) term.word.push_back(to_str(t[1][k], at(at(at(path, i), 1), k)));
        require(!term.word.empty(), at(path, i), "empty word");
        e.push_back(term);
    }
    return e;
}

}  // namespace

Scalar scalar_from_json(const RingSpec& R, const json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Scalar::from_int(R, j.get<long>());
        if (j.is_string()) return Scalar::parse(R, j.get<std::string>());
    } catch (const MathError& e) {
        throw ParseError(path, e.what());
    }
    throw ParseError(path, "expected a scalar (string or integer)");
}

ordered_json to_json(const Scalar& s) { return s.to_string(); }

ordered_json to_json(const Vec& v) {
    ordered_json out = ordered_json::array();
    for (const Scalar& s : v) out.push_back(to_json(s));
    return out;
}

ordered_json to_json(const PresentedModule& M) {
    CanonicalForm c = M.canonical_form();
    ordered_json out;
    out["module"] = c.to_string();
    ordered_json t = ordered_json::array();
    for (const Scalar& s : c.torsion) t.push_back(to_json(s));
    out["torsion"] = t;
    out["free_rank"] = c.free_rank;
    return out;
}

ordered_json to_json(const Report& r) {
    ordered_json out;
    out["ok"] = r.ok();
    out["checked"] = r.checked;
    out["skipped"] = r.skipped;
    out["violations"] = r.violations;
    return out;
}

DGAlgebra algebra_from_json(const RingSpec& R, const OperadPreset& O, const json& j, const std::string& path) {
    only_keys(j, {"window", "degrees", "differential", "products", "unit"}, path);
    DegreeWindow W = window_from_json(get(j, "window", path), at(path, "window"));
    DGAlgebra A(R, O, W);
    std::set<std::string> seen;
    if (j.contains("degrees")) {
        const json& d = j.at("degrees");
        const std::string p = at(path, "degrees");
        require(d.is_object(), p, "expected {degree: [labels]}");
        for (auto it = d.begin(); it != d.end(); ++it) {
            int q = degree_key(it.key(), at(p, it.key()));
            require(W.contains(q), at(p, it.key()), "degree outside the window");
            require(it.value().is_array(), at(p, it.key()), "expected a list of labels");
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < it.value().size(); ++i) {
                std::string s = to_str(it.value()[i], at(at(p, it.key()), i));
                require(seen.insert(s).second, at(at(p, it.key()), i), "duplicate label '" + s + "'");
                labels.push_back(s);
            }
            A.set_degree(q, labels);
        }
    }
    if (j.contains("differential")) {
        const json& d = j.at("differential");
        const std::string p = at(path, "differential");
        require(d.is_object(), p, "expected {degree: rows}");
        for (auto it = d.begin(); it != d.end(); ++it) {
            const std::string pq = at(p, it.key());
            int q = degree_key(it.key(), pq);
            require(W.contains(q) && W.contains(q - 1), pq, "differential leaves the window");
            const json& rows = it.value();
            require(rows.is_array() && rows.size() == A.dim(q - 1), pq,
                    "expected " + std::to_string(A.dim(q - 1)) + " rows");
            Matrix M(R, A.dim(q - 1), A.dim(q));
            for (std::size_t r = 0; r < rows.size(); ++r) {
                require(rows[r].is_array() && rows[r].size() == A.dim(q), at(pq, r),
                        "expected " + std::to_string(A.dim(q)) + " entries");
                for (std::size_t c = 0; c < A.dim(q); ++c) M(r, c) = scalar_from_json(R, rows[r][c], at(at(pq, r), c));
            }
            A.set_differential(q, M);
        }
    }
    LabelIndex L(A);
    if (j.contains("products")) {
        const json& P = j.at("products");
        const std::string p = at(path, "products");
        require(P.is_array(), p, "expected [[left, right, value], ..]");
        for (std::size_t k = 0; k < P.size(); ++k) {
            const json& e = P[k];
            const std::string pk = at(p, k);
            require(e.is_array() && e.size() == 3, pk, "expected [left, right, value]");
            auto [qa, ia] = L.find(to_str(e[0], at(pk, 0)), at(pk, 0));
            auto [qb, ib] = L.find(to_str(e[1], at(pk, 1)), at(pk, 1));
            require(W.contains(qa + qb), pk, "product degree outside the window");
            A.set_product(qa, ia, qb, ib, element_from_json(A, L, e[2], qa + qb, at(pk, 2)));
        }
    }
    if (j.contains("unit")) {
        auto [q, i] = L.find(to_str(j.at("unit"), at(path, "unit")), at(path, "unit"));
        require(q == 0, at(path, "unit"), "the unit lives in degree 0");
        A.set_unit(i);
    }
    return A;
}

ordered_json algebra_to_json(const DGAlgebra& A) {
    const DegreeWindow& W = A.window();
    ordered_json out;
    out["window"] = {W.lo, W.hi};
    ordered_json deg = ordered_json::object();
    for (int q = W.lo; q <= W.hi; ++q)
        if (A.dim(q) > 0) deg[std::to_string(q)] = A.labels(q);
    out["degrees"] = deg;
    ordered_json d = ordered_json::object();
    for (int q = W.lo + 1; q <= W.hi; ++q) {
        Matrix M = A.complex().d(q);
        if (M.rows() == 0 || M.cols() == 0 || M.is_zero()) continue;
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < M.rows(); ++r) rows.push_back(to_json(M.row(r)));
        d[std::to_string(q)] = rows;
    }
    out["differential"] = d;
    ordered_json prods = ordered_json::array();
    for (int p = W.lo; p <= W.hi; ++p)
        for (int q = W.lo; q <= W.hi; ++q) {
            if (!W.contains(p + q) || !A.product_known(p, q)) continue;
            for (std::size_t i = 0; i < A.dim(p); ++i)
                for (std::size_t k = 0; k < A.dim(q); ++k) {
                    Vec v = A.product_basis(p, i, q, k);
                    if (is_zero_vec(v)) continue;
                    prods.push_back({A.labels(p)[i], A.labels(q)[k], element_to_json(A, p + q, v)});
                }
        }
    out["products"] = prods;
    if (A.unit()) out["unit"] = A.labels(0)[*A.unit()];
    return out;
}

AlgebraPresentation presentation_from_json(const RingSpec& R, const OperadPreset& O, const json& j,
                                           const std::string& path) {
    only_keys(j, {"window", "generators", "differential", "quotient", "relations"}, path);
    AlgebraPresentation P;
    P.ring = R;
    P.operad = O;
    P.window = window_from_json(get(j, "window", path), at(path, "window"));
    const json& g = get(j, "generators", path);
    const std::string pg = at(path, "generators");
    require(g.is_array(), pg, "expected [[name, degree], ..]");
    std::set<std::string> names;
    for (std::size_t i = 0; i < g.size(); ++i) {
        require(g[i].is_array() && g[i].size() == 2, at(pg, i), "expected [name, degree]");
        std::string n = to_str(g[i][0], at(at(pg, i), 0));
        int d = to_int(g[i][1], at(at(pg, i), 1));
        require(d >= 1, at(at(pg, i), 1), "generators have degree at least 1");
        require(names.insert(n).second, at(at(pg, i), 0), "duplicate generator");
        P.generators.push_back({n, d});
    }
    if (j.contains("differential")) {
        const json& d = j.at("differential");
        const std::string pd = at(path, "differential");
        require(d.is_object(), pd, "expected {generator: expression}");
        for (auto it = d.begin(); it != d.end(); ++it) {
            require(names.count(it.key()) > 0, at(pd, it.key()), "unknown generator");
            P.differential[it.key()] = expression_from_json(R, it.value(), at(pd, it.key()));
        }
    }
    if (j.contains("quotient")) {
        require(j.at("quotient").is_boolean(), at(path, "quotient"), "expected a boolean");
        P.quotient = j.at("quotient").get<bool>();
    }
    if (j.contains("relations")) {
        const json& r = j.at("relations");
        require(r.is_array(), at(path, "relations"), "expected a list of expressions");
        for (std::size_t i = 0; i < r.size(); ++i)
            P.relations.push_back(expression_from_json(R, r[i], at(at(path, "relations"), i)));
    }
    return P;
}

fixtures::FragmentFixture fragment_from_json(const DGAlgebra& target, const json& j, const std::string& path) {
    only_keys(j, {"hmax", "vertical", "exhaustive", "basis", "d1", "d2", "mu0", "mu1", "gamma0", "morphism"}, path);
    const RingSpec& R = target.ring();
    int hmax = to_int(get(j, "hmax", path), at(path, "hmax"));
    DegreeWindow V = window_from_json(get(j, "vertical", path), at(path, "vertical"));
    bool exhaustive = false;
    if (j.contains("exhaustive")) {
        require(j.at("exhaustive").is_boolean(), at(path, "exhaustive"), "expected a boolean");
        exhaustive = j.at("exhaustive").get<bool>();
    }
    Fragment M;
    try {
        M = Fragment(R, target.operad(), hmax, V, exhaustive);
    } catch (const MathError& e) {
        throw ParseError(path, e.what());
    }
    const json& B = get(j, "basis", path);
    const std::string pb = at(path, "basis");
    require(B.is_array(), pb, "expected [[label, h, v], ..]");
    for (std::size_t i = 0; i < B.size(); ++i) {
        require(B[i].is_array() && B[i].size() == 3, at(pb, i), "expected [label, h, v]");
        try {
            M.add(to_int(B[i][1], at(at(pb, i), 1)), to_int(B[i][2], at(at(pb, i), 2)), to_str(B[i][0], at(at(pb, i), 0)));
        } catch (const ParseError&) {
            throw;
        } catch (const MathError& e) {
            throw ParseError(at(pb, i), e.what());
        }
    }
    auto unary = [&](const char* key, auto setter) {
        if (!j.contains(key)) return;
        const json& t = j.at(key);
        const std::string p = at(path, key);
        require(t.is_object(), p, "expected {label: value}");
        for (auto it = t.begin(); it != t.end(); ++it)
            setter(fragment_label(M, it.key(), at(p, it.key())), sparse_from_json(M, it.value(), at(p, it.key())));
    };
    auto tuples = [&](const char* key, std::size_t arity, auto setter) {
        if (!j.contains(key)) return;
        const json& t = j.at(key);
        const std::string p = at(path, key);
        require(t.is_array(), p, "expected a list of entries");
        for (std::size_t i = 0; i < t.size(); ++i) {
            require(t[i].is_array() && t[i].size() == arity + 1, at(p, i), "wrong number of inputs");
            std::vector<std::size_t> x;
            for (std::size_t k = 0; k < arity; ++k) x.push_back(fragment_label(M, t[i][k], at(at(p, i), k)));
            setter(x, t[i][arity], at(at(p, i), arity));
        }
    };
    try {
        unary("d1", [&](std::size_t x, SparseVec v) { M.set_d1(x, v); });
        unary("d2", [&](std::size_t x, SparseVec v) { M.set_d2(x, v); });
        tuples("mu0", 2, [&](auto& x, const json& v, const std::string& p) { M.set_mu0(x[0], x[1], sparse_from_json(M, v, p)); });
        tuples("mu1", 2, [&](auto& x, const json& v, const std::string& p) { M.set_mu1(x[0], x[1], sparse_from_json(M, v, p)); });
        tuples("gamma0", 3, [&](auto& x, const json& v, const std::string& p) {
            M.set_gamma0(x[0], x[1], x[2], sparse_from_json(M, v, p));
        });
    } catch (const ParseError&) {
        throw;
    } catch (const MathError& e) {
        throw ParseError(path, e.what());
    }

    InfinityFragment f{target, {}, {}, {}, {}, {}};
    if (j.contains("morphism")) {
        const json& m = j.at("morphism");
        const std::string pm = at(path, "morphism");
        only_keys(m, {"f1_0", "f1_1", "f1_2", "fmu_0", "fmu_1"}, pm);
        LabelIndex L(target);
        for (int i = 0; i < 3; ++i) {
            std::string key = "f1_" + std::to_string(i);
            if (!m.contains(key)) continue;
            const json& t = m.at(key);
            require(t.is_object(), at(pm, key), "expected {label: value}");
            auto& table = i == 0 ? f.f1_0 : (i == 1 ? f.f1_1 : f.f1_2);
            for (auto it = t.begin(); it != t.end(); ++it) {
                const std::string p = at(at(pm, key), it.key());
                std::size_t x = fragment_label(M, it.key(), p);
                require(M.element(x).h == i, p, "f(1)_" + std::to_string(i) + " takes inputs of horizontal degree " +
                                                    std::to_string(i));
                if (it.value().empty()) continue;
                table[x] = element_from_json(target, L, it.value(), M.element(x).total(), p);
            }
        }
        for (int i = 0; i < 2; ++i) {
            std::string key = "fmu_" + std::to_string(i);
            if (!m.contains(key)) continue;
            const json& t = m.at(key);
            const std::string p = at(pm, key);
            require(t.is_array(), p, "expected [[x, y, value], ..]");
            auto& table = i == 0 ? f.fmu_0 : f.fmu_1;
            for (std::size_t k = 0; k < t.size(); ++k) {
                require(t[k].is_array() && t[k].size() == 3, at(p, k), "expected [x, y, value]");
                std::size_t a = fragment_label(M, t[k][0], at(at(p, k), 0));
                std::size_t b = fragment_label(M, t[k][1], at(at(p, k), 1));
                if (t[k][2].empty()) continue;
                int d = M.element(a).total() + M.element(b).total() + 1;
                table[{a, b}] = element_from_json(target, L, t[k][2], d, at(at(p, k), 2));
            }
        }
    }
    return {M, f};
}

ordered_json fragment_to_json(const fixtures::FragmentFixture& F) {
    const Fragment& M = F.model;
    ordered_json out;
    out["hmax"] = M.hmax();
    out["vertical"] = {M.vertical().lo, M.vertical().hi};
    out["exhaustive"] = M.vertical_exhaustive();
    ordered_json basis = ordered_json::array();
    for (std::size_t i = 0; i < M.size(); ++i) basis.push_back({M.element(i).label, M.element(i).h, M.element(i).v});
    out["basis"] = basis;
    auto unary = [&](const std::map<std::size_t, SparseVec>& t) {
        ordered_json o = ordered_json::object();
        for (auto& [x, v] : t)
            if (!v.empty()) o[M.element(x).label] = sparse_to_json(M, v);
        return o;
    };
    out["d1"] = unary(M.d1_table());
    out["d2"] = unary(M.d2_table());
    auto binary = [&](const std::map<std::pair<std::size_t, std::size_t>, SparseVec>& t) {
        ordered_json o = ordered_json::array();
        for (auto& [xy, v] : t)
            if (!v.empty()) o.push_back({M.element(xy.first).label, M.element(xy.second).label, sparse_to_json(M, v)});
        return o;
    };
    out["mu0"] = binary(M.mu0_table());
    out["mu1"] = binary(M.mu1_table());
    ordered_json g = ordered_json::array();
    for (auto& [xyz, v] : M.gamma0_table())
        if (!v.empty())
            g.push_back({M.element(std::get<0>(xyz)).label, M.element(std::get<1>(xyz)).label,
                         M.element(std::get<2>(xyz)).label, sparse_to_json(M, v)});
    out["gamma0"] = g;

    const InfinityFragment& f = F.morphism;
    ordered_json m;
    for (int i = 0; i < 3; ++i) {
        const auto& table = i == 0 ? f.f1_0 : (i == 1 ? f.f1_1 : f.f1_2);
        ordered_json o = ordered_json::object();
        for (auto& [x, v] : table)
            if (!is_zero_vec(v)) o[M.element(x).label] = element_to_json(f.target, M.element(x).total(), v);
        m["f1_" + std::to_string(i)] = o;
    }
    for (int i = 0; i < 2; ++i) {
        const auto& table = i == 0 ? f.fmu_0 : f.fmu_1;
        ordered_json o = ordered_json::array();
        for (auto& [xy, v] : table) {
            if (is_zero_vec(v)) continue;
            int d = M.element(xy.first).total() + M.element(xy.second).total() + 1;
            o.push_back({M.element(xy.first).label, M.element(xy.second).label, element_to_json(f.target, d, v)});
        }
        m["fmu_" + std::to_string(i)] = o;
    }
    out["morphism"] = m;
    return out;
}

Vec element_from_text(const DGAlgebra& A, const std::string& text, int& degree) {
    LabelIndex L(A);
    std::optional<int> q;
    std::vector<std::pair<Scalar, std::pair<int, std::size_t>>> terms;
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = pos + 1;
        while (end < s.size() && !((s[end] == '+' || s[end] == '-') && s[end - 1] != '*' && s[end - 1] != '[' &&
                                   s[end - 1] != ','))
            ++end;
        std::string term = s.substr(pos, end - pos);
        pos = end;
        bool neg = false;
        if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
            neg = term[0] == '-';
            term = term.substr(1);
        }
        Scalar c = Scalar::one(A.ring());
        std::string label = term;
        auto star = term.find('*');
        // labels may contain '*' themselves ("x*y_t"): only split on a numeric prefix
        if (star != std::string::npos && !L.where.count(term)) {
            try {
                c = Scalar::parse(A.ring(), term.substr(0, star));
                label = term.substr(star + 1);
            } catch (const MathError&) {
            }
        }
        if (neg) c = -c;
        auto where = L.find(label, "");
        if (q && *q != where.first) throw PreconditionError("element '" + text + "' mixes degrees");
        q = where.first;
        terms.push_back({c, where});
    }
    if (!q) throw PreconditionError("empty element");
    Vec v = zero_vec(A.ring(), A.dim(*q));
    for (auto& [c, w] : terms) v[w.second] += c;
    degree = *q;
    return v;
}

}  // namespace opm::io
