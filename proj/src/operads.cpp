#include "opm/operads.hpp"
#include "opm/smith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace opm {

Perm identity_perm(int r) {
    Perm p(r);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm inverse(const Perm& s) {
    Perm p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) p[s[i]] = static_cast<int>(i);
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm p(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) p[i] = a[b[i]];
    return p;
}

Perm cycle(int r, const std::vector<int>& c) {
    Perm p = identity_perm(r);
    for (std::size_t k = 0; k < c.size(); ++k) p[c[k] - 1] = c[(k + 1) % c.size()] - 1;
    return p;
}

std::vector<Perm> all_perms(int r) {
    std::vector<Perm> out;
    Perm p = identity_perm(r);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

OperadPreset OperadPreset::initial() {
    OperadPreset O;
    O.kind = OperadKind::Initial;
    O.name = "initial";
    return O;
}

OperadPreset OperadPreset::associative() {
    OperadPreset O;
    O.kind = OperadKind::Associative;
    O.name = "assoc";
    O.symbol = "mu";
    O.relation = {{1, identity_perm(3), 1}, {2, identity_perm(3), -1}};
    return O;
}

OperadPreset OperadPreset::commutative() {
    OperadPreset O;
    O.kind = OperadKind::Commutative;
    O.name = "comm";
    O.symbol = "mu";
    O.transposition_sign = 1;
    O.relation = {{1, identity_perm(3), 1}, {2, identity_perm(3), -1}};
    return O;
}

OperadPreset OperadPreset::lie() {
    OperadPreset O;
    O.kind = OperadKind::Lie;
    O.name = "lie";
    O.symbol = "ell";
    O.transposition_sign = -1;
    O.relation = {{1, identity_perm(3), 1}, {1, cycle(3, {1, 2, 3}), 1}, {1, cycle(3, {3, 2, 1}), 1}};
    return O;
}

OperadPreset OperadPreset::parse(const std::string& name) {
    if (name == "initial" || name == "I") return initial();
    if (name == "assoc" || name == "associative" || name == "As") return associative();
    if (name == "comm" || name == "commutative" || name == "Com") return commutative();
    if (name == "lie" || name == "Lie") return lie();
    throw MathError("unknown operad preset '" + name + "'");
}

namespace signs {

namespace {

long prefix(const Perm& sigma, const std::vector<int>& degs, int l) {
    Perm inv = inverse(sigma);
    long s = 0;
    for (int i = 1; i < l; ++i) s += degs[inv[i - 1]];
    return s;
}

}  // namespace

int alpha(const Perm& sigma, const std::vector<int>& degs) {
    long e = 0;
    for (std::size_t s = 0; s < sigma.size(); ++s)
        for (std::size_t t = s + 1; t < sigma.size(); ++t)
            if (sigma[s] > sigma[t]) e += static_cast<long>(degs[s]) * degs[t];
    return parity(e);
}

int beta(int mu_deg, const std::vector<int>& degs, int i) {
    long e = mu_deg;
    for (int j = 1; j < i; ++j) e += degs[j - 1];
    return parity(e);
}

int gamma(int gamma_deg, const std::vector<int>& degs, int i) { return beta(gamma_deg, degs, i); }

int delta(const Perm& sigma, int mu2_deg, const std::vector<int>& degs, int l) {
    return parity(alpha(sigma, degs) + static_cast<long>(mu2_deg) * prefix(sigma, degs, l));
}

int epsilon(const Perm& sigma, int mu1_deg, int mu2_deg, const std::vector<int>& degs, int l) {
    return parity(alpha(sigma, degs) + mu1_deg + static_cast<long>(mu2_deg + 1) * prefix(sigma, degs, l));
}

int eta(int n, const Perm& sigma, int mu1_deg, int mu2_deg, const std::vector<int>& degs, int l) {
    return parity(alpha(sigma, degs) + static_cast<long>(mu1_deg) * n +
                  static_cast<long>(mu2_deg + n) * prefix(sigma, degs, l));
}

int theta(int w, int t, const Perm& sigma, int mu1_deg, int mu2_deg, const std::vector<int>& degs, int l) {
    return parity(alpha(sigma, degs) + w + static_cast<long>(mu1_deg) * (w + t + 1) +
                  static_cast<long>(mu2_deg + 1 + w + t) * prefix(sigma, degs, l));
}

}  // namespace signs

int koszul_sign(const std::string& name, const SignInputs& in) {
    Perm s = in.sigma.empty() ? identity_perm(static_cast<int>(in.degs.size())) : in.sigma;
    int e;
    if (name == "alpha") e = signs::alpha(s, in.degs);
    else if (name == "beta") e = signs::beta(in.mu_deg, in.degs, in.i);
    else if (name == "gamma") e = signs::gamma(in.mu_deg, in.degs, in.i);
    else if (name == "delta") e = signs::delta(s, in.mu2_deg, in.degs, in.l);
    else if (name == "epsilon") e = signs::epsilon(s, in.mu1_deg, in.mu2_deg, in.degs, in.l);
    else if (name == "eta") e = signs::eta(in.n, s, in.mu1_deg, in.mu2_deg, in.degs, in.l);
    else if (name == "theta") e = signs::theta(in.w, in.t, s, in.mu1_deg, in.mu2_deg, in.degs, in.l);
    else throw MathError("unknown sign '" + name + "'");
    return signs::sign(e);
}

int coop_weight(CoopElement x) {
    switch (x) {
        case CoopElement::One: return 0;
        case CoopElement::SMu: return 1;
        case CoopElement::S2Gamma: return 2;
    }
    return 0;
}

int coop_arity(CoopElement x) { return coop_weight(x) + 1; }

std::vector<InfinitesimalTerm> infinitesimal_terms(const OperadPreset& O, CoopElement x) {
    std::vector<InfinitesimalTerm> out;
    const int r = coop_arity(x);
    out.push_back({CoopElement::One, 1, x, identity_perm(r), 1});
    if (x == CoopElement::One) return out;
    for (int i = 1; i <= r; ++i) out.push_back({x, i, CoopElement::One, identity_perm(r), 1});
    if (x == CoopElement::S2Gamma)
        for (const RelationTerm& g : O.relation)
            out.push_back({CoopElement::SMu, g.l, CoopElement::SMu, g.sigma, g.coeff});
    return out;
}

namespace {

// Binary trees on leaves 1..r, canonicalized by the symmetry of the generator.
struct Tree {
    std::string s;
    int sign;
};

Tree node(const OperadPreset& O, const std::string& a, const std::string& b) {
    if (!O.transposition_sign || a <= b) return {"(" + a + " " + b + ")", 1};
    return {"(" + b + " " + a + ")", *O.transposition_sign};
}

// (μ ∘_l μ)(b1, b2, b3) as a signed canonical tree.
Tree compose_tree(const OperadPreset& O, int l, const std::vector<std::string>& b) {
    if (l == 1) {
        Tree in = node(O, b[0], b[1]);
        Tree t = node(O, in.s, b[2]);
        return {t.s, t.sign * in.sign};
    }
    Tree in = node(O, b[1], b[2]);
    Tree t = node(O, b[0], in.s);
    return {t.s, t.sign * in.sign};
}

using Formal = std::map<std::string, long>;

Formal evaluate(const OperadPreset& O, CoopElement g, const Perm& sigma) {
    Formal f;
    const int r = coop_arity(g);
    Perm inv = inverse(sigma);
    std::vector<std::string> a(r);
    for (int i = 0; i < r; ++i) a[i] = std::to_string(inv[i] + 1);
    if (g == CoopElement::SMu) {
        Tree t = node(O, a[0], a[1]);
        f[t.s] += t.sign;
    } else {
        for (const RelationTerm& term : O.relation) {
            Perm ti = inverse(term.sigma);
            std::vector<std::string> b(r);
            for (int i = 0; i < r; ++i) b[i] = a[ti[i]];
            Tree t = compose_tree(O, term.l, b);
            f[t.s] += term.coeff * t.sign;
        }
    }
    return f;
}

}  // namespace

std::vector<std::vector<long>> symmetry_relations(const OperadPreset& O, CoopElement g) {
    if (!O.has_generator() || g == CoopElement::One) return {};
    const int r = coop_arity(g);
    std::vector<Perm> perms = all_perms(r);
    std::vector<Formal> images;
    std::map<std::string, std::size_t> index;
    for (const Perm& p : perms) {
        images.push_back(evaluate(O, g, p));
        for (auto& [k, v] : images.back())
            if (!index.count(k)) index.emplace(k, index.size());
    }
    RingSpec Z = RingSpec::integers();
    Matrix A(Z, index.size(), perms.size());
    for (std::size_t j = 0; j < perms.size(); ++j)
        for (auto& [k, v] : images[j]) A(index[k], j) = Scalar::from_int(Z, v);
    Matrix K = kernel(A);
    std::vector<std::vector<long>> out;
    for (std::size_t c = 0; c < K.cols(); ++c) {
        std::vector<long> v(perms.size());
        for (std::size_t j = 0; j < perms.size(); ++j) v[j] = K(j, c).as_mpz().get_si();
        out.push_back(v);
    }
    return out;
}

}  // namespace opm
