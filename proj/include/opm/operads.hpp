#pragma once

#include "opm/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opm {

// Permutations of {0..r-1}; perm[i] = σ(i).
using Perm = std::vector<int>;

Perm identity_perm(int r);
Perm inverse(const Perm& s);
Perm compose(const Perm& a, const Perm& b);  // (a∘b)(i) = a(b(i))
// Cycle notation with 1-based entries, e.g. {1,2,3} for (1 2 3).
Perm cycle(int r, const std::vector<int>& c);
std::vector<Perm> all_perms(int r);  // lexicographic

enum class OperadKind { Initial, Associative, Commutative, Lie };

// One summand c·(μ ∘_l μ)·σ of the quadratic relation Γ (l is 1-based).
struct RelationTerm {
    int l = 1;
    Perm sigma;
    int coeff = 1;
};

struct OperadPreset {
    OperadKind kind = OperadKind::Initial;
    std::string name;
    std::string symbol;  // "" for the initial operad, else "mu" / "ell"
    // μ·(1 2) = transposition_sign·μ, or independent of μ (associative).
    std::optional<int> transposition_sign;
    std::vector<RelationTerm> relation;

    bool has_generator() const { return kind != OperadKind::Initial; }
    bool requires_rationals() const { return kind == OperadKind::Commutative || kind == OperadKind::Lie; }

    static OperadPreset initial();
    static OperadPreset associative();
    static OperadPreset commutative();
    static OperadPreset lie();
    // "initial" | "assoc" | "comm" | "lie"
    static OperadPreset parse(const std::string& name);
};

// Koszul sign exponents. Degrees are total degrees of the inputs x_1..x_r
// (0-based vectors); generator degrees are 0 for every preset but kept as
// parameters. Positions i and l are 1-based as in the formulas.
namespace signs {

int alpha(const Perm& sigma, const std::vector<int>& degs);
int beta(int mu_deg, const std::vector<int>& degs, int i);
int gamma(int gamma_deg, const std::vector<int>& degs, int i);
int delta(const Perm& sigma, int mu2_deg, const std::vector<int>& degs, int l);
int epsilon(const Perm& sigma, int mu1_deg, int mu2_deg, const std::vector<int>& degs, int l);
int eta(int n, const Perm& sigma, int mu1_deg, int mu2_deg, const std::vector<int>& degs, int l);
int theta(int w, int t, const Perm& sigma, int mu1_deg, int mu2_deg, const std::vector<int>& degs, int l);

inline int parity(long e) { return static_cast<int>(((e % 2) + 2) % 2); }
inline int sign(long e) { return parity(e) ? -1 : 1; }

}  // namespace signs

struct SignInputs {
    Perm sigma;
    std::vector<int> degs;
    int i = 1;
    int l = 1;
    int n = 0;
    int w = 0;
    int t = 0;
    int mu_deg = 0;
    int mu1_deg = 0;
    int mu2_deg = 0;
};

// (-1)^exponent for "alpha", "beta", "gamma", "delta", "epsilon", "eta",
// "theta". Throws MathError for an unknown name.
int koszul_sign(const std::string& name, const SignInputs& in);

// Weight 0, 1, 2 basis elements of the Koszul dual cooperad.
enum class CoopElement { One, SMu, S2Gamma };

int coop_weight(CoopElement x);
int coop_arity(CoopElement x);

struct InfinitesimalTerm {
    CoopElement outer;
    int position;  // 1-based
    CoopElement inner;
    Perm sigma;
    int coeff;
};

std::vector<InfinitesimalTerm> infinitesimal_terms(const OperadPreset& O, CoopElement x);

// Linear relations among the permuted copies g·σ (σ in all_perms(r), r = 2
// for sμ and 3 for s²Γ). Each returned vector c (indexed like all_perms)
// satisfies Σ c_σ g·σ = 0.
std::vector<std::vector<long>> symmetry_relations(const OperadPreset& O, CoopElement g);

}  // namespace opm
