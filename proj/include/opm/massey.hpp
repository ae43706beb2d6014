#pragma once

#include "opm/minimal_model.hpp"

namespace opm {

enum class Vanishing { Vanishes, Nonvanishing, WindowInsufficient };

std::string to_string(Vanishing v);

// Submodule of H_n generated by the columns of `generators`.
struct Submodule {
    int degree = 0;
    PresentedModule ambient;
    Matrix generators;
    bool complete = true;  // false when some generator lies outside the window

    bool contains(const Vec& v) const;
    bool is_full() const;
};

// The binary torsion Massey product <op; t1, t2>(x1, x2).
struct MasseyInput {
    OpSpec op;
    std::vector<Scalar> t;
    std::vector<int> degrees;
    std::vector<Vec> classes;  // simplified coordinates in H_{degrees[i]}
};

struct MasseyCoset {
    int degree = 0;
    Vec cycle;           // in A_degree
    Vec representative;  // coordinates in H_degree
    Submodule indeterminacy;

    Vanishing vanishing() const;
};

// Optional perturbations of the representative choices: y_i += d(b_i) with
// b_i in A_{|x_i|+1}, and z_i += c_i with c_i a cycle in A_{|x_i|+1}.
struct MasseyChoices {
    std::vector<Vec> boundary_sources;
    std::vector<Vec> cycles;
};

// Throws PreconditionError when Σ t_i != 0 or t_i x_i != 0, and WindowError
// when a needed degree lies outside the window.
MasseyCoset torsion_massey(const HomologyAlgebra& H, const MasseyInput& in, const MasseyChoices* choices = nullptr);

Submodule indeterminacy(const HomologyAlgebra& H, const OpSpec& op, const std::vector<int>& degrees,
                        const std::vector<Vec>& classes);

Vanishing is_vanishing(const MasseyCoset& c);

// Σ(-1)^β ρ(s op)_1(u_1, .., v_i, .., u_r) - ρ d2(w) in H_{|x_1|+|x_2|+1}, with
// ρ(u_i) = x_i, d1 v_i = t_i u_i and d1 w = Σ(-1)^β (s op)_0(u_1, .., v_i, .., u_r).
// Throws WindowError when a lift cannot be found in the fragment.
Vec torsion_massey_via_model(const HorizontalResolution& R, const MasseyInput& in);

// ρ((s²Γ)_0(u_1, u_2, u_3)) for u_i in horizontal degree 0.
Vec gamma_massey_via_model(const HorizontalResolution& R, const std::vector<SparseVec>& u);

}  // namespace opm
