#pragma once

#include "opm/minimal_model.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace opm {

// One factor of C^{w,t}: ψ_u(g; x_1, .., x_r) for g = 1, sμ, s²Γ (u = 0, 1, 2)
// and basis elements x_i of P, with values in M_degree = H_degree.
struct CochainSlot {
    int u = 0;
    std::vector<std::size_t> inputs;
    int degree = 0;
};

// C^{w,t}(P, H) restricted to the finite data of a horizontal resolution.
// Flat coordinates: slot k occupies [offset[k], offset[k] + rank[k]) in the
// simplified coordinates of H_{slots[k].degree}.
struct CochainSpace {
    int w = 0;
    int t = 0;
    std::vector<CochainSlot> slots;
    std::vector<std::size_t> offset;
    std::vector<std::size_t> rank;
    std::size_t dim = 0;
    Matrix relations;               // dim x k: orders of the value modules
    Matrix constraints;             // equivariance: rows are equations in H
    Matrix constraint_relations;    // relations of the constraint targets
    bool complete = true;
    std::vector<std::string> gaps;  // why the space is incomplete

    std::optional<std::size_t> find(int u, const std::vector<std::size_t>& inputs) const;
    // Generators of the equivariant cochains (columns).
    Matrix equivariant_generators() const;

    std::map<std::pair<int, std::vector<std::size_t>>, std::size_t> index;
};

CochainSpace cochain_space(const HorizontalResolution& R, int w, int t);

// Matrix of d : C^{w,t} -> C^{w+1,t}. Rows of output slots whose value needs
// data outside the window are flagged in `inexact`.
struct CochainDifferential {
    Matrix matrix;
    std::vector<bool> inexact;  // per output slot
    bool complete() const;
};

CochainDifferential cochain_differential(const HorizontalResolution& R, const CochainSpace& from,
                                         const CochainSpace& to);

struct Cochain {
    int w = 0;
    int t = 0;
    Vec values;  // flat coordinates of cochain_space(R, w, t)
};

Cochain apply_differential(const HorizontalResolution& R, const Cochain& psi);

struct CohomologyWindowResult {
    int w = 0;
    int t = 0;
    std::shared_ptr<Subquotient> cohomology;
    bool complete = true;
    std::vector<std::string> gaps;

    const PresentedModule& module() const { return cohomology->module(); }
};

CohomologyWindowResult cohomology_window(const HorizontalResolution& R, int w, int t);

// The cochain (m_0, m_1, m_2) at (2,-1): m_0(1; x) = ρ(d2 x),
// m_1(sμ; x) = ρ((sμ)_1(x)), m_2(s²Γ; x) = ρ((s²Γ)_0(x)). The resolution is
// the one induced by the fragment. Throws PreconditionError when the
// fragment or the ∞-morphism fails verification.
Cochain universal_massey_cocycle(const HorizontalResolution& R);
HorizontalResolution verified_resolution(const InfinityFragment& f, const Fragment& M);

enum class CoboundaryVerdict { Coboundary, NotCoboundaryInWindow, Inconclusive };
std::string to_string(CoboundaryVerdict v);

struct CoboundaryResult {
    CoboundaryVerdict verdict = CoboundaryVerdict::Inconclusive;
    std::optional<Cochain> witness;  // d(witness) = psi when a coboundary
};

CoboundaryResult is_coboundary(const HorizontalResolution& R, const Cochain& psi);

// Rows F_h -> H_q of free resolutions of the homology modules, for the
// initial operad. Vertical degrees are those where H is available.
HorizontalResolution resolve_initial(const HomologyAlgebra& H, int hmax, bool vertical_exhaustive);

// Extension classes in Ext²(H_q, H_{q+1}) for every q with q-1..q+2 in the
// window, negated as in `extension_class`.
std::vector<ExtensionClass2> unit_universal_massey(const ChainComplex& C);

}  // namespace opm
