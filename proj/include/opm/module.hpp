#pragma once

#include "opm/smith.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace opm {

// SNF for every supported ring; Z/n input is lifted to Z with n·I appended.
SmithForm snf(const Matrix& A);

// Sorted non-unit invariant factors plus free rank. Over Z/n a summand
// Z/n counts towards the free rank.
struct CanonicalForm {
    std::vector<Scalar> torsion;
    std::size_t free_rank = 0;
    std::string base = "R";   // printed name of the ring of the torsion summands
    std::string ring = "R";   // printed name of the ring itself

    bool is_zero() const { return torsion.empty() && free_rank == 0; }
    std::string to_string() const;
    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.torsion == b.torsion && a.free_rank == b.free_rank;
    }
};

// Cokernel of `relations` (ambient_rank rows; columns are relations).
class PresentedModule {
  public:
    PresentedModule() = default;
    PresentedModule(Matrix relations);
    static PresentedModule free(const RingSpec& ring, std::size_t rank);
    // R^g / diag(d_i).
    static PresentedModule diagonal(const RingSpec& ring, const Vec& d);

    const RingSpec& ring() const { return relations_.ring(); }
    std::size_t ambient_rank() const { return relations_.rows(); }
    const Matrix& relations() const { return relations_; }

    CanonicalForm canonical_form() const;
    bool is_zero() const { return canonical_form().is_zero(); }
    bool contains(const Vec& v) const;  // v in the relation lattice
    bool equal(const Vec& a, const Vec& b) const;

  private:
    Matrix relations_;
};

PresentedModule cokernel(const Matrix& A);

struct ModuleElement {
    PresentedModule module;
    Vec coordinates;

    bool is_zero() const { return module.contains(coordinates); }
};

// ker(out) / (im(in) + span(rel)) inside R^m where R^m carries the extra
// relations `rel`, and `out` lands in a target with relations `out_rel`.
// Over Z/n the modulus relations are added automatically. The quotient is
// presented by non-unit invariant factors only.
class Subquotient {
  public:
    Subquotient(const Matrix& out, const Matrix& out_rel, const Matrix& in, const Matrix& rel);

    const PresentedModule& module() const { return module_; }
    const Vec& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    // ambient (m) x rank matrix; column i is a cycle representing generator i.
    const Matrix& lift() const { return lift_; }
    Vec lift(const Vec& coords) const;
    // Coordinates of a cycle, reduced modulo the orders. Throws if z is
    // not a cycle.
    Vec project(const Vec& z) const;
    bool is_cycle(const Vec& z) const;
    bool is_boundary(const Vec& z) const;

  private:
    RingSpec ring_;
    std::size_t m_ = 0;
    Matrix out_lift_;  // [out | out_rel | n I] over the cover
    std::shared_ptr<SmithForm> span_snf_;  // of [K | in | rel | n I]
    std::size_t k_ = 0;                   // number of independent cycles
    Matrix U_H_;                          // k x k
    std::vector<std::size_t> kept_;
    Vec orders_;  // original ring
    Matrix lift_;
    PresentedModule module_;
};

// Module with diagonal relations together with mutually inverse coordinate
// changes from and to the original presentation.
struct SimplifiedModule {
    PresentedModule module;  // diagonal
    Vec orders;
    Matrix to_simple;    // g x m
    Matrix from_simple;  // m x g
    Vec reduce(const Vec& simple) const;
};

SimplifiedModule simplify(const PresentedModule& M);

// F_w -> ... -> F_0 -> M. maps[k] is the rank(F_k) x rank(F_{k+1}) matrix
// of F_{k+1} -> F_k. F_0 is free on the generators of the simplified module.
// Once a kernel vanishes the remaining maps are empty.
struct FreeResolution {
    SimplifiedModule simplified;
    std::vector<std::size_t> ranks;  // ranks[k] = rank F_k
    std::vector<Matrix> maps;        // maps[k] : F_{k+1} -> F_k
    bool terminated = false;         // F_{k} = 0 beyond the last map
};

FreeResolution free_resolution(const PresentedModule& M, std::size_t length);

// Ext^w(M, N) as cohomology of Hom(F_*, N). Cochains in Hom(F_w, N) use
// flat coordinates i*g + j (i indexes F_w, j the simplified generators of N).
struct ExtGroup {
    std::size_t w = 0;
    FreeResolution resolution;
    SimplifiedModule target;
    std::shared_ptr<Subquotient> cohomology;

    const PresentedModule& module() const { return cohomology->module(); }
    Vec project(const Vec& cocycle) const { return cohomology->project(cocycle); }
};

ExtGroup ext(const PresentedModule& M, const PresentedModule& N, std::size_t w);

}  // namespace opm
