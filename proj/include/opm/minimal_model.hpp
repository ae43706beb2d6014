#pragma once

#include "opm/dg_algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace opm {

using SparseVec = std::map<std::size_t, Scalar>;

SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const Scalar& c, const SparseVec& a);

struct BasisElement {
    int h = 0;  // horizontal degree
    int v = 0;  // vertical degree
    std::string label;

    int total() const { return h + v; }
};

// A minimal derived homotopy algebra truncated to horizontal degrees
// 0..hmax and a vertical window: basis, d1 (bidegree (-1,0)), d2 ((-2,1)),
// (sμ)_0 = μ (bidegree additive), (sμ)_1 ((-1,+1) after adding) and
// (s²Γ)_0 ((0,+1) after adding). d0 = 0 by construction. When
// `vertical_exhaustive` is set nothing lives outside the vertical window.
class Fragment {
  public:
    Fragment() = default;
    Fragment(RingSpec ring, OperadPreset operad, int hmax, DegreeWindow vertical, bool vertical_exhaustive);

    const RingSpec& ring() const { return ring_; }
    const OperadPreset& operad() const { return operad_; }
    int hmax() const { return hmax_; }
    const DegreeWindow& vertical() const { return vertical_; }
    bool vertical_exhaustive() const { return exhaustive_; }

    std::size_t add(int h, int v, std::string label);
    std::size_t size() const { return basis_.size(); }
    const BasisElement& element(std::size_t i) const { return basis_[i]; }
    std::size_t find(const std::string& label) const;  // throws if absent
    std::vector<std::size_t> cell(int h, int v) const;
    // Data for bidegree (h,v) is present (or known to vanish).
    bool cell_known(int h, int v) const;

    void set_d1(std::size_t x, SparseVec v);
    void set_d2(std::size_t x, SparseVec v);
    void set_mu0(std::size_t x, std::size_t y, SparseVec v);
    void set_mu1(std::size_t x, std::size_t y, SparseVec v);
    void set_gamma0(std::size_t x, std::size_t y, std::size_t z, SparseVec v);

    SparseVec d1(const SparseVec& x) const;
    SparseVec d2(const SparseVec& x) const;
    SparseVec mu0(const SparseVec& x, const SparseVec& y) const;
    SparseVec mu1(const SparseVec& x, const SparseVec& y) const;
    SparseVec gamma0(const SparseVec& x, const SparseVec& y, const SparseVec& z) const;

    const std::map<std::size_t, SparseVec>& d1_table() const { return d1_; }
    const std::map<std::size_t, SparseVec>& d2_table() const { return d2_; }
    const std::map<std::pair<std::size_t, std::size_t>, SparseVec>& mu0_table() const { return mu0_; }
    const std::map<std::pair<std::size_t, std::size_t>, SparseVec>& mu1_table() const { return mu1_; }
    const std::map<std::tuple<std::size_t, std::size_t, std::size_t>, SparseVec>& gamma0_table() const {
        return gamma0_;
    }

    std::string format(const SparseVec& x) const;
    SparseVec basis_vec(std::size_t i) const;

  private:
    RingSpec ring_;
    OperadPreset operad_;
    int hmax_ = 0;
    DegreeWindow vertical_;
    bool exhaustive_ = false;
    std::vector<BasisElement> basis_;
    std::map<std::string, std::size_t> index_;
    std::map<std::size_t, SparseVec> d1_, d2_;
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> mu0_, mu1_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, SparseVec> gamma0_;
};

// Structure equations of a minimal fragment: d1² = 0, d1d2 + d2d1 = 0,
// d1 a derivation of μ, the weight one and two equations, the relations Γ
// for μ, the symmetry of the preset, and bidegrees of all table entries.
Report verify_minimal_fragment(const Fragment& M);

// Pieces of a derived ∞-morphism from a minimal fragment to a DG algebra.
// Values are vectors in A of the total degree of the output.
struct InfinityFragment {
    DGAlgebra target;
    std::map<std::size_t, Vec> f1_0, f1_1, f1_2;
    std::map<std::pair<std::size_t, std::size_t>, Vec> fmu_0, fmu_1;

    Vec f1(int i, const Fragment& M, const SparseVec& x, int degree) const;
    Vec fmu(int i, const Fragment& M, const SparseVec& x, const SparseVec& y, int degree) const;
};

// The four equation families of an ∞-morphism into a DG algebra and the
// E²-equivalence test (rows of d1 exact in positive horizontal degrees,
// f(1)_0 inducing H_*(A) in horizontal degree 0).
Report verify_infinity_fragment(const InfinityFragment& f, const Fragment& M);

// ρ = projection ∘ f(1)_0 : P_{0,*} -> H_*(A) on the underlying bicomplex
// algebra P of a minimal fragment.
struct HorizontalResolution {
    Fragment P;
    HomologyAlgebra H;
    std::map<int, Matrix> rho;  // q -> (rank H_q) x |P_{0,q}| in the order of P.cell(0, q)

    Vec apply_rho(const SparseVec& x, int q) const;
};

Bicomplex underlying_bicomplex(const Fragment& M);
HorizontalResolution induced_horizontal_resolution(const InfinityFragment& f, const Fragment& M);
// Rows are resolutions of H and ρ is multiplicative on horizontal degree 0.
Report verify_horizontal_resolution(const HorizontalResolution& R);

}  // namespace opm
