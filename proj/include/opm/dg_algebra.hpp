#pragma once

#include "opm/complexes.hpp"
#include "opm/operads.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace opm {

// The binary operation a·μ(x,y) + b·(-1)^{|x||y|}·μ(y,x). The commutator
// of an associative product is {1,-1}.
struct OpSpec {
    long a = 1;
    long b = 0;

    // "mu", "ell", "commutator", or "a,b".
    static OpSpec parse(const std::string& text);
    std::string to_string() const;
};

// Degreewise free DG algebra over a preset operad with a single binary
// generator μ of degree 0, known in a finite window of degrees.
class DGAlgebra {
  public:
    DGAlgebra() = default;
    DGAlgebra(RingSpec ring, OperadPreset operad, DegreeWindow window);

    const RingSpec& ring() const { return complex_.ring(); }
    const OperadPreset& operad() const { return operad_; }
    const DegreeWindow& window() const { return complex_.window(); }
    const ChainComplex& complex() const { return complex_; }

    void set_degree(int q, std::vector<std::string> labels) { complex_.set_degree(q, std::move(labels)); }
    void set_differential(int q, Matrix d) { complex_.set_differential(q, std::move(d)); }
    std::size_t dim(int q) const { return complex_.dim(q); }
    const std::vector<std::string>& labels(int q) const { return complex_.labels(q); }
    Vec d(int q, const Vec& x) const;

    // μ(e_i, e_j) for e_i in degree p and e_j in degree q.
    void set_product(int p, std::size_t i, int q, std::size_t j, Vec value);
    Vec product_basis(int p, std::size_t i, int q, std::size_t j) const;
    bool product_known(int p, int q) const;
    Vec multiply(int p, const Vec& x, int q, const Vec& y) const;
    Vec apply_op(const OpSpec& op, int p, const Vec& x, int q, const Vec& y) const;

    // Optional unit: a basis element of degree 0.
    void set_unit(std::size_t index) { unit_ = index; }
    const std::optional<std::size_t>& unit() const { return unit_; }

    std::string format(int q, const Vec& x) const;

  private:
    OperadPreset operad_;
    ChainComplex complex_;
    std::map<std::tuple<int, std::size_t, int, std::size_t>, Vec> products_;
    std::optional<std::size_t> unit_;
};

// d² = 0, Leibniz, the symmetry of the preset, the relations Γ on basis
// triples and the unit laws. Checks that need degrees outside the window
// are counted as skipped.
Report validate(const DGAlgebra& A);

// Γ(x1, x2, x3) for basis elements, or nullopt when some intermediate
// degree lies outside the window.
std::optional<Vec> evaluate_relation(const DGAlgebra& A, int d1, std::size_t i1, int d2, std::size_t i2, int d3,
                                     std::size_t i3);

// An element of the free algebra: Σ coeff · (g1 g2 ... gk), where a word is
// the left-normed product ((g1 g2) g3)... of generators.
struct Term {
    Scalar coeff;
    std::vector<std::string> word;
};
using Expression = std::vector<Term>;

struct AlgebraPresentation {
    RingSpec ring;
    OperadPreset operad;
    DegreeWindow window;
    std::vector<std::pair<std::string, int>> generators;  // name, degree >= 1
    std::map<std::string, Expression> differential;
    bool quotient = false;
    std::vector<Expression> relations;
};

DGAlgebra realize(const AlgebraPresentation& P);

struct HomologyAlgebra {
    DGAlgebra algebra;
    HomologyData data;
    // μ on homology generators, in simplified coordinates of H_{p+q}.
    std::map<std::tuple<int, std::size_t, int, std::size_t>, Vec> products;

    bool available(int q) const { return data.available(q); }
    const HomologyGroup& at(int q) const { return data.at(q); }
    bool product_known(int p, int q) const;
    Vec multiply(int p, const Vec& x, int q, const Vec& y) const;
    Vec apply_op(const OpSpec& op, int p, const Vec& x, int q, const Vec& y) const;
};

HomologyAlgebra homology_algebra(const DGAlgebra& A);

}  // namespace opm
