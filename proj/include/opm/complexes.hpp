#pragma once

#include "opm/module.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opm {

struct DegreeWindow {
    int lo = 0;
    int hi = 0;
    bool contains(int q) const { return lo <= q && q <= hi; }
};

// Degreewise free chain complex in a finite window of homological degrees.
// d(q) is the dim(q-1) x dim(q) matrix of C_q -> C_{q-1}.
class ChainComplex {
  public:
    ChainComplex() = default;
    ChainComplex(RingSpec ring, DegreeWindow window);

    const RingSpec& ring() const { return ring_; }
    const DegreeWindow& window() const { return window_; }

    void set_degree(int q, std::vector<std::string> labels);
    void set_differential(int q, Matrix d);

    std::size_t dim(int q) const;
    const std::vector<std::string>& labels(int q) const;
    Matrix d(int q) const;

    // Homology at q is reliable when q-1, q, q+1 all lie in the window.
    bool reliable(int q) const { return window_.contains(q - 1) && window_.contains(q) && window_.contains(q + 1); }
    std::vector<std::string> validate() const;

  private:
    RingSpec ring_;
    DegreeWindow window_;
    std::map<int, std::vector<std::string>> labels_;
    std::map<int, Matrix> d_;
};

struct HomologyGroup {
    int q = 0;
    std::shared_ptr<Subquotient> sq;

    const PresentedModule& module() const { return sq->module(); }
    std::size_t rank() const { return sq->rank(); }
    Vec cycle_lift(std::size_t g) const { return sq->lift().column(g); }
    Vec lift(const Vec& coords) const { return sq->lift(coords); }
    Vec project(const Vec& cycle) const { return sq->project(cycle); }
};

struct HomologyData {
    std::map<int, HomologyGroup> groups;

    bool available(int q) const { return groups.count(q) > 0; }
    const HomologyGroup& at(int q) const;
};

HomologyGroup homology_at(const ChainComplex& C, int q);
HomologyData homology(const ChainComplex& C);

// Bicomplex with horizontal degrees 0..hmax and vertical degrees lo..hi.
// d0 has bidegree (0,-1), d1 has bidegree (-1,0).
class Bicomplex {
  public:
    Bicomplex() = default;
    Bicomplex(RingSpec ring, int hmax, DegreeWindow vertical);

    const RingSpec& ring() const { return ring_; }
    int hmax() const { return hmax_; }
    const DegreeWindow& vertical() const { return vertical_; }

    void set_dim(int p, int q, std::size_t n);
    std::size_t dim(int p, int q) const;
    void set_d0(int p, int q, Matrix m);
    void set_d1(int p, int q, Matrix m);
    Matrix d0(int p, int q) const;  // (p,q) -> (p,q-1)
    Matrix d1(int p, int q) const;  // (p,q) -> (p-1,q)
    bool in_window(int p, int q) const { return 0 <= p && p <= hmax_ && vertical_.contains(q); }

  private:
    RingSpec ring_;
    int hmax_ = 0;
    DegreeWindow vertical_;
    std::map<std::pair<int, int>, std::size_t> dims_;
    std::map<std::pair<int, int>, Matrix> d0_, d1_;
};

struct Report {
    std::vector<std::string> violations;
    std::size_t checked = 0;
    std::size_t skipped = 0;

    bool ok() const { return violations.empty(); }
    void fail(std::string msg) { violations.push_back(std::move(msg)); }
    void merge(const Report& other);
};

Report verify_bicomplex(const Bicomplex& B);

// Rows of a minimal bicomplex (d0 = 0) are exact in positive horizontal
// degrees p < hmax, and rho_q : B_{0,q} -> H_q (a matrix into the simplified
// coordinates of H_q) induces B_{0,q}/d1(B_{1,q}) ≅ H_q.
Report verify_resolution_rows(const Bicomplex& B, const std::map<int, Matrix>& rho,
                              const std::map<int, PresentedModule>& H);

// The class in Ext²(H_q, H_{q+1}) of H_{q+1} -> C_{q+1}/im d -> Z_q -> H_q,
// negated.
struct ExtensionClass2 {
    int q = 0;
    ExtGroup ext;
    Vec value;  // coordinates in ext.module()

    bool is_zero() const { return ext.module().contains(value); }
};

ExtensionClass2 extension_class(const ChainComplex& C, int q);

}  // namespace opm
