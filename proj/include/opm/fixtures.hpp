#pragma once

#include "opm/dg_algebra.hpp"

namespace opm::fixtures {

// Z<e, x^{±1}>/(e², ex + xe - x²), |e| = |x| = 1, d(e) = p, with the unit.
// Basis in degree n: x^n, e·x^(n-1).
DGAlgebra dugger_shipley(long p, const RingSpec& ring, DegreeWindow window);

// k[x]/(x²) over k = Z/(p²), |x| = 1, d(x) = p, with the unit.
DGAlgebra sagave_algebra(long p);

// Generators x, y (degree 2), x_t, y_t (degree 3) over Q[t] with
// d(x_t) = t·x and d(y_t) = t·y, free or with the quotient relations.
AlgebraPresentation comm_qt_presentation(bool quotient, int top = 6);
AlgebraPresentation lie_qt_presentation(bool quotient, int top = 6);

}  // namespace opm::fixtures

#include "opm/minimal_model.hpp"

namespace opm::fixtures {

struct FragmentFixture {
    Fragment model;
    InfinityFragment morphism;
};

// Z/4 -2-> Z/4 in degrees 2 -> 1, as an algebra over the initial operad.
DGAlgebra sagave_complex();

// Twisted complex g_{h,q} (h = 0..hmax, q = 1, 2) over Z/4 with d1 = 2 and
// d2(g_{h,1}) = g_{h-2,2}, mapping to the Sagave complex.
FragmentFixture sagave_fragment(int hmax = 3);

// u_n, v_n (bidegrees (0,n), (1,n)) with d1 v = p u, mapping to the
// Dugger–Shipley algebra over Z in the window `algebra`.
FragmentFixture dugger_shipley_fragment(long p, DegreeWindow algebra);

// X, Y, X', Y', Z, Z' over Q[t], mapping to the quotient presentations.
FragmentFixture comm_qt_fragment();
FragmentFixture lie_qt_fragment();

// A with zero differential: M = A in horizontal degree 0, f(1)_0 = id.
FragmentFixture formal_fragment(const DGAlgebra& A, bool vertical_exhaustive = false);

// a, b, c (degree 1), ab, bc (2), u, v (3), w (4) over Q with d u = ab,
// d v = bc, u·c = w: the triple Massey product <a,b,c> is [w].
DGAlgebra massey_triple_algebra();
FragmentFixture massey_triple_fragment();

}  // namespace opm::fixtures
