#include "opm/dg_algebra.hpp"

#include <sstream>

namespace opm {

namespace {

int koszul(int p, int q) { return ((p * q) % 2 == 0) ? 1 : -1; }

Vec add_scaled(Vec acc, const Scalar& c, const Vec& v) {
    for (std::size_t k = 0; k < v.size(); ++k) acc[k] += c * v[k];
    return acc;
}

}  // namespace

OpSpec OpSpec::parse(const std::string& text) {
    if (text == "mu" || text == "ell") return {1, 0};
    if (text == "commutator") return {1, -1};
    auto comma = text.find(',');
    if (comma == std::string::npos) throw MathError("cannot parse operation '" + text + "'");
    try {
        return {std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw MathError("cannot parse operation '" + text + "'");
    }
}

std::string OpSpec::to_string() const { return std::to_string(a) + "," + std::to_string(b); }

DGAlgebra::DGAlgebra(RingSpec ring, OperadPreset operad, DegreeWindow window)
    : operad_(std::move(operad)), complex_(ring, window) {
    if (operad_.requires_rationals() && ring.kind() != RingKind::Rationals &&
        ring.kind() != RingKind::RationalPolynomials)
        throw MathError("the " + operad_.name + " operad needs a ring containing Q, got " + ring.name());
}

Vec DGAlgebra::d(int q, const Vec& x) const { return complex_.d(q).apply(x); }

void DGAlgebra::set_product(int p, std::size_t i, int q, std::size_t j, Vec value) {
    if (!product_known(p, q)) throw MathError("product degree outside window");
    if (i >= dim(p) || j >= dim(q) || value.size() != dim(p + q)) throw MathError("product table entry has the wrong shape");
    products_[{p, i, q, j}] = std::move(value);
}

Vec DGAlgebra::product_basis(int p, std::size_t i, int q, std::size_t j) const {
    auto it = products_.find({p, i, q, j});
    if (it != products_.end()) return it->second;
    return zero_vec(ring(), dim(p + q));
}

bool DGAlgebra::product_known(int p, int q) const {
    return window().contains(p) && window().contains(q) && window().contains(p + q);
}

Vec DGAlgebra::multiply(int p, const Vec& x, int q, const Vec& y) const {
    if (!product_known(p, q))
        throw MathError("product of degrees " + std::to_string(p) + " and " + std::to_string(q) + " is outside the window");
    Vec out = zero_vec(ring(), dim(p + q));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            auto it = products_.find({p, i, q, j});
            if (it != products_.end()) out = add_scaled(std::move(out), x[i] * y[j], it->second);
        }
    }
    return out;
}

Vec DGAlgebra::apply_op(const OpSpec& op, int p, const Vec& x, int q, const Vec& y) const {
    Vec out = zero_vec(ring(), dim(p + q));
    if (op.a != 0) out = add_scaled(std::move(out), Scalar::from_int(ring(), op.a), multiply(p, x, q, y));
    if (op.b != 0)
        out = add_scaled(std::move(out), Scalar::from_int(ring(), op.b * koszul(p, q)), multiply(q, y, p, x));
    return out;
}

std::string DGAlgebra::format(int q, const Vec& x) const {
    std::ostringstream os;
    bool first = true;
    const auto& L = labels(q);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (!x[i].is_one()) os << "(" << x[i].to_string() << ")*";
        os << (i < L.size() ? L[i] : "e" + std::to_string(i));
    }
    return first ? "0" : os.str();
}

std::optional<Vec> evaluate_relation(const DGAlgebra& A, int d1, std::size_t i1, int d2, std::size_t i2, int d3,
                                     std::size_t i3) {
    const RingSpec& R = A.ring();
    std::vector<int> degs{d1, d2, d3};
    std::vector<Vec> xs{unit_vec(R, A.dim(d1), i1), unit_vec(R, A.dim(d2), i2), unit_vec(R, A.dim(d3), i3)};
    const int n = d1 + d2 + d3;
    if (!A.window().contains(n)) return std::nullopt;
    Vec out = zero_vec(R, A.dim(n));
    for (const RelationTerm& term : A.operad().relation) {
        Perm inv = inverse(term.sigma);
        std::vector<int> e(3);
        std::vector<Vec> y(3);
        for (int k = 0; k < 3; ++k) {
            e[k] = degs[inv[k]];
            y[k] = xs[inv[k]];
        }
        Vec v;
        if (term.l == 1) {
            if (!A.product_known(e[0], e[1]) || !A.product_known(e[0] + e[1], e[2])) return std::nullopt;
            v = A.multiply(e[0] + e[1], A.multiply(e[0], y[0], e[1], y[1]), e[2], y[2]);
        } else {
            if (!A.product_known(e[1], e[2]) || !A.product_known(e[0], e[1] + e[2])) return std::nullopt;
            v = A.multiply(e[0], y[0], e[1] + e[2], A.multiply(e[1], y[1], e[2], y[2]));
        }
        int s = term.coeff * signs::sign(signs::alpha(term.sigma, degs));
        out = add_scaled(std::move(out), Scalar::from_int(R, s), v);
    }
    return out;
}

Report validate(const DGAlgebra& A) {
    Report rep;
    const RingSpec& R = A.ring();
    const DegreeWindow& W = A.window();
    auto name = [&](int q, std::size_t i) {
        const auto& L = A.labels(q);
        return i < L.size() ? L[i] : "e" + std::to_string(i);
    };

    for (int q = W.lo + 1; q < W.hi; ++q) {
        ++rep.checked;
        if (!(A.complex().d(q) * A.complex().d(q + 1)).is_zero())
            rep.fail("d∘d != 0 on degree " + std::to_string(q + 1));
    }

    for (int p = W.lo; p <= W.hi; ++p)
        for (int q = W.lo; q <= W.hi; ++q) {
            if (!A.product_known(p, q)) continue;
            for (std::size_t i = 0; i < A.dim(p); ++i)
                for (std::size_t j = 0; j < A.dim(q); ++j) {
                    Vec x = unit_vec(R, A.dim(p), i), y = unit_vec(R, A.dim(q), j);
                    std::string where = "(" + name(p, i) + ", " + name(q, j) + ")";
                    Vec xy = A.multiply(p, x, q, y);

                    if (A.operad().transposition_sign) {
                        ++rep.checked;
                        Vec yx = A.multiply(q, y, p, x);
                        Scalar c = Scalar::from_int(R, -*A.operad().transposition_sign * koszul(p, q));
                        if (!is_zero_vec(add_scaled(xy, c, yx))) rep.fail("symmetry fails on " + where);
                    }

                    if (W.contains(p + q - 1) && W.contains(p - 1) && W.contains(q - 1) &&
                        A.product_known(p - 1, q) && A.product_known(p, q - 1)) {
                        ++rep.checked;
                        Vec lhs = A.d(p + q, xy);
                        Vec rhs = A.multiply(p - 1, A.d(p, x), q, y);
                        rhs = add_scaled(std::move(rhs), Scalar::from_int(R, koszul(p, 1)),
                                         A.multiply(p, x, q - 1, A.d(q, y)));
                        if (lhs != rhs) rep.fail("Leibniz fails on " + where);
                    } else {
                        ++rep.skipped;
                    }
                }
        }

    if (A.operad().has_generator())
        for (int a = W.lo; a <= W.hi; ++a)
            for (int b = W.lo; b <= W.hi; ++b)
                for (int c = W.lo; c <= W.hi; ++c) {
                    if (!W.contains(a + b + c)) continue;
                    for (std::size_t i = 0; i < A.dim(a); ++i)
                        for (std::size_t j = 0; j < A.dim(b); ++j)
                            for (std::size_t k = 0; k < A.dim(c); ++k) {
                                auto v = evaluate_relation(A, a, i, b, j, c, k);
                                if (!v) {
                                    ++rep.skipped;
                                    continue;
                                }
                                ++rep.checked;
                                if (!is_zero_vec(*v))
                                    rep.fail("relation fails on (" + name(a, i) + ", " + name(b, j) + ", " +
                                             name(c, k) + ")");
                            }
                }

    if (A.unit()) {
        std::size_t u = *A.unit();
        if (!W.contains(0) || u >= A.dim(0)) {
            rep.fail("unit is not a basis element of degree 0");
        } else {
            Vec e = unit_vec(R, A.dim(0), u);
            ++rep.checked;
            if (!is_zero_vec(A.d(0, e))) rep.fail("d(unit) != 0");
            for (int q = W.lo; q <= W.hi; ++q)
                for (std::size_t i = 0; i < A.dim(q); ++i) {
                    Vec x = unit_vec(R, A.dim(q), i);
                    ++rep.checked;
                    if (A.multiply(0, e, q, x) != x || A.multiply(q, x, 0, e) != x)
                        rep.fail("unit law fails on " + name(q, i));
                }
        }
    }
    return rep;
}

bool HomologyAlgebra::product_known(int p, int q) const {
    return data.available(p) && data.available(q) && data.available(p + q) && algebra.product_known(p, q);
}

Vec HomologyAlgebra::multiply(int p, const Vec& x, int q, const Vec& y) const {
    if (!product_known(p, q))
        throw MathError("homology product of degrees " + std::to_string(p) + " and " + std::to_string(q) +
                        " is unavailable");
    const HomologyGroup& H = data.at(p + q);
    Vec out = zero_vec(algebra.ring(), H.rank());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            auto it = products.find({p, i, q, j});
            if (it != products.end()) out = add_scaled(std::move(out), x[i] * y[j], it->second);
        }
    }
    return out;
}

Vec HomologyAlgebra::apply_op(const OpSpec& op, int p, const Vec& x, int q, const Vec& y) const {
    const RingSpec& R = algebra.ring();
    Vec out = zero_vec(R, data.at(p + q).rank());
    if (op.a != 0) out = add_scaled(std::move(out), Scalar::from_int(R, op.a), multiply(p, x, q, y));
    if (op.b != 0) out = add_scaled(std::move(out), Scalar::from_int(R, op.b * koszul(p, q)), multiply(q, y, p, x));
    return out;
}

HomologyAlgebra homology_algebra(const DGAlgebra& A) {
    HomologyAlgebra H;
    H.algebra = A;
    H.data = homology(A.complex());
    for (auto& [p, Hp] : H.data.groups)
        for (auto& [q, Hq] : H.data.groups) {
            if (!H.product_known(p, q)) continue;
            const HomologyGroup& Hpq = H.data.at(p + q);
            for (std::size_t i = 0; i < Hp.rank(); ++i)
                for (std::size_t j = 0; j < Hq.rank(); ++j) {
                    Vec z = A.multiply(p, Hp.cycle_lift(i), q, Hq.cycle_lift(j));
                    Vec c = Hpq.project(z);
                    if (!is_zero_vec(c)) H.products[{p, i, q, j}] = std::move(c);
                }
        }
    return H;
}

}  // namespace opm
