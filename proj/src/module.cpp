#include "opm/module.hpp"

#include <sstream>

namespace opm {

namespace {

Matrix modulus_identity(const RingSpec& ring, std::size_t n) {
    RingSpec C = ring.cover();
    if (ring.kind() != RingKind::IntegersMod) return Matrix(C, n, 0);
    return scalar_identity(Scalar::from_int(C, ring.modulus()), n);
}

Matrix hcat_all(std::initializer_list<Matrix> parts) {
    auto it = parts.begin();
    Matrix r = *it;
    for (++it; it != parts.end(); ++it) r = hcat(r, *it);
    return r;
}

Matrix first_rows(const Matrix& A, std::size_t k) { return A.block(0, k, 0, A.cols()); }

Matrix tail_columns(const Matrix& A, std::size_t from) {
    std::vector<std::size_t> idx;
    for (std::size_t j = from; j < A.cols(); ++j) idx.push_back(j);
    return A.select_columns(idx);
}

// Independent generators of the column span of K (over the cover ring).
Matrix prune_columns(const Matrix& K) {
    SmithForm s = smith(K);
    Matrix P(K.ring(), K.rows(), s.rank);
    for (std::size_t i = 0; i < s.rank; ++i)
        P.set_column(i, vec_scale(s.diag(i), s.U_inv.column(i)));
    return P;
}

Matrix block_repeat(const Matrix& D, std::size_t copies) {
    Matrix r(D.ring(), D.rows() * copies, D.cols() * copies);
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t i = 0; i < D.rows(); ++i)
            for (std::size_t j = 0; j < D.cols(); ++j) r(c * D.rows() + i, c * D.cols() + j) = D(i, j);
    return r;
}

}  // namespace

SmithForm snf(const Matrix& A) { return smith(lift_with_modulus(A)); }

std::string CanonicalForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion) {
        if (!first) os << " + ";
        std::string v = d.ring().kind() == RingKind::RationalPolynomials ? d.as_poly().pretty() : d.to_string();
        os << base << "/(" << v << ")";
        first = false;
    }
    if (free_rank > 0) {
        if (!first) os << " + ";
        os << (ring.find('/') != std::string::npos ? "(" + ring + ")" : ring);
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

PresentedModule::PresentedModule(Matrix relations) : relations_(std::move(relations)) {}

PresentedModule PresentedModule::free(const RingSpec& ring, std::size_t rank) {
    return PresentedModule(Matrix(ring, rank, 0));
}

PresentedModule PresentedModule::diagonal(const RingSpec& ring, const Vec& d) {
    return PresentedModule(Matrix::diagonal(ring, d));
}

CanonicalForm PresentedModule::canonical_form() const {
    SmithForm s = snf(relations_);
    CanonicalForm cf;
    const bool modular = ring().kind() == RingKind::IntegersMod;
    cf.ring = ring().name();
    cf.base = modular ? "Z" : cf.ring;
    for (std::size_t i = 0; i < ambient_rank(); ++i) {
        if (i >= s.rank) {
            ++cf.free_rank;
            continue;
        }
        Scalar d = s.diag(i);
        if (d.is_unit()) continue;
        if (modular && d.as_mpz() == ring().modulus()) {
            ++cf.free_rank;
            continue;
        }
        cf.torsion.push_back(d);
    }
    return cf;
}

bool PresentedModule::contains(const Vec& v) const {
    if (v.size() != ambient_rank()) throw MathError("element has wrong length");
    return solve_any(relations_, v).has_value();
}

bool PresentedModule::equal(const Vec& a, const Vec& b) const {
    Vec diff = a;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b.at(i);
    return contains(diff);
}

PresentedModule cokernel(const Matrix& A) { return PresentedModule(A); }

// ---------------------------------------------------------------- Subquotient

Subquotient::Subquotient(const Matrix& out, const Matrix& out_rel, const Matrix& in, const Matrix& rel)
    : ring_(in.ring()), m_(in.rows()) {
    const RingSpec C = ring_.cover();
    if (out.cols() != m_ || rel.rows() != m_ || out_rel.rows() != out.rows())
        throw MathError("subquotient: inconsistent shapes");

    out_lift_ = hcat_all({out.to_ring(C), out_rel.to_ring(C), modulus_identity(ring_, out.rows())});
    Matrix K0 = first_rows(kernel(out_lift_), m_);
    Matrix K = prune_columns(K0);
    k_ = K.cols();

    Matrix span = hcat_all({K, in.to_ring(C), rel.to_ring(C), modulus_identity(ring_, m_)});
    span_snf_ = std::make_shared<SmithForm>(smith(span));
    Matrix rel_H = first_rows(tail_columns(span_snf_->V, span_snf_->rank), k_);

    SmithForm sH = smith(rel_H);
    U_H_ = sH.U;
    Vec kept_orders;
    for (std::size_t i = 0; i < k_; ++i) {
        Scalar d = i < sH.rank ? sH.diag(i) : Scalar::zero(C);
        if (d.is_unit()) continue;
        kept_.push_back(i);
        kept_orders.push_back(d);
    }
    lift_ = (K * sH.U_inv.select_columns(kept_)).to_ring(ring_);
    for (const auto& d : kept_orders) orders_.push_back(d.to_ring(ring_));
    module_ = PresentedModule::diagonal(ring_, orders_);
}

Vec Subquotient::lift(const Vec& coords) const { return lift_.apply(coords); }

bool Subquotient::is_cycle(const Vec& z) const {
    if (z.size() != m_) throw MathError("subquotient: vector has wrong length");
    Vec y = out_lift_.block(0, out_lift_.rows(), 0, m_).apply(vec_to_ring(z, ring_.cover()));
    Matrix target = out_lift_.block(0, out_lift_.rows(), m_, out_lift_.cols());
    return solve(target, y).has_value();
}

Vec Subquotient::project(const Vec& z) const {
    if (!is_cycle(z)) throw MathError("subquotient: projecting a non-cycle");
    const RingSpec C = ring_.cover();
    auto x = solve_with(*span_snf_, vec_to_ring(z, C));
    if (!x) throw MathError("subquotient: cycle outside the cycle lattice");
    Vec c(x->begin(), x->begin() + static_cast<long>(k_));
    Vec u = U_H_.apply(c);
    Vec r;
    for (std::size_t t = 0; t < kept_.size(); ++t) {
        Scalar d = orders_[t].to_ring(C);
        if (ring_.kind() == RingKind::IntegersMod && d.is_zero()) d = Scalar::from_int(C, ring_.modulus());
        r.push_back(euclid::reduce(u[kept_[t]], d).to_ring(ring_));
    }
    return r;
}

bool Subquotient::is_boundary(const Vec& z) const { return is_zero_vec(project(z)); }

// ---------------------------------------------------------------- simplify / resolution / ext

Vec SimplifiedModule::reduce(const Vec& simple) const {
    const RingSpec& R = module.ring();
    const RingSpec C = R.cover();
    Vec r;
    for (std::size_t i = 0; i < simple.size(); ++i) {
        Scalar d = orders.at(i).to_ring(C);
        if (R.kind() == RingKind::IntegersMod && d.is_zero()) d = Scalar::from_int(C, R.modulus());
        r.push_back(euclid::reduce(simple[i].to_ring(C), d).to_ring(R));
    }
    return r;
}

SimplifiedModule simplify(const PresentedModule& M) {
    const RingSpec& R = M.ring();
    const std::size_t m = M.ambient_rank();
    Subquotient sq(Matrix(R, 0, m), Matrix(R, 0, 0), Matrix(R, m, 0), M.relations());
    SimplifiedModule s;
    s.module = sq.module();
    s.orders = sq.orders();
    s.from_simple = sq.lift();
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < m; ++j) cols.push_back(sq.project(unit_vec(R, m, j)));
    s.to_simple = Matrix::from_columns(R, sq.rank(), cols);
    return s;
}

FreeResolution free_resolution(const PresentedModule& M, std::size_t length) {
    const RingSpec& R = M.ring();
    FreeResolution res;
    res.simplified = simplify(M);
    const std::size_t g = res.simplified.orders.size();
    res.ranks.push_back(g);
    if (length == 0) return res;

    std::vector<Vec> cols;
    for (std::size_t j = 0; j < g; ++j)
        if (!res.simplified.orders[j].is_zero()) cols.push_back(vec_scale(res.simplified.orders[j], unit_vec(R, g, j)));
    Matrix current = Matrix::from_columns(R, g, cols);
    res.maps.push_back(current);
    res.ranks.push_back(current.cols());

    while (res.maps.size() < length) {
        Matrix next;
        const std::size_t b = current.cols();
        if (R.kind() == RingKind::IntegersMod) {
            Matrix K0 = first_rows(kernel(lift_with_modulus(current)), b);
            SmithForm s = smith(hcat(K0, modulus_identity(R, b)));
            std::vector<Vec> gens;
            for (std::size_t i = 0; i < s.rank; ++i) {
                if (s.diag(i).as_mpz() == R.modulus()) continue;
                gens.push_back(vec_to_ring(vec_scale(s.diag(i), s.U_inv.column(i)), R));
            }
            next = Matrix::from_columns(R, b, gens);
        } else {
            next = kernel(current);
        }
        res.maps.push_back(next);
        res.ranks.push_back(next.cols());
        current = next;
    }
    res.terminated = res.ranks.back() == 0;
    return res;
}

ExtGroup ext(const PresentedModule& M, const PresentedModule& N, std::size_t w) {
    if (M.ring() != N.ring()) throw MathError("ext: modules over different rings");
    const RingSpec& R = M.ring();
    ExtGroup e;
    e.w = w;
    e.resolution = free_resolution(M, w + 1);
    e.target = simplify(N);
    const std::size_t g = e.target.orders.size();
    Matrix D = Matrix::diagonal(R, e.target.orders);
    auto rel = [&](std::size_t k) { return block_repeat(D, e.resolution.ranks[k]); };
    auto delta = [&](std::size_t k) { return kron_identity(e.resolution.maps[k].transpose(), g); };
    const std::size_t here = e.resolution.ranks[w] * g;
    Matrix in = w == 0 ? Matrix(R, here, 0) : delta(w - 1);
    e.cohomology = std::make_shared<Subquotient>(delta(w), rel(w + 1), in, rel(w));
    return e;
}

}  // namespace opm
