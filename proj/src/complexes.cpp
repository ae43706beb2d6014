#include "opm/complexes.hpp"

namespace opm {

namespace {
const std::vector<std::string> kNoLabels;

std::string at(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
}  // namespace

ChainComplex::ChainComplex(RingSpec ring, DegreeWindow window) : ring_(ring), window_(window) {
    if (window.lo > window.hi) throw MathError("empty degree window");
}

void ChainComplex::set_degree(int q, std::vector<std::string> labels) {
    if (!window_.contains(q)) throw MathError("degree " + std::to_string(q) + " outside window");
    labels_[q] = std::move(labels);
}

void ChainComplex::set_differential(int q, Matrix d) {
    if (d.rows() != dim(q - 1) || d.cols() != dim(q))
        throw MathError("differential in degree " + std::to_string(q) + " has the wrong shape");
    if (d.ring() != ring_) throw MathError("differential over the wrong ring");
    d_[q] = std::move(d);
}

std::size_t ChainComplex::dim(int q) const {
    auto it = labels_.find(q);
    return it == labels_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& ChainComplex::labels(int q) const {
    auto it = labels_.find(q);
    return it == labels_.end() ? kNoLabels : it->second;
}

Matrix ChainComplex::d(int q) const {
    auto it = d_.find(q);
    if (it != d_.end()) return it->second;
    return Matrix(ring_, dim(q - 1), dim(q));
}

std::vector<std::string> ChainComplex::validate() const {
    std::vector<std::string> bad;
    for (int q = window_.lo + 1; q < window_.hi; ++q)
        if (!(d(q) * d(q + 1)).is_zero()) bad.push_back("d∘d != 0 at degree " + std::to_string(q + 1));
    return bad;
}

const HomologyGroup& HomologyData::at(int q) const {
    auto it = groups.find(q);
    if (it == groups.end()) throw MathError("homology in degree " + std::to_string(q) + " is unavailable");
    return it->second;
}

HomologyGroup homology_at(const ChainComplex& C, int q) {
    if (!C.reliable(q)) throw MathError("homology in degree " + std::to_string(q) + " is unavailable");
    const RingSpec& R = C.ring();
    HomologyGroup h;
    h.q = q;
    h.sq = std::make_shared<Subquotient>(C.d(q), Matrix(R, C.dim(q - 1), 0), C.d(q + 1), Matrix(R, C.dim(q), 0));
    return h;
}

HomologyData homology(const ChainComplex& C) {
    HomologyData data;
    for (int q = C.window().lo + 1; q < C.window().hi; ++q) data.groups.emplace(q, homology_at(C, q));
    return data;
}

// ---------------------------------------------------------------- bicomplexes

Bicomplex::Bicomplex(RingSpec ring, int hmax, DegreeWindow vertical) : ring_(ring), hmax_(hmax), vertical_(vertical) {
    if (hmax < 0) throw MathError("negative horizontal bound");
}

void Bicomplex::set_dim(int p, int q, std::size_t n) {
    if (!in_window(p, q)) throw MathError("bidegree " + at(p, q) + " outside window");
    dims_[{p, q}] = n;
}

std::size_t Bicomplex::dim(int p, int q) const {
    auto it = dims_.find({p, q});
    return it == dims_.end() ? 0 : it->second;
}

void Bicomplex::set_d0(int p, int q, Matrix m) {
    if (m.rows() != dim(p, q - 1) || m.cols() != dim(p, q)) throw MathError("d0 at " + at(p, q) + " has the wrong shape");
    d0_[{p, q}] = std::move(m);
}

void Bicomplex::set_d1(int p, int q, Matrix m) {
    if (m.rows() != dim(p - 1, q) || m.cols() != dim(p, q)) throw MathError("d1 at " + at(p, q) + " has the wrong shape");
    d1_[{p, q}] = std::move(m);
}

Matrix Bicomplex::d0(int p, int q) const {
    auto it = d0_.find({p, q});
    return it != d0_.end() ? it->second : Matrix(ring_, dim(p, q - 1), dim(p, q));
}

Matrix Bicomplex::d1(int p, int q) const {
    auto it = d1_.find({p, q});
    return it != d1_.end() ? it->second : Matrix(ring_, dim(p - 1, q), dim(p, q));
}

void Report::merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    checked += other.checked;
    skipped += other.skipped;
}

Report verify_bicomplex(const Bicomplex& B) {
    Report r;
    const auto& V = B.vertical();
    for (int p = 0; p <= B.hmax(); ++p)
        for (int q = V.lo; q <= V.hi; ++q) {
            if (B.in_window(p, q - 2)) {
                ++r.checked;
                if (!(B.d0(p, q - 1) * B.d0(p, q)).is_zero()) r.fail("d0∘d0 != 0 at " + at(p, q));
            } else {
                ++r.skipped;
            }
            if (p >= 2) {
                ++r.checked;
                if (!(B.d1(p - 1, q) * B.d1(p, q)).is_zero()) r.fail("d1∘d1 != 0 at " + at(p, q));
            }
            if (p >= 1 && B.in_window(p - 1, q - 1)) {
                ++r.checked;
                if (!(B.d0(p - 1, q) * B.d1(p, q) + B.d1(p, q - 1) * B.d0(p, q)).is_zero())
                    r.fail("d0∘d1 + d1∘d0 != 0 at " + at(p, q));
            }
        }
    return r;
}

Report verify_resolution_rows(const Bicomplex& B, const std::map<int, Matrix>& rho,
                              const std::map<int, PresentedModule>& H) {
    Report r;
    const RingSpec& R = B.ring();
    const auto& V = B.vertical();
    for (int q = V.lo; q <= V.hi; ++q) {
        for (int p = 0; p <= B.hmax(); ++p)
            if (!B.d0(p, q).is_zero()) r.fail("d0 != 0 at " + at(p, q));
        for (int p = 1; p < B.hmax(); ++p) {
            ++r.checked;
            Subquotient h(B.d1(p, q), Matrix(R, B.dim(p - 1, q), 0), B.d1(p + 1, q), Matrix(R, B.dim(p, q), 0));
            if (!h.module().is_zero()) r.fail("row " + std::to_string(q) + " not exact at " + at(p, q));
        }
        auto rh = rho.find(q);
        auto hq = H.find(q);
        if (rh == rho.end() || hq == H.end()) {
            ++r.skipped;
            continue;
        }
        const Matrix& rq = rh->second;
        const PresentedModule& Hq = hq->second;
        if (rq.rows() != Hq.ambient_rank() || rq.cols() != B.dim(0, q)) {
            r.fail("augmentation in degree " + std::to_string(q) + " has the wrong shape");
            continue;
        }
        ++r.checked;
        Matrix rd = rq * B.d1(1, q);
        for (std::size_t j = 0; j < rd.cols(); ++j)
            if (!Hq.contains(rd.column(j))) {
                r.fail("augmentation does not kill d1 at " + at(1, q));
                break;
            }
        if (!PresentedModule(hcat(rq, Hq.relations())).is_zero())
            r.fail("augmentation not surjective in degree " + std::to_string(q));
        Subquotient ker(rq, Hq.relations(), B.d1(1, q), Matrix(R, B.dim(0, q), 0));
        if (!ker.module().is_zero()) r.fail("augmentation kernel exceeds d1-image in degree " + std::to_string(q));
    }
    return r;
}

// ---------------------------------------------------------------- extension class

ExtensionClass2 extension_class(const ChainComplex& C, int q) {
    for (int k = q - 1; k <= q + 2; ++k)
        if (!C.window().contains(k))
            throw MathError("extension class needs degrees " + std::to_string(q - 1) + ".." + std::to_string(q + 2));
    const RingSpec& R = C.ring();
    HomologyGroup Hq = homology_at(C, q);
    HomologyGroup Hq1 = homology_at(C, q + 1);

    ExtensionClass2 out;
    out.q = q;
    out.ext = ext(Hq.module(), Hq1.module(), 2);
    const FreeResolution& F = out.ext.resolution;
    const SimplifiedModule& N = out.ext.target;
    const std::size_t g = N.orders.size();

    // f0 : F_0 -> Z_q lifts the augmentation
    Matrix f0 = Hq.sq->lift() * F.simplified.from_simple;
    // f1 : F_1 -> C_{q+1} with d f1 = f0 ∂1
    Matrix target = f0 * F.maps[0];
    Matrix dq1 = C.d(q + 1);
    Matrix f1(R, C.dim(q + 1), target.cols());
    for (std::size_t k = 0; k < target.cols(); ++k) {
        auto x = solve_any(dq1, target.column(k));
        if (!x) throw MathError("extension class: augmentation lift is not a boundary");
        f1.set_column(k, *x);
    }
    // f2 : F_2 -> H_{q+1}
    Matrix cyc = f1 * F.maps[1];
    Vec phi;
    for (std::size_t i = 0; i < cyc.cols(); ++i) {
        Vec h = N.reduce(N.to_simple.apply(Hq1.project(cyc.column(i))));
        for (std::size_t j = 0; j < g; ++j) phi.push_back(-h[j]);
    }
    out.value = out.ext.project(phi);
    return out;
}

}  // namespace opm
