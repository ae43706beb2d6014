#include "opm/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace opm {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

mpz_class mod_reduce(const mpz_class& v, std::int64_t n) {
    mpz_class m = n;
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

mpq_class parse_rational(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw MathError("empty scalar");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw MathError("malformed scalar '" + text + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw MathError("zero denominator in '" + text + "'");
    return q;
}

}  // namespace

RingSpec RingSpec::integers_mod(std::int64_t n) {
    if (n < 2) throw MathError("IntegersMod(n) requires n >= 2");
    return RingSpec(RingKind::IntegersMod, n);
}

RingSpec RingSpec::prime_field(std::int64_t p) {
    if (!is_prime(p)) throw MathError("PrimeField(p) requires p prime, got " + std::to_string(p));
    return RingSpec(RingKind::PrimeField, p);
}

RingSpec RingSpec::parse(const std::string& text) {
    std::string s = strip(text);
    if (s == "Z" || s == "ZZ") return integers();
    if (s == "Q" || s == "QQ") return rationals();
    if (s == "Q[t]" || s == "QQ[t]") return rational_polynomials();
    auto number_after = [&](std::size_t pos, std::size_t end) -> std::int64_t {
        std::string digits = s.substr(pos, end - pos);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw MathError("malformed ring '" + text + "'");
        return std::stoll(digits);
    };
    if (s.rfind("Z/", 0) == 0) {
        std::size_t end = s.size();
        if (s.find('(') != std::string::npos) {
            // Z/(4)
            auto open = s.find('(');
            auto close = s.find(')');
            if (close == std::string::npos) throw MathError("malformed ring '" + text + "'");
            return integers_mod(number_after(open + 1, close));
        }
        return integers_mod(number_after(2, end));
    }
    if (s.rfind("GF(", 0) == 0 && s.back() == ')') return prime_field(number_after(3, s.size() - 1));
    if (s.size() > 1 && s[0] == 'F') return prime_field(number_after(1, s.size()));
    throw MathError("unknown ring '" + text + "'");
}

std::string RingSpec::name() const {
    switch (kind_) {
        case RingKind::Integers: return "Z";
        case RingKind::IntegersMod: return "Z/" + std::to_string(modulus_);
        case RingKind::Rationals: return "Q";
        case RingKind::RationalPolynomials: return "Q[t]";
        case RingKind::PrimeField: return "F" + std::to_string(modulus_);
    }
    return "?";
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPoly::QPoly(const mpq_class& c) {
    if (c != 0) coeffs_.push_back(c);
}

void QPoly::trim() {
    for (auto& c : coeffs_) c.canonicalize();
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class QPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[i];
}

std::size_t QPoly::height() const {
    std::size_t h = 0;
    for (const auto& c : coeffs_)
        h += mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
    return h;
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<mpq_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(int(i)) + b.coeff(int(i));
    return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw MathError("polynomial division by zero");
    std::vector<mpq_class> q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0);
    std::vector<mpq_class> r = a.coeffs_;
    const int db = b.degree();
    for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
        if (r[k] == 0) continue;
        mpq_class f = r[k] / b.leading();
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs_[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

std::string QPoly::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ',';
        os << coeffs_[i].get_str();
    }
    os << ']';
    return os.str();
}

std::string QPoly::pretty() const {
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        mpq_class c = coeffs_[k];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        mpq_class a = abs(c);
        if (a != 1 || k == 0) os << a.get_str();
        if (k > 0) os << (a != 1 ? "*t" : "t");
        if (k > 1) os << "^" << k;
        first = false;
    }
    return first ? "0" : os.str();
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::zero(const RingSpec& ring) { return from_int(ring, 0); }
Scalar Scalar::one(const RingSpec& ring) { return from_int(ring, 1); }

Scalar Scalar::from_int(const RingSpec& ring, long v) { return from_mpz(ring, mpz_class(v)); }

Scalar Scalar::from_mpz(const RingSpec& ring, const mpz_class& v) {
    switch (ring.kind()) {
        case RingKind::Integers: return Scalar(ring, v);
        case RingKind::IntegersMod:
        case RingKind::PrimeField: return Scalar(ring, mod_reduce(v, ring.modulus()));
        case RingKind::Rationals: return Scalar(ring, mpq_class(v));
        case RingKind::RationalPolynomials: return Scalar(ring, QPoly(mpq_class(v)));
    }
    throw MathError("bad ring");
}

Scalar Scalar::from_mpq(const RingSpec& ring, const mpq_class& v) {
    mpq_class q = v;
    q.canonicalize();
    switch (ring.kind()) {
        case RingKind::Rationals: return Scalar(ring, q);
        case RingKind::RationalPolynomials: return Scalar(ring, QPoly(q));
        case RingKind::PrimeField: {
            Scalar num = from_mpz(ring, q.get_num());
            Scalar den = from_mpz(ring, q.get_den());
            return num * den.inverse();
        }
        default:
            if (q.get_den() != 1) throw MathError("non-integral value " + q.get_str() + " in " + ring.name());
            return from_mpz(ring, q.get_num());
    }
}

Scalar Scalar::from_poly(const QPoly& p) { return Scalar(RingSpec::rational_polynomials(), p); }

namespace {

// "t", "-t", "2t^2 - 1/3", "3*t + 1"
Scalar parse_poly_expr(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    QPoly acc;
    std::size_t i = 0;
    if (s.empty()) throw MathError("empty polynomial");
    while (i < s.size()) {
        mpq_class sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        } else if (i > 0) {
            throw MathError("malformed polynomial '" + text + "'");
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != 't' && s[j] != '+' && s[j] != '-') ++j;
        std::string coeff = s.substr(i, j - i);
        if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
        mpq_class c = coeff.empty() ? mpq_class(1) : parse_rational(coeff);
        int power = 0;
        i = j;
        if (i < s.size() && s[i] == 't') {
            power = 1;
            ++i;
            if (i < s.size() && s[i] == '^') {
                std::size_t k = ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (k == i) throw MathError("malformed exponent in '" + text + "'");
                power = std::stoi(s.substr(k, i - k));
            }
        } else if (coeff.empty()) {
            throw MathError("malformed polynomial '" + text + "'");
        }
        std::vector<mpq_class> m(std::size_t(power) + 1, 0);
        m[std::size_t(power)] = sign * c;
        acc = acc + QPoly(std::move(m));
    }
    return Scalar::from_poly(acc);
}

}  // namespace

Scalar Scalar::parse(const RingSpec& ring, const std::string& text) {
    std::string s = strip(text);
    if (!s.empty() && s.front() == '[') {
        if (ring.kind() != RingKind::RationalPolynomials)
            throw MathError("polynomial literal '" + text + "' outside Q[t]");
        if (s.back() != ']') throw MathError("malformed polynomial '" + text + "'");
        std::vector<mpq_class> coeffs;
        std::string body = s.substr(1, s.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (strip(item).empty()) continue;
            coeffs.push_back(parse_rational(item));
        }
        return from_poly(QPoly(std::move(coeffs)));
    }
    if (ring.kind() == RingKind::RationalPolynomials && s.find('t') != std::string::npos) return parse_poly_expr(s);
    return from_mpq(ring, parse_rational(s));
}

void Scalar::normalize() {}

bool Scalar::is_zero() const {
    return std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, QPoly>) return v.is_zero();
            else return v == 0;
        },
        value_);
}

bool Scalar::is_one() const { return *this == one(ring_); }

bool Scalar::is_unit() const {
    switch (ring_.kind()) {
        case RingKind::Integers: return abs(as_mpz()) == 1;
        case RingKind::IntegersMod: {
            mpz_class g;
            mpz_class n = ring_.modulus();
            mpz_gcd(g.get_mpz_t(), as_mpz().get_mpz_t(), n.get_mpz_t());
            return g == 1;
        }
        case RingKind::PrimeField:
        case RingKind::Rationals: return !is_zero();
        case RingKind::RationalPolynomials: return as_poly().degree() == 0;
    }
    return false;
}

Scalar Scalar::to_ring(const RingSpec& target) const {
    if (target == ring_) return *this;
    switch (ring_.kind()) {
        case RingKind::Integers:
        case RingKind::IntegersMod:
        case RingKind::PrimeField:
            if (ring_.kind() != RingKind::Integers && target.kind() == RingKind::Integers)
                return Scalar(target, as_mpz());
            if (ring_.kind() == RingKind::Integers) return from_mpz(target, as_mpz());
            break;
        case RingKind::Rationals:
            if (target.kind() == RingKind::RationalPolynomials) return from_poly(QPoly(as_mpq()));
            break;
        case RingKind::RationalPolynomials:
            if (target.kind() == RingKind::Rationals && as_poly().degree() <= 0)
                return from_mpq(target, as_poly().coeff(0));
            break;
    }
    throw MathError("no coercion from " + ring_.name() + " to " + target.name());
}

Scalar Scalar::operator-() const {
    return std::visit(
        [&](const auto& v) -> Scalar {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, mpz_class>) return from_mpz(ring_, mpz_class(-v));
            else if constexpr (std::is_same_v<T, mpq_class>) return Scalar(ring_, mpq_class(-v));
            else return Scalar(ring_, -v);
        },
        value_);
}

namespace {
void check_same(const Scalar& a, const Scalar& b) {
    if (a.ring() != b.ring())
        throw MathError("ring mismatch: " + a.ring().name() + " vs " + b.ring().name());
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.ring_.kind()) {
        case RingKind::Rationals: return Scalar(a.ring_, mpq_class(a.as_mpq() + b.as_mpq()));
        case RingKind::RationalPolynomials: return Scalar(a.ring_, a.as_poly() + b.as_poly());
        default: return Scalar::from_mpz(a.ring_, mpz_class(a.as_mpz() + b.as_mpz()));
    }
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.ring_.kind()) {
        case RingKind::Rationals: return Scalar(a.ring_, mpq_class(a.as_mpq() - b.as_mpq()));
        case RingKind::RationalPolynomials: return Scalar(a.ring_, a.as_poly() - b.as_poly());
        default: return Scalar::from_mpz(a.ring_, mpz_class(a.as_mpz() - b.as_mpz()));
    }
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.ring_.kind()) {
        case RingKind::Rationals: return Scalar(a.ring_, mpq_class(a.as_mpq() * b.as_mpq()));
        case RingKind::RationalPolynomials: return Scalar(a.ring_, a.as_poly() * b.as_poly());
        default: return Scalar::from_mpz(a.ring_, mpz_class(a.as_mpz() * b.as_mpz()));
    }
}

bool operator==(const Scalar& a, const Scalar& b) { return a.ring_ == b.ring_ && a.value_ == b.value_; }

Scalar Scalar::inverse() const {
    if (!is_unit()) throw MathError(to_string() + " is not a unit in " + ring_.name());
    switch (ring_.kind()) {
        case RingKind::Integers: return *this;
        case RingKind::IntegersMod:
        case RingKind::PrimeField: {
            mpz_class inv;
            mpz_class n = ring_.modulus();
            mpz_invert(inv.get_mpz_t(), as_mpz().get_mpz_t(), n.get_mpz_t());
            return from_mpz(ring_, inv);
        }
        case RingKind::Rationals: return Scalar(ring_, mpq_class(1 / as_mpq()));
        case RingKind::RationalPolynomials: return from_poly(QPoly(mpq_class(1 / as_poly().coeff(0))));
    }
    throw MathError("bad ring");
}

std::string Scalar::to_string() const {
    switch (ring_.kind()) {
        case RingKind::Rationals: return as_mpq().get_str();
        case RingKind::RationalPolynomials: return as_poly().to_string();
        default: return as_mpz().get_str();
    }
}

// ---------------------------------------------------------------- euclid

namespace euclid {

namespace {
void require_euclidean(const Scalar& a) {
    if (!a.ring().is_euclidean())
        throw MathError("Euclidean operation on " + a.ring().name() + " (lift to the cover ring first)");
}
}  // namespace

Norm norm(const Scalar& a) {
    require_euclidean(a);
    Norm n;
    if (a.is_zero()) {
        n.primary = -1;
        return n;
    }
    switch (a.ring().kind()) {
        case RingKind::Integers: n.primary = abs(a.as_mpz()); break;
        case RingKind::RationalPolynomials:
            n.primary = a.as_poly().degree();
            n.secondary = a.as_poly().height();
            break;
        default: n.primary = 0; break;
    }
    return n;
}

std::pair<Scalar, Scalar> divmod(const Scalar& a, const Scalar& b) {
    require_euclidean(a);
    if (b.is_zero()) throw MathError("division by zero");
    const RingSpec& R = a.ring();
    switch (R.kind()) {
        case RingKind::Integers: {
            // Nearest-integer quotient keeps |r| <= |b|/2.
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.as_mpz().get_mpz_t(), b.as_mpz().get_mpz_t());
            mpz_class twice = 2 * abs(r);
            if (twice > abs(b.as_mpz())) {
                q += 1;
                r -= b.as_mpz();
            }
            return {Scalar::from_mpz(R, q), Scalar::from_mpz(R, r)};
        }
        case RingKind::RationalPolynomials: {
            auto [q, r] = QPoly::divmod(a.as_poly(), b.as_poly());
            return {Scalar::from_poly(q), Scalar::from_poly(r)};
        }
        default: return {a * b.inverse(), Scalar::zero(R)};
    }
}

bool divides(const Scalar& b, const Scalar& a) {
    if (b.is_zero()) return a.is_zero();
    return divmod(a, b).second.is_zero();
}

Scalar exact_div(const Scalar& a, const Scalar& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw MathError("inexact division " + a.to_string() + " / " + b.to_string());
    return q;
}

Scalar unit_normalizer(const Scalar& a) {
    require_euclidean(a);
    const RingSpec& R = a.ring();
    if (a.is_zero()) return Scalar::one(R);
    switch (R.kind()) {
        case RingKind::Integers: return Scalar::from_int(R, sgn(a.as_mpz()) < 0 ? -1 : 1);
        case RingKind::RationalPolynomials:
            return Scalar::from_poly(QPoly(mpq_class(1 / a.as_poly().leading())));
        default: return a.inverse();
    }
}

Scalar reduce(const Scalar& a, const Scalar& d) {
    if (d.is_zero()) return a;
    if (a.ring().kind() == RingKind::Integers) {
        mpz_class r;
        mpz_class m = abs(d.as_mpz());
        mpz_fdiv_r(r.get_mpz_t(), a.as_mpz().get_mpz_t(), m.get_mpz_t());
        return Scalar::from_mpz(a.ring(), r);
    }
    return divmod(a, d).second;
}

Scalar gcd(const Scalar& a, const Scalar& b) {
    Scalar x = a, y = b;
    while (!y.is_zero()) {
        Scalar r = divmod(x, y).second;
        x = y;
        y = r;
    }
    return x * unit_normalizer(x);
}

}  // namespace euclid

}  // namespace opm
