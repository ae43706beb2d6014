#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace opm {

class MathError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Input violates a documented precondition.
class PreconditionError : public MathError {
  public:
    using MathError::MathError;
};

// The degree window is too small to decide the question.
class WindowError : public MathError {
  public:
    using MathError::MathError;
};

enum class RingKind { Integers, IntegersMod, Rationals, RationalPolynomials, PrimeField };

// Coefficient ring. IntegersMod and PrimeField carry their modulus; the
// Euclidean "cover" of IntegersMod(n) is the integers (linear algebra over
// Z/n lifts to Z and adjoins n·e_i relations).
class RingSpec {
  public:
    RingSpec() = default;

    static RingSpec integers() { return RingSpec(RingKind::Integers, 0); }
    static RingSpec integers_mod(std::int64_t n);
    static RingSpec rationals() { return RingSpec(RingKind::Rationals, 0); }
    static RingSpec rational_polynomials() { return RingSpec(RingKind::RationalPolynomials, 0); }
    static RingSpec prime_field(std::int64_t p);

    // Accepts "Z", "Z/4", "Q", "Q[t]", "F5" / "GF(5)".
    static RingSpec parse(const std::string& text);

    RingKind kind() const { return kind_; }
    std::int64_t modulus() const { return modulus_; }

    bool is_field() const { return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField; }
    bool is_euclidean() const { return kind_ != RingKind::IntegersMod; }
    bool contains_rationals() const {
        return kind_ == RingKind::Rationals || kind_ == RingKind::RationalPolynomials;
    }
    RingSpec cover() const { return kind_ == RingKind::IntegersMod ? integers() : *this; }

    std::string name() const;

    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
    }
    friend bool operator!=(const RingSpec& a, const RingSpec& b) { return !(a == b); }

  private:
    RingSpec(RingKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}

    RingKind kind_ = RingKind::Integers;
    std::int64_t modulus_ = 0;
};

// Polynomial in one variable t with exact rational coefficients, stored
// low degree first with no trailing zeros.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(std::vector<mpq_class> coeffs);
    explicit QPoly(const mpq_class& c);

    static QPoly t() { return QPoly(std::vector<mpq_class>{0, 1}); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }
    const mpq_class& leading() const { return coeffs_.back(); }
    mpq_class coeff(int i) const;
    // Sum of the bit sizes of all numerators and denominators.
    std::size_t height() const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

    // a = q*b + r with deg r < deg b.
    static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

    std::string to_string() const;
    std::string pretty() const;  // e.g. "t^2 - 1/2"

  private:
    void trim();
    std::vector<mpq_class> coeffs_;
};

// Exact ring element. Integers, IntegersMod and PrimeField use mpz_class
// (canonically reduced to [0, n) for the modular rings), Rationals use
// mpq_class in lowest terms, RationalPolynomials use QPoly.
class Scalar {
  public:
    Scalar() : ring_(RingSpec::integers()), value_(mpz_class(0)) {}

    static Scalar zero(const RingSpec& ring);
    static Scalar one(const RingSpec& ring);
    static Scalar from_int(const RingSpec& ring, long v);
    static Scalar from_mpz(const RingSpec& ring, const mpz_class& v);
    static Scalar from_mpq(const RingSpec& ring, const mpq_class& v);
    static Scalar from_poly(const QPoly& p);
    // Decimal integer, "a/b", or a polynomial written as "[c0,c1,...]".
    static Scalar parse(const RingSpec& ring, const std::string& text);

    const RingSpec& ring() const { return ring_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;

    const mpz_class& as_mpz() const { return std::get<mpz_class>(value_); }
    const mpq_class& as_mpq() const { return std::get<mpq_class>(value_); }
    const QPoly& as_poly() const { return std::get<QPoly>(value_); }

    // Image in another ring: Z -> Z/n reduction, Z/n -> Z canonical lift,
    // Z -> Q, Q -> Q[t] constants, and the identity.
    Scalar to_ring(const RingSpec& target) const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const;  // throws MathError when not a unit

    std::string to_string() const;

  private:
    Scalar(RingSpec ring, std::variant<mpz_class, mpq_class, QPoly> v)
        : ring_(ring), value_(std::move(v)) {}
    void normalize();

    RingSpec ring_;
    std::variant<mpz_class, mpq_class, QPoly> value_;
};

// Euclidean structure of a cover ring (Integers, Rationals, PrimeField,
// RationalPolynomials). IntegersMod is rejected.
namespace euclid {

// Size used for pivoting: absolute value for Z, (degree, height) for Q[t],
// 0 for nonzero field elements.
struct Norm {
    mpz_class primary;
    std::size_t secondary = 0;
    friend bool operator<(const Norm& a, const Norm& b) {
        if (a.primary != b.primary) return a.primary < b.primary;
        return a.secondary < b.secondary;
    }
};

Norm norm(const Scalar& a);
// a = q*b + r with r == 0 or norm(r) < norm(b).
std::pair<Scalar, Scalar> divmod(const Scalar& a, const Scalar& b);
bool divides(const Scalar& b, const Scalar& a);
Scalar exact_div(const Scalar& a, const Scalar& b);
// Unit u with u*a canonical (positive integer, monic polynomial, 1 in a field).
Scalar unit_normalizer(const Scalar& a);
// Canonical remainder of a modulo d (0 <= r < d over Z; d == 0 keeps a).
Scalar reduce(const Scalar& a, const Scalar& d);
Scalar gcd(const Scalar& a, const Scalar& b);

}  // namespace euclid

}  // namespace opm
