#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "twistlab/errors.hpp"

namespace twistlab {

/// Which exact field scalars live in.  Supported kinds: the rationals, a
/// prime field, and a cyclotomic extension of the rationals generated by a
/// primitive n-th root of unity.
class FieldSpec {
public:
    enum class Kind { Rational, Prime, Cyclotomic };

    static FieldSpec rational();
    static FieldSpec prime(std::uint64_t p);      // p must be prime
    static FieldSpec cyclotomic(std::uint64_t n); // n >= 1

    Kind kind() const { return kind_; }
    std::uint64_t parameter() const { return param_; }

    /// 0 for rational/cyclotomic, p for prime fields.
    std::uint64_t characteristic() const;

    /// Degree of the field over its prime field (1 except cyclotomic).
    std::size_t extension_degree() const;

    /// Minimal polynomial of the primitive n-th root, monic, as integer
    /// coefficients c[0] + c[1] x + ... + x^deg.  Cached per n.
    const std::vector<mpz_class>& cyclotomic_polynomial() const;

    std::string to_string() const;
    static FieldSpec parse(const std::string& text);

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    FieldSpec(Kind kind, std::uint64_t param) : kind_(kind), param_(param) {}
    Kind kind_ = Kind::Rational;
    std::uint64_t param_ = 0;
};

/// An element of an exact field in canonical form.  Payloads: a reduced
/// fraction, a residue in [0, p), or a rational coefficient vector reduced
/// modulo the cyclotomic polynomial.  Canonical form is unique, so payload
/// equality is field-element equality; there is no floating point anywhere.
class Scalar {
public:
    Scalar() : field_(FieldSpec::rational()), payload_(mpq_class(0)) {}

    static Scalar zero(const FieldSpec& field);
    static Scalar one(const FieldSpec& field);
    static Scalar from_integer(const FieldSpec& field, long value);
    static Scalar from_rational(const FieldSpec& field, const mpq_class& value);

    /// The primitive root generator z of a cyclotomic field.
    static Scalar cyclotomic_generator(const FieldSpec& field);

    const FieldSpec& field() const { return field_; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar inverse() const; // DivisionByZeroError on zero

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(long exponent) const;

    /// Textual syntax: `a/b` (rational), `k mod p` (prime), polynomial in `z`
    /// such as `1/2 + z^2` (cyclotomic).
    std::string to_string() const;
    static Scalar parse(const FieldSpec& field, const std::string& text);

private:
    friend class ScalarOps;
    FieldSpec field_;
    // Rational: reduced fraction.  Prime: residue.  Cyclotomic: dense
    // coefficient vector of length deg(Phi_n), low degree first.
    std::variant<mpq_class, std::uint64_t, std::vector<mpq_class>> payload_;
};

/// Root-of-unity and characteristic queries, kept free-standing.
Scalar root_of_unity(const FieldSpec& field, std::uint64_t order);
std::uint64_t characteristic(const FieldSpec& field);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace twistlab
