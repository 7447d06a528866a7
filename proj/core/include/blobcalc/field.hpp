#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace blobcalc {

/// Ground field of a computation: the rationals (characteristic 0) or a
/// prime field F_p. Every Scalar remembers the characteristic it lives in;
/// arithmetic between different characteristics is a logic error.
class FieldSpec {
public:
    FieldSpec() : characteristic_(0) {}
    explicit FieldSpec(unsigned long characteristic);

    unsigned long characteristic() const { return characteristic_; }
    bool is_rational() const { return characteristic_ == 0; }

    bool operator==(const FieldSpec&) const = default;

    /// "Q" for the rationals, "F<p>" for a prime field.
    std::string to_string() const;

private:
    unsigned long characteristic_;
};

/// Exact field element. Characteristic 0 stores an arbitrary-precision
/// rational in canonical form; characteristic p stores the residue in
/// [0, p) with denominator 1. There is no rounding anywhere.
class Scalar {
public:
    Scalar() : value_(0), characteristic_(0) {}
    Scalar(long n, FieldSpec field);
    Scalar(mpq_class value, FieldSpec field);

    static Scalar zero(FieldSpec field) { return Scalar(0, field); }
    static Scalar one(FieldSpec field) { return Scalar(1, field); }

    /// Parses "n" or "n/d" (decimal integers, d != 0). In characteristic p
    /// the fraction is mapped to n * d^{-1} mod p; a denominator divisible
    /// by p is rejected. Throws std::invalid_argument on malformed input.
    static Scalar parse(const std::string& text, FieldSpec field);

    FieldSpec field() const { return FieldSpec(characteristic_); }
    const mpq_class& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    Scalar operator+(const Scalar& rhs) const;
    Scalar operator-(const Scalar& rhs) const;
    Scalar operator*(const Scalar& rhs) const;
    Scalar operator/(const Scalar& rhs) const;  // throws on division by zero
    Scalar operator-() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& rhs) { return *this = *this + rhs; }
    Scalar& operator-=(const Scalar& rhs) { return *this = *this - rhs; }
    Scalar& operator*=(const Scalar& rhs) { return *this = *this * rhs; }

    bool operator==(const Scalar& rhs) const;
    bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

    /// "n" or "n/d" in lowest terms; in F_p the residue as a decimal integer.
    std::string to_string() const;

private:
    void reduce();
    void check_same_field(const Scalar& rhs) const;

    mpq_class value_;
    unsigned long characteristic_;
};

}  // namespace blobcalc
