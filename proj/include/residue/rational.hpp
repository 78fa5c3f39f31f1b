#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include <Eigen/Core>

namespace residue {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(const std::string& text);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

/// Prime field F_p with p = 2^31 - 1, used for the optional modular pre-pass.
/// Rank over F_p never exceeds the rank over Q for an integer matrix.
struct ModP {
    static constexpr std::uint64_t modulus = 2147483647ULL;
    std::uint64_t value = 0;

    ModP() = default;
    ModP(std::int64_t v) {  // NOLINT(google-explicit-constructor)
        std::int64_t r = v % static_cast<std::int64_t>(modulus);
        value = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(modulus) : r);
    }
    static ModP from_rational(const Rational& q);

    friend ModP operator+(ModP a, ModP b) { return raw((a.value + b.value) % modulus); }
    friend ModP operator-(ModP a, ModP b) { return raw((a.value + modulus - b.value) % modulus); }
    friend ModP operator*(ModP a, ModP b) { return raw((a.value * b.value) % modulus); }
    friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
    ModP operator-() const { return raw((modulus - value) % modulus); }
    ModP& operator+=(ModP b) { return *this = *this + b; }
    ModP& operator-=(ModP b) { return *this = *this - b; }
    ModP& operator*=(ModP b) { return *this = *this * b; }
    friend bool operator==(ModP a, ModP b) { return a.value == b.value; }
    friend bool operator!=(ModP a, ModP b) { return a.value != b.value; }

    ModP inverse() const;

private:
    static ModP raw(std::uint64_t v) {
        ModP m;
        m.value = v;
        return m;
    }
};

inline bool is_zero(const ModP& value) { return value.value == 0; }

}  // namespace residue

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 40,
        MulCost = 40
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
