#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace flatlab {

using Rational = mpq_class;
using BigInt = mpz_class;

// Canonical p/q (mpq_class(p, q) alone does not reduce).
inline Rational frac(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// Parses "p/q", "p" or a finite decimal such as "-0.25" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

double to_double(const Rational& q);
double to_double(const BigInt& z);

// Exact binary value of a finite double.
Rational exact_rational(double v);

BigInt floor_div(const Rational& q);
BigInt lcm(const BigInt& a, const BigInt& b);

// Uniform 64-bit stream splitting; every seeded component derives from this.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

}  // namespace flatlab
