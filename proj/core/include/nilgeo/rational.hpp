#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nilgeo {

/// Exact rational backed by GMP; always kept canonical (lowest terms, q > 0).
using Rat = mpq_class;
using RatVector = std::vector<Rat>;

/// Parses "p", "-p", "p/q". Throws Error(SchemaError) on anything else,
/// including a zero denominator.
Rat parse_rat(std::string_view text);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rat& value);

bool is_integer(const Rat& value);

/// True when value = r^2 for some rational r (value >= 0).
bool is_rational_square(const Rat& value);
/// Exact square root; only valid when is_rational_square(value).
Rat rational_sqrt(const Rat& value);

// Vector helpers. All sizes must agree; mismatches throw DimensionMismatch.
RatVector zero_vector(std::size_t n);
RatVector unit_vector(std::size_t n, std::size_t i);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a);
RatVector operator*(const Rat& s, const RatVector& a);
RatVector& operator+=(RatVector& a, const RatVector& b);
bool is_zero(const RatVector& a);
/// Euclidean coordinate dot product; use SymmetricForm::pair for metrics.
Rat dot(const RatVector& a, const RatVector& b);
std::vector<double> to_double(const RatVector& a);

}  // namespace nilgeo
