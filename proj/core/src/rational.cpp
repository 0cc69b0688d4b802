#include "nilgeo/rational.hpp"

#include <cctype>

#include "nilgeo/error.hpp"

namespace nilgeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::InvalidBasis: return "InvalidBasis";
    case ErrorCode::InvalidForm: return "InvalidForm";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotTwoStep: return "NotTwoStep";
    case ErrorCode::DegenerateCenter: return "DegenerateCenter";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::NotSkewAdjoint: return "NotSkewAdjoint";
    case ErrorCode::SingularT: return "SingularT";
    case ErrorCode::AdInvarianceViolation: return "AdInvarianceViolation";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::TrivialSubrep: return "TrivialSubrep";
    case ErrorCode::RhoNotSkew: return "RhoNotSkew";
    case ErrorCode::RhoNotInjective: return "RhoNotInjective";
    case ErrorCode::RhoUUNonzero: return "RhoUUNonzero";
    case ErrorCode::NotAdInvariant: return "NotAdInvariant";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den)) {
    throw Error(ErrorCode::SchemaError, "not a rational literal: '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw Error(ErrorCode::SchemaError, "zero denominator in '" + std::string(text) + "'");
  if (text.front() == '-') p = -p;
  Rat r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) { return value.get_str(); }

bool is_integer(const Rat& value) { return value.get_den() == 1; }

bool is_rational_square(const Rat& value) {
  if (sgn(value) < 0) return false;
  return mpz_perfect_square_p(value.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(value.get_den_mpz_t()) != 0;
}

Rat rational_sqrt(const Rat& value) {
  if (!is_rational_square(value)) {
    throw Error(ErrorCode::InternalInconsistency, "rational_sqrt of a non-square " + to_string(value));
  }
  mpz_class p = sqrt(value.get_num());
  mpz_class q = sqrt(value.get_den());
  return Rat(p, q);
}

RatVector zero_vector(std::size_t n) { return RatVector(n, Rat(0)); }

RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v(n, Rat(0));
  v.at(i) = 1;
  return v;
}

namespace {
void require_same(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
}
}  // namespace

RatVector operator+(const RatVector& a, const RatVector& b) {
  require_same(a, b);
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  require_same(a, b);
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector operator-(const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

RatVector operator*(const Rat& s, const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

RatVector& operator+=(RatVector& a, const RatVector& b) {
  require_same(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

bool is_zero(const RatVector& a) {
  for (const auto& x : a) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Rat dot(const RatVector& a, const RatVector& b) {
  require_same(a, b);
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> to_double(const RatVector& a) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].get_d();
  return r;
}

}  // namespace nilgeo
