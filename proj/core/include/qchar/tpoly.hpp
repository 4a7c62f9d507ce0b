#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qchar {

using Integer = boost::multiprecision::cpp_int;

/// Laurent polynomial in t with arbitrary-precision integer coefficients.
///
/// Terms are kept sorted by ascending exponent and zero coefficients are
/// never stored, so structural equality is polynomial equality.
class TPoly {
 public:
  using Term = std::pair<int, Integer>;

  TPoly() = default;
  TPoly(long long constant);  // NOLINT(google-explicit-constructor)

  static TPoly monomial(int exponent, Integer coeff = 1);
  /// Builds from unsorted (exponent, coefficient) pairs; duplicates are summed.
  static TPoly from_terms(std::vector<Term> terms);
  /// Parses the canonical text rendering produced by to_string().
  static TPoly parse(std::string_view text);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const noexcept;
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  int min_exponent() const;
  int max_exponent() const;
  Integer coefficient(int exponent) const;
  Integer constant_term() const { return coefficient(0); }
  Integer eval_at_one() const;

  TPoly& operator+=(const TPoly& other);
  TPoly& operator-=(const TPoly& other);
  TPoly& operator*=(const TPoly& other);
  TPoly& operator*=(const Integer& scalar);

  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend TPoly operator*(TPoly a, const Integer& s) { return a *= s; }
  TPoly operator-() const;

  /// Multiplies by t^k.
  TPoly shifted(int k) const;
  /// The involution t -> t^{-1}.
  TPoly bar() const;
  bool is_bar_invariant() const { return bar() == *this; }

  /// Part with exponents strictly below zero.
  TPoly negative_part() const;
  bool only_even_nonnegative() const;
  bool nonnegative_coefficients() const;

  /// "a0 + a1*t^2 - t^5", exponents ascending, "0" for the zero polynomial.
  std::string to_string() const;

  friend bool operator==(const TPoly&, const TPoly&) = default;

 private:
  void normalize();
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const TPoly& p);

/// Symmetric Gaussian binomial built from [m]_t = (t^m - t^-m)/(t - t^-1).
/// Zero when r lies outside [0, n].
TPoly t_binomial(int n, int r);

/// t^{r(n-r)} [n r]_t, the weight attached to A^{-r} in an i-expansion.
/// Equals the ordinary Gaussian binomial in t^2.
const TPoly& expansion_weight(int n, int r);

}  // namespace qchar
