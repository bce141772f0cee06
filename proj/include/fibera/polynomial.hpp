#pragma once

#include "fibera/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace fibera {

/// Strictly positive weights p_1..p_n of the variables (and of dx_1..dx_n).
class Weights {
 public:
  explicit Weights(std::vector<int> p);
  Weights(std::initializer_list<int> p) : Weights(std::vector<int>(p)) {}

  static Weights uniform(std::size_t n) { return Weights(std::vector<int>(n, 1)); }

  std::size_t size() const { return p_.size(); }
  int operator[](std::size_t i) const { return p_[i]; }
  const std::vector<int>& values() const { return p_; }

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  std::vector<int> p_;
};

/// Weighted degree of a polynomial or form; the zero element has degree minus infinity.
class WDegree {
 public:
  WDegree() = default;  // minus infinity
  explicit WDegree(long v) : value_(v) {}

  static WDegree minus_infinity() { return WDegree(); }

  bool is_minus_infinity() const { return !value_.has_value(); }
  /// Throws Error for minus infinity.
  long value() const;

  friend bool operator==(const WDegree&, const WDegree&) = default;
  friend std::strong_ordering operator<=>(const WDegree& a, const WDegree& b) {
    if (a.is_minus_infinity() || b.is_minus_infinity())
      return !a.is_minus_infinity() <=> !b.is_minus_infinity();
    return *a.value_ <=> *b.value_;
  }
  friend bool operator==(const WDegree& a, long b) { return a.value_ == b; }
  friend std::strong_ordering operator<=>(const WDegree& a, long b) { return a <=> WDegree(b); }

 private:
  std::optional<long> value_;
};

using Exponent = std::vector<int>;

long weighted_degree(const Exponent& e, const Weights& w);

/// Sparse polynomial in a fixed number of variables with exact rational coefficients.
/// Terms are stored in lexicographic exponent order; no stored coefficient is zero.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(Exponent e, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;

  /// Adds c * x^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t i) const;
  /// Multiplies by the monomial x^e.
  Polynomial shift(const Exponent& e) const;

  /// Substitutes x_i -> images[i]; all images share one ring.
  Polynomial substitute(std::span<const Polynomial> images) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Embeds into a ring with `nvars` variables, variable i going to i + offset.
  Polynomial embed(std::size_t nvars, std::size_t offset = 0) const;

 private:
  void check_ring(const Polynomial& o) const;

  std::size_t nvars_;
  Terms terms_;
};

WDegree weighted_degree(const Polynomial& f, const Weights& w);
bool is_weighted_homogeneous(const Polynomial& f, const Weights& w);
/// Sum of the terms of weighted degree exactly r.
Polynomial homogeneous_component(const Polynomial& f, const Weights& w, long r);
/// Sum of all terms of maximal weighted degree. Throws Error on zero.
Polynomial top_component(const Polynomial& f, const Weights& w);

}  // namespace fibera
