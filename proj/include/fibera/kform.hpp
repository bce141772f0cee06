#pragma once

#include "fibera/polynomial.hpp"

#include <map>
#include <vector>

namespace fibera {

/// Strictly increasing variable indices i_1 < .. < i_k naming dx_{i_1}^..^dx_{i_k}.
using IndexSet = std::vector<int>;

/// Polynomial differential k-form on C^n: sum of P_S dx_S over increasing index sets S.
/// A 0-form has the single index set {} and is identified with its polynomial.
class KForm {
 public:
  using Coeffs = std::map<IndexSet, Polynomial>;

  KForm(std::size_t n, int k);
  /// The 0-form P.
  explicit KForm(const Polynomial& p);

  /// c * dx_S. S must be strictly increasing.
  static KForm term(const IndexSet& s, const Polynomial& c);
  /// dx_i in n variables.
  static KForm differential(std::size_t n, int i);

  std::size_t nvars() const { return n_; }
  int degree() const { return k_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Polynomial coefficient(const IndexSet& s) const;
  /// The polynomial of a 0-form. Throws for k > 0.
  Polynomial as_polynomial() const;

  void add_term(const IndexSet& s, const Polynomial& c);

  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  KForm& operator*=(const Rational& c);

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(KForm a, const Rational& c) { return a *= c; }
  friend KForm operator*(const Rational& c, KForm a) { return a *= c; }
  /// Multiplication by a 0-form.
  friend KForm operator*(const Polynomial& p, const KForm& a);
  KForm operator-() const;

  friend bool operator==(const KForm&, const KForm&) = default;

  /// Applies `fn` to every coefficient, dropping zeros.
  template <class Fn>
  KForm map_coefficients(Fn&& fn) const {
    KForm r(n_, k_);
    for (const auto& [s, c] : coeffs_) r.add_term(s, fn(c));
    return r;
  }

 private:
  void check_compatible(const KForm& o) const;

  std::size_t n_;
  int k_;
  Coeffs coeffs_;
};

KForm wedge(const KForm& a, const KForm& b);
KForm exterior_derivative(const KForm& w);
/// Interior product with the Euler field X = sum p_i x_i d/dx_i.
KForm euler_contraction(const KForm& w, const Weights& p);
/// L_X = d i_X + i_X d.
KForm lie_derivative(const KForm& w, const Weights& p);
/// Pullback along x_i -> t^{p_i} x_i, dx_i -> t^{p_i} dx_i; t is appended as variable n.
KForm scaling_substitution(const KForm& w, const Weights& p);

/// Sum of the weights of dx_i, i in s.
long index_weight(const IndexSet& s, const Weights& p);
WDegree weighted_degree(const KForm& w, const Weights& p);
bool is_weighted_homogeneous(const KForm& w, const Weights& p);
KForm homogeneous_component(const KForm& w, const Weights& p, long r);
/// Throws Error on zero.
KForm top_component(const KForm& w, const Weights& p);
/// Nonzero homogeneous components keyed by weighted degree.
std::map<long, KForm> homogeneous_components(const KForm& w, const Weights& p);

/// Wedge product of a list of forms (the 0-form 1 for an empty list).
KForm wedge_all(std::size_t n, const std::vector<KForm>& forms);

}  // namespace fibera
