#pragma once

#include "fibera/polynomial.hpp"

#include <compare>
#include <vector>

namespace fibera {

/// Block monomial order. Blocks are compared in sequence; inside a block monomials
/// are compared by weighted degree, ties broken reverse-lexicographically on the
/// block's declared variable sequence (the last variable is the smallest).
class MonomialOrder {
 public:
  struct Block {
    std::vector<int> vars;
    std::vector<int> weights;
  };

  /// Weighted degree reverse lexicographic order on all variables.
  static MonomialOrder weighted_revlex(const Weights& w);
  /// Block order in which the `eliminated` variables dominate every monomial in the others.
  static MonomialOrder elimination(const Weights& w, const std::vector<int>& eliminated);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  std::strong_ordering compare(const Exponent& a, const Exponent& b) const;
  bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

 private:
  MonomialOrder(std::size_t nvars, std::vector<Block> blocks) : nvars_(nvars), blocks_(std::move(blocks)) {}

  std::size_t nvars_;
  std::vector<Block> blocks_;
};

/// Reduced Groebner basis: monic generators sorted by increasing leading monomial,
/// no term of a generator divisible by another generator's leading monomial.
class GroebnerBasis {
 public:
  struct Division {
    Polynomial remainder;
    std::vector<Polynomial> cofactors;  // one per generator
  };

  const MonomialOrder& order() const { return order_; }
  std::size_t nvars() const { return order_.nvars(); }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<Exponent>& leading_monomials() const { return leads_; }

  bool is_unit() const;
  bool is_zero_ideal() const { return gens_.empty(); }

  Polynomial normal_form(const Polynomial& p) const;
  /// p = sum cofactors[i] * generators()[i] + remainder.
  Division divide(const Polynomial& p) const;
  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }
  /// True when x^e is not divisible by any leading monomial.
  bool is_standard(const Exponent& e) const;

 private:
  friend GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order);
  GroebnerBasis(MonomialOrder order, std::vector<Polynomial> gens);

  MonomialOrder order_;
  std::vector<Polynomial> gens_;
  std::vector<Exponent> leads_;
};

/// Reduced Groebner basis of the ideal generated by `gens` (the zero ideal for an empty list).
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order);

Exponent leading_monomial(const Polynomial& p, const MonomialOrder& order);
Rational leading_coefficient(const Polynomial& p, const MonomialOrder& order);

/// Krull dimension of V(ideal): the largest variable set containing the support of
/// no leading monomial. -1 for the unit ideal.
int ideal_dimension(const GroebnerBasis& g);

/// Standard monomials in increasing order. Throws PreconditionError when the
/// quotient is infinite-dimensional.
std::vector<Exponent> quotient_vector_basis(const GroebnerBasis& g);

/// Groebner basis under the block order eliminating the variables `eliminated`.
GroebnerBasis elimination_basis(const std::vector<Polynomial>& gens, const Weights& w,
                                const std::vector<int>& eliminated);
/// Generators of the elimination ideal: basis elements free of the eliminated variables.
std::vector<Polynomial> elimination_ideal(const GroebnerBasis& g, const std::vector<int>& eliminated);

}  // namespace fibera
