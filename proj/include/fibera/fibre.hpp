#pragma once

#include "fibera/infinity.hpp"

#include <optional>
#include <vector>

namespace fibera {

/// A point y in Q^q naming the fibre F^{-1}(y).
using FibrePoint = std::vector<Rational>;

/// f_i - y_i.
std::vector<Polynomial> shifted_components(const PolyMap& F, const FibrePoint& y);
/// Groebner basis of (f_1 - y_1, .., f_q - y_q) under the map's order.
GroebnerBasis fibre_ideal(const PolyMap& F, const FibrePoint& y);

/// d(omega) ^ df_1 ^ .. ^ df_q vanishes modulo (f - y).
bool closed_on_fibre(const KForm& omega, const PolyMap& F, const FibrePoint& y);

/// Cofactors a_i with P = sum a_i (f_i - y_i) and wdeg(a_i) <= wdeg(P) - wdeg(f_i),
/// or nullopt when P is not in the fibre ideal.
std::optional<std::vector<Polynomial>> bounded_ideal_membership(const Polynomial& P, const PolyMap& F,
                                                                const FibrePoint& y);

struct FibreExactness {
  /// omega = d(primitive) + sum (f_i - y_i) * multiples[i]
  std::optional<ExactWitness> witness;
  /// True when a missing witness proves that omega is not exact on the fibre:
  /// F is a complete intersection at infinity with dim Sing <= n - q - k.
  bool complete;
};

/// Searches omega = dOmega + sum (f_i - y_i) eta_i with wdeg(Omega) <= wdeg(omega) and
/// wdeg(f_i eta_i) <= wdeg(omega).
FibreExactness exact_on_fibre(const KForm& omega, const PolyMap& F, const FibrePoint& y);

/// Class of an (n-q)-form on F^{-1}(y) in a basis of the cohomology at infinity:
/// omega = sum lambda_i omega_i + d(witness.primitive) + sum (f_i - y_i) witness.multiples[i].
struct FibreClass {
  FibrePoint point;
  std::vector<Rational> lambda;
  ExactWitness witness;
};

/// Degree descent: the top component of the remainder is spanned by the basis forms of
/// its degree modulo exact-at-infinity forms; subtracting the lift lowers the degree.
FibreClass fibre_class(const KForm& omega, const PolyMap& F, const FibrePoint& y, const InfinityBasis& B);

/// d(omega) ^ df_1 ^ .. ^ df_q = 0 identically.
bool relative_closed(const KForm& omega, const PolyMap& F);

/// omega = d(primitive) + sum eta[i] ^ d(top f_i)
struct RelativeWitness {
  KForm primitive;
  std::vector<KForm> eta;
};

struct RelativeExactness {
  std::optional<RelativeWitness> witness;
  /// True when the Jacobian ideal of the top map has depth > k + 1.
  bool complete;
};

/// Homogeneous solve of omega = dOmega + sum eta_i ^ d(top f_i), Omega of degree
/// wdeg(omega) and eta_i of degree wdeg(omega) - wdeg(f_i).
RelativeExactness relative_exact_homogeneous(const KForm& omega, const PolyMap& F);

/// omega = sum a_i(F) omega_i + d(primitive) + sum eta[j] ^ df_j, with a_i in C[t_1..t_q].
struct RelativeDecomposition {
  std::vector<Polynomial> a;
  KForm primitive;
  std::vector<KForm> eta;
};

RelativeDecomposition relative_decompose(const KForm& omega, const PolyMap& F, const InfinityBasis& B);

/// a(t) -> a(f_1, .., f_q)
Polynomial compose(const Polynomial& a, const PolyMap& F);

/// A with R = A(f_1..f_q), found by elimination; nullopt when R is not in C[F].
std::optional<Polynomial> is_in_subalgebra(const Polynomial& R, const PolyMap& F);

struct DegreeBoundReport {
  bool coefficients = true;  // wdeg(a_i(F)) <= wdeg(omega) - wdeg(omega_i)
  bool primitive = true;     // wdeg(Omega) <= wdeg(omega)
  bool eta = true;           // wdeg(eta_j) <= wdeg(omega) - wdeg(f_j)
  bool all() const { return coefficients && primitive && eta; }
};

DegreeBoundReport degree_bounds(const KForm& omega, const RelativeDecomposition& d, const PolyMap& F,
                                const InfinityBasis& B);

/// Substitutes the witness into its identity and checks the degree bounds.
bool verify_decomposition(const KForm& omega, const FibreClass& c, const PolyMap& F, const InfinityBasis& B);
bool verify_decomposition(const KForm& omega, const RelativeDecomposition& d, const PolyMap& F,
                          const InfinityBasis& B);

struct VanishingReport {
  std::size_t space_dimension = 0;  // k-forms of weighted degree <= D
  std::size_t closed_dimension = 0;
  std::size_t exact_count = 0;
  bool all_exact() const { return exact_count == closed_dimension; }
};

/// Enumerates a basis of the closed-on-fibre k-forms of degree <= D and checks each
/// for exactness. Requires k > 0, a complete intersection at infinity and
/// dim Sing < n - q - k; otherwise throws PreconditionError.
VanishingReport verify_vanishing(const PolyMap& F, int k, const FibrePoint& y, long D);

/// Closed-on-fibre k-forms of degree <= D, as a basis of that subspace.
std::vector<KForm> closed_forms_on_fibre(const PolyMap& F, int k, const FibrePoint& y, long D);

}  // namespace fibera
