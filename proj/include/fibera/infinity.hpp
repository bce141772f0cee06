#pragma once

#include "fibera/gradedlin.hpp"
#include "fibera/groebner.hpp"
#include "fibera/kform.hpp"

#include <optional>
#include <vector>

namespace fibera {

/// A polynomial map F = (f_1..f_q): C^n -> C^q, n > q, together with the data of its
/// fibre at infinity: the top components, I = (top f_i), the ideal J of maximal minors
/// of the Jacobian of the top map, and the volume forms df_1^..^df_q of F and of its top.
class PolyMap {
 public:
  /// Throws Error when n <= q or some component is zero.
  static PolyMap build(std::vector<Polynomial> f, const Weights& w);

  std::size_t n() const { return w_.size(); }
  std::size_t q() const { return f_.size(); }
  const Weights& weights() const { return w_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial>& components() const { return f_; }
  const std::vector<Polynomial>& tops() const { return tops_; }
  /// Weighted degrees of the components.
  const std::vector<long>& degrees() const { return degrees_; }

  const GroebnerBasis& top_ideal() const { return *i_basis_; }
  const std::vector<Polynomial>& jacobian_minors() const { return minors_; }
  const GroebnerBasis& jacobian_ideal() const { return *j_basis_; }
  /// Basis of I + J; its zero set is the singular locus of the fibre at infinity.
  const GroebnerBasis& singular_ideal() const { return *ij_basis_; }

  /// d(top f_1) ^ .. ^ d(top f_q)
  const KForm& top_volume() const { return top_volume_; }
  /// df_1 ^ .. ^ df_q
  const KForm& volume() const { return volume_; }

 private:
  PolyMap(Weights w) : w_(std::move(w)), order_(MonomialOrder::weighted_revlex(w_)), top_volume_(w_.size(), 0),
                       volume_(w_.size(), 0) {}

  Weights w_;
  MonomialOrder order_;
  std::vector<Polynomial> f_, tops_;
  std::vector<long> degrees_;
  std::optional<GroebnerBasis> i_basis_, j_basis_, ij_basis_;
  std::vector<Polynomial> minors_;
  KForm top_volume_, volume_;
};

struct IntersectionReport {
  bool complete_intersection;
  int dim_top_variety;      // dim V(I)
  int dim_singular_locus;   // dim V(I+J), -1 when empty
};

/// depth(I+J) > q, i.e. dim V(I+J) < n - q.
IntersectionReport is_complete_intersection_at_infinity(const PolyMap& F);

/// dim V(I+J); -1 for an empty singular locus.
int singular_dimension(const PolyMap& F);

/// dim C[x]/(I+J). Throws PreconditionError for a non-isolated singularity.
long milnor_number(const PolyMap& F);

/// i_X(dx_S) for every increasing S with |S| = n-q+1.
std::vector<KForm> koszul_kernel_generators(const PolyMap& F);

/// i_X(d omega)/r for omega weighted homogeneous of degree r > 0.
KForm euler_normalize(const KForm& omega, const PolyMap& F);

/// Every coefficient of d(omega) ^ top_volume lies in I.
bool closed_at_infinity(const KForm& omega, const PolyMap& F);

/// omega = d(primitive) + sum_i top(f_i) * multiples[i].
struct ExactWitness {
  KForm primitive;
  std::vector<KForm> multiples;
};

/// Membership of omega in dOmega^{k-1} + I Omega^k, decided component by component.
std::optional<ExactWitness> exact_at_infinity(const KForm& omega, const PolyMap& F);

/// Reassembles d(primitive) + sum_i g_i * multiples[i] for the given g_i.
KForm apply_exact_witness(const ExactWitness& w, const std::vector<Polynomial>& g, int k);

/// Column blocks spanning the exact-at-infinity forms of degree k and weighted degree r:
/// d(Omega^{k-1}_r) and top(f_i) * Omega^k_{r - deg f_i}.
std::vector<ColumnBlock> exact_at_infinity_blocks(const PolyMap& F, int k, long r);

struct InfinityBasis {
  std::vector<KForm> forms;
  std::vector<long> degrees;
  long mu = 0;
};

/// Weighted homogeneous basis of H^{n-q} of the fibre at infinity, chosen greedily
/// by ascending degree from {standard monomial * Koszul generator}.
InfinityBasis infinity_basis(const PolyMap& F);

/// Coordinates of a homogeneous (n-q)-form in the given basis modulo exact-at-infinity
/// forms; nullopt when the form is outside their span.
std::optional<std::vector<Rational>> infinity_coordinates(const KForm& omega, const InfinityBasis& B,
                                                          const PolyMap& F);

}  // namespace fibera
