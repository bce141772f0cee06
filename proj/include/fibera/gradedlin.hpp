#pragma once

#include "fibera/kform.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace fibera {

// ---------------------------------------------------------------------------
// Exact sparse linear algebra over Q.
//
// Matrices are given column-wise as sparse vectors keyed by row index. Elimination
// is fraction-free (Bareiss) on integer-scaled rows; a row that is not touched by a
// pivot step is rescaled lazily, so untouched rows cost nothing.
// ---------------------------------------------------------------------------

using SparseVector = std::map<std::size_t, Rational>;

/// Solves A x = b for every right-hand side. Pivot columns are chosen in column
/// order and free variables are set to zero, so the answer does not depend on row
/// order. nullopt marks an inconsistent system.
std::vector<std::optional<std::vector<Rational>>> solve_columns(const std::vector<SparseVector>& columns,
                                                                const std::vector<SparseVector>& rhs);

std::size_t rank(const std::vector<SparseVector>& columns);

/// Basis of {x : A x = 0}: one vector per free column, that column set to 1.
std::vector<std::vector<Rational>> kernel(const std::vector<SparseVector>& columns);

// ---------------------------------------------------------------------------
// Graded pieces of the form modules.
// ---------------------------------------------------------------------------

enum class DegreeRange { exact, at_most };

struct GradedSpaceSpec {
  DegreeRange range;
  std::size_t n;
  int k;
  long r;
  Weights w;
};

/// Every monomial form x^a dx_S with |S| = k and weighted degree r (or <= r), once each,
/// sorted by degree, then index set, then monomial order.
std::vector<KForm> monomial_basis(const GradedSpaceSpec& spec);

using LinearMap = std::function<KForm(const KForm&)>;

/// One unknown slot: the unknown ranges over span(sources) and enters the equation
/// through the linear map `op`.
struct ColumnBlock {
  std::size_t n;
  int k;
  std::vector<KForm> sources;
  LinearMap op;

  static ColumnBlock over(const GradedSpaceSpec& spec, LinearMap op);
  /// Unknown coefficients on a fixed list of forms, entering as-is.
  static ColumnBlock fixed(std::size_t n, int k, std::vector<KForm> forms);
};

struct LinearWitness {
  std::vector<std::vector<Rational>> coefficients;  // per block, per source
  std::vector<KForm> slots;                         // per block: sum of coefficient * source
};

/// Sum over blocks of op(slot), as a form of type (n, k).
KForm reconstruct(const std::vector<ColumnBlock>& blocks, const LinearWitness& w, std::size_t n, int k);

/// target = sum_j op_j(unknown_j) over graded pieces. The target must be weighted
/// homogeneous and every column image homogeneous of the same degree; violations
/// throw Error (caller bug).
std::optional<LinearWitness> graded_solve(const KForm& target, const std::vector<ColumnBlock>& blocks,
                                          const Weights& w);

/// Same contract over inhomogeneous degree-bounded spaces; no degree checks.
std::optional<LinearWitness> bounded_solve(const KForm& target, const std::vector<ColumnBlock>& blocks);

/// bounded_solve for several targets sharing one elimination.
std::vector<std::optional<LinearWitness>> bounded_solve_many(const std::vector<KForm>& targets,
                                                             const std::vector<ColumnBlock>& blocks);

/// Coordinates of forms of one type, for building matrices out of forms.
class FormCoordinates {
 public:
  std::size_t index(const IndexSet& s, const Exponent& e);
  SparseVector vectorize(const KForm& f);
  std::size_t size() const { return ids_.size(); }

 private:
  std::map<std::pair<IndexSet, Exponent>, std::size_t> ids_;
};

}  // namespace fibera
