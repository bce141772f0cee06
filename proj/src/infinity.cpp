#include "fibera/infinity.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace fibera {

PolyMap PolyMap::build(std::vector<Polynomial> f, const Weights& w) {
  const std::size_t n = w.size();
  if (f.empty()) throw Error("map needs at least one component");
  if (n <= f.size()) throw Error("need more variables than components");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].nvars() != n) throw Error("component " + std::to_string(i + 1) + " lives in the wrong ring");
    if (f[i].is_zero()) throw Error("component " + std::to_string(i + 1) + " is zero");
  }

  PolyMap F(w);
  F.f_ = std::move(f);
  std::vector<KForm> d_top, d_full;
  for (const auto& fi : F.f_) {
    F.tops_.push_back(top_component(fi, w));
    F.degrees_.push_back(weighted_degree(fi, w).value());
    d_top.push_back(exterior_derivative(KForm(F.tops_.back())));
    d_full.push_back(exterior_derivative(KForm(fi)));
  }
  F.top_volume_ = wedge_all(n, d_top);
  F.volume_ = wedge_all(n, d_full);
  // the coefficients of d(top f_1)^..^d(top f_q) are the maximal minors of the Jacobian
  for (const auto& [s, c] : F.top_volume_.coeffs()) F.minors_.push_back(c);

  F.i_basis_ = buchberger(F.tops_, F.order_);
  F.j_basis_ = buchberger(F.minors_, F.order_);
  std::vector<Polynomial> both = F.tops_;
  both.insert(both.end(), F.minors_.begin(), F.minors_.end());
  F.ij_basis_ = buchberger(both, F.order_);
  return F;
}

IntersectionReport is_complete_intersection_at_infinity(const PolyMap& F) {
  IntersectionReport r;
  r.dim_top_variety = ideal_dimension(F.top_ideal());
  r.dim_singular_locus = ideal_dimension(F.singular_ideal());
  r.complete_intersection = r.dim_singular_locus < static_cast<int>(F.n() - F.q());
  return r;
}

int singular_dimension(const PolyMap& F) { return ideal_dimension(F.singular_ideal()); }

long milnor_number(const PolyMap& F) {
  if (singular_dimension(F) > 0) throw PreconditionError("non-isolated singularity at infinity");
  return static_cast<long>(quotient_vector_basis(F.singular_ideal()).size());
}

std::vector<KForm> koszul_kernel_generators(const PolyMap& F) {
  const std::size_t n = F.n();
  const int m = static_cast<int>(n - F.q()) + 1;
  std::vector<KForm> out;
  std::vector<int> sel(n, 0);
  std::fill(sel.begin(), sel.begin() + m, 1);
  // lexicographic enumeration of m-subsets
  do {
    IndexSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (sel[i]) s.push_back(static_cast<int>(i));
    out.push_back(euler_contraction(KForm::term(s, Polynomial::constant(n, 1)), F.weights()));
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return out;
}

KForm euler_normalize(const KForm& omega, const PolyMap& F) {
  if (omega.is_zero()) return omega;
  auto comps = homogeneous_components(omega, F.weights());
  if (comps.size() != 1) throw Error("euler_normalize: form is not weighted homogeneous");
  long r = comps.begin()->first;
  if (r <= 0) throw Error("euler_normalize: weighted degree must be positive");
  return euler_contraction(exterior_derivative(omega), F.weights()) * Rational(1, r);
}

bool closed_at_infinity(const KForm& omega, const PolyMap& F) {
  KForm test = wedge(exterior_derivative(omega), F.top_volume());
  for (const auto& [s, c] : test.coeffs())
    if (!F.top_ideal().contains(c)) return false;
  return true;
}

std::vector<ColumnBlock> exact_at_infinity_blocks(const PolyMap& F, int k, long r) {
  const std::size_t n = F.n();
  std::vector<ColumnBlock> blocks;
  if (k >= 1) {
    blocks.push_back(ColumnBlock::over({DegreeRange::exact, n, k - 1, r, F.weights()},
                                       [](const KForm& f) { return exterior_derivative(f); }));
  } else {
    blocks.push_back(ColumnBlock{n, 0, {}, [n](const KForm&) { return KForm(n, 0); }});
  }
  for (std::size_t i = 0; i < F.q(); ++i) {
    Polynomial g = F.tops()[i];
    blocks.push_back(ColumnBlock::over({DegreeRange::exact, n, k, r - F.degrees()[i], F.weights()},
                                       [g](const KForm& f) { return g * f; }));
  }
  return blocks;
}

KForm apply_exact_witness(const ExactWitness& w, const std::vector<Polynomial>& g, int k) {
  const std::size_t n = w.primitive.nvars();
  KForm out(n, k);
  if (k >= 1 && !w.primitive.is_zero()) out += exterior_derivative(w.primitive);
  for (std::size_t i = 0; i < g.size(); ++i) out += g[i] * w.multiples[i];
  return out;
}

std::optional<ExactWitness> exact_at_infinity(const KForm& omega, const PolyMap& F) {
  const std::size_t n = F.n();
  const int k = omega.degree();
  ExactWitness w{KForm(n, std::max(k - 1, 0)), std::vector<KForm>(F.q(), KForm(n, k))};
  for (const auto& [r, part] : homogeneous_components(omega, F.weights())) {
    auto blocks = exact_at_infinity_blocks(F, k, r);
    auto sol = graded_solve(part, blocks, F.weights());
    if (!sol) return std::nullopt;
    if (k >= 1) w.primitive += sol->slots[0];
    for (std::size_t i = 0; i < F.q(); ++i) w.multiples[i] += sol->slots[i + 1];
  }
  return w;
}

InfinityBasis infinity_basis(const PolyMap& F) {
  auto report = is_complete_intersection_at_infinity(F);
  if (!report.complete_intersection) throw PreconditionError("not a complete intersection at infinity");
  if (report.dim_singular_locus > 0) throw PreconditionError("non-isolated singularity at infinity");

  InfinityBasis B;
  B.mu = milnor_number(F);
  if (B.mu == 0) return B;

  const std::size_t n = F.n();
  const int k = static_cast<int>(n - F.q());
  auto monomials = quotient_vector_basis(F.singular_ideal());
  auto generators = koszul_kernel_generators(F);

  struct Candidate {
    long degree;
    std::size_t rank;
    KForm form;
  };
  std::vector<Candidate> candidates;
  for (const auto& m : monomials) {
    for (const auto& g : generators) {
      KForm c = Polynomial::monomial(m) * g;
      candidates.push_back({weighted_degree(c, F.weights()).value(), candidates.size(), std::move(c)});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.degree < b.degree; });

  std::vector<KForm> kept_here;
  long current = -1;
  std::vector<ColumnBlock> exact;
  for (const auto& c : candidates) {
    if (static_cast<long>(B.forms.size()) == B.mu) break;
    if (c.degree != current) {
      current = c.degree;
      kept_here.clear();
      exact = exact_at_infinity_blocks(F, k, current);
    }
    auto blocks = exact;
    blocks.push_back(ColumnBlock::fixed(n, k, kept_here));
    if (graded_solve(c.form, blocks, F.weights())) continue;
    kept_here.push_back(c.form);
    B.forms.push_back(c.form);
    B.degrees.push_back(c.degree);
  }
  if (static_cast<long>(B.forms.size()) != B.mu)
    throw InternalError("internal: standard monomials times Koszul generators do not span the cohomology at infinity");
  return B;
}

std::optional<std::vector<Rational>> infinity_coordinates(const KForm& omega, const InfinityBasis& B,
                                                          const PolyMap& F) {
  const std::size_t n = F.n();
  const int k = static_cast<int>(n - F.q());
  std::vector<Rational> coords(B.forms.size(), Rational(0));
  for (const auto& [r, part] : homogeneous_components(omega, F.weights())) {
    std::vector<std::size_t> idx;
    std::vector<KForm> same_degree;
    for (std::size_t i = 0; i < B.forms.size(); ++i)
      if (B.degrees[i] == r) {
        idx.push_back(i);
        same_degree.push_back(B.forms[i]);
      }
    auto blocks = exact_at_infinity_blocks(F, k, r);
    blocks.push_back(ColumnBlock::fixed(n, k, same_degree));
    auto sol = graded_solve(part, blocks, F.weights());
    if (!sol) return std::nullopt;
    const auto& c = sol->coefficients.back();
    for (std::size_t j = 0; j < idx.size(); ++j) coords[idx[j]] = c[j];
  }
  return coords;
}

}  // namespace fibera
