#include "fibera/fibre.hpp"

#include <string>

namespace fibera {

namespace {

void check_point(const PolyMap& F, const FibrePoint& y) {
  if (y.size() != F.q())
    throw Error("fibre point has " + std::to_string(y.size()) + " coordinates, expected " + std::to_string(F.q()));
}

void require_isolated_cia(const PolyMap& F) {
  auto report = is_complete_intersection_at_infinity(F);
  if (!report.complete_intersection) throw PreconditionError("not a complete intersection at infinity");
  if (report.dim_singular_locus > 0) throw PreconditionError("non-isolated singularity at infinity");
}

// x <= limit - minus, with minus infinity below everything
bool within(const WDegree& x, const WDegree& limit, long minus = 0) {
  if (x.is_minus_infinity()) return true;
  if (limit.is_minus_infinity()) return false;
  return x.value() <= limit.value() - minus;
}

}  // namespace

std::vector<Polynomial> shifted_components(const PolyMap& F, const FibrePoint& y) {
  check_point(F, y);
  std::vector<Polynomial> g;
  for (std::size_t i = 0; i < F.q(); ++i) g.push_back(F.components()[i] - Polynomial::constant(F.n(), y[i]));
  return g;
}

GroebnerBasis fibre_ideal(const PolyMap& F, const FibrePoint& y) {
  return buchberger(shifted_components(F, y), F.order());
}

bool closed_on_fibre(const KForm& omega, const PolyMap& F, const FibrePoint& y) {
  KForm test = wedge(exterior_derivative(omega), F.volume());
  if (test.is_zero()) return true;
  GroebnerBasis G = fibre_ideal(F, y);
  for (const auto& [s, c] : test.coeffs())
    if (!G.contains(c)) return false;
  return true;
}

std::optional<std::vector<Polynomial>> bounded_ideal_membership(const Polynomial& P, const PolyMap& F,
                                                                const FibrePoint& y) {
  const std::size_t n = F.n();
  auto g = shifted_components(F, y);
  if (P.is_zero()) return std::vector<Polynomial>(F.q(), Polynomial(n));
  long d = weighted_degree(P, F.weights()).value();
  std::vector<ColumnBlock> blocks;
  for (std::size_t i = 0; i < F.q(); ++i) {
    Polynomial gi = g[i];
    blocks.push_back(ColumnBlock::over({DegreeRange::at_most, n, 0, d - F.degrees()[i], F.weights()},
                                       [gi](const KForm& f) { return gi * f; }));
  }
  auto sol = bounded_solve(KForm(P), blocks);
  if (!sol) return std::nullopt;
  std::vector<Polynomial> a;
  for (const auto& s : sol->slots) a.push_back(s.as_polynomial());
  return a;
}

namespace {

std::vector<ColumnBlock> fibre_exact_blocks(const PolyMap& F, const std::vector<Polynomial>& g, int k, long bound) {
  const std::size_t n = F.n();
  std::vector<ColumnBlock> blocks;
  if (k >= 1) {
    blocks.push_back(ColumnBlock::over({DegreeRange::at_most, n, k - 1, bound, F.weights()},
                                       [](const KForm& f) { return exterior_derivative(f); }));
  } else {
    blocks.push_back(ColumnBlock{n, 0, {}, [n](const KForm&) { return KForm(n, 0); }});
  }
  for (std::size_t i = 0; i < F.q(); ++i) {
    Polynomial gi = g[i];
    blocks.push_back(ColumnBlock::over({DegreeRange::at_most, n, k, bound - F.degrees()[i], F.weights()},
                                       [gi](const KForm& f) { return gi * f; }));
  }
  return blocks;
}

ExactWitness witness_from(const LinearWitness& sol, std::size_t q) {
  ExactWitness w{sol.slots[0], {}};
  for (std::size_t i = 0; i < q; ++i) w.multiples.push_back(sol.slots[i + 1]);
  return w;
}

bool fibre_hypothesis(const PolyMap& F, int k) {
  auto report = is_complete_intersection_at_infinity(F);
  return report.complete_intersection && report.dim_singular_locus <= static_cast<int>(F.n() - F.q()) - k;
}

}  // namespace

FibreExactness exact_on_fibre(const KForm& omega, const PolyMap& F, const FibrePoint& y) {
  const std::size_t n = F.n();
  const int k = omega.degree();
  auto g = shifted_components(F, y);
  FibreExactness out{std::nullopt, fibre_hypothesis(F, k)};
  if (omega.is_zero()) {
    out.witness = ExactWitness{KForm(n, std::max(k - 1, 0)), std::vector<KForm>(F.q(), KForm(n, k))};
    return out;
  }
  long d = weighted_degree(omega, F.weights()).value();
  auto sol = bounded_solve(omega, fibre_exact_blocks(F, g, k, d));
  if (sol) out.witness = witness_from(*sol, F.q());
  return out;
}

FibreClass fibre_class(const KForm& omega, const PolyMap& F, const FibrePoint& y, const InfinityBasis& B) {
  require_isolated_cia(F);
  const std::size_t n = F.n();
  const int k = static_cast<int>(n - F.q());
  if (omega.degree() != k || omega.nvars() != n)
    throw Error("fibre_class: expected an (n-q)-form on C^" + std::to_string(n));
  auto g = shifted_components(F, y);

  FibreClass out{y, std::vector<Rational>(B.forms.size(), Rational(0)),
                 ExactWitness{KForm(n, k - 1), std::vector<KForm>(F.q(), KForm(n, k))}};
  KForm rest = omega;
  while (!rest.is_zero()) {
    const long r = weighted_degree(rest, F.weights()).value();
    KForm top = homogeneous_component(rest, F.weights(), r);

    std::vector<std::size_t> idx;
    std::vector<KForm> same_degree;
    for (std::size_t i = 0; i < B.forms.size(); ++i)
      if (B.degrees[i] == r) {
        idx.push_back(i);
        same_degree.push_back(B.forms[i]);
      }
    auto blocks = exact_at_infinity_blocks(F, k, r);
    blocks.push_back(ColumnBlock::fixed(n, k, same_degree));
    auto sol = graded_solve(top, blocks, F.weights());
    if (!sol) throw InternalError("internal: top component of degree " + std::to_string(r) + " not spanned");

    KForm lift(n, k);
    const auto& c = sol->coefficients.back();
    for (std::size_t j = 0; j < idx.size(); ++j) {
      out.lambda[idx[j]] += c[j];
      if (c[j] != 0) lift += B.forms[idx[j]] * c[j];
    }
    const KForm& primitive = sol->slots[0];
    if (!primitive.is_zero()) lift += exterior_derivative(primitive);
    out.witness.primitive += primitive;
    for (std::size_t i = 0; i < F.q(); ++i) {
      const KForm& eta = sol->slots[i + 1];
      if (eta.is_zero()) continue;
      lift += g[i] * eta;
      out.witness.multiples[i] += eta;
    }
    rest -= lift;
    if (!rest.is_zero() && weighted_degree(rest, F.weights()) >= r)
      throw InternalError("internal: degree descent did not lower the degree");
  }
  return out;
}

bool relative_closed(const KForm& omega, const PolyMap& F) {
  return wedge(exterior_derivative(omega), F.volume()).is_zero();
}

RelativeExactness relative_exact_homogeneous(const KForm& omega, const PolyMap& F) {
  const std::size_t n = F.n();
  const int k = omega.degree();
  RelativeExactness out{std::nullopt, ideal_dimension(F.jacobian_ideal()) < static_cast<int>(n) - k - 1};
  const int eta_k = std::max(k - 1, 0);
  RelativeWitness zero{KForm(n, eta_k), std::vector<KForm>(F.q(), KForm(n, eta_k))};
  if (omega.is_zero()) {
    out.witness = zero;
    return out;
  }
  if (k == 0) return out;  // no 0-form but zero is relatively exact

  auto comps = homogeneous_components(omega, F.weights());
  if (comps.size() != 1) throw Error("relative_exact_homogeneous: form is not weighted homogeneous");
  const long r = comps.begin()->first;

  // eta blocks first: pivots go to earlier columns, so df_i is reported as eta_i = 1
  std::vector<ColumnBlock> blocks;
  for (std::size_t i = 0; i < F.q(); ++i) {
    KForm dtop = exterior_derivative(KForm(F.tops()[i]));
    blocks.push_back(ColumnBlock::over({DegreeRange::exact, n, k - 1, r - F.degrees()[i], F.weights()},
                                       [dtop](const KForm& f) { return wedge(f, dtop); }));
  }
  blocks.push_back(ColumnBlock::over({DegreeRange::exact, n, k - 1, r, F.weights()},
                                     [](const KForm& f) { return exterior_derivative(f); }));
  auto sol = graded_solve(omega, blocks, F.weights());
  if (!sol) return out;
  RelativeWitness w{sol->slots[F.q()], {}};
  for (std::size_t i = 0; i < F.q(); ++i) w.eta.push_back(sol->slots[i]);
  out.witness = std::move(w);
  return out;
}

namespace {

RelativeDecomposition decompose_rec(const KForm& omega, const PolyMap& F, const InfinityBasis& B,
                                    const FibrePoint& origin, const std::vector<KForm>& df) {
  const std::size_t n = F.n(), q = F.q();
  const int k = static_cast<int>(n - q);
  RelativeDecomposition out{std::vector<Polynomial>(B.forms.size(), Polynomial(q)), KForm(n, k - 1),
                            std::vector<KForm>(q, KForm(n, k - 1))};
  if (omega.is_zero()) return out;

  const WDegree deg = weighted_degree(omega, F.weights());
  FibreClass cls = fibre_class(omega, F, origin, B);
  for (std::size_t i = 0; i < B.forms.size(); ++i) out.a[i] = Polynomial::constant(q, cls.lambda[i]);
  out.primitive = cls.witness.primitive;

  // omega - sum lambda_i omega_i = dOmega + sum f_i eta_i; each eta_i is decomposed in turn
  // and f_i d(Omega_i) = d(f_i Omega_i) - (-1)^(k-1) Omega_i ^ df_i.
  const Rational sign = ((k - 1) % 2) ? Rational(-1) : Rational(1);
  for (std::size_t i = 0; i < q; ++i) {
    const KForm& eta = cls.witness.multiples[i];
    if (eta.is_zero()) continue;
    if (weighted_degree(eta, F.weights()) >= deg) throw InternalError("internal: relative recursion did not descend");
    RelativeDecomposition sub = decompose_rec(eta, F, B, origin, df);
    const Polynomial& fi = F.components()[i];
    Polynomial ti = Polynomial::variable(q, i);
    for (std::size_t j = 0; j < B.forms.size(); ++j) out.a[j] += ti * sub.a[j];
    out.primitive += fi * sub.primitive;
    for (std::size_t j = 0; j < q; ++j) out.eta[j] += fi * sub.eta[j];
    out.eta[i] -= sub.primitive * sign;
  }
  return out;
}

}  // namespace

RelativeDecomposition relative_decompose(const KForm& omega, const PolyMap& F, const InfinityBasis& B) {
  require_isolated_cia(F);
  if (omega.degree() != static_cast<int>(F.n() - F.q()) || omega.nvars() != F.n())
    throw Error("relative_decompose: expected an (n-q)-form");
  std::vector<KForm> df;
  for (const auto& f : F.components()) df.push_back(exterior_derivative(KForm(f)));
  return decompose_rec(omega, F, B, FibrePoint(F.q(), Rational(0)), df);
}

Polynomial compose(const Polynomial& a, const PolyMap& F) {
  return a.substitute(F.components());
}

std::optional<Polynomial> is_in_subalgebra(const Polynomial& R, const PolyMap& F) {
  const std::size_t n = F.n(), q = F.q();
  if (R.nvars() != n) throw Error("is_in_subalgebra: polynomial lives in the wrong ring");
  std::vector<int> weights = F.weights().values();
  for (long d : F.degrees()) weights.push_back(static_cast<int>(std::max(1L, d)));
  std::vector<Polynomial> gens;
  for (std::size_t j = 0; j < q; ++j)
    gens.push_back(F.components()[j].embed(n + q) - Polynomial::variable(n + q, n + j));
  std::vector<int> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<int>(i));
  GroebnerBasis G = elimination_basis(gens, Weights(weights), xs);

  Polynomial nf = G.normal_form(R.embed(n + q));
  Polynomial A(q);
  for (const auto& [e, c] : nf.terms()) {
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] != 0) return std::nullopt;
    A.add_term(Exponent(e.begin() + static_cast<std::ptrdiff_t>(n), e.end()), c);
  }
  return A;
}

DegreeBoundReport degree_bounds(const KForm& omega, const RelativeDecomposition& d, const PolyMap& F,
                                const InfinityBasis& B) {
  DegreeBoundReport rep;
  const WDegree deg = weighted_degree(omega, F.weights());
  for (std::size_t i = 0; i < d.a.size() && i < B.degrees.size(); ++i)
    rep.coefficients = rep.coefficients && within(weighted_degree(compose(d.a[i], F), F.weights()), deg, B.degrees[i]);
  rep.primitive = within(weighted_degree(d.primitive, F.weights()), deg);
  for (std::size_t j = 0; j < d.eta.size(); ++j)
    rep.eta = rep.eta && within(weighted_degree(d.eta[j], F.weights()), deg, F.degrees()[j]);
  return rep;
}

bool verify_decomposition(const KForm& omega, const FibreClass& c, const PolyMap& F, const InfinityBasis& B) {
  const std::size_t n = F.n();
  const int k = omega.degree();
  if (c.lambda.size() != B.forms.size() || c.witness.multiples.size() != F.q() || c.point.size() != F.q())
    return false;
  KForm total(n, k);
  for (std::size_t i = 0; i < B.forms.size(); ++i)
    if (c.lambda[i] != 0) total += B.forms[i] * c.lambda[i];
  auto g = shifted_components(F, c.point);
  total += apply_exact_witness(c.witness, g, k);
  if (total != omega) return false;
  const WDegree deg = weighted_degree(omega, F.weights());
  if (!within(weighted_degree(c.witness.primitive, F.weights()), deg)) return false;
  for (std::size_t i = 0; i < F.q(); ++i)
    if (!within(weighted_degree(c.witness.multiples[i], F.weights()), deg, F.degrees()[i])) return false;
  return true;
}

bool verify_decomposition(const KForm& omega, const RelativeDecomposition& d, const PolyMap& F,
                          const InfinityBasis& B) {
  const std::size_t n = F.n();
  const int k = omega.degree();
  if (d.a.size() != B.forms.size() || d.eta.size() != F.q()) return false;
  KForm total(n, k);
  for (std::size_t i = 0; i < B.forms.size(); ++i) {
    if (d.a[i].nvars() != F.q()) return false;
    Polynomial ai = compose(d.a[i], F);
    if (!ai.is_zero()) total += ai * B.forms[i];
  }
  if (!d.primitive.is_zero()) total += exterior_derivative(d.primitive);
  for (std::size_t j = 0; j < F.q(); ++j)
    if (!d.eta[j].is_zero()) total += wedge(d.eta[j], exterior_derivative(KForm(F.components()[j])));
  if (total != omega) return false;
  return degree_bounds(omega, d, F, B).all();
}

std::vector<KForm> closed_forms_on_fibre(const PolyMap& F, int k, const FibrePoint& y, long D) {
  const std::size_t n = F.n();
  auto space = monomial_basis({DegreeRange::at_most, n, k, D, F.weights()});
  GroebnerBasis G = fibre_ideal(F, y);
  FormCoordinates coords;
  std::vector<SparseVector> columns;
  for (const auto& b : space) {
    KForm test = wedge(exterior_derivative(b), F.volume());
    columns.push_back(coords.vectorize(test.map_coefficients([&](const Polynomial& c) { return G.normal_form(c); })));
  }
  std::vector<KForm> closed;
  for (const auto& v : kernel(columns)) {
    KForm f(n, k);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) f += space[i] * v[i];
    closed.push_back(std::move(f));
  }
  return closed;
}

VanishingReport verify_vanishing(const PolyMap& F, int k, const FibrePoint& y, long D) {
  check_point(F, y);
  if (k <= 0) throw PreconditionError("vanishing: k must be positive");
  auto report = is_complete_intersection_at_infinity(F);
  if (!report.complete_intersection) throw PreconditionError("not a complete intersection at infinity");
  if (report.dim_singular_locus >= static_cast<int>(F.n() - F.q()) - k)
    throw PreconditionError("vanishing: needs dim Sing < n - q - k");

  VanishingReport rep;
  rep.space_dimension = monomial_basis({DegreeRange::at_most, F.n(), k, D, F.weights()}).size();
  auto closed = closed_forms_on_fibre(F, k, y, D);
  rep.closed_dimension = closed.size();
  if (closed.empty()) return rep;
  auto g = shifted_components(F, y);
  auto blocks = fibre_exact_blocks(F, g, k, D);
  for (const auto& sol : bounded_solve_many(closed, blocks))
    if (sol) ++rep.exact_count;
  return rep;
}

}  // namespace fibera
