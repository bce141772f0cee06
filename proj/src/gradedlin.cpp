#include "fibera/gradedlin.hpp"

#include "fibera/groebner.hpp"

#include <algorithm>

namespace fibera {

namespace {

struct Row {
  std::vector<std::pair<std::size_t, Integer>> entries;  // sorted by column
  std::size_t stamp = 0;                                // elimination step the values belong to
  std::size_t origin = 0;
};

struct Echelon {
  std::size_t unknowns = 0;
  std::vector<std::size_t> pivot_cols;
  std::vector<Row> pivot_rows;
  std::vector<Row> rest;  // zero on every unknown column
};

std::vector<Row> integer_rows(const std::vector<SparseVector>& columns, const std::vector<SparseVector>& rhs) {
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> by_row;
  auto scatter = [&](const std::vector<SparseVector>& cols, std::size_t offset) {
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [r, v] : cols[c])
        if (v != 0) by_row[r].emplace_back(c + offset, v);
  };
  scatter(columns, 0);
  scatter(rhs, columns.size());

  std::vector<Row> rows;
  rows.reserve(by_row.size());
  for (auto& [r, entries] : by_row) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Integer scale = 1;
    for (const auto& [c, v] : entries) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
    Row row;
    row.origin = rows.size();
    for (const auto& [c, v] : entries) {
      Integer x = scale / v.get_den();
      x *= v.get_num();
      row.entries.emplace_back(c, std::move(x));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void rescale(Row& row, const std::vector<Integer>& pivots, std::size_t step) {
  if (row.stamp == step) return;
  const Integer& num = pivots[step];
  const Integer& den = pivots[row.stamp];
  for (auto& [c, v] : row.entries) {
    v *= num;
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), den.get_mpz_t());
  }
  row.stamp = step;
}

// row <- (p * row - a * pivot) / prev, where both rows lead with the pivot column.
void eliminate(Row& row, const Row& pivot, const Integer& prev) {
  const Integer p = pivot.entries.front().second;
  const Integer a = row.entries.front().second;
  std::vector<std::pair<std::size_t, Integer>> out;
  out.reserve(row.entries.size() + pivot.entries.size());
  std::size_t i = 1, j = 1;
  Integer t;
  while (i < row.entries.size() || j < pivot.entries.size()) {
    std::size_t ci = i < row.entries.size() ? row.entries[i].first : SIZE_MAX;
    std::size_t cj = j < pivot.entries.size() ? pivot.entries[j].first : SIZE_MAX;
    if (ci < cj) {
      t = p * row.entries[i].second;
      ++i;
      out.emplace_back(ci, t);
    } else if (cj < ci) {
      t = -a * pivot.entries[j].second;
      ++j;
      out.emplace_back(cj, t);
    } else {
      t = p * row.entries[i].second - a * pivot.entries[j].second;
      ++i;
      ++j;
      if (t != 0) out.emplace_back(ci, t);
    }
  }
  for (auto& [c, v] : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
  row.entries = std::move(out);
}

Echelon echelonize(std::vector<Row> rows, std::size_t unknowns) {
  Echelon ech;
  ech.unknowns = unknowns;
  std::vector<Integer> pivots{Integer(1)};
  std::vector<Row> active;
  for (auto& r : rows)
    if (!r.entries.empty()) active.push_back(std::move(r));

  for (std::size_t col = 0; col < unknowns && !active.empty(); ++col) {
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const Row& r = active[i];
      if (r.entries.empty() || r.entries.front().first != col) continue;
      if (best == SIZE_MAX || r.entries.size() < active[best].entries.size() ||
          (r.entries.size() == active[best].entries.size() && r.origin < active[best].origin))
        best = i;
    }
    if (best == SIZE_MAX) continue;

    const std::size_t step = pivots.size() - 1;
    Row pivot = std::move(active[best]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
    rescale(pivot, pivots, step);

    std::vector<Row> next;
    next.reserve(active.size());
    for (auto& r : active) {
      if (r.entries.front().first == col) {
        rescale(r, pivots, step);
        eliminate(r, pivot, pivots[step]);
        r.stamp = step + 1;
        if (r.entries.empty()) continue;
      }
      next.push_back(std::move(r));
    }
    active = std::move(next);
    pivots.push_back(pivot.entries.front().second);
    ech.pivot_cols.push_back(col);
    ech.pivot_rows.push_back(std::move(pivot));
  }
  ech.rest = std::move(active);
  return ech;
}

// Back substitution with the right-hand side in column `rhs_col` (SIZE_MAX for none)
// and the free unknowns preset in x.
void back_substitute(const Echelon& ech, std::size_t rhs_col, std::vector<Rational>& x) {
  for (std::size_t k = ech.pivot_rows.size(); k-- > 0;) {
    const Row& row = ech.pivot_rows[k];
    Rational sum = 0;
    for (std::size_t e = 1; e < row.entries.size(); ++e) {
      const auto& [c, v] = row.entries[e];
      if (c < ech.unknowns) {
        if (x[c] != 0) sum -= Rational(v) * x[c];
      } else if (c == rhs_col) {
        sum += Rational(v);
      }
    }
    sum /= Rational(row.entries.front().second);
    x[ech.pivot_cols[k]] = sum;
  }
}

}  // namespace

std::vector<std::optional<std::vector<Rational>>> solve_columns(const std::vector<SparseVector>& columns,
                                                                const std::vector<SparseVector>& rhs) {
  const std::size_t m = columns.size();
  Echelon ech = echelonize(integer_rows(columns, rhs), m);
  std::vector<bool> inconsistent(rhs.size(), false);
  for (const Row& r : ech.rest)
    for (const auto& [c, v] : r.entries)
      if (c >= m) inconsistent[c - m] = true;

  std::vector<std::optional<std::vector<Rational>>> out;
  out.reserve(rhs.size());
  for (std::size_t j = 0; j < rhs.size(); ++j) {
    if (inconsistent[j]) {
      out.emplace_back(std::nullopt);
      continue;
    }
    std::vector<Rational> x(m, Rational(0));
    back_substitute(ech, m + j, x);
    out.emplace_back(std::move(x));
  }
  return out;
}

std::size_t rank(const std::vector<SparseVector>& columns) {
  return echelonize(integer_rows(columns, {}), columns.size()).pivot_cols.size();
}

std::vector<std::vector<Rational>> kernel(const std::vector<SparseVector>& columns) {
  const std::size_t m = columns.size();
  Echelon ech = echelonize(integer_rows(columns, {}), m);
  std::vector<bool> is_pivot(m, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(m, Rational(0));
    x[f] = 1;
    back_substitute(ech, SIZE_MAX, x);
    basis.push_back(std::move(x));
  }
  return basis;
}

// ---------------------------------------------------------------------------

namespace {

void exponents_up_to(const Weights& w, std::size_t i, long budget, Exponent& cur, std::vector<Exponent>& out) {
  if (i == w.size()) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; static_cast<long>(a) * w[i] <= budget; ++a) {
    cur[i] = a;
    exponents_up_to(w, i + 1, budget - static_cast<long>(a) * w[i], cur, out);
  }
  cur[i] = 0;
}

void subsets(std::size_t n, int k, std::size_t start, IndexSet& cur, std::vector<IndexSet>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(static_cast<int>(i));
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<KForm> monomial_basis(const GradedSpaceSpec& spec) {
  if (spec.w.size() != spec.n) throw Error("monomial_basis: weights do not match n");
  std::vector<KForm> out;
  if (spec.k < 0 || static_cast<std::size_t>(spec.k) > spec.n || spec.r < 0) return out;

  std::vector<IndexSet> sets;
  IndexSet cur;
  subsets(spec.n, spec.k, 0, cur, sets);
  const MonomialOrder order = MonomialOrder::weighted_revlex(spec.w);

  struct Item {
    long degree;
    std::size_t set;
    Exponent e;
  };
  std::vector<Item> items;
  for (std::size_t si = 0; si < sets.size(); ++si) {
    long budget = spec.r - index_weight(sets[si], spec.w);
    if (budget < 0) continue;
    std::vector<Exponent> exps;
    Exponent e(spec.n, 0);
    exponents_up_to(spec.w, 0, budget, e, exps);
    for (auto& x : exps) {
      long d = weighted_degree(x, spec.w) + index_weight(sets[si], spec.w);
      if (spec.range == DegreeRange::exact && d != spec.r) continue;
      items.push_back({d, si, std::move(x)});
    }
  }
  std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.set != b.set) return a.set < b.set;
    return order.less(a.e, b.e);
  });
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(KForm::term(sets[it.set], Polynomial::monomial(it.e)));
  return out;
}

ColumnBlock ColumnBlock::over(const GradedSpaceSpec& spec, LinearMap op) {
  return ColumnBlock{spec.n, spec.k, monomial_basis(spec), std::move(op)};
}

ColumnBlock ColumnBlock::fixed(std::size_t n, int k, std::vector<KForm> forms) {
  return ColumnBlock{n, k, std::move(forms), [](const KForm& f) { return f; }};
}

std::size_t FormCoordinates::index(const IndexSet& s, const Exponent& e) {
  return ids_.try_emplace({s, e}, ids_.size()).first->second;
}

SparseVector FormCoordinates::vectorize(const KForm& f) {
  SparseVector v;
  for (const auto& [s, c] : f.coeffs())
    for (const auto& [e, x] : c.terms()) v[index(s, e)] = x;
  return v;
}

KForm reconstruct(const std::vector<ColumnBlock>& blocks, const LinearWitness& w, std::size_t n, int k) {
  KForm total(n, k);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (w.slots[b].is_zero()) continue;
    total += blocks[b].op(w.slots[b]);
  }
  return total;
}

namespace {

std::vector<std::optional<LinearWitness>> solve_impl(const std::vector<KForm>& targets,
                                                     const std::vector<ColumnBlock>& blocks, const Weights* graded) {
  FormCoordinates coords;
  std::vector<SparseVector> columns;
  std::vector<std::pair<std::size_t, std::size_t>> owner;  // (block, source)
  std::optional<long> degree;
  if (graded) {
    for (const auto& t : targets) {
      if (t.is_zero()) continue;
      auto comps = homogeneous_components(t, *graded);
      if (comps.size() != 1) throw Error("graded_solve: target is not weighted homogeneous");
      if (targets.size() == 1) degree = comps.begin()->first;
    }
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t s = 0; s < blocks[b].sources.size(); ++s) {
      KForm image = blocks[b].op(blocks[b].sources[s]);
      if (graded && degree && !image.is_zero()) {
        auto comps = homogeneous_components(image, *graded);
        if (comps.size() != 1 || comps.begin()->first != *degree)
          throw Error("graded_solve: column operator does not map into the target's graded piece");
      }
      for (const auto& t : targets)
        if (!image.is_zero() && (image.nvars() != t.nvars() || image.degree() != t.degree()))
          throw Error("solve: column image and target are forms of different type");
      columns.push_back(coords.vectorize(image));
      owner.emplace_back(b, s);
    }
  }
  std::vector<SparseVector> rhs;
  for (const auto& t : targets) rhs.push_back(coords.vectorize(t));

  auto solutions = solve_columns(columns, rhs);
  std::vector<std::optional<LinearWitness>> out;
  for (auto& sol : solutions) {
    if (!sol) {
      out.emplace_back(std::nullopt);
      continue;
    }
    LinearWitness w;
    for (const auto& blk : blocks) {
      w.coefficients.emplace_back(blk.sources.size(), Rational(0));
      w.slots.emplace_back(blk.n, blk.k);
    }
    for (std::size_t c = 0; c < sol->size(); ++c) {
      const auto& [b, s] = owner[c];
      const Rational& v = (*sol)[c];
      w.coefficients[b][s] = v;
      if (v != 0) w.slots[b] += blocks[b].sources[s] * v;
    }
    out.emplace_back(std::move(w));
  }
  return out;
}

}  // namespace

std::optional<LinearWitness> graded_solve(const KForm& target, const std::vector<ColumnBlock>& blocks,
                                          const Weights& w) {
  return solve_impl({target}, blocks, &w).front();
}

std::optional<LinearWitness> bounded_solve(const KForm& target, const std::vector<ColumnBlock>& blocks) {
  return solve_impl({target}, blocks, nullptr).front();
}

std::vector<std::optional<LinearWitness>> bounded_solve_many(const std::vector<KForm>& targets,
                                                             const std::vector<ColumnBlock>& blocks) {
  return solve_impl(targets, blocks, nullptr);
}

}  // namespace fibera
