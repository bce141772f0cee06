#include "fibera/groebner.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <set>

namespace fibera {

MonomialOrder MonomialOrder::weighted_revlex(const Weights& w) {
  Block b;
  for (std::size_t i = 0; i < w.size(); ++i) {
    b.vars.push_back(static_cast<int>(i));
    b.weights.push_back(w[i]);
  }
  return MonomialOrder(w.size(), {std::move(b)});
}

MonomialOrder MonomialOrder::elimination(const Weights& w, const std::vector<int>& eliminated) {
  Block elim, kept;
  std::vector<bool> is_elim(w.size(), false);
  for (int v : eliminated) {
    if (v < 0 || static_cast<std::size_t>(v) >= w.size()) throw Error("elimination: variable index out of range");
    is_elim[v] = true;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    Block& b = is_elim[i] ? elim : kept;
    b.vars.push_back(static_cast<int>(i));
    b.weights.push_back(w[i]);
  }
  std::vector<Block> blocks;
  if (!elim.vars.empty()) blocks.push_back(std::move(elim));
  if (!kept.vars.empty()) blocks.push_back(std::move(kept));
  return MonomialOrder(w.size(), std::move(blocks));
}

std::strong_ordering MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  for (const Block& blk : blocks_) {
    long da = 0, db = 0;
    for (std::size_t i = 0; i < blk.vars.size(); ++i) {
      da += static_cast<long>(a[blk.vars[i]]) * blk.weights[i];
      db += static_cast<long>(b[blk.vars[i]]) * blk.weights[i];
    }
    if (da != db) return da <=> db;
    for (std::size_t i = blk.vars.size(); i-- > 0;) {
      int ea = a[blk.vars[i]], eb = b[blk.vars[i]];
      if (ea != eb) return eb <=> ea;  // smaller exponent in the last variable wins
    }
  }
  return std::strong_ordering::equal;
}

namespace {

struct Descending {
  const MonomialOrder* order;
  bool operator()(const Exponent& a, const Exponent& b) const { return order->compare(a, b) > 0; }
};

using SortedTerms = std::map<Exponent, Rational, Descending>;

SortedTerms sorted(const Polynomial& p, const MonomialOrder& order) {
  SortedTerms s(Descending{&order});
  for (const auto& [e, c] : p.terms()) s.emplace(e, c);
  return s;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponent quotient(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// p -= c * x^m * g
void subtract_multiple(SortedTerms& p, const Rational& c, const Exponent& m, const Polynomial& g) {
  Exponent e(m.size());
  for (const auto& [eg, cg] : g.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = eg[i] + m[i];
    auto [it, inserted] = p.try_emplace(e, -c * cg);
    if (!inserted) {
      it->second -= c * cg;
      if (it->second == 0) p.erase(it);
    }
  }
}

Polynomial to_polynomial(const SortedTerms& s, std::size_t nvars) {
  Polynomial p(nvars);
  for (const auto& [e, c] : s) p.add_term(e, c);
  return p;
}

Polynomial make_monic(const Polynomial& p, const MonomialOrder& order) {
  return p * (Rational(1) / leading_coefficient(p, order));
}

struct Reducer {
  const MonomialOrder& order;
  const std::vector<Polynomial>& gens;
  const std::vector<Exponent>& leads;
  const std::vector<Rational>& lcs;

  // Full reduction; cofactors are recorded when `cof` is non-null.
  Polynomial reduce(const Polynomial& p, std::vector<Polynomial>* cof) const {
    SortedTerms work = sorted(p, order);
    Polynomial rem(order.nvars());
    if (cof) cof->assign(gens.size(), Polynomial(order.nvars()));
    while (!work.empty()) {
      auto lead = work.begin();
      std::size_t k = 0;
      while (k < gens.size() && !divides(leads[k], lead->first)) ++k;
      if (k == gens.size()) {
        rem.add_term(lead->first, lead->second);
        work.erase(lead);
        continue;
      }
      Rational c = lead->second / lcs[k];
      Exponent m = quotient(lead->first, leads[k]);
      if (cof) (*cof)[k].add_term(m, c);
      subtract_multiple(work, c, m, gens[k]);
    }
    return rem;
  }
};

}  // namespace

Exponent leading_monomial(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw Error("zero has no leading monomial");
  const Exponent* best = nullptr;
  for (const auto& [e, c] : p.terms())
    if (!best || order.compare(e, *best) > 0) best = &e;
  return *best;
}

Rational leading_coefficient(const Polynomial& p, const MonomialOrder& order) {
  return p.coefficient(leading_monomial(p, order));
}

GroebnerBasis::GroebnerBasis(MonomialOrder order, std::vector<Polynomial> gens)
    : order_(std::move(order)), gens_(std::move(gens)) {
  for (const auto& g : gens_) leads_.push_back(leading_monomial(g, order_));
}

bool GroebnerBasis::is_unit() const {
  return gens_.size() == 1 && gens_[0].is_constant();
}

bool GroebnerBasis::is_standard(const Exponent& e) const {
  for (const auto& l : leads_)
    if (divides(l, e)) return false;
  return true;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const {
  if (p.nvars() != nvars()) throw Error("normal_form: polynomial lives in the wrong ring");
  std::vector<Rational> lcs(gens_.size(), Rational(1));
  return Reducer{order_, gens_, leads_, lcs}.reduce(p, nullptr);
}

GroebnerBasis::Division GroebnerBasis::divide(const Polynomial& p) const {
  if (p.nvars() != nvars()) throw Error("divide: polynomial lives in the wrong ring");
  std::vector<Rational> lcs(gens_.size(), Rational(1));
  Division d;
  d.remainder = Reducer{order_, gens_, leads_, lcs}.reduce(p, &d.cofactors);
  return d;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& input, const MonomialOrder& order) {
  const std::size_t n = order.nvars();
  std::vector<Polynomial> basis;
  std::vector<Exponent> leads;
  std::vector<Rational> lcs;

  struct Pair {
    std::size_t i, j;
    Exponent lcm;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add = [&](const Polynomial& g) {
    Polynomial m = make_monic(g, order);
    std::size_t j = basis.size();
    leads.push_back(leading_monomial(m, order));
    lcs.push_back(1);
    basis.push_back(std::move(m));
    for (std::size_t i = 0; i < j; ++i) {
      pairs.push_back({i, j, lcm(leads[i], leads[j])});
      pending.insert({i, j});
    }
  };

  for (const auto& g : input) {
    if (g.nvars() != n) throw Error("buchberger: generator lives in the wrong ring");
    if (!g.is_zero()) add(g);
  }

  while (!pairs.empty()) {
    // normal selection strategy: smallest lcm first
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      auto c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair pr = *best;
    pairs.erase(best);
    pending.erase({pr.i, pr.j});

    if (coprime(leads[pr.i], leads[pr.j])) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || !divides(leads[k], pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      chain = !pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k));
    }
    if (chain) continue;

    SortedTerms s(Descending{&order});
    subtract_multiple(s, -1, quotient(pr.lcm, leads[pr.i]), basis[pr.i]);
    subtract_multiple(s, 1, quotient(pr.lcm, leads[pr.j]), basis[pr.j]);
    Polynomial r = Reducer{order, basis, leads, lcs}.reduce(to_polynomial(s, n), nullptr);
    if (!r.is_zero()) add(r);
  }

  // minimal basis
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || !divides(leads[j], leads[i])) continue;
      redundant = leads[j] != leads[i] || j < i;
    }
    if (!redundant) keep.push_back(i);
  }
  std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) { return order.less(leads[a], leads[b]); });

  std::vector<Polynomial> minimal;
  std::vector<Exponent> min_leads;
  for (std::size_t i : keep) {
    minimal.push_back(basis[i]);
    min_leads.push_back(leads[i]);
  }

  // interreduce tails
  std::vector<Polynomial> reduced;
  std::vector<Rational> ones(minimal.empty() ? 0 : minimal.size() - 1, Rational(1));
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    std::vector<Exponent> other_leads;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j == i) continue;
      others.push_back(minimal[j]);
      other_leads.push_back(min_leads[j]);
    }
    Polynomial tail = minimal[i];
    tail.add_term(min_leads[i], -1);
    Polynomial r = Reducer{order, others, other_leads, ones}.reduce(tail, nullptr);
    r.add_term(min_leads[i], 1);
    reduced.push_back(std::move(r));
  }
  return GroebnerBasis(order, std::move(reduced));
}

int ideal_dimension(const GroebnerBasis& g) {
  if (g.is_unit()) return -1;
  const std::size_t n = g.nvars();
  std::vector<unsigned> supports;
  for (const auto& l : g.leading_monomials()) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (l[i] > 0) mask |= 1u << i;
    supports.push_back(mask);
  }
  int best = 0;
  for (unsigned s = 0; s < (1u << n); ++s) {
    int size = __builtin_popcount(s);
    if (size <= best) continue;
    bool independent = true;
    for (unsigned m : supports)
      if ((m & ~s) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return best;
}

std::vector<Exponent> quotient_vector_basis(const GroebnerBasis& g) {
  int dim = ideal_dimension(g);
  if (dim > 0) throw PreconditionError("quotient is infinite-dimensional");
  std::vector<Exponent> out;
  if (dim < 0) return out;
  const std::size_t n = g.nvars();
  std::set<Exponent> seen{Exponent(n, 0)};
  std::vector<Exponent> frontier{Exponent(n, 0)};
  while (!frontier.empty()) {
    Exponent e = frontier.back();
    frontier.pop_back();
    out.push_back(e);
    for (std::size_t i = 0; i < n; ++i) {
      Exponent next = e;
      ++next[i];
      if (!g.is_standard(next) || !seen.insert(next).second) continue;
      frontier.push_back(next);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) { return g.order().less(a, b); });
  return out;
}

GroebnerBasis elimination_basis(const std::vector<Polynomial>& gens, const Weights& w,
                                const std::vector<int>& eliminated) {
  return buchberger(gens, MonomialOrder::elimination(w, eliminated));
}

std::vector<Polynomial> elimination_ideal(const GroebnerBasis& g, const std::vector<int>& eliminated) {
  std::vector<Polynomial> out;
  for (const auto& p : g.generators()) {
    bool free = true;
    for (const auto& [e, c] : p.terms())
      for (int v : eliminated)
        if (e[v] > 0) free = false;
    if (free) out.push_back(p);
  }
  return out;
}

}  // namespace fibera
