#include "fibera/kform.hpp"

#include <algorithm>
#include <string>

namespace fibera {

namespace {

bool strictly_increasing(const IndexSet& s, std::size_t n) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || static_cast<std::size_t>(s[i]) >= n) return false;
    if (i > 0 && s[i - 1] >= s[i]) return false;
  }
  return true;
}

// Sign and merged set of dx_S ^ dx_T; sign 0 when S and T meet.
int merge_sign(const IndexSet& s, const IndexSet& t, IndexSet& out) {
  out.clear();
  out.reserve(s.size() + t.size());
  int inversions = 0;
  std::size_t i = 0, j = 0;
  while (i < s.size() && j < t.size()) {
    if (s[i] == t[j]) return 0;
    if (s[i] < t[j]) {
      out.push_back(s[i++]);
    } else {
      // t[j] passes the remaining elements of s
      inversions += static_cast<int>(s.size() - i);
      out.push_back(t[j++]);
    }
  }
  while (i < s.size()) out.push_back(s[i++]);
  while (j < t.size()) out.push_back(t[j++]);
  return (inversions % 2) ? -1 : 1;
}

}  // namespace

KForm::KForm(std::size_t n, int k) : n_(n), k_(k) {
  if (k < 0) throw Error("form degree must be nonnegative");
}

KForm::KForm(const Polynomial& p) : n_(p.nvars()), k_(0) {
  if (!p.is_zero()) coeffs_.emplace(IndexSet{}, p);
}

KForm KForm::term(const IndexSet& s, const Polynomial& c) {
  KForm r(c.nvars(), static_cast<int>(s.size()));
  r.add_term(s, c);
  return r;
}

KForm KForm::differential(std::size_t n, int i) {
  return term({i}, Polynomial::constant(n, 1));
}

Polynomial KForm::coefficient(const IndexSet& s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? Polynomial(n_) : it->second;
}

Polynomial KForm::as_polynomial() const {
  if (k_ != 0) throw Error("as_polynomial: not a 0-form");
  return coefficient({});
}

void KForm::add_term(const IndexSet& s, const Polynomial& c) {
  if (static_cast<int>(s.size()) != k_ || !strictly_increasing(s, n_))
    throw Error("index set does not name a basis " + std::to_string(k_) + "-form");
  if (c.nvars() != n_) throw Error("coefficient lives in the wrong ring");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

void KForm::check_compatible(const KForm& o) const {
  if (o.n_ != n_ || o.k_ != k_)
    throw Error("forms of different type: (" + std::to_string(n_) + "," + std::to_string(k_) + ") vs (" +
                std::to_string(o.n_) + "," + std::to_string(o.k_) + ")");
}

KForm& KForm::operator+=(const KForm& o) {
  check_compatible(o);
  for (const auto& [s, c] : o.coeffs_) add_term(s, c);
  return *this;
}

KForm& KForm::operator-=(const KForm& o) {
  check_compatible(o);
  for (const auto& [s, c] : o.coeffs_) add_term(s, -c);
  return *this;
}

KForm& KForm::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [s, p] : coeffs_) p *= c;
  return *this;
}

KForm operator*(const Polynomial& p, const KForm& a) {
  if (p.nvars() != a.n_) throw Error("coefficient lives in the wrong ring");
  KForm r(a.n_, a.k_);
  if (p.is_zero()) return r;
  for (const auto& [s, c] : a.coeffs_) r.add_term(s, p * c);
  return r;
}

KForm KForm::operator-() const {
  KForm r(*this);
  for (auto& [s, c] : r.coeffs_) c = -c;
  return r;
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.nvars() != b.nvars()) throw Error("wedge: forms on different spaces");
  KForm r(a.nvars(), a.degree() + b.degree());
  if (static_cast<std::size_t>(r.degree()) > r.nvars()) return r;
  IndexSet merged;
  for (const auto& [s, ca] : a.coeffs()) {
    for (const auto& [t, cb] : b.coeffs()) {
      int sign = merge_sign(s, t, merged);
      if (sign == 0) continue;
      Polynomial c = ca * cb;
      if (sign < 0) c = -c;
      r.add_term(merged, c);
    }
  }
  return r;
}

KForm exterior_derivative(const KForm& w) {
  KForm r(w.nvars(), w.degree() + 1);
  if (static_cast<std::size_t>(r.degree()) > r.nvars()) return r;
  IndexSet merged;
  for (const auto& [s, c] : w.coeffs()) {
    for (std::size_t i = 0; i < w.nvars(); ++i) {
      int sign = merge_sign({static_cast<int>(i)}, s, merged);
      if (sign == 0) continue;
      Polynomial dc = c.derivative(i);
      if (dc.is_zero()) continue;
      r.add_term(merged, sign > 0 ? dc : -dc);
    }
  }
  return r;
}

KForm euler_contraction(const KForm& w, const Weights& p) {
  if (p.size() != w.nvars()) throw Error("weights do not match the number of variables");
  if (w.degree() == 0) return KForm(w.nvars(), 0);
  KForm r(w.nvars(), w.degree() - 1);
  for (const auto& [s, c] : w.coeffs()) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      IndexSet rest;
      rest.reserve(s.size() - 1);
      for (std::size_t l = 0; l < s.size(); ++l)
        if (l != j) rest.push_back(s[l]);
      int i = s[j];
      Exponent e(w.nvars(), 0);
      e[i] = 1;
      Polynomial coeff = c.shift(e) * Rational(p[i]);
      r.add_term(rest, (j % 2) ? -coeff : coeff);
    }
  }
  return r;
}

KForm lie_derivative(const KForm& w, const Weights& p) {
  KForm a = exterior_derivative(euler_contraction(w, p));
  KForm b = euler_contraction(exterior_derivative(w), p);
  if (w.degree() == 0) return b;  // i_X of a 0-form vanishes
  return a + b;
}

KForm scaling_substitution(const KForm& w, const Weights& p) {
  if (p.size() != w.nvars()) throw Error("weights do not match the number of variables");
  const std::size_t n = w.nvars();
  KForm r(n + 1, w.degree());
  for (const auto& [s, c] : w.coeffs()) {
    long ds = index_weight(s, p);
    Polynomial scaled(n + 1);
    for (const auto& [e, v] : c.terms()) {
      Exponent f(e);
      f.push_back(static_cast<int>(weighted_degree(e, p) + ds));
      scaled.add_term(f, v);
    }
    r.add_term(s, scaled);
  }
  return r;
}

long index_weight(const IndexSet& s, const Weights& p) {
  long d = 0;
  for (int i : s) d += p[i];
  return d;
}

WDegree weighted_degree(const KForm& w, const Weights& p) {
  WDegree d;
  for (const auto& [s, c] : w.coeffs()) {
    WDegree dc = weighted_degree(c, p);
    d = std::max(d, WDegree(dc.value() + index_weight(s, p)));
  }
  return d;
}

bool is_weighted_homogeneous(const KForm& w, const Weights& p) {
  return homogeneous_components(w, p).size() <= 1;
}

KForm homogeneous_component(const KForm& w, const Weights& p, long r) {
  KForm h(w.nvars(), w.degree());
  for (const auto& [s, c] : w.coeffs()) h.add_term(s, homogeneous_component(c, p, r - index_weight(s, p)));
  return h;
}

KForm top_component(const KForm& w, const Weights& p) {
  if (w.is_zero()) throw Error("zero has no leading term");
  return homogeneous_component(w, p, weighted_degree(w, p).value());
}

std::map<long, KForm> homogeneous_components(const KForm& w, const Weights& p) {
  std::map<long, KForm> out;
  for (const auto& [s, c] : w.coeffs()) {
    long ds = index_weight(s, p);
    for (const auto& [e, v] : c.terms()) {
      long r = weighted_degree(e, p) + ds;
      auto it = out.try_emplace(r, w.nvars(), w.degree()).first;
      it->second.add_term(s, Polynomial::monomial(e, v));
    }
  }
  return out;
}

KForm wedge_all(std::size_t n, const std::vector<KForm>& forms) {
  KForm r(Polynomial::constant(n, 1));
  for (const auto& f : forms) r = wedge(r, f);
  return r;
}

}  // namespace fibera
