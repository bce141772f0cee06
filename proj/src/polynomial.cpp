#include "fibera/polynomial.hpp"

#include <string>

namespace fibera {

Weights::Weights(std::vector<int> p) : p_(std::move(p)) {
  if (p_.empty()) throw Error("weights: need at least one variable");
  for (int v : p_)
    if (v < 1) throw Error("weights: every weight must be >= 1, got " + std::to_string(v));
}

long WDegree::value() const {
  if (!value_) throw Error("weighted degree of zero is minus infinity");
  return *value_;
}

long weighted_degree(const Exponent& e, const Weights& w) {
  long d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * w[i];
  return d;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw Error("variable index out of range");
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponent e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int a : terms_.begin()->first)
    if (a != 0) return false;
  return true;
}

Rational Polynomial::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw Error("exponent length does not match the ring");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (o.nvars_ != nvars_)
    throw Error("polynomials live in different rings (" + std::to_string(nvars_) + " vs " +
                std::to_string(o.nvars_) + " variables)");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  Polynomial r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent d = e;
    --d[i];
    r.add_term(d, c * e[i]);
  }
  return r;
}

Polynomial Polynomial::shift(const Exponent& m) const {
  if (m.size() != nvars_) throw Error("exponent length does not match the ring");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent s = e;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += m[i];
    r.terms_.emplace_hint(r.terms_.end(), std::move(s), c);
  }
  return r;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (images.size() != nvars_) throw Error("substitute: need one image per variable");
  std::size_t target = images.empty() ? 0 : images[0].nvars();
  Polynomial r(target);
  // cache powers per variable
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, 1));
      while (pw.size() <= static_cast<std::size_t>(e[i])) pw.push_back(pw.back() * images[i]);
      term = term * pw[e[i]];
    }
    r += term;
  }
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw Error("evaluate: point has wrong length");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::embed(std::size_t nvars, std::size_t offset) const {
  if (offset + nvars_ > nvars) throw Error("embed: target ring too small");
  Polynomial r(nvars);
  for (const auto& [e, c] : terms_) {
    Exponent s(nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) s[i + offset] = e[i];
    r.add_term(s, c);
  }
  return r;
}

WDegree weighted_degree(const Polynomial& f, const Weights& w) {
  if (f.nvars() != w.size()) throw Error("weights do not match the number of variables");
  WDegree d;
  for (const auto& [e, c] : f.terms()) d = std::max(d, WDegree(weighted_degree(e, w)));
  return d;
}

bool is_weighted_homogeneous(const Polynomial& f, const Weights& w) {
  if (f.is_zero()) return true;
  long d = weighted_degree(f.terms().begin()->first, w);
  for (const auto& [e, c] : f.terms())
    if (weighted_degree(e, w) != d) return false;
  return true;
}

Polynomial homogeneous_component(const Polynomial& f, const Weights& w, long r) {
  Polynomial h(f.nvars());
  for (const auto& [e, c] : f.terms())
    if (weighted_degree(e, w) == r) h.add_term(e, c);
  return h;
}

Polynomial top_component(const Polynomial& f, const Weights& w) {
  if (f.is_zero()) throw Error("zero has no leading term");
  return homogeneous_component(f, w, weighted_degree(f, w).value());
}

}  // namespace fibera
