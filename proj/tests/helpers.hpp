#pragma once

#include "fibera/problem.hpp"

#include <string>
#include <vector>

namespace testing {

using namespace fibera;

inline const std::vector<std::string>& xyz() {
  static const std::vector<std::string> v{"x", "y", "z"};
  return v;
}
inline const std::vector<std::string>& xy() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

inline Polynomial poly(const std::string& s, const std::vector<std::string>& vars = xyz()) {
  return parse_polynomial(s, vars);
}
inline KForm form(const std::string& s, const std::vector<std::string>& vars = xyz()) { return parse_form(s, vars); }

inline PolyMap make_map(const std::vector<std::string>& comps, const std::vector<std::string>& vars,
                        const std::vector<int>& w) {
  std::vector<Polynomial> f;
  for (const auto& c : comps) f.push_back(parse_polynomial(c, vars));
  return PolyMap::build(f, Weights(w));
}

/// (xz, x^2 + y^2 - z^2) on C^3
inline PolyMap conic_pair() { return make_map({"x*z", "x^2 + y^2 - z^2"}, xyz(), {1, 1, 1}); }
inline PolyMap sphere() { return make_map({"x^2 + y^2 + z^2"}, xyz(), {1, 1, 1}); }

/// The five 1-forms z dx - x dz, y dz - z dy, x dy - y dx, x(y dz - z dy), z(z dx - x dz).
inline std::vector<KForm> conic_pair_forms() {
  return {form("z*d[x] - x*d[z]"), form("y*d[z] - z*d[y]"), form("x*d[y] - y*d[x]"),
          form("x*(y*d[z] - z*d[y])"), form("z*(z*d[x] - x*d[z])")};
}

inline FibrePoint pt(std::initializer_list<int> v) {
  FibrePoint y;
  for (int a : v) y.push_back(Rational(a));
  return y;
}

}  // namespace testing
