#pragma once

#include "fibera/fibre.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fibera {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// Where an expression starts inside a larger text, for error positions.
struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Polynomials and forms over named variables. Grammar: integers, a/b rationals,
/// identifiers, + - * ^, parentheses and d[v1,...,vk] atoms; * on forms is the wedge
/// product and ^ takes a 0-form to a nonnegative integer power.
KForm parse_form(std::string_view text, const std::vector<std::string>& vars, SourcePos at = {});
/// parse_form restricted to 0-forms.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars, SourcePos at = {});
/// "r1,...,rq"
FibrePoint parse_point(std::string_view text, std::size_t q, SourcePos at = {});

struct ProblemFile {
  std::vector<std::string> vars;
  std::vector<int> weights;
  std::vector<std::string> map_text;
  std::vector<Polynomial> map;
  std::map<std::string, KForm> forms;
  std::map<std::string, FibrePoint> points;

  PolyMap build() const { return PolyMap::build(map, Weights(weights)); }
};

/// Lines (or ';'-separated statements) `key = value`; `#` starts a comment.
/// Keys: vars, weights, map, form.NAME, point.NAME.
ProblemFile parse_problem(std::string_view text);

/// Printing follows the map's monomial order (largest term first) and reparses to
/// the same value.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars, const Weights& w);
std::string format_form(const KForm& f, const std::vector<std::string>& vars, const Weights& w);

/// t1, .., tq
std::vector<std::string> target_names(std::size_t q);

}  // namespace fibera
