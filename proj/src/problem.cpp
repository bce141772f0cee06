#include "fibera/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <tuple>

namespace fibera {

ParseError::ParseError(int line, int column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

SourcePos advance(SourcePos p, std::string_view text, std::size_t upto) {
  for (std::size_t i = 0; i < upto && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

constexpr long kMaxExponent = 1000;

class ExprParser {
 public:
  ExprParser(std::string_view s, const std::vector<std::string>& vars, SourcePos at) : s_(s), vars_(vars), at_(at) {}

  KForm parse() {
    KForm v = expr();
    skip();
    if (i_ < s_.size()) fail(i_, std::string("unexpected '") + s_[i_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    SourcePos p = advance(at_, s_, at);
    throw ParseError(p.line, p.column, msg);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) {
      if (i_ >= s_.size()) fail(i_, std::string("expected '") + c + "' before end of expression");
      fail(i_, std::string("expected '") + c + "'");
    }
    ++i_;
  }

  std::size_t n() const { return vars_.size(); }

  KForm add(KForm a, const KForm& b, bool minus, std::size_t at) {
    if (a.degree() != b.degree()) {
      if (a.is_zero() && a.degree() == 0) return minus ? -b : b;
      if (b.is_zero() && b.degree() == 0) return a;
      fail(at, "cannot add forms of degree " + std::to_string(a.degree()) + " and " + std::to_string(b.degree()));
    }
    return minus ? a -= b : a += b;
  }

  KForm expr() {
    KForm v = term();
    for (;;) {
      skip();
      if (i_ >= s_.size() || (s_[i_] != '+' && s_[i_] != '-')) return v;
      std::size_t at = i_;
      bool minus = s_[i_++] == '-';
      v = add(std::move(v), term(), minus, at);
    }
  }

  KForm term() {
    KForm v = unary();
    while (peek('*')) {
      ++i_;
      KForm rhs = unary();
      v = wedge(v, rhs);
    }
    return v;
  }

  KForm unary() {
    skip();
    if (peek('-')) {
      ++i_;
      return -unary();
    }
    if (peek('+')) {
      ++i_;
      return unary();
    }
    return power();
  }

  KForm power() {
    skip();
    std::size_t at = i_;
    KForm base = atom();
    if (!peek('^')) return base;
    ++i_;
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && is_digit(s_[i_])) ++i_;
    if (start == i_) fail(start, "expected a nonnegative integer exponent");
    long e = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + i_, e);
    if (ec != std::errc() || e > kMaxExponent) fail(start, "exponent too large");
    if (base.degree() != 0) fail(at, "only 0-forms can be raised to a power");
    return KForm(base.as_polynomial().pow(static_cast<unsigned>(e)));
  }

  std::string identifier() {
    std::size_t start = i_;
    while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  int variable_index(const std::string& name, std::size_t at) {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) fail(at, "unknown variable '" + name + "'");
    return static_cast<int>(it - vars_.begin());
  }

  KForm atom() {
    skip();
    if (i_ >= s_.size()) fail(i_, "unexpected end of expression");
    const std::size_t at = i_;
    char c = s_[i_];
    if (is_digit(c)) {
      while (i_ < s_.size() && is_digit(s_[i_])) ++i_;
      std::size_t end = i_;
      if (peek('/')) {
        ++i_;
        skip();
        std::size_t den = i_;
        while (i_ < s_.size() && is_digit(s_[i_])) ++i_;
        if (den == i_) fail(den, "division is only allowed between integer literals");
        end = i_;
      }
      std::string lit;
      for (std::size_t j = at; j < end; ++j)
        if (!std::isspace(static_cast<unsigned char>(s_[j]))) lit += s_[j];
      Rational r;
      try {
        r = parse_rational(lit);
      } catch (const Error& e) {
        fail(at, e.what());
      }
      return KForm(Polynomial::constant(n(), r));
    }
    if (c == '(') {
      ++i_;
      KForm v = expr();
      expect(')');
      return v;
    }
    if (ident_start(c)) {
      std::string name = identifier();
      if (name == "d" && peek('[')) {
        ++i_;
        std::vector<KForm> factors;
        if (!peek(']')) {
          for (;;) {
            skip();
            std::size_t vat = i_;
            if (i_ >= s_.size() || !ident_start(s_[i_])) fail(vat, "expected a variable name");
            factors.push_back(KForm::differential(n(), variable_index(identifier(), vat)));
            if (peek(',')) {
              ++i_;
              continue;
            }
            break;
          }
        }
        expect(']');
        return wedge_all(n(), factors);
      }
      return KForm(Polynomial::variable(n(), variable_index(name, at)));
    }
    fail(at, std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  SourcePos at_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Problem files
// ---------------------------------------------------------------------------

struct Located {
  std::string text;
  std::size_t offset;  // into the whole file
};

class FileReader {
 public:
  explicit FileReader(std::string_view text) : text_(text) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') line_starts_.push_back(i + 1);
  }

  SourcePos pos(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return {static_cast<int>(line), static_cast<int>(offset - line_starts_[line - 1]) + 1};
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& msg) const {
    SourcePos p = pos(offset);
    throw ParseError(p.line, p.column, msg);
  }

  // statements separated by newlines or ';' outside quotes and brackets; comments dropped
  std::vector<Located> statements() const {
    std::vector<Located> out;
    std::string cur;
    std::size_t start = 0;
    bool quoted = false, comment = false;
    std::size_t quote_start = 0;
    int depth = 0;
    auto flush = [&](std::size_t next) {
      if (!trim(cur).text.empty()) {
        Located t = trim(cur);
        out.push_back({t.text, start + t.offset});
      }
      cur.clear();
      start = next;
    };
    for (std::size_t i = 0; i < text_.size(); ++i) {
      char c = text_[i];
      if (comment) {
        if (c == '\n') {
          comment = false;
          if (depth == 0) flush(i + 1);
          else cur += ' ';
        } else {
          cur += ' ';
        }
        continue;
      }
      if (quoted) {
        if (c == '\n') fail(quote_start, "unterminated string");
        if (c == '"') quoted = false;
        cur += c;
        continue;
      }
      if (c == '#') {
        comment = true;
        cur += ' ';
        continue;
      }
      if (c == '"') {
        quoted = true;
        quote_start = i;
      }
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if ((c == '\n' || c == ';') && depth <= 0) {
        if (depth < 0) fail(i, "unbalanced ']'");
        flush(i + 1);
        continue;
      }
      cur += c;
    }
    if (quoted) fail(quote_start, "unterminated string");
    if (depth > 0) fail(text_.size(), "missing ']'");
    flush(text_.size());
    return out;
  }

  static Located trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return {std::string(s.substr(b, e - b)), b};
  }

  // strips one pair of double quotes
  Located unquote(const Located& v) const {
    if (v.text.size() >= 1 && v.text.front() == '"') {
      if (v.text.size() < 2 || v.text.back() != '"') fail(v.offset, "unterminated string");
      return {v.text.substr(1, v.text.size() - 2), v.offset + 1};
    }
    return v;
  }

  // "[a, b, ...]" -> items, split at top-level commas
  std::vector<Located> list(const Located& v) const {
    if (v.text.empty() || v.text.front() != '[') fail(v.offset, "expected '['");
    if (v.text.back() != ']') fail(v.offset + v.text.size(), "expected ']'");
    std::vector<Located> items;
    std::string_view body(v.text);
    body = body.substr(1, body.size() - 2);
    std::size_t start = 0;
    int depth = 0;
    bool quoted = false;
    auto push = [&](std::size_t end) {
      Located t = trim(body.substr(start, end - start));
      if (t.text.empty()) fail(v.offset + 1 + start, "empty list item");
      items.push_back({t.text, v.offset + 1 + start + t.offset});
    };
    if (trim(body).text.empty()) return items;
    for (std::size_t i = 0; i < body.size(); ++i) {
      char c = body[i];
      if (c == '"') quoted = !quoted;
      if (quoted) continue;
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (c == ',' && depth == 0) {
        push(i);
        start = i + 1;
      }
    }
    push(body.size());
    return items;
  }

 private:
  std::string_view text_;
  std::vector<std::size_t> line_starts_;
};

bool valid_identifier(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

}  // namespace

KForm parse_form(std::string_view text, const std::vector<std::string>& vars, SourcePos at) {
  return ExprParser(text, vars, at).parse();
}

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars, SourcePos at) {
  KForm f = parse_form(text, vars, at);
  if (f.degree() != 0) throw ParseError(at.line, at.column, "expected a polynomial, got a " + std::to_string(f.degree()) + "-form");
  return f.as_polynomial();
}

FibrePoint parse_point(std::string_view text, std::size_t q, SourcePos at) {
  Located t = FileReader::trim(text);
  std::string_view body(t.text);
  std::size_t shift = t.offset;
  if (!body.empty() && body.front() == '[' && body.back() == ']') {
    body = body.substr(1, body.size() - 2);
    ++shift;
  }
  FibrePoint y;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = body.find(',', start);
    std::size_t end = comma == std::string_view::npos ? body.size() : comma;
    Located item = FileReader::trim(body.substr(start, end - start));
    SourcePos p = advance(at, text, shift + start + item.offset);
    try {
      y.push_back(parse_rational(item.text));
    } catch (const Error& e) {
      throw ParseError(p.line, p.column, e.what());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (y.size() != q)
    throw ParseError(at.line, at.column,
                     "point has " + std::to_string(y.size()) + " coordinates, expected " + std::to_string(q));
  return y;
}

ProblemFile parse_problem(std::string_view text) {
  FileReader reader(text);
  std::map<std::string, std::pair<Located, std::size_t>> entries;  // key -> value, key offset
  std::vector<std::string> order;
  for (const auto& st : reader.statements()) {
    std::size_t eq = st.text.find('=');
    if (eq == std::string::npos) reader.fail(st.offset, "expected 'key = value'");
    Located key = FileReader::trim(std::string_view(st.text).substr(0, eq));
    Located value = FileReader::trim(std::string_view(st.text).substr(eq + 1));
    key.offset += st.offset;
    value.offset += st.offset + eq + 1;
    bool known = key.text == "vars" || key.text == "weights" || key.text == "map" ||
                 key.text.rfind("form.", 0) == 0 || key.text.rfind("point.", 0) == 0;
    if (!known) reader.fail(key.offset, "unknown key '" + key.text + "'");
    auto dot = key.text.find('.');
    if (dot != std::string::npos && !valid_identifier(key.text.substr(dot + 1)))
      reader.fail(key.offset + dot + 1, "invalid name '" + key.text.substr(dot + 1) + "'");
    if (!entries.emplace(key.text, std::make_pair(value, key.offset)).second)
      reader.fail(key.offset, "duplicate key '" + key.text + "'");
    order.push_back(key.text);
  }

  ProblemFile P;
  if (!entries.count("vars")) reader.fail(0, "missing 'vars'");
  if (!entries.count("weights")) reader.fail(0, "missing 'weights'");
  if (!entries.count("map")) reader.fail(0, "missing 'map'");

  std::set<std::string> seen;
  for (const auto& item : reader.list(entries.at("vars").first)) {
    Located v = reader.unquote(item);
    if (!valid_identifier(v.text)) reader.fail(v.offset, "invalid variable name '" + v.text + "'");
    if (v.text == "d") reader.fail(v.offset, "'d' is reserved for differentials");
    if (!seen.insert(v.text).second) reader.fail(v.offset, "duplicate variable '" + v.text + "'");
    P.vars.push_back(v.text);
  }
  if (P.vars.empty()) reader.fail(entries.at("vars").first.offset, "no variables");

  const Located& wv = entries.at("weights").first;
  for (const auto& item : reader.list(wv)) {
    int w = 0;
    auto [ptr, ec] = std::from_chars(item.text.data(), item.text.data() + item.text.size(), w);
    if (ec != std::errc() || ptr != item.text.data() + item.text.size())
      reader.fail(item.offset, "weight must be an integer");
    if (w <= 0) reader.fail(item.offset, "weight must be positive");
    P.weights.push_back(w);
  }
  if (P.weights.size() != P.vars.size())
    reader.fail(wv.offset, std::to_string(P.weights.size()) + " weights for " + std::to_string(P.vars.size()) + " variables");

  const Located& mv = entries.at("map").first;
  for (const auto& item : reader.list(mv)) {
    Located e = reader.unquote(item);
    Polynomial f = parse_polynomial(e.text, P.vars, reader.pos(e.offset));
    if (f.is_zero()) reader.fail(e.offset, "map component is zero");
    P.map_text.push_back(e.text);
    P.map.push_back(std::move(f));
  }
  if (P.map.empty()) reader.fail(mv.offset, "map has no components");
  if (P.map.size() >= P.vars.size())
    reader.fail(mv.offset, "need more variables than components (q = " + std::to_string(P.map.size()) +
                               ", n = " + std::to_string(P.vars.size()) + ")");

  for (const auto& key : order) {
    const Located& v = entries.at(key).first;
    if (key.rfind("form.", 0) == 0) {
      Located e = reader.unquote(v);
      P.forms.emplace(key.substr(5), parse_form(e.text, P.vars, reader.pos(e.offset)));
    } else if (key.rfind("point.", 0) == 0) {
      Located e = reader.unquote(v);
      P.points.emplace(key.substr(6), parse_point(e.text, P.map.size(), reader.pos(e.offset)));
    }
  }
  return P;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string monomial_text(const Exponent& e, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

std::string index_text(const IndexSet& s, const std::vector<std::string>& vars) {
  std::string out = "d[";
  for (std::size_t j = 0; j < s.size(); ++j) out += (j ? "," : "") + vars[s[j]];
  return out + "]";
}

void append_term(std::string& out, const Rational& c, const std::string& rest) {
  Rational a = abs(c);
  if (out.empty()) {
    if (c < 0) out += '-';
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (rest.empty()) out += to_string(a);
  else if (a == 1) out += rest;
  else out += to_string(a) + "*" + rest;
}

}  // namespace

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars, const Weights& w) {
  return format_form(KForm(p), vars, w);
}

std::string format_form(const KForm& f, const std::vector<std::string>& vars, const Weights& w) {
  if (vars.size() != f.nvars()) throw Error("format_form: wrong number of variable names");
  MonomialOrder order = MonomialOrder::weighted_revlex(w);
  std::string out;
  for (const auto& [s, c] : f.coeffs()) {
    std::vector<std::pair<Exponent, Rational>> terms(c.terms().begin(), c.terms().end());
    std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) { return order.less(b.first, a.first); });
    for (const auto& [e, v] : terms) {
      std::string rest = monomial_text(e, vars);
      if (!s.empty()) rest += (rest.empty() ? "" : "*") + index_text(s, vars);
      append_term(out, v, rest);
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> target_names(std::size_t q) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= q; ++i) names.push_back("t" + std::to_string(i));
  return names;
}

}  // namespace fibera
