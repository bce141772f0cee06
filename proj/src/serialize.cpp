#include "fibera/serialize.hpp"

#include <algorithm>
#include <cstdio>

namespace fibera {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string canonical_problem(const ProblemFile& P) {
  Weights w(P.weights);
  std::string out = "vars = [";
  for (std::size_t i = 0; i < P.vars.size(); ++i) out += (i ? ", " : "") + P.vars[i];
  out += "]\nweights = [";
  for (std::size_t i = 0; i < P.weights.size(); ++i) out += (i ? ", " : "") + std::to_string(P.weights[i]);
  out += "]\nmap = [";
  for (std::size_t i = 0; i < P.map.size(); ++i) out += (i ? ", \"" : "\"") + format_polynomial(P.map[i], P.vars, w) + "\"";
  return out + "]\n";
}

std::string input_hash(const ProblemFile& P) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_problem(P))));
  return std::string("fnv1a64:") + buf;
}

Json rational_to_json(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw FormatError("expected a rational string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

Json form_to_json(const KForm& f) {
  Json out = Json::array();
  for (const auto& [s, c] : f.coeffs())
    for (const auto& [e, v] : c.terms()) out.push_back(Json::array({e, s, rational_to_json(v)}));
  return out;
}

KForm form_from_json(const Json& j, std::size_t n, int k) {
  if (!j.is_array()) throw FormatError("form must be an array of terms");
  KForm f(n, k);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_array() || !t[1].is_array())
      throw FormatError("form term must be [exponent-vector, index-tuple, \"num/den\"]");
    Exponent e;
    IndexSet s;
    try {
      e = t[0].get<Exponent>();
      s = t[1].get<IndexSet>();
    } catch (const nlohmann::json::exception&) {
      throw FormatError("form term entries must be integers");
    }
    if (e.size() != n) throw FormatError("exponent vector has the wrong length");
    for (int a : e)
      if (a < 0) throw FormatError("negative exponent");
    if (static_cast<int>(s.size()) != k) throw FormatError("index tuple has the wrong length");
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] < 0 || s[i] >= static_cast<int>(n) || (i && s[i] <= s[i - 1]))
        throw FormatError("index tuple must be strictly increasing variable indices");
    f += KForm::term(s, Polynomial::monomial(e, rational_from_json(t[2])));
  }
  return f;
}

Json polynomial_to_json(const Polynomial& p) { return form_to_json(KForm(p)); }

Polynomial polynomial_from_json(const Json& j, std::size_t n) { return form_from_json(j, n, 0).as_polynomial(); }

Json problem_to_json(const ProblemFile& P) {
  Weights w(P.weights);
  Json map = Json::array();
  for (const auto& f : P.map) map.push_back(format_polynomial(f, P.vars, w));
  return Json{{"vars", P.vars}, {"weights", P.weights}, {"map", map}};
}

ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("weights") || !j.contains("map"))
    throw FormatError("problem must have vars, weights and map");
  std::string text = "vars = [";
  try {
    auto vars = j.at("vars").get<std::vector<std::string>>();
    auto weights = j.at("weights").get<std::vector<long>>();
    auto map = j.at("map").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < vars.size(); ++i) text += (i ? ", " : "") + vars[i];
    text += "]\nweights = [";
    for (std::size_t i = 0; i < weights.size(); ++i) text += (i ? ", " : "") + std::to_string(weights[i]);
    text += "]\nmap = [";
    for (std::size_t i = 0; i < map.size(); ++i) text += (i ? ", \"" : "\"") + map[i] + "\"";
    text += "]\n";
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("problem: ") + e.what());
  }
  try {
    return parse_problem(text);
  } catch (const ParseError& e) {
    throw FormatError(std::string("problem: ") + e.what());
  }
}

Json basis_to_json(const InfinityBasis& B, const ProblemFile& P) {
  Weights w(P.weights);
  Json forms = Json::array();
  for (std::size_t i = 0; i < B.forms.size(); ++i)
    forms.push_back(Json{{"degree", B.degrees[i]}, {"text", format_form(B.forms[i], P.vars, w)},
                         {"terms", form_to_json(B.forms[i])}});
  return Json{{"mu", B.mu}, {"forms", forms}};
}

namespace {

Json envelope(const std::string& command, const ProblemFile& P, const InfinityBasis& B, const KForm& omega) {
  return Json{{"command", command},
              {"input_hash", input_hash(P)},
              {"problem", problem_to_json(P)},
              {"basis", basis_to_json(B, P)},
              {"form", Json{{"text", format_form(omega, P.vars, Weights(P.weights))}, {"terms", form_to_json(omega)}}}};
}

Json forms_to_json(const std::vector<KForm>& forms) {
  Json out = Json::array();
  for (const auto& f : forms) out.push_back(form_to_json(f));
  return out;
}

std::vector<KForm> forms_from_json(const Json& j, std::size_t count, std::size_t n, int k, const char* what) {
  if (!j.is_array() || j.size() != count) throw FormatError(std::string(what) + " must hold " + std::to_string(count) + " forms");
  std::vector<KForm> out;
  for (const auto& f : j) out.push_back(form_from_json(f, n, k));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing '") + key + "'");
  return j.at(key);
}

}  // namespace

Json fibre_class_document(const ProblemFile& P, const InfinityBasis& B, const KForm& omega, const FibreClass& c) {
  Json doc = envelope("class", P, B, omega);
  Json point = Json::array(), lambda = Json::array();
  for (const auto& y : c.point) point.push_back(rational_to_json(y));
  for (const auto& l : c.lambda) lambda.push_back(rational_to_json(l));
  doc["result"] = Json{{"point", point}, {"lambda", lambda}};
  doc["witness"] = Json{{"Omega", form_to_json(c.witness.primitive)}, {"eta", forms_to_json(c.witness.multiples)}};
  return doc;
}

Json decomposition_document(const ProblemFile& P, const InfinityBasis& B, const KForm& omega,
                            const RelativeDecomposition& d) {
  Json doc = envelope("decompose", P, B, omega);
  PolyMap F = P.build();
  std::vector<int> t_weights;
  for (long d : F.degrees()) t_weights.push_back(static_cast<int>(std::max(1L, d)));
  Weights tw(t_weights);
  Json a = Json::array();
  for (const auto& ai : d.a)
    a.push_back(Json{{"text", format_polynomial(ai, target_names(F.q()), tw)}, {"terms", polynomial_to_json(ai)}});
  DegreeBoundReport rep = degree_bounds(omega, d, F, B);
  doc["result"] = Json{{"a", a},
                       {"degree_bounds", Json{{"coefficients", rep.coefficients}, {"Omega", rep.primitive}, {"eta", rep.eta}}}};
  doc["witness"] = Json{{"Omega", form_to_json(d.primitive)}, {"eta", forms_to_json(d.eta)}};
  return doc;
}

VerifyOutcome verify_document(const Json& doc) {
  const std::string command = field(doc, "command").is_string() ? doc.at("command").get<std::string>() : "";
  if (command != "class" && command != "decompose") throw FormatError("verify expects a 'class' or 'decompose' document");

  ProblemFile P = problem_from_json(field(doc, "problem"));
  if (!field(doc, "input_hash").is_string() || doc.at("input_hash").get<std::string>() != input_hash(P))
    return {false, "input_hash does not match the problem"};
  PolyMap F = P.build();
  const std::size_t n = F.n(), q = F.q();
  const int k = static_cast<int>(n - q);

  InfinityBasis B;
  try {
    B = infinity_basis(F);
  } catch (const PreconditionError& e) {
    return {false, e.what()};
  }
  const Json& stored = field(field(doc, "basis"), "forms");
  if (!stored.is_array() || stored.size() != B.forms.size()) return {false, "stored basis has the wrong size"};
  for (std::size_t i = 0; i < B.forms.size(); ++i)
    if (form_from_json(field(stored[i], "terms"), n, k) != B.forms[i]) return {false, "stored basis differs from the computed basis"};

  KForm omega = form_from_json(field(field(doc, "form"), "terms"), n, k);
  const Json& result = field(doc, "result");
  const Json& witness = field(doc, "witness");

  if (command == "class") {
    FibreClass c{{}, {}, ExactWitness{KForm(n, k - 1), {}}};
    const Json& point = field(result, "point");
    const Json& lambda = field(result, "lambda");
    if (!point.is_array() || point.size() != q) throw FormatError("point must hold " + std::to_string(q) + " coordinates");
    if (!lambda.is_array() || lambda.size() != B.forms.size())
      throw FormatError("lambda must hold " + std::to_string(B.forms.size()) + " coordinates");
    for (const auto& y : point) c.point.push_back(rational_from_json(y));
    for (const auto& l : lambda) c.lambda.push_back(rational_from_json(l));
    c.witness.primitive = form_from_json(field(witness, "Omega"), n, k - 1);
    c.witness.multiples = forms_from_json(field(witness, "eta"), q, n, k, "eta");
    if (!verify_decomposition(omega, c, F, B)) return {false, "witness does not reproduce the form within the degree bounds"};
    return {true, "fibre class witness verified"};
  }

  RelativeDecomposition d{{}, form_from_json(field(witness, "Omega"), n, k - 1),
                          forms_from_json(field(witness, "eta"), q, n, k - 1, "eta")};
  const Json& a = field(result, "a");
  if (!a.is_array() || a.size() != B.forms.size())
    throw FormatError("a must hold " + std::to_string(B.forms.size()) + " polynomials");
  for (const auto& ai : a) d.a.push_back(polynomial_from_json(field(ai, "terms"), q));
  if (!verify_decomposition(omega, d, F, B)) return {false, "decomposition does not reproduce the form within the degree bounds"};
  return {true, "relative decomposition verified"};
}

}  // namespace fibera
