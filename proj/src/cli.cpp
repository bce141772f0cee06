#include "fibera/cli.hpp"

#include "fibera/serialize.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace fibera {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
T with_context(const std::string& what, const std::function<T()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), what + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

std::string tuple_text(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

struct Session {
  const CliOptions& opt;
  std::ostream& out;
  ProblemFile P;
  PolyMap F;
  Weights w;

  std::string text(const KForm& f) const { return format_form(f, P.vars, w); }

  KForm form() const {
    if (!opt.form) throw UsageError(opt.command + " needs --form");
    auto it = P.forms.find(*opt.form);
    KForm f = it != P.forms.end() ? it->second
                                  : with_context<KForm>("--form", [&] { return parse_form(*opt.form, P.vars); });
    const int k = static_cast<int>(F.n() - F.q());
    if (f.degree() != k) throw UsageError("--form must be a " + std::to_string(k) + "-form");
    return f;
  }

  FibrePoint point(bool required) const {
    if (!opt.point) {
      if (required) throw UsageError(opt.command + " needs --point");
      return FibrePoint(F.q(), Rational(0));
    }
    auto it = P.points.find(*opt.point);
    if (it != P.points.end()) return it->second;
    return with_context<FibrePoint>("--point", [&] { return parse_point(*opt.point, F.q()); });
  }

  void emit(const Json& doc) const { out << doc.dump(2) << "\n"; }

  Json envelope(const Json& result) const {
    return Json{{"command", opt.command}, {"input_hash", input_hash(P)}, {"problem", problem_to_json(P)},
                {"result", result}, {"witness", nullptr}};
  }

  int check() {
    IntersectionReport r = is_complete_intersection_at_infinity(F);
    Json vanishing = Json::array();
    bool all_exact = true;
    std::ostringstream extra;
    if (r.complete_intersection && opt.degree_bound) {
      FibrePoint y = point(false);
      const int top = static_cast<int>(F.n() - F.q());
      for (int k = 1; k < top; ++k) {
        if (r.dim_singular_locus >= top - k) continue;
        VanishingReport v = verify_vanishing(F, k, y, *opt.degree_bound);
        all_exact = all_exact && v.all_exact();
        vanishing.push_back(Json{{"k", k}, {"degree_bound", *opt.degree_bound}, {"space", v.space_dimension},
                                 {"closed", v.closed_dimension}, {"exact", v.exact_count}});
        extra << "H^" << k << " on the fibre over " << tuple_text(y) << ", degree <= " << *opt.degree_bound << ": "
              << v.closed_dimension << " closed forms, " << v.exact_count << " exact\n";
      }
      if (vanishing.empty()) extra << "no degree k with 0 < k and dim V(I+J) < n - q - k\n";
    }
    if (opt.json) {
      Json res{{"complete_intersection", r.complete_intersection}, {"dim_top_variety", r.dim_top_variety},
               {"dim_singular_locus", r.dim_singular_locus}};
      if (opt.degree_bound) res["vanishing"] = vanishing;
      emit(envelope(res));
    } else {
      out << (r.complete_intersection ? "complete intersection at infinity" : "not a complete intersection at infinity")
          << "\n";
      out << "dim V(I) = " << r.dim_top_variety << "\n";
      out << "dim V(I+J) = " << r.dim_singular_locus << "\n";
      out << extra.str();
    }
    return r.complete_intersection && all_exact ? exit_code::ok : exit_code::precondition;
  }

  int milnor() {
    long mu = milnor_number(F);
    if (opt.json) emit(envelope(Json{{"mu", mu}}));
    else out << "mu = " << mu << "\n";
    return exit_code::ok;
  }

  int basis() {
    InfinityBasis B = infinity_basis(F);
    if (opt.json) {
      emit(envelope(basis_to_json(B, P)));
      return exit_code::ok;
    }
    out << "mu = " << B.mu << "\n";
    for (std::size_t i = 0; i < B.forms.size(); ++i)
      out << "omega_" << i + 1 << " [degree " << B.degrees[i] << "] = " << text(B.forms[i]) << "\n";
    return exit_code::ok;
  }

  int fibre_class_cmd() {
    KForm omega = form();
    FibrePoint y = point(true);
    InfinityBasis B = infinity_basis(F);
    FibreClass c = fibre_class(omega, F, y, B);
    if (!verify_decomposition(omega, c, F, B)) throw InternalError("internal: fibre class witness failed its own check");
    if (opt.json) {
      emit(fibre_class_document(P, B, omega, c));
      return exit_code::ok;
    }
    out << "point = " << tuple_text(y) << "\n";
    out << "lambda = " << tuple_text(c.lambda) << "\n";
    if (opt.witness) {
      out << "Omega = " << text(c.witness.primitive) << "\n";
      for (std::size_t i = 0; i < F.q(); ++i) out << "eta_" << i + 1 << " = " << text(c.witness.multiples[i]) << "\n";
    }
    return exit_code::ok;
  }

  int decompose() {
    KForm omega = form();
    InfinityBasis B = infinity_basis(F);
    RelativeDecomposition d = relative_decompose(omega, F, B);
    DegreeBoundReport rep = degree_bounds(omega, d, F, B);
    const bool ok = verify_decomposition(omega, d, F, B);
    if (opt.json) {
      emit(decomposition_document(P, B, omega, d));
    } else {
      std::vector<int> tw;
      for (long deg : F.degrees()) tw.push_back(static_cast<int>(std::max(1L, deg)));
      for (std::size_t i = 0; i < d.a.size(); ++i)
        out << "a_" << i + 1 << " = " << format_polynomial(d.a[i], target_names(F.q()), Weights(tw)) << "\n";
      out << "Omega = " << text(d.primitive) << "\n";
      for (std::size_t j = 0; j < F.q(); ++j) out << "eta_" << j + 1 << " = " << text(d.eta[j]) << "\n";
      auto verdict = [](bool b) { return b ? "ok" : "VIOLATED"; };
      out << "degree bounds: a " << verdict(rep.coefficients) << ", Omega " << verdict(rep.primitive) << ", eta "
          << verdict(rep.eta) << "\n";
    }
    if (!ok) throw InternalError("internal: decomposition failed its own check");
    return exit_code::ok;
  }

  int subalgebra() {
    if (!opt.poly) throw UsageError("subalgebra needs --poly");
    Polynomial R = with_context<Polynomial>("--poly", [&] { return parse_polynomial(*opt.poly, P.vars); });
    auto A = is_in_subalgebra(R, F);
    std::vector<int> tw;
    for (long deg : F.degrees()) tw.push_back(static_cast<int>(std::max(1L, deg)));
    std::string a_text = A ? format_polynomial(*A, target_names(F.q()), Weights(tw)) : "";
    if (opt.json) {
      Json res{{"member", A.has_value()}};
      if (A) {
        res["A"] = a_text;
        res["terms"] = polynomial_to_json(*A);
      }
      emit(envelope(res));
    } else if (A) {
      out << "A = " << a_text << "\n";
    } else {
      out << "not in C[F]\n";
    }
    return exit_code::ok;
  }
};

int verify_cmd(const CliOptions& opt, std::ostream& out) {
  Json doc;
  try {
    doc = Json::parse(read_file(opt.file));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  VerifyOutcome v = verify_document(doc);
  if (opt.json) out << Json{{"command", "verify"}, {"result", Json{{"ok", v.ok}, {"detail", v.detail}}}}.dump(2) << "\n";
  else out << (v.ok ? "ok: " : "failed: ") << v.detail << "\n";
  return v.ok ? exit_code::ok : exit_code::precondition;
}

}  // namespace

int run(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const std::string where = opt.file.empty() ? "" : opt.file + ": ";
  try {
    if (opt.command == "verify") return verify_cmd(opt, out);
    ProblemFile P = parse_problem(read_file(opt.file));
    PolyMap F = P.build();
    Session s{opt, out, P, F, Weights(P.weights)};
    if (opt.command == "check") return s.check();
    if (opt.command == "milnor") return s.milnor();
    if (opt.command == "basis") return s.basis();
    if (opt.command == "class") return s.fibre_class_cmd();
    if (opt.command == "decompose") return s.decompose();
    if (opt.command == "subalgebra") return s.subalgebra();
    throw UsageError("unknown command '" + opt.command + "'");
  } catch (const ParseError& e) {
    err << "fibera: " << where << e.what() << "\n";
    return exit_code::parse;
  } catch (const FormatError& e) {
    err << "fibera: " << where << e.what() << "\n";
    return exit_code::parse;
  } catch (const UsageError& e) {
    err << "fibera: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const PreconditionError& e) {
    if (opt.json) out << Json{{"command", opt.command}, {"error", e.what()}}.dump(2) << "\n";
    else out << e.what() << "\n";
    return exit_code::precondition;
  } catch (const InternalError& e) {
    err << "fibera: " << e.what() << "\n";
    return exit_code::internal;
  } catch (const Error& e) {
    err << "fibera: " << e.what() << "\n";
    return exit_code::precondition;
  }
}

}  // namespace fibera
