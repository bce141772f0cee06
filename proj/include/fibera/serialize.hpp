#pragma once

#include "fibera/problem.hpp"

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

namespace fibera {

using Json = nlohmann::ordered_json;

/// Malformed JSON document or witness layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// vars, weights and map printed in normal form, one key per line. Two files
/// describing the same map have the same canonical text.
std::string canonical_problem(const ProblemFile& P);
/// "fnv1a64:" + 16 hex digits of the canonical problem text.
std::string input_hash(const ProblemFile& P);

Json rational_to_json(const Rational& r);  // always "num/den"
Rational rational_from_json(const Json& j);

/// [[exponent-vector, index-tuple, "num/den"], ...]
Json form_to_json(const KForm& f);
KForm form_from_json(const Json& j, std::size_t n, int k);
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, std::size_t n);

Json problem_to_json(const ProblemFile& P);
ProblemFile problem_from_json(const Json& j);

Json basis_to_json(const InfinityBasis& B, const ProblemFile& P);

/// Full documents for `class` and `decompose`; they carry the problem, the basis and
/// the input form, so verify_document needs nothing else.
Json fibre_class_document(const ProblemFile& P, const InfinityBasis& B, const KForm& omega, const FibreClass& c);
Json decomposition_document(const ProblemFile& P, const InfinityBasis& B, const KForm& omega,
                            const RelativeDecomposition& d);

struct VerifyOutcome {
  bool ok;
  std::string detail;
};

/// Rebuilds the map and basis from the document and checks the stored witness.
/// Throws FormatError on a malformed document.
VerifyOutcome verify_document(const Json& doc);

}  // namespace fibera
