#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace fibera {

struct CliOptions {
  std::string command;  // check, milnor, basis, class, decompose, subalgebra, verify
  std::string file;     // problem file, or a JSON document for verify
  std::optional<std::string> form;   // name from the file or an expression
  std::optional<std::string> point;  // name from the file or "r1,...,rq"
  std::optional<std::string> poly;   // for subalgebra
  std::optional<long> degree_bound;
  bool json = false;
  bool witness = false;
};

namespace exit_code {
constexpr int ok = 0;
constexpr int precondition = 1;  // not CIA, non-isolated, failed verification
constexpr int parse = 2;         // malformed input or usage
constexpr int internal = 3;
}  // namespace exit_code

int run(const CliOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace fibera
