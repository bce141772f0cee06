#include "fibera/cli.hpp"

#include <iostream>

#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of fibres of polynomial maps with exact arithmetic"};
  fibera::CliOptions opt;
  std::string form, point, poly;
  long bound = 0;

  app.add_option("command", opt.command, "check | milnor | basis | class | decompose | subalgebra | verify")
      ->required()
      ->check(CLI::IsMember({"check", "milnor", "basis", "class", "decompose", "subalgebra", "verify"}));
  app.add_option("file", opt.file, "problem file (a JSON document for verify)")->required();
  auto* form_opt = app.add_option("--form", form, "form name from the file, or an expression");
  auto* point_opt = app.add_option("--point", point, "point name from the file, or r1,...,rq");
  auto* poly_opt = app.add_option("--poly", poly, "polynomial for subalgebra");
  auto* bound_opt = app.add_option("--degree-bound", bound, "degree bound for the vanishing check");
  app.add_flag("--json", opt.json, "machine-readable output");
  app.add_flag("--witness", opt.witness, "print the exactness witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fibera::exit_code::parse;
  }
  if (*form_opt) opt.form = form;
  if (*point_opt) opt.point = point;
  if (*poly_opt) opt.poly = poly;
  if (*bound_opt) opt.degree_bound = bound;
  return fibera::run(opt, std::cout, std::cerr);
}
