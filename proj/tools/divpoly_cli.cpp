#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace divpoly::cli;
  CLI::App app{"Exact computations with divisorial polytopes, polyhedral divisors and support functions"};
  app.require_subcommand(1);
  Request req;
  app.add_option("--in", req.inputs, "input JSON document")->required()->check(CLI::ExistingFile);
  app.add_option("--out", req.out, "write the result here instead of stdout");
  app.add_option("--format", req.format, "output format")->check(CLI::IsMember({"json", "svg"}));
  app.add_option("--genus-override", req.genus_override, "genus to assume for an abstract base curve")->check(CLI::NonNegativeNumber);
  app.add_option("--alpha-cap", req.alpha_cap, "search cap for the generator bound alpha")->check(CLI::PositiveNumber);
  app.add_option("--hilbert-k", req.hilbert_k, "dilations at which to tabulate the Hilbert polynomial")->delimiter(',');
  app.add_option("--target", req.target, "recover: divpoly or sf")->check(CLI::IsMember({"divpoly", "sf"}));
  for (const auto& c : commands()) app.add_subcommand(c)->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }
  req.command = app.get_subcommands().front()->get_name();
  Result r = run(req);
  if (!r.message.empty()) std::cerr << r.message << "\n";
  std::cout << r.output;
  return r.code;
}
