#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "birelab/commands.hpp"
#include "birelab/verify.hpp"

int main(int argc, char** argv) {
  using namespace birelab;

  CLI::App app{"Fresnel surface and metaclass analysis of skewon-free electromagnetic media"};
  app.require_subcommand(1);
  CommandArgs args;

  auto* analyze = app.add_subcommand("analyze", "Analyze a medium: skewon/axion parts, Segre type, Fresnel quartic");
  analyze->add_option("--input", args.input, "Medium JSON file")->required();
  analyze->add_option("--out", args.out, "Write the report here instead of stdout");

  auto* construct = app.add_subcommand("construct", "Emit the normal-form medium of a metaclass");
  construct->add_option("--class", args.class_name, "Metaclass I..VII");
  construct->add_option("--params", args.params, "Parameter JSON, inline or a file path");
  construct->add_option("--out", args.out, "Output file");

  auto* surface = app.add_subcommand("surface", "Sample the Fresnel quartic on a 3D lattice as CSV");
  surface->add_option("--input", args.input, "Medium or quartic JSON file");
  surface->add_option("--class", args.class_name, "Metaclass I..VII");
  surface->add_option("--params", args.params, "Parameter JSON, inline or a file path");
  surface->add_option("--projection", args.surface.projection, "xi1=0 (default) or slice-xi1");
  surface->add_option("--resolution", args.surface.resolution, "Lattice points per axis")->capture_default_str();
  surface->add_option("--bounds", args.bounds, "Lattice bounds \"lo,hi\" (default -3,3)");
  surface->add_option("--out", args.out, "Output CSV file");

  auto* verify = app.add_subcommand("verify", "Run a randomized property suite");
  verify->add_option("suite", args.suite, "Suite name")->required();
  verify->add_option("--seed", args.seed, "RNG seed")->capture_default_str();
  verify->add_option("--count", args.count, "Number of draws")->capture_default_str();
  verify->add_option("--out", args.out, "Output file");
  verify->footer([] {
    std::string s = "Suites:";
    for (const auto& n : suite_names()) s += " " + n;
    return s;
  }());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInputError;
  }

  if (analyze->parsed()) return cmd_analyze(args, std::cout, std::cerr);
  if (construct->parsed()) return cmd_construct(args, std::cout, std::cerr);
  if (surface->parsed()) return cmd_surface(args, std::cout, std::cerr);
  return cmd_verify(args, std::cout, std::cerr);
}
