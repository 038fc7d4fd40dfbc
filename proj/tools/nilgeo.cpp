#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nilgeo/cli.hpp"

namespace {

void add_group_flags(CLI::App* cmd, int& r, int& k) {
  cmd->add_option("-r,--rank", r, "number of generators")->check(CLI::Range(1, 26));
  cmd->add_option("-k,--class", k, "nilpotency class")->check(CLI::Range(1, 8));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nilgeo;
  CLI::App app{"Word problem and Mal'cev coordinates in free nilpotent groups"};
  app.require_subcommand(1);

  int r = 2, k = 2;
  std::string word, other, format = "tuple", plane, out_path, proj_format = "csv";
  std::size_t trials = 100, max_len = 30;
  std::uint64_t seed = 1;
  int max_k = 6;
  bool json = false;

  auto* coords = app.add_subcommand("coords", "geometric and oracle coordinates of a word");
  add_group_flags(coords, r, k);
  coords->add_option("word", word, "word, e.g. \"abAB\" or \"a^2 B\"")->required();
  coords->add_option("--format", format, "tuple | labeled | json")->check(CLI::IsMember({"tuple", "labeled", "json"}));

  auto* eq = app.add_subcommand("eq", "decide whether two words are equal");
  add_group_flags(eq, r, k);
  eq->add_option("w", word)->required();
  eq->add_option("v", other)->required();

  auto* project = app.add_subcommand("project", "export the projected closure loop");
  add_group_flags(project, r, k);
  project->add_option("word", word)->required();
  project->add_option("--plane", plane, "top basis element, e.g. \"[[b,a],a]\"")->required();
  project->add_option("--format", proj_format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  project->add_option("-o,--out", out_path, "output file (stdout if omitted)");

  auto* magnus = app.add_subcommand("magnus", "print the truncated Magnus image of a word");
  add_group_flags(magnus, r, k);
  magnus->add_option("word", word)->required();

  auto* basis = app.add_subcommand("basis", "print the Hall basis and counting tables");
  add_group_flags(basis, r, k);

  auto* verify = app.add_subcommand("verify", "cross-validate against the Magnus oracle");
  add_group_flags(verify, r, k);
  verify->add_option("--trials", trials);
  verify->add_option("--max-len", max_len);
  verify->add_option("--seed", seed);
  verify->add_option("-o,--out", out_path, "JSON report path (stdout if omitted)");

  auto* errata = app.add_subcommand("errata", "audit published counts, constants and the worked example");
  errata->add_option("--max-k", max_k)->check(CLI::Range(1, 6));
  errata->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  try {
    if (*coords) return cli::cmd_coords(word, r, k, format, std::cout);
    if (*eq) return cli::cmd_eq(word, other, r, k, std::cout);
    if (*project) return cli::cmd_project(word, r, k, plane, out_path, proj_format, std::cout);
    if (*magnus) return cli::cmd_magnus(word, r, k, std::cout);
    if (*basis) return cli::cmd_basis(r, k, std::cout);
    if (*verify) return cli::cmd_verify(r, k, trials, max_len, seed, out_path, std::cout);
    if (*errata) return cli::cmd_errata(max_k, json, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code(e.kind());
  }
  return cli::kUsage;
}
