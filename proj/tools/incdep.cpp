#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "incdep/cli.hpp"

namespace {

int run_parse(const incdep::RunConfig& config, const std::string& input_path) {
  if (auto problem = config.validate(); !problem.empty()) {
    std::cerr << "parse: " << problem << '\n';
    return 2;
  }
  incdep::RuleGrammar grammar;
  try {
    grammar = incdep::load_grammar(incdep::read_file(config.grammar_path));
  } catch (const std::exception& e) {
    std::cerr << "parse: " << config.grammar_path << ": " << e.what() << '\n';
    return 2;
  }
  if (input_path.empty() || input_path == "-") {
    return incdep::cmd_parse(config, grammar, std::cin, std::cout);
  }
  std::ifstream in(input_path);
  if (!in) {
    std::cerr << "parse: cannot read '" << input_path << "'\n";
    return 2;
  }
  return incdep::cmd_parse(config, grammar, in, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-at-a-time dependency parsers"};
  app.require_subcommand(1);

  incdep::RunConfig run;
  std::string input_path;
  auto* parse = app.add_subcommand("parse", "Parse sentences, one per line");
  parse->add_option("--algorithm,-a", run.algorithm, "esh|esd|eshu|esdu|lsu|lsup|backtrack")
      ->required();
  parse->add_option("--grammar,-g", run.grammar_path, "Grammar file")->required();
  parse->add_flag("--projective", run.projective, "Projective search (backtrack only)");
  parse->add_flag("--all-parses", run.all_parses, "Every complete analysis (backtrack only)");
  parse->add_flag("--stats", run.stats, "Append query and link counts");
  parse->add_option("--emit", run.emit, "table|tree|both")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, incdep::Emit>{{"table", incdep::Emit::kTable},
                                              {"tree", incdep::Emit::kTree},
                                              {"both", incdep::Emit::kBoth}},
          CLI::ignore_case));
  parse->add_option("input", input_path, "Sentence file (default: standard input)");

  incdep::BenchConfig bench;
  auto* bench_cmd = app.add_subcommand("bench", "Count queries and links over sentence sizes");
  bench_cmd->add_option("--algorithm,-a", bench.algorithms, "Comma-separated algorithm names")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--scenario,-s", bench.scenario, "null-grammar|worst-case-chain|random-tree")
      ->required();
  bench_cmd->add_option("--n", bench.ns, "Comma-separated sentence lengths")
      ->delimiter(',')
      ->required();
  bench_cmd->add_flag("--projective", bench.projective, "Projective search (backtrack only)");
  bench_cmd->add_option("--max-backtrack-n", bench.backtrack_cap, "Largest n for backtrack");
  bench_cmd->add_option("--seed", bench.seed, "Seed for random-tree");

  std::string check_path;
  auto* check = app.add_subcommand("check", "Validate a grammar file");
  check->add_option("grammar", check_path, "Grammar file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*parse) return run_parse(run, input_path);
  if (*bench_cmd) return incdep::cmd_bench(bench, std::cout, std::cerr);
  return incdep::cmd_check(check_path, std::cout, std::cerr);
}
