#include <iostream>

#include <CLI11.hpp>

#include "toplist/commands.hpp"

namespace cli = toplist::cli;

int main(int argc, char** argv) {
  CLI::App app{"Evaluation of probabilistic top-k list predictions"};
  app.require_subcommand(1);

  cli::ScoreOptions score_opts;
  auto* score = app.add_subcommand("score", "Mean penalized score of a JSONL file");
  score->add_option("--rule", score_opts.rule, "Scoring rule: brier or log")
      ->check(CLI::IsMember({"brier", "log"}));
  score->add_option("--input", score_opts.input, "JSONL evaluation file")->required();
  score->add_option("--penalty", score_opts.penalty, "Penalty added to invalid lists")
      ->check(CLI::NonNegativeNumber);
  score->add_flag("--per-instance", score_opts.per_instance, "Print each case's score");
  score
      ->add_option("--metrics", score_opts.metrics,
                   "Extra metrics: zero-one, top-k-error, set-accuracy, instance-f1")
      ->delimiter(',');
  score->add_option("--digits", score_opts.digits, "Significant digits")
      ->check(CLI::Range(1, 17));
  score->add_flag("--json", score_opts.json, "Structured report");

  cli::CompareOptions compare_opts;
  auto* compare = app.add_subcommand("compare", "Mean scores of several files");
  compare->add_option("--rule", compare_opts.rule, "Scoring rule: brier or log")
      ->check(CLI::IsMember({"brier", "log"}));
  compare->add_option("--input", compare_opts.inputs, "JSONL evaluation file (repeat)")
      ->required();
  compare->add_option("--penalty", compare_opts.penalty, "Penalty added to invalid lists")
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--digits", compare_opts.digits, "Significant digits")
      ->check(CLI::Range(1, 17));
  compare->add_flag("--json", compare_opts.json, "Structured report");

  cli::ValidateOptions validate_opts;
  auto* validate =
      app.add_subcommand("validate", "Validity and proxy probability per case");
  validate->add_option("--input", validate_opts.input, "JSONL evaluation file")
      ->required();
  validate->add_option("--digits", validate_opts.digits, "Significant digits")
      ->check(CLI::Range(1, 17));
  validate->add_flag("--json", validate_opts.json, "Structured report");

  cli::CheckOptions check_opts;
  auto* check = app.add_subcommand("check", "Run a brute-force verification oracle");
  check->add_option("--oracle", check_opts.oracle,
                    "consistency, majorization, comparability, schur or alpha-bound")
      ->check(CLI::IsMember(
          {"consistency", "majorization", "comparability", "schur", "alpha-bound"}));
  check->add_option("--rule", check_opts.rule, "Scoring rule: brier or log")
      ->check(CLI::IsMember({"brier", "log"}));
  check->add_option("--m", check_opts.m, "Number of classes")->check(CLI::PositiveNumber);
  check->add_option("--k", check_opts.k, "List length");
  check->add_option("--grid", check_opts.grid, "Grid denominator N")
      ->check(CLI::PositiveNumber);
  check->add_option("--penalty", check_opts.penalty, "Penalty added to invalid lists")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--seed", check_opts.seed, "Random seed");
  check->add_option("--budget", check_opts.budget,
                    "Max (distribution, candidate) pairs for the consistency oracle");
  check->add_option("--trials", check_opts.trials, "Random trials for sampled oracles");
  check->add_option("--digits", check_opts.digits, "Significant digits")
      ->check(CLI::Range(1, 17));
  check->add_flag("--json", check_opts.json, "Structured report");

  cli::Table1Options table1_opts;
  auto* table1 = app.add_subcommand(
      "table1", "Expected-score table for three reference distributions");
  table1->add_flag("--json", table1_opts.json, "Structured report");

  cli::F1DemoOptions f1_opts;
  auto* f1_demo = app.add_subcommand(
      "f1-demo", "Worked example: instance F1 is not consistent for the mode");
  f1_demo->add_option("--digits", f1_opts.digits, "Significant digits")
      ->check(CLI::Range(1, 17));
  f1_demo->add_flag("--json", f1_opts.json, "Structured report");

  CLI11_PARSE(app, argc, argv);

  if (score->parsed()) return cli::cmd_score(score_opts, std::cout, std::cerr);
  if (compare->parsed()) return cli::cmd_compare(compare_opts, std::cout, std::cerr);
  if (validate->parsed()) return cli::cmd_validate(validate_opts, std::cout, std::cerr);
  if (check->parsed()) return cli::cmd_check(check_opts, std::cout, std::cerr);
  if (table1->parsed()) return cli::cmd_table1(table1_opts, std::cout, std::cerr);
  if (f1_demo->parsed()) return cli::cmd_f1_demo(f1_opts, std::cout, std::cerr);
  return 0;
}
