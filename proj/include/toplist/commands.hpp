#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace toplist::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitBudget = 4;

struct ScoreOptions {
  std::string rule = "brier";
  std::string input;
  double penalty = 0.001;
  bool per_instance = false;
  std::vector<std::string> metrics;  // zero-one, top-k-error, set-accuracy, instance-f1
  int digits = 6;
  bool json = false;
};
int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err);

struct CompareOptions {
  std::string rule = "brier";
  std::vector<std::string> inputs;
  double penalty = 0.001;
  int digits = 6;
  bool json = false;
};
int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);

struct ValidateOptions {
  std::string input;
  int digits = 6;
  bool json = false;
};
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

struct CheckOptions {
  std::string oracle = "consistency";  // consistency | majorization |
                                       // comparability | schur | alpha-bound
  std::string rule = "brier";
  std::size_t m = 3;
  std::size_t k = 1;
  unsigned grid = 10;
  double penalty = 0.001;
  std::uint64_t seed = 1;
  std::uint64_t budget = 100'000'000;
  std::size_t trials = 1000;
  int digits = 6;
  bool json = false;
};
int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);

struct Table1Options {
  bool json = false;
};
int cmd_table1(const Table1Options& opts, std::ostream& out, std::ostream& err);

struct F1DemoOptions {
  int digits = 6;
  bool json = false;
};
int cmd_f1_demo(const F1DemoOptions& opts, std::ostream& out, std::ostream& err);

/// One row of the built-in expected-score table: a distribution/rule pair
/// evaluated at the mode prediction, the true top-1 and top-2 lists, and the
/// full distribution. Gaps are relative to the optimal (last) column and
/// absent for infinite entries.
struct ScoreTableRow {
  std::string distribution;
  std::string rule;
  std::array<double, 4> scores{};
  std::array<double, 3> gaps{};      // fraction, not percent
  std::array<bool, 3> has_gap{};
};

/// The six rows behind `table1` (three reference distributions, two rules).
std::vector<ScoreTableRow> score_table_rows();

}  // namespace toplist::cli
