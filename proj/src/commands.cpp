#include "toplist/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <random>

#include <json.hpp>

#include "toplist/eval_file.hpp"
#include "toplist/metrics.hpp"
#include "toplist/numeric.hpp"
#include "toplist/scoring.hpp"
#include "toplist/verify.hpp"

namespace toplist::cli {

using nlohmann::json;

namespace {

ScoringRule rule_from_name(const std::string& name) {
  if (name == "brier") return brier_rule();
  if (name == "log") return log_rule();
  throw std::invalid_argument("unknown rule: " + name + " (expected brier or log)");
}

// JSON has no infinities; they are encoded as the string "inf".
json json_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string format_probs(const std::vector<double>& probs, int digits) {
  std::string out = "(";
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (i > 0) out += ",";
    out += format_number(probs[i], digits);
  }
  return out + ")";
}

// The point prediction behind a case: its highest-confidence class, ties
// broken by universe order.
std::size_t point_prediction(const TopList& t) {
  if (t.k() == 0) {
    throw std::invalid_argument("metric needs a non-empty prediction");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.k(); ++i) {
    const bool better = t.confidences()[i] > t.confidences()[best] ||
                        (t.confidences()[i] == t.confidences()[best] &&
                         t.classes()[i] < t.classes()[best]);
    if (better) best = i;
  }
  return t.classes()[best];
}

metrics::LabelSetUniverse label_sets_of(const ClassUniverse& universe) {
  std::vector<std::vector<std::string>> subsets;
  std::vector<std::string> labels;
  for (const auto& cls : universe.labels()) {
    std::vector<std::string> parts;
    if (!cls.empty()) {
      std::size_t start = 0;
      while (true) {
        const std::size_t pos = cls.find('|', start);
        parts.push_back(cls.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
    }
    for (const auto& part : parts) labels.push_back(part);
    subsets.push_back(std::move(parts));
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return metrics::LabelSetUniverse(std::move(labels), subsets);
}

struct ExtraMetrics {
  bool zero_one = false;
  bool top_k_error = false;
  bool set_accuracy = false;
  bool instance_f1 = false;
};

ExtraMetrics parse_metric_names(const std::vector<std::string>& names) {
  ExtraMetrics extras;
  for (const auto& name : names) {
    if (name == "zero-one") {
      extras.zero_one = true;
    } else if (name == "top-k-error") {
      extras.top_k_error = true;
    } else if (name == "set-accuracy") {
      extras.set_accuracy = true;
    } else if (name == "instance-f1") {
      extras.instance_f1 = true;
    } else {
      throw std::invalid_argument("unknown metric: " + name);
    }
  }
  return extras;
}

int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const verify::BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}

}  // namespace

int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    const ScoringRule rule = rule_from_name(opts.rule);
    const ExtraMetrics extras = parse_metric_names(opts.metrics);
    const PenaltyConfig cfg{opts.penalty};
    const EvalFile file = parse_eval_file(opts.input);
    if (file.cases.empty()) {
      throw std::invalid_argument("input declares no cases");
    }

    std::vector<double> per_case;
    per_case.reserve(file.cases.size());
    for (const EvalCase& c : file.cases) {
      per_case.push_back(penalized_score(rule, c.prediction(), c.observed(), cfg));
    }
    const double mean = mean_score(rule, file.cases, cfg);

    StableSum miss_sum;
    StableSum topk_sum;
    StableSum f1_sum;
    if (extras.zero_one || extras.set_accuracy || extras.top_k_error ||
        extras.instance_f1) {
      const auto label_sets =
          extras.instance_f1 ? std::optional(label_sets_of(*file.universe))
                             : std::nullopt;
      for (const EvalCase& c : file.cases) {
        if (extras.zero_one || extras.set_accuracy || extras.instance_f1) {
          const std::size_t x = point_prediction(c.prediction());
          miss_sum.add(x != c.observed() ? 1.0 : 0.0);
          if (extras.instance_f1) {
            f1_sum.add(metrics::instance_f1(*label_sets, file.universe->label(x),
                                            c.observed_label()));
          }
        }
        if (extras.top_k_error) {
          topk_sum.add(metrics::top_k_error(c.prediction(), c.observed()));
        }
      }
    }
    const double n = static_cast<double>(file.cases.size());

    if (opts.json) {
      json report;
      report["rule"] = rule.name;
      report["penalty"] = opts.penalty;
      report["cases"] = file.cases.size();
      report["mean_score"] = json_number(mean);
      if (opts.per_instance) {
        json scores = json::array();
        for (double s : per_case) scores.push_back(json_number(s));
        report["per_instance"] = scores;
      }
      json extra;
      if (extras.zero_one) extra["zero-one"] = miss_sum.value() / n;
      if (extras.set_accuracy) extra["set-accuracy"] = 1.0 - miss_sum.value() / n;
      if (extras.top_k_error) extra["top-k-error"] = topk_sum.value() / n;
      if (extras.instance_f1) extra["instance-f1"] = f1_sum.value() / n;
      if (!extra.empty()) report["metrics"] = extra;
      out << report.dump() << "\n";
      return kExitOk;
    }

    out << "rule: " << rule.name << "\n";
    out << "penalty: " << format_number(opts.penalty, opts.digits) << "\n";
    out << "cases: " << file.cases.size() << "\n";
    if (opts.per_instance) {
      for (std::size_t i = 0; i < per_case.size(); ++i) {
        out << "case " << (i + 1) << ": " << format_number(per_case[i], opts.digits)
            << "\n";
      }
    }
    out << "mean score: " << format_number(mean, opts.digits) << "\n";
    if (extras.zero_one) {
      out << "zero-one: " << format_number(miss_sum.value() / n, opts.digits) << "\n";
    }
    if (extras.set_accuracy) {
      out << "set-accuracy: " << format_number(1.0 - miss_sum.value() / n, opts.digits)
          << "\n";
    }
    if (extras.top_k_error) {
      out << "top-k-error: " << format_number(topk_sum.value() / n, opts.digits) << "\n";
    }
    if (extras.instance_f1) {
      out << "instance-f1: " << format_number(f1_sum.value() / n, opts.digits) << "\n";
    }
    return kExitOk;
  });
}

int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    const ScoringRule rule = rule_from_name(opts.rule);
    const PenaltyConfig cfg{opts.penalty};
    if (opts.inputs.empty()) throw std::invalid_argument("no --input given");

    struct Row {
      std::string input;
      std::size_t cases;
      double mean;
    };
    std::vector<Row> rows;
    for (const auto& input : opts.inputs) {
      const EvalFile file = parse_eval_file(input);
      if (file.cases.empty()) {
        throw std::invalid_argument(input + ": input declares no cases");
      }
      rows.push_back({input, file.cases.size(), mean_score(rule, file.cases, cfg)});
    }

    if (opts.json) {
      json report;
      report["rule"] = rule.name;
      report["penalty"] = opts.penalty;
      json inputs = json::array();
      for (const Row& r : rows) {
        json row;
        row["input"] = r.input;
        row["cases"] = r.cases;
        row["mean_score"] = json_number(r.mean);
        inputs.push_back(row);
      }
      report["inputs"] = inputs;
      out << report.dump() << "\n";
      return kExitOk;
    }

    out << "rule: " << rule.name << "\n";
    out << "penalty: " << format_number(opts.penalty, opts.digits) << "\n";
    out << "input\tcases\tmean score\n";
    for (const Row& r : rows) {
      out << r.input << "\t" << r.cases << "\t" << format_number(r.mean, opts.digits)
          << "\n";
    }
    return kExitOk;
  });
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    const EvalFile file = parse_eval_file(opts.input);

    json cases = json::array();
    for (std::size_t i = 0; i < file.cases.size(); ++i) {
      const TopList& t = file.cases[i].prediction();
      const bool valid = is_valid(t);
      const double proxy = proxy_probability(t);
      if (opts.json) {
        json row;
        row["case"] = i + 1;
        row["valid"] = valid;
        row["proxy_probability"] = proxy;
        if (!valid) {
          const TopList sub = largest_valid_sublist(t);
          json sublist;
          sublist["classes"] = sub.class_labels();
          sublist["confidences"] = sub.confidences();
          row["largest_valid_sublist"] = sublist;
        }
        cases.push_back(row);
        continue;
      }
      out << "case " << (i + 1) << ": " << (valid ? "valid" : "invalid")
          << "; pi = " << format_number(proxy, opts.digits);
      if (!valid) {
        out << "; largest valid sublist = "
            << to_string(largest_valid_sublist(t), opts.digits);
      }
      out << "\n";
    }
    if (opts.json) {
      json report;
      report["cases"] = cases;
      out << report.dump() << "\n";
    }
    return kExitOk;
  });
}

namespace {

json breach_to_json(const verify::ConsistencyBreach& breach, unsigned grid) {
  json j;
  j["p_numerators"] = breach.distribution;
  j["grid"] = grid;
  j["candidate_classes"] = breach.candidate.classes;
  j["candidate_numerators"] = breach.candidate.numerators;
  j["candidate_valid"] = breach.candidate.valid;
  j["gap"] = json_number(breach.gap);
  return j;
}

std::string breach_to_string(const verify::ConsistencyBreach& breach, unsigned grid,
                             const UniversePtr& universe, int digits) {
  std::vector<double> probs;
  probs.reserve(breach.distribution.size());
  for (unsigned v : breach.distribution) {
    probs.push_back(static_cast<double>(v) / static_cast<double>(grid));
  }
  std::vector<double> conf;
  conf.reserve(breach.candidate.numerators.size());
  for (unsigned v : breach.candidate.numerators) {
    conf.push_back(static_cast<double>(v) / static_cast<double>(grid));
  }
  const TopList candidate(universe, breach.candidate.classes, std::move(conf));
  return "p = " + format_probs(probs, digits) + "; s = " + to_string(candidate, digits) +
         "; gap = " + format_number(breach.gap, digits);
}

int check_consistency_command(const CheckOptions& opts, std::ostream& out) {
  const ScoringRule rule = rule_from_name(opts.rule);
  verify::ConsistencyOptions oracle_opts;
  oracle_opts.penalty = PenaltyConfig{opts.penalty};
  oracle_opts.budget = opts.budget;
  const auto report =
      verify::check_consistency(rule, opts.m, opts.k, opts.grid, oracle_opts);
  const UniversePtr universe = numbered_universe(opts.m);

  if (opts.json) {
    json j;
    j["oracle"] = "consistency";
    j["rule"] = report.rule;
    j["m"] = report.m;
    j["k"] = report.k;
    j["grid"] = report.grid;
    j["penalty"] = report.c_invalid;
    j["grid_points"] = report.grid_points;
    j["candidates_per_point"] = report.candidates;
    j["strict_expected"] = report.strict_expected;
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back(breach_to_json(v, report.grid));
    j["violations"] = violations;
    json failures = json::array();
    for (const auto& v : report.strictness_failures) {
      failures.push_back(breach_to_json(v, report.grid));
    }
    j["strictness_failures"] = failures;
    j["passed"] = report.passed();
    out << j.dump() << "\n";
    return report.passed() ? kExitOk : kExitViolation;
  }

  out << "oracle: consistency\n";
  out << "rule: " << report.rule << "\n";
  out << "m: " << report.m << "\n";
  out << "k: " << report.k << "\n";
  out << "grid: " << report.grid << "\n";
  out << "penalty: " << format_number(report.c_invalid, opts.digits) << "\n";
  out << "grid points: " << report.grid_points << "\n";
  out << "candidates per point: " << report.candidates << "\n";
  for (const auto& v : report.violations) {
    out << "violation: " << breach_to_string(v, report.grid, universe, opts.digits)
        << "\n";
  }
  for (const auto& v : report.strictness_failures) {
    out << "strictness failure: "
        << breach_to_string(v, report.grid, universe, opts.digits) << "\n";
  }
  out << "violations: " << report.violations.size() << "\n";
  out << "strictness failures: " << report.strictness_failures.size() << "\n";
  out << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
  return report.passed() ? kExitOk : kExitViolation;
}

int check_majorization_command(const CheckOptions& opts, std::ostream& out) {
  const UniversePtr universe = numbered_universe(opts.m);
  const verify::SimplexGrid grid(opts.m, opts.grid);
  std::uint64_t checked = 0;
  std::vector<std::string> failures;
  grid.for_each([&](const std::vector<unsigned>& nums) {
    const Categorical p = verify::SimplexGrid::to_categorical(universe, nums, opts.grid);
    for (std::size_t k = 0; k <= opts.m; ++k) {
      ++checked;
      if (!verify::check_true_list_majorization(p, k)) {
        failures.push_back("p = " + format_probs(p.probs(), opts.digits) +
                           "; k = " + std::to_string(k));
      }
    }
  });

  if (opts.json) {
    json j;
    j["oracle"] = "majorization";
    j["m"] = opts.m;
    j["grid"] = opts.grid;
    j["checked"] = checked;
    j["failures"] = failures;
    j["passed"] = failures.empty();
    out << j.dump() << "\n";
  } else {
    out << "oracle: majorization\n";
    out << "m: " << opts.m << "\n";
    out << "grid: " << opts.grid << "\n";
    out << "checked: " << checked << " (distribution, k) pairs\n";
    for (const auto& f : failures) out << "failure: " << f << "\n";
    out << "result: " << (failures.empty() ? "PASS" : "FAIL") << "\n";
  }
  return failures.empty() ? kExitOk : kExitViolation;
}

int check_comparability_command(const CheckOptions& opts, std::ostream& out) {
  const ScoringRule rule = rule_from_name(opts.rule);
  const UniversePtr universe = numbered_universe(opts.m);
  std::mt19937_64 rng(opts.seed);
  std::size_t failures = 0;
  std::string first_failure;
  for (std::size_t i = 0; i < opts.trials; ++i) {
    const Categorical p = verify::random_categorical(universe, rng);
    const auto result = verify::check_comparability(rule, p);
    if (!result.ok) {
      ++failures;
      if (first_failure.empty()) {
        first_failure = "p = " + format_probs(p.probs(), opts.digits);
      }
    }
  }

  if (opts.json) {
    json j;
    j["oracle"] = "comparability";
    j["rule"] = rule.name;
    j["m"] = opts.m;
    j["trials"] = opts.trials;
    j["seed"] = opts.seed;
    j["failures"] = failures;
    j["passed"] = failures == 0;
    out << j.dump() << "\n";
  } else {
    out << "oracle: comparability\n";
    out << "rule: " << rule.name << "\n";
    out << "m: " << opts.m << "\n";
    out << "trials: " << opts.trials << "\n";
    if (!first_failure.empty()) out << "failure: " << first_failure << "\n";
    out << "result: " << (failures == 0 ? "PASS" : "FAIL") << "\n";
  }
  return failures == 0 ? kExitOk : kExitViolation;
}

int check_schur_command(const CheckOptions& opts, std::ostream& out) {
  const ScoringRule rule = rule_from_name(opts.rule);
  const auto result =
      verify::check_entropy_schur_concavity(rule, opts.m, opts.trials, opts.seed);

  if (opts.json) {
    json j;
    j["oracle"] = "schur";
    j["rule"] = rule.name;
    j["m"] = opts.m;
    j["trials"] = opts.trials;
    j["seed"] = opts.seed;
    j["pairs"] = result.pairs;
    j["passed"] = result.ok;
    out << j.dump() << "\n";
  } else {
    out << "oracle: schur\n";
    out << "rule: " << rule.name << "\n";
    out << "m: " << opts.m << "\n";
    out << "pairs: " << result.pairs << "\n";
    out << "result: " << (result.ok ? "PASS" : "FAIL") << "\n";
  }
  return result.ok ? kExitOk : kExitViolation;
}

int check_alpha_bound_command(const CheckOptions& opts, std::ostream& out) {
  const UniversePtr universe = numbered_universe(opts.m);
  std::mt19937_64 rng(opts.seed);
  std::size_t failures = 0;
  double worst_ratio = 0.0;  // worst observed gap / alpha
  for (std::size_t i = 0; i < opts.trials; ++i) {
    const TopList t = verify::random_alpha_bounded_list(universe, rng);
    const auto result = verify::check_brier_alpha_bound(t, 20, opts.seed + i + 1);
    worst_ratio = std::max(worst_ratio, result.worst_gap / result.alpha);
    if (!result.ok) ++failures;
  }

  if (opts.json) {
    json j;
    j["oracle"] = "alpha-bound";
    j["m"] = opts.m;
    j["trials"] = opts.trials;
    j["seed"] = opts.seed;
    j["worst_gap_over_alpha"] = worst_ratio;
    j["failures"] = failures;
    j["passed"] = failures == 0;
    out << j.dump() << "\n";
  } else {
    out << "oracle: alpha-bound\n";
    out << "m: " << opts.m << "\n";
    out << "trials: " << opts.trials << "\n";
    out << "worst gap / alpha: " << format_number(worst_ratio, opts.digits) << "\n";
    out << "result: " << (failures == 0 ? "PASS" : "FAIL") << "\n";
  }
  return failures == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    if (opts.oracle == "consistency") return check_consistency_command(opts, out);
    if (opts.oracle == "majorization") return check_majorization_command(opts, out);
    if (opts.oracle == "comparability") return check_comparability_command(opts, out);
    if (opts.oracle == "schur") return check_schur_command(opts, out);
    if (opts.oracle == "alpha-bound") return check_alpha_bound_command(opts, out);
    throw std::invalid_argument("unknown oracle: " + opts.oracle);
  });
}

std::vector<ScoreTableRow> score_table_rows() {
  const UniversePtr universe = numbered_universe(5);
  const struct {
    const char* name;
    std::vector<double> probs;
  } distributions[] = {
      {"p(h)", {0.99, 0.01, 0.0, 0.0, 0.0}},
      {"p(m)", {0.5, 0.4, 0.05, 0.03, 0.02}},
      {"p(l)", {0.25, 0.22, 0.2, 0.18, 0.15}},
  };

  std::vector<ScoreTableRow> rows;
  for (const ScoringRule& rule : {brier_rule(), log_rule()}) {
    for (const auto& d : distributions) {
      const Categorical p(universe, d.probs);
      ScoreTableRow row;
      row.distribution = d.name;
      row.rule = rule.name;
      row.scores[0] = expected_score(rule, point_mass(mode(p).front(), universe), p);
      row.scores[1] = expected_score(rule, true_top_list(p, 1), p);
      row.scores[2] = expected_score(rule, true_top_list(p, 2), p);
      row.scores[3] = expected_score(rule, true_top_list(p, 5), p);
      for (std::size_t i = 0; i < 3; ++i) {
        row.has_gap[i] = std::isfinite(row.scores[i]);
        row.gaps[i] =
            row.has_gap[i] ? (row.scores[i] - row.scores[3]) / row.scores[3] : 0.0;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::string format_table_score(double x) {
  if (std::isinf(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

std::string format_table_gap(double gap) {
  const double pct = std::round(gap * 100.0 * 100.0) / 100.0;
  if (pct == 0.0) return "0%";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", pct);
  return buf;
}

}  // namespace

int cmd_table1(const Table1Options& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    const auto rows = score_table_rows();

    if (opts.json) {
      json j;
      json rows_json = json::array();
      for (const auto& row : rows) {
        json r;
        r["distribution"] = row.distribution;
        r["rule"] = row.rule;
        json scores = json::array();
        for (double s : row.scores) scores.push_back(json_number(s));
        r["scores"] = scores;
        json gaps = json::array();
        for (std::size_t i = 0; i < 3; ++i) {
          gaps.push_back(row.has_gap[i] ? json(row.gaps[i]) : json());
        }
        r["gaps"] = gaps;
        rows_json.push_back(r);
      }
      j["columns"] = {"Mode(p)", "T1(p)", "T2(p)", "p"};
      j["rows"] = rows_json;
      out << j.dump() << "\n";
      return kExitOk;
    }

    out << "p\trule\tMode(p)\tT1(p)\tT2(p)\tp\n";
    for (const auto& row : rows) {
      out << row.distribution << "\t" << row.rule;
      for (std::size_t i = 0; i < 3; ++i) {
        out << "\t" << format_table_score(row.scores[i]);
        if (row.has_gap[i]) out << " (" << format_table_gap(row.gaps[i]) << ")";
      }
      out << "\t" << format_table_score(row.scores[3]) << "\n";
    }
    return kExitOk;
  });
}

int cmd_f1_demo(const F1DemoOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    const auto report = metrics::f1_mode_inconsistency_demo();

    if (opts.json) {
      json j;
      j["mode_class"] = report.mode_class;
      j["expected_f1_mode"] = report.expected_f1_mode;
      j["expected_f1_single"] = report.expected_f1_single;
      j["single_beats_mode"] = report.single_beats_mode;
      out << j.dump() << "\n";
      return kExitOk;
    }

    std::string mode_set = report.mode_class;
    std::replace(mode_set.begin(), mode_set.end(), '|', ',');
    out << "mode of p: {" << mode_set << "}\n";
    out << "E[F1({" << mode_set << "}, Y)] = "
        << format_number(report.expected_f1_mode, opts.digits) << "\n";
    out << "E[F1({1}, Y)] = " << format_number(report.expected_f1_single, opts.digits)
        << "\n";
    if (report.single_beats_mode) {
      out << "instance F1 prefers the single label {1} over the mode {" << mode_set
          << "}\n";
    } else {
      out << "instance F1 does not prefer {1} over the mode {" << mode_set << "}\n";
    }
    return kExitOk;
  });
}

}  // namespace toplist::cli
