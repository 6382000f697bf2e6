#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "toplist/eval_file.hpp"
#include "toplist/metrics.hpp"
#include "toplist/scoring.hpp"
#include "toplist/verify.hpp"

namespace py = pybind11;
using namespace toplist;

namespace {

// The universe is immutable, so exposing it through a non-const holder is
// safe and keeps pybind11's shared_ptr support happy.
std::shared_ptr<ClassUniverse> as_mutable(const UniversePtr& universe) {
  return std::const_pointer_cast<ClassUniverse>(universe);
}

void bind_core(py::module_& m) {
  py::class_<ClassUniverse, std::shared_ptr<ClassUniverse>>(m, "ClassUniverse")
      .def(py::init([](std::vector<std::string> labels) {
             return std::make_shared<ClassUniverse>(std::move(labels));
           }),
           py::arg("labels"))
      .def_property_readonly("labels", &ClassUniverse::labels)
      .def_property_readonly("m", &ClassUniverse::size)
      .def("contains", &ClassUniverse::contains, py::arg("label"))
      .def("index_of", &ClassUniverse::index_of, py::arg("label"))
      .def("__len__", &ClassUniverse::size)
      .def("__eq__", [](const ClassUniverse& a, const ClassUniverse& b) { return a == b; },
           py::is_operator());

  m.def("numbered_universe",
        [](std::size_t m_classes) { return as_mutable(numbered_universe(m_classes)); },
        py::arg("m"), "Universe of m classes labeled '1'..'m'");

  py::class_<Categorical>(m, "Categorical")
      .def(py::init<UniversePtr, std::vector<double>>(), py::arg("universe"),
           py::arg("probs"))
      .def_property_readonly(
          "universe", [](const Categorical& p) { return as_mutable(p.universe()); })
      .def_property_readonly("probs", &Categorical::probs)
      .def("prob", py::overload_cast<const std::string&>(&Categorical::prob, py::const_),
           py::arg("label"))
      .def("__len__", &Categorical::size);

  m.def("mode", &mode_labels, py::arg("p"),
        "Labels of the classes attaining the maximal probability");

  py::class_<TopList>(m, "TopList")
      .def(py::init<UniversePtr, const std::vector<std::string>&, std::vector<double>>(),
           py::arg("universe"), py::arg("classes"), py::arg("confidences"))
      .def_property_readonly(
          "universe", [](const TopList& t) { return as_mutable(t.universe()); })
      .def_property_readonly("k", &TopList::k)
      .def_property_readonly("classes", &TopList::class_labels)
      .def_property_readonly("confidences", &TopList::confidences)
      .def("__repr__", [](const TopList& t) { return to_string(t); });

  m.def("proxy_probability", &proxy_probability, py::arg("t"));
  m.def("pad", &pad, py::arg("t"));
  m.def("is_valid", &is_valid, py::arg("t"));
  m.def("is_calibrated", &is_calibrated, py::arg("t"), py::arg("p"),
        py::arg("tol") = 0.0);
  m.def("largest_valid_sublist", &largest_valid_sublist, py::arg("t"));
  m.def("point_mass",
        py::overload_cast<const std::string&, UniversePtr>(&point_mass),
        py::arg("label"), py::arg("universe"));
  m.def("true_top_list", &true_top_list, py::arg("p"), py::arg("k"),
        "Canonical true top-k list of p");
  m.def("true_top_lists", &true_top_lists, py::arg("p"), py::arg("k"),
        "All true top-k lists of p");

  py::enum_<PredictionKind>(m, "PredictionKind")
      .value("HARD", PredictionKind::kHard)
      .value("TOP_LIST", PredictionKind::kTopList)
      .value("DISTRIBUTION", PredictionKind::kDistribution);

  py::class_<EvalCase>(m, "EvalCase")
      .def_static("from_hard", &EvalCase::from_hard, py::arg("label"),
                  py::arg("universe"), py::arg("observed"))
      .def_static("from_top_list", &EvalCase::from_top_list, py::arg("prediction"),
                  py::arg("observed"))
      .def_static("from_distribution", &EvalCase::from_distribution,
                  py::arg("prediction"), py::arg("observed"))
      .def_property_readonly("kind", &EvalCase::kind)
      .def_property_readonly("prediction", &EvalCase::prediction)
      .def_property_readonly("observed", &EvalCase::observed_label);
}

void bind_scoring(py::module_& m) {
  py::class_<ScoringRule>(m, "ScoringRule")
      .def(py::init([](std::string name,
                       std::function<double(const Categorical&, std::size_t)> score,
                       std::function<double(const Categorical&)> entropy,
                       bool strictly_proper) {
             ScoringRule rule;
             rule.name = std::move(name);
             rule.score = std::move(score);
             rule.entropy = std::move(entropy);
             rule.strictly_proper = strictly_proper;
             return rule;
           }),
           py::arg("name"), py::arg("score"), py::arg("entropy"),
           py::arg("strictly_proper") = false)
      .def_readonly("name", &ScoringRule::name)
      .def_readonly("strictly_proper", &ScoringRule::strictly_proper)
      .def("score",
           [](const ScoringRule& rule, const Categorical& p, const std::string& y) {
             return rule.score(p, p.universe()->index_of(y));
           },
           py::arg("p"), py::arg("y"))
      .def("entropy", [](const ScoringRule& rule, const Categorical& p) {
        return rule.entropy(p);
      }, py::arg("p"));

  m.def("brier_rule", &brier_rule);
  m.def("log_rule", &log_rule);

  m.def("padded_score",
        py::overload_cast<const ScoringRule&, const TopList&, const std::string&>(
            &padded_score),
        py::arg("rule"), py::arg("t"), py::arg("y"));
  m.def("penalized_score",
        [](const ScoringRule& rule, const TopList& t, const std::string& y,
           double c_invalid) {
          return penalized_score(rule, t, y, PenaltyConfig{c_invalid});
        },
        py::arg("rule"), py::arg("t"), py::arg("y"), py::arg("c_invalid") = 0.001);
  m.def("expected_score",
        [](const ScoringRule& rule, const TopList& t, const Categorical& p,
           double c_invalid) {
          return expected_score(rule, t, p, PenaltyConfig{c_invalid});
        },
        py::arg("rule"), py::arg("t"), py::arg("p"), py::arg("c_invalid") = 0.001);
  m.def("mean_score",
        [](const ScoringRule& rule, const std::vector<EvalCase>& cases,
           double c_invalid) {
          return mean_score(rule, cases, PenaltyConfig{c_invalid});
        },
        py::arg("rule"), py::arg("cases"), py::arg("c_invalid") = 0.001);
  m.def("padded_brier",
        [](const TopList& t, const std::string& y) {
          return padded_brier(t, t.universe()->index_of(y));
        },
        py::arg("t"), py::arg("y"), "Closed-form padded Brier score");
  m.def("padded_log",
        [](const TopList& t, const std::string& y) {
          return padded_log(t, t.universe()->index_of(y));
        },
        py::arg("t"), py::arg("y"), "Closed-form padded logarithmic score");
}

void bind_metrics(py::module_& m) {
  auto sub = m.def_submodule("metrics", "Baseline and multi-label metrics");

  sub.def("zero_one",
          [](const UniversePtr& universe, const std::string& x, const std::string& y) {
            return metrics::zero_one(*universe, x, y);
          },
          py::arg("universe"), py::arg("x"), py::arg("y"));
  sub.def("top_k_error",
          py::overload_cast<const TopList&, const std::string&>(&metrics::top_k_error),
          py::arg("t"), py::arg("y"));

  py::class_<metrics::LabelSetUniverse>(sub, "LabelSetUniverse")
      .def(py::init<std::vector<std::string>>(), py::arg("labels"))
      .def(py::init<std::vector<std::string>,
                    const std::vector<std::vector<std::string>>&>(),
           py::arg("labels"), py::arg("classes"))
      .def_property_readonly("labels", &metrics::LabelSetUniverse::labels)
      .def_property_readonly(
          "classes",
          [](const metrics::LabelSetUniverse& u) { return as_mutable(u.classes()); })
      .def("encode", &metrics::LabelSetUniverse::encode, py::arg("subset"))
      .def("decode", &metrics::LabelSetUniverse::decode, py::arg("cls"));

  sub.def("instance_f1", &metrics::instance_f1, py::arg("universe"), py::arg("x"),
          py::arg("y"));

  py::class_<metrics::F1DemoReport>(sub, "F1DemoReport")
      .def_readonly("mode_class", &metrics::F1DemoReport::mode_class)
      .def_readonly("expected_f1_mode", &metrics::F1DemoReport::expected_f1_mode)
      .def_readonly("expected_f1_single", &metrics::F1DemoReport::expected_f1_single)
      .def_readonly("single_beats_mode", &metrics::F1DemoReport::single_beats_mode);
  sub.def("f1_mode_inconsistency_demo", &metrics::f1_mode_inconsistency_demo);
}

void bind_verify(py::module_& m) {
  auto sub = m.def_submodule("verify", "Brute-force oracles and property checks");

  py::register_exception<verify::BudgetExceeded>(sub, "BudgetExceeded");

  py::class_<verify::SimplexGrid>(sub, "SimplexGrid")
      .def(py::init<std::size_t, unsigned>(), py::arg("m"), py::arg("denominator"))
      .def_property_readonly("m", &verify::SimplexGrid::m)
      .def_property_readonly("denominator", &verify::SimplexGrid::denominator)
      .def("size", &verify::SimplexGrid::size)
      .def("points", &verify::SimplexGrid::points);

  sub.def("decreasing_rearrangement", &verify::decreasing_rearrangement, py::arg("v"));
  sub.def("majorizes", &verify::majorizes, py::arg("v"), py::arg("w"));
  sub.def("check_true_list_majorization", &verify::check_true_list_majorization,
          py::arg("p"), py::arg("k"));

  py::class_<verify::GridList>(sub, "GridList")
      .def_readonly("classes", &verify::GridList::classes)
      .def_readonly("numerators", &verify::GridList::numerators)
      .def_readonly("valid", &verify::GridList::valid);
  py::class_<verify::ConsistencyBreach>(sub, "ConsistencyBreach")
      .def_readonly("distribution", &verify::ConsistencyBreach::distribution)
      .def_readonly("candidate", &verify::ConsistencyBreach::candidate)
      .def_readonly("gap", &verify::ConsistencyBreach::gap);
  py::class_<verify::ConsistencyReport>(sub, "ConsistencyReport")
      .def_readonly("rule", &verify::ConsistencyReport::rule)
      .def_readonly("m", &verify::ConsistencyReport::m)
      .def_readonly("k", &verify::ConsistencyReport::k)
      .def_readonly("grid", &verify::ConsistencyReport::grid)
      .def_readonly("c_invalid", &verify::ConsistencyReport::c_invalid)
      .def_readonly("grid_points", &verify::ConsistencyReport::grid_points)
      .def_readonly("candidates", &verify::ConsistencyReport::candidates)
      .def_readonly("violations", &verify::ConsistencyReport::violations)
      .def_readonly("strictness_failures",
                    &verify::ConsistencyReport::strictness_failures)
      .def("consistent", &verify::ConsistencyReport::consistent)
      .def("passed", &verify::ConsistencyReport::passed);

  sub.def("check_consistency",
          [](const ScoringRule& rule, std::size_t m, std::size_t k, unsigned grid,
             double c_invalid, std::uint64_t budget) {
            verify::ConsistencyOptions opts;
            opts.penalty = PenaltyConfig{c_invalid};
            opts.budget = budget;
            return verify::check_consistency(rule, m, k, grid, opts);
          },
          py::arg("rule"), py::arg("m"), py::arg("k"), py::arg("grid"),
          py::arg("c_invalid") = 0.001, py::arg("budget") = 100'000'000ULL);

  py::class_<verify::ComparabilityResult>(sub, "ComparabilityResult")
      .def_readonly("ok", &verify::ComparabilityResult::ok)
      .def_readonly("chain", &verify::ComparabilityResult::chain);
  sub.def("check_comparability", &verify::check_comparability, py::arg("rule"),
          py::arg("p"));

  py::class_<verify::AlphaBoundResult>(sub, "AlphaBoundResult")
      .def_readonly("ok", &verify::AlphaBoundResult::ok)
      .def_readonly("alpha", &verify::AlphaBoundResult::alpha)
      .def_readonly("worst_gap", &verify::AlphaBoundResult::worst_gap)
      .def_readonly("samples", &verify::AlphaBoundResult::samples);
  sub.def("check_brier_alpha_bound", &verify::check_brier_alpha_bound, py::arg("t"),
          py::arg("trials"), py::arg("seed"));

  py::class_<verify::SchurResult>(sub, "SchurResult")
      .def_readonly("ok", &verify::SchurResult::ok)
      .def_readonly("pairs", &verify::SchurResult::pairs);
  sub.def("check_entropy_schur_concavity", &verify::check_entropy_schur_concavity,
          py::arg("rule"), py::arg("m"), py::arg("trials"), py::arg("seed"));
}

void bind_eval_file(py::module_& m) {
  py::register_exception<cli::ParseError>(m, "ParseError");

  py::class_<cli::EvalFile>(m, "EvalFile")
      .def_property_readonly(
          "universe", [](const cli::EvalFile& f) { return as_mutable(f.universe); })
      .def_readonly("cases", &cli::EvalFile::cases);

  m.def("parse_eval_file",
        py::overload_cast<const std::string&>(&cli::parse_eval_file), py::arg("path"));
  m.def("parse_eval_string",
        [](const std::string& text) {
          std::istringstream in(text);
          return cli::parse_eval_file(in);
        },
        py::arg("text"));
  m.def("serialize_eval_file",
        py::overload_cast<const cli::EvalFile&>(&cli::serialize_eval_file),
        py::arg("file"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Consistent evaluation of probabilistic top-k list predictions";
  bind_core(m);
  bind_scoring(m);
  bind_metrics(m);
  bind_verify(m);
  bind_eval_file(m);
}
