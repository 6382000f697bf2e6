#include "toplist/eval_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "toplist/numeric.hpp"

namespace toplist::cli {

using nlohmann::json;

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

json parse_line(std::size_t line_no, const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
  }
}

std::vector<std::string> string_array(std::size_t line_no, const json& j,
                                      const char* what) {
  if (!j.is_array()) throw ParseError(line_no, std::string(what) + " must be an array");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_string()) {
      throw ParseError(line_no, std::string(what) + " must contain strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<double> number_array(std::size_t line_no, const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(line_no, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_number()) {
      throw ParseError(line_no, std::string(what) + " must contain numbers");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

const json& required(std::size_t line_no, const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(line_no, std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::string required_string(std::size_t line_no, const json& j, const char* key) {
  const json& v = required(line_no, j, key);
  if (!v.is_string()) {
    throw ParseError(line_no, std::string("field \"") + key + "\" must be a string");
  }
  return v.get<std::string>();
}

EvalCase parse_case(std::size_t line_no, const json& j, const UniversePtr& universe) {
  const json& prediction = required(line_no, j, "prediction");
  if (!prediction.is_object()) {
    throw ParseError(line_no, "prediction must be an object");
  }
  const std::string kind = required_string(line_no, prediction, "kind");
  const std::string observed = required_string(line_no, j, "y");
  if (!universe->contains(observed)) {
    throw ParseError(line_no, "undeclared class: " + observed);
  }

  try {
    if (kind == "toplist") {
      auto classes = string_array(line_no, required(line_no, prediction, "classes"),
                                  "prediction classes");
      auto confidences = number_array(
          line_no, required(line_no, prediction, "confidences"), "confidences");
      for (const auto& label : classes) {
        if (!universe->contains(label)) {
          throw ParseError(line_no, "undeclared class: " + label);
        }
      }
      return EvalCase::from_top_list(TopList(universe, classes, std::move(confidences)),
                                     observed);
    }
    if (kind == "hard") {
      const std::string label = required_string(line_no, prediction, "class");
      if (!universe->contains(label)) {
        throw ParseError(line_no, "undeclared class: " + label);
      }
      return EvalCase::from_hard(label, universe, observed);
    }
    if (kind == "dist") {
      auto probs = number_array(line_no, required(line_no, prediction, "probs"), "probs");
      if (probs.size() != universe->size()) {
        throw ParseError(line_no, "probs must list one value per declared class");
      }
      return EvalCase::from_distribution(Categorical(universe, std::move(probs)),
                                         observed);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
  throw ParseError(line_no, "unknown prediction kind: " + kind);
}

}  // namespace

EvalFile parse_eval_file(std::istream& in) {
  EvalFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = parse_line(line_no, line);
    if (!j.is_object()) throw ParseError(line_no, "expected a JSON object");
    const std::string type = required_string(line_no, j, "type");
    if (type == "header") {
      if (file.universe) throw ParseError(line_no, "duplicate header");
      if (!file.cases.empty()) throw ParseError(line_no, "header must precede all cases");
      auto labels = string_array(line_no, required(line_no, j, "classes"), "classes");
      try {
        file.universe = make_universe(std::move(labels));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (type == "case") {
      if (!file.universe) throw ParseError(line_no, "case before header");
      file.cases.push_back(parse_case(line_no, j, file.universe));
    } else {
      throw ParseError(line_no, "unknown record type: " + type);
    }
  }
  if (!file.universe) throw ParseError(line_no, "missing header line");
  return file;
}

EvalFile parse_eval_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open file: " + path);
  return parse_eval_file(in);
}

void serialize_eval_file(const EvalFile& file, std::ostream& out) {
  json header;
  header["type"] = "header";
  header["classes"] = file.universe->labels();
  out << header.dump() << '\n';
  for (const EvalCase& c : file.cases) {
    json prediction;
    prediction["kind"] = "toplist";
    prediction["classes"] = c.prediction().class_labels();
    prediction["confidences"] = c.prediction().confidences();
    json record;
    record["type"] = "case";
    record["prediction"] = prediction;
    record["y"] = c.observed_label();
    out << record.dump() << '\n';
  }
}

std::string serialize_eval_file(const EvalFile& file) {
  std::ostringstream out;
  serialize_eval_file(file, out);
  return out.str();
}

}  // namespace toplist::cli
