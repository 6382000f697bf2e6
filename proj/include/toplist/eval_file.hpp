#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "toplist/eval_case.hpp"

namespace toplist::cli {

/// Input error with the 1-based line number it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A parsed evaluation file: a universe declaration followed by cases.
struct EvalFile {
  UniversePtr universe;
  std::vector<EvalCase> cases;
};

/// Parses the JSONL evaluation format. Line 1 must be
///   {"type":"header","classes":["a","b",...]}
/// and every further non-empty line one of
///   {"type":"case","prediction":{"kind":"toplist","classes":[...],"confidences":[...]},"y":"..."}
///   {"type":"case","prediction":{"kind":"hard","class":"..."},"y":"..."}
///   {"type":"case","prediction":{"kind":"dist","probs":[...]},"y":"..."}
/// Hard classes are canonicalized to point-mass top-1 lists and full
/// distributions to top-m lists.
EvalFile parse_eval_file(std::istream& in);
EvalFile parse_eval_file(const std::string& path);

/// Writes the canonical form (every prediction as a toplist case). Numbers
/// round-trip exactly, so parse(serialize(f)) reproduces f.
void serialize_eval_file(const EvalFile& file, std::ostream& out);
std::string serialize_eval_file(const EvalFile& file);

}  // namespace toplist::cli
