#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revzeta/sft.hpp"
#include "revzeta/sofic.hpp"

namespace revzeta::io {

/// The one input format: a JSON document describing either a matrix-form
/// shift-reversal system ("sft") or a labeled presentation ("sofic").
struct SystemDocument {
  std::string kind;  // "sft" | "sofic"
  int order = 2;     // 2r, even and >= 2

  // sft
  std::vector<std::string> alphabet;
  std::vector<std::vector<int>> A, J;

  // sofic
  struct Edge {
    std::string from, to, label;
    bool operator==(const Edge&) const = default;
  };
  std::vector<std::string> states, label_alphabet;
  std::vector<Edge> edges;
  std::vector<std::pair<std::string, std::string>> tau;  // label -> label

  bool operator==(const SystemDocument&) const = default;
};

/// Parses and schema-checks a document; throws ParseError carrying the full
/// list of violations, not just the first.
SystemDocument parse_system_text(const std::string& text);

/// Reads a file, or resolves the built-in fixture name "paper-example-6".
SystemDocument parse_system_source(const std::string& path_or_name);

nlohmann::json emit_system(const SystemDocument& doc);

/// The built-in 7-symbol order-6 fixture.
SystemDocument paper_example_6();

sft::ReversalSFT to_sft(const SystemDocument& doc);
sofic::LabeledPresentation to_sofic(const SystemDocument& doc);

}  // namespace revzeta::io
