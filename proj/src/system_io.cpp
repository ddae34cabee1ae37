#include "revzeta/system_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace revzeta::io {

using nlohmann::json;

namespace {

void parse_matrix(const json& j, const std::string& name, int dim,
                  std::vector<std::vector<int>>& out,
                  std::vector<std::string>& errs) {
  if (!j.contains(name)) {
    errs.push_back("missing matrix '" + name + "'");
    return;
  }
  const json& m = j.at(name);
  if (!m.is_array()) {
    errs.push_back("'" + name + "' is not an array");
    return;
  }
  if (static_cast<int>(m.size()) != dim)
    errs.push_back("'" + name + "' has " + std::to_string(m.size()) +
                   " rows, expected " + std::to_string(dim));
  for (std::size_t i = 0; i < m.size(); ++i) {
    const json& row = m[i];
    std::vector<int> r;
    if (!row.is_array()) {
      errs.push_back("'" + name + "' row " + std::to_string(i) +
                     " is not an array");
      out.push_back(r);
      continue;
    }
    if (static_cast<int>(row.size()) != dim)
      errs.push_back("'" + name + "' row " + std::to_string(i) + " has " +
                     std::to_string(row.size()) + " entries, expected " +
                     std::to_string(dim));
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number_integer() ||
          (row[k] != json(0) && row[k] != json(1))) {
        errs.push_back("'" + name + "' entry (" + std::to_string(i) + "," +
                       std::to_string(k) + ") is not 0 or 1");
        r.push_back(0);
      } else {
        r.push_back(row[k].get<int>());
      }
    }
    out.push_back(r);
  }
}

std::vector<std::string> parse_string_list(const json& j,
                                           const std::string& name,
                                           std::vector<std::string>& errs) {
  std::vector<std::string> out;
  if (!j.contains(name)) {
    errs.push_back("missing '" + name + "'");
    return out;
  }
  if (!j.at(name).is_array()) {
    errs.push_back("'" + name + "' is not an array");
    return out;
  }
  std::set<std::string> seen;
  for (const auto& e : j.at(name)) {
    if (!e.is_string()) {
      errs.push_back("'" + name + "' contains a non-string entry");
      continue;
    }
    std::string s = e.get<std::string>();
    if (!seen.insert(s).second)
      errs.push_back("'" + name + "' has duplicate entry '" + s + "'");
    out.push_back(s);
  }
  return out;
}

}  // namespace

SystemDocument parse_system_text(const std::string& text) {
  std::vector<std::string> errs;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(),
                     {std::string("malformed JSON: ") + e.what()});
  }
  SystemDocument doc;
  if (!j.is_object()) {
    throw ParseError("document is not a JSON object",
                     {"document is not a JSON object"});
  }
  if (!j.contains("kind") || !j.at("kind").is_string())
    errs.push_back("missing or non-string 'kind'");
  else
    doc.kind = j.at("kind").get<std::string>();
  if (doc.kind != "sft" && doc.kind != "sofic")
    errs.push_back("'kind' must be \"sft\" or \"sofic\"");
  if (!j.contains("order") || !j.at("order").is_number_integer())
    errs.push_back("missing or non-integer 'order'");
  else
    doc.order = j.at("order").get<int>();
  if (doc.order < 2 || doc.order % 2 != 0)
    errs.push_back("'order' must be an even integer >= 2, got " +
                   std::to_string(doc.order));

  if (doc.kind == "sft") {
    doc.alphabet = parse_string_list(j, "alphabet", errs);
    int dim = static_cast<int>(doc.alphabet.size());
    parse_matrix(j, "A", dim, doc.A, errs);
    parse_matrix(j, "J", dim, doc.J, errs);
  } else if (doc.kind == "sofic") {
    doc.states = parse_string_list(j, "states", errs);
    doc.label_alphabet = parse_string_list(j, "label_alphabet", errs);
    std::set<std::string> state_set(doc.states.begin(), doc.states.end());
    std::set<std::string> label_set(doc.label_alphabet.begin(),
                                    doc.label_alphabet.end());
    if (!j.contains("edges") || !j.at("edges").is_array())
      errs.push_back("missing or non-array 'edges'");
    else
      for (const auto& e : j.at("edges")) {
        if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
            !e.contains("label") || !e.at("from").is_string() ||
            !e.at("to").is_string() || !e.at("label").is_string()) {
          errs.push_back("edge entries need string fields from/to/label");
          continue;
        }
        SystemDocument::Edge edge{e.at("from").get<std::string>(),
                                  e.at("to").get<std::string>(),
                                  e.at("label").get<std::string>()};
        if (!state_set.count(edge.from))
          errs.push_back("edge 'from' state '" + edge.from + "' unknown");
        if (!state_set.count(edge.to))
          errs.push_back("edge 'to' state '" + edge.to + "' unknown");
        if (!label_set.count(edge.label))
          errs.push_back("edge label '" + edge.label + "' unknown");
        doc.edges.push_back(edge);
      }
    if (!j.contains("tau") || !j.at("tau").is_object())
      errs.push_back("missing or non-object 'tau'");
    else {
      std::set<std::string> images;
      for (const auto& [from, to] : j.at("tau").items()) {
        if (!to.is_string()) {
          errs.push_back("tau values must be strings");
          continue;
        }
        std::string tos = to.get<std::string>();
        if (!label_set.count(from))
          errs.push_back("tau key '" + from + "' is not a label");
        if (!label_set.count(tos))
          errs.push_back("tau value '" + tos + "' is not a label");
        if (!images.insert(tos).second)
          errs.push_back("tau is not injective at value '" + tos + "'");
        doc.tau.emplace_back(from, tos);
      }
      for (const auto& lab : doc.label_alphabet) {
        bool found = false;
        for (const auto& [a, b] : doc.tau) found |= a == lab;
        if (!found) errs.push_back("tau is missing label '" + lab + "'");
      }
    }
    std::sort(doc.tau.begin(), doc.tau.end());
  }
  if (!errs.empty()) {
    std::string what = "system document invalid (" +
                       std::to_string(errs.size()) + " violations)";
    throw ParseError(what, errs);
  }
  return doc;
}

SystemDocument parse_system_source(const std::string& path_or_name) {
  if (path_or_name == "paper-example-6") return paper_example_6();
  std::ifstream in(path_or_name);
  if (!in)
    throw ParseError("cannot read '" + path_or_name + "'",
                     {"cannot read '" + path_or_name + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system_text(ss.str());
}

json emit_system(const SystemDocument& doc) {
  json j;
  j["kind"] = doc.kind;
  j["order"] = doc.order;
  if (doc.kind == "sft") {
    j["alphabet"] = doc.alphabet;
    j["A"] = doc.A;
    j["J"] = doc.J;
  } else {
    j["states"] = doc.states;
    j["label_alphabet"] = doc.label_alphabet;
    json edges = json::array();
    for (const auto& e : doc.edges)
      edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
    j["edges"] = edges;
    json tau = json::object();
    for (const auto& [a, b] : doc.tau) tau[a] = b;
    j["tau"] = tau;
  }
  return j;
}

SystemDocument paper_example_6() {
  SystemDocument doc;
  doc.kind = "sft";
  doc.order = 6;
  doc.alphabet = {"1", "2", "3", "4", "5", "6", "7"};
  doc.A = {{0, 1, 0, 0, 0, 1, 1},
           {0, 0, 0, 0, 0, 0, 1},
           {0, 1, 0, 1, 0, 0, 1},
           {0, 0, 0, 0, 0, 0, 1},
           {0, 0, 0, 1, 0, 1, 1},
           {0, 0, 0, 0, 0, 0, 1},
           {1, 1, 1, 1, 1, 1, 1}};
  doc.J = {{0, 1, 0, 0, 0, 0, 0},
           {0, 0, 1, 0, 0, 0, 0},
           {0, 0, 0, 1, 0, 0, 0},
           {0, 0, 0, 0, 1, 0, 0},
           {0, 0, 0, 0, 0, 1, 0},
           {1, 0, 0, 0, 0, 0, 0},
           {0, 0, 0, 0, 0, 0, 1}};
  return doc;
}

sft::ReversalSFT to_sft(const SystemDocument& doc) {
  if (doc.kind != "sft") throw Error("document is not an sft system");
  int n = static_cast<int>(doc.alphabet.size());
  exact::IntMatrix A(n, n), J(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      A.at(i, j) = doc.A[i][j];
      J.at(i, j) = doc.J[i][j];
    }
  return sft::validate(doc.alphabet, std::move(A), std::move(J),
                       doc.order / 2);
}

sofic::LabeledPresentation to_sofic(const SystemDocument& doc) {
  if (doc.kind != "sofic") throw Error("document is not a sofic system");
  sofic::LabeledPresentation p;
  p.states = doc.states;
  p.label_alphabet = doc.label_alphabet;
  p.r = doc.order / 2;
  std::map<std::string, int> sid, lid;
  for (int i = 0; i < p.nstates(); ++i) sid[p.states[i]] = i;
  for (int i = 0; i < p.nlabels(); ++i) lid[p.label_alphabet[i]] = i;
  for (const auto& e : doc.edges)
    p.edges.push_back({sid.at(e.from), sid.at(e.to), lid.at(e.label)});
  p.tau.assign(p.nlabels(), 0);
  for (const auto& [a, b] : doc.tau) p.tau[lid.at(a)] = lid.at(b);
  sofic::validate_presentation(p);
  return p;
}

}  // namespace revzeta::io
