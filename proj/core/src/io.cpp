//
// Copyright 2026 The privpoly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "privpoly/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "privpoly/errors.hpp"

namespace privpoly {
namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void line_error(std::size_t lineno, const std::string& message) {
  throw ParseError("line " + std::to_string(lineno) + ": " + message);
}

std::uint8_t parse_bit(const std::string& token, std::size_t lineno) {
  if (token == "0") return 0;
  if (token == "1") return 1;
  line_error(lineno, "expected 0 or 1, got '" + token + "'");
}

// Splits "a, b, c" into trimmed tokens.
std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      tokens.push_back(trim(line.substr(start)));
      return tokens;
    }
    tokens.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

void append_family(const FamilyDescriptor& desc, std::string* out) {
  *out += "  \"family\": {\n";
  *out += "    \"kind\": \"" + family_kind_token(desc.kind) + "\",\n";
  *out += "    \"k\": " + std::to_string(desc.k) + ",\n";
  if (desc.kind == FamilyKind::kROfK) {
    *out += "    \"r\": " + std::to_string(desc.r) + ",\n";
  }
  *out += "    \"m\": " + std::to_string(desc.m) + ",\n";
  *out += "    \"gamma\": " + format_double17(desc.gamma) + ",\n";
  *out += "    \"t\": " + std::to_string(desc.t) + ",\n";
  *out += "    \"norm_bound\": " + format_double17(desc.norm_bound) + "\n";
  *out += "  },\n";
}

double json_double(const json& node, const std::string& key) {
  if (!node.contains(key) || !node[key].is_number()) {
    throw ParseError("missing or non-numeric field '" + key + "'");
  }
  const double v = node[key].get<double>();
  if (!std::isfinite(v)) throw ParseError("field '" + key + "' is not finite");
  return v;
}

std::int64_t json_int(const json& node, const std::string& key) {
  if (!node.contains(key) || !node[key].is_number_integer()) {
    throw ParseError("missing or non-integer field '" + key + "'");
  }
  return node[key].get<std::int64_t>();
}

}  // namespace

ParsedBits parse_bits_csv(std::istream& in) {
  ParsedBits parsed;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    BitRow row;
    if (body.find(',') != std::string::npos) {
      for (const std::string& token : split_commas(body)) {
        row.bits.push_back(parse_bit(token, lineno));
      }
    } else {
      for (char c : body) {
        if (c != '0' && c != '1') {
          line_error(lineno, std::string("unexpected character '") + c +
                                 "' in compact bit row");
        }
        row.bits.push_back(c == '1' ? 1 : 0);
      }
    }
    if (parsed.rows.empty()) {
      parsed.width = static_cast<int>(row.bits.size());
      if (parsed.width == 0) line_error(lineno, "empty row");
    } else if (static_cast<int>(row.bits.size()) != parsed.width) {
      line_error(lineno, "row has " + std::to_string(row.bits.size()) +
                             " bits, previous rows have " +
                             std::to_string(parsed.width));
    }
    parsed.rows.push_back(std::move(row));
  }
  return parsed;
}

DecisionList parse_declist(const std::string& text, int k, int m) {
  DecisionList list;
  const std::vector<std::string> segments = split_commas(text);
  bool saw_default = false;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string& seg = segments[i];
    if (seg.empty()) throw ParseError("empty segment in decision list");
    if (saw_default) {
      throw ParseError("'default' must be the last segment");
    }
    const std::size_t colon = seg.find(':');
    if (colon == std::string::npos) {
      throw ParseError("segment '" + seg + "' is missing ':'");
    }
    const std::string head = trim(seg.substr(0, colon));
    const std::string tail = trim(seg.substr(colon + 1));
    std::uint8_t bit;
    if (tail == "0") {
      bit = 0;
    } else if (tail == "1") {
      bit = 1;
    } else {
      throw ParseError("output in '" + seg + "' must be 0 or 1");
    }
    if (head == "default") {
      list.default_output = bit;
      saw_default = true;
      continue;
    }
    DecisionRule rule;
    std::string name = head;
    if (!name.empty() && name[0] == '!') {
      rule.negated = true;
      name = trim(name.substr(1));
    }
    if (name.size() < 2 || name[0] != 'x') {
      throw ParseError("expected a literal like 'x3' or '!x3', got '" + head +
                       "'");
    }
    int var = 0;
    for (std::size_t p = 1; p < name.size(); ++p) {
      if (name[p] < '0' || name[p] > '9') {
        throw ParseError("bad variable number in '" + head + "'");
      }
      var = var * 10 + (name[p] - '0');
      if (var > m + 1) break;
    }
    if (var < 1 || var > m) {
      throw ParseError("variable in '" + head + "' must lie in x1..x" +
                       std::to_string(m));
    }
    rule.variable = var - 1;
    rule.output = bit;
    list.rules.push_back(rule);
  }
  if (!saw_default) {
    throw ParseError("decision list must end with 'default:<bit>'");
  }
  if (static_cast<int>(list.rules.size()) > k) {
    throw ParseError("decision list has " + std::to_string(list.rules.size()) +
                     " rules, family allows at most " + std::to_string(k));
  }
  return list;
}

std::vector<DecisionList> parse_declist_file(std::istream& in, int k, int m) {
  std::vector<DecisionList> lists;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    try {
      lists.push_back(parse_declist(body, k, m));
    } catch (const ParseError& e) {
      line_error(lineno, e.what());
    }
  }
  return lists;
}

std::string format_double17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string family_kind_token(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kDisjunction:
      return "disj";
    case FamilyKind::kROfK:
      return "rofk";
    case FamilyKind::kDecisionList:
      return "declist";
  }
  throw InvalidArgument("unknown family kind");
}

FamilyKind family_kind_from_token(const std::string& token) {
  if (token == "disj") return FamilyKind::kDisjunction;
  if (token == "rofk") return FamilyKind::kROfK;
  if (token == "declist") return FamilyKind::kDecisionList;
  throw ParseError("unknown family kind '" + token +
                   "' (expected disj, rofk or declist)");
}

std::string serialize_summary(const Summary& summary) {
  std::string out = "{\n";
  out += "  \"format_version\": 1,\n";
  append_family(summary.family, &out);
  out += "  \"n\": " + std::to_string(summary.n) + ",\n";
  if (std::isinf(summary.budget.epsilon)) {
    out += "  \"epsilon\": \"inf\",\n";
  } else {
    out += "  \"epsilon\": " + format_double17(summary.budget.epsilon) + ",\n";
  }
  out += "  \"delta\": " + format_double17(summary.budget.delta) + ",\n";
  out += "  \"noise_scale\": " + format_double17(summary.noise_scale) + ",\n";
  if (summary.seed.has_value()) {
    out += "  \"seed\": " + std::to_string(*summary.seed) + ",\n";
  }
  out += "  \"coeff_order\": \"graded-lex\",\n";
  out += "  \"coeffs\": [\n";
  for (std::size_t i = 0; i < summary.coeffs.values.size(); ++i) {
    out += "    " + format_double17(summary.coeffs.values[i]);
    out += i + 1 < summary.coeffs.values.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

Summary parse_summary(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("summary is not valid JSON: ") + e.what());
  }
  if (!root.is_object() || json_int(root, "format_version") != 1) {
    throw ParseError("unsupported summary format_version");
  }
  if (!root.contains("family") || !root["family"].is_object()) {
    throw ParseError("missing 'family' object");
  }
  const json& fam = root["family"];
  if (!fam.contains("kind") || !fam["kind"].is_string()) {
    throw ParseError("missing family kind");
  }

  FamilyDescriptor desc;
  desc.kind = family_kind_from_token(fam["kind"].get<std::string>());
  desc.k = static_cast<int>(json_int(fam, "k"));
  if (desc.kind == FamilyKind::kROfK) {
    desc.r = static_cast<int>(json_int(fam, "r"));
    if (desc.r < 1 || desc.r > desc.k) {
      throw ParseError("need 1 <= r <= k in the family descriptor");
    }
  } else if (fam.contains("r")) {
    throw ParseError("'r' is only valid for r-of-k families");
  }
  desc.m = static_cast<int>(json_int(fam, "m"));
  desc.gamma = json_double(fam, "gamma");
  desc.t = static_cast<int>(json_int(fam, "t"));
  desc.norm_bound = json_double(fam, "norm_bound");
  if (desc.k < 1) throw ParseError("k must be at least 1");
  if (desc.m < 1) throw ParseError("m must be at least 1");
  if (!(desc.gamma > 0.0 && desc.gamma < 1.0)) {
    throw ParseError("gamma must lie in (0, 1)");
  }
  if (desc.t < 1) throw ParseError("t must be at least 1");
  if (!(desc.norm_bound > 0.0)) throw ParseError("norm_bound must be positive");

  PrivacyBudget budget;
  if (root.contains("epsilon") && root["epsilon"].is_string()) {
    if (root["epsilon"].get<std::string>() != "inf") {
      throw ParseError("epsilon must be a positive number or \"inf\"");
    }
    budget.epsilon = std::numeric_limits<double>::infinity();
  } else {
    budget.epsilon = json_double(root, "epsilon");
  }
  budget.delta = json_double(root, "delta");
  try {
    validate_budget(budget);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }

  const std::int64_t n = json_int(root, "n");
  if (n < 1) throw ParseError("n must be at least 1");

  if (!root.contains("coeff_order") ||
      root["coeff_order"].get<std::string>() != "graded-lex") {
    throw ParseError("coeff_order must be \"graded-lex\"");
  }
  if (!root.contains("coeffs") || !root["coeffs"].is_array()) {
    throw ParseError("missing 'coeffs' array");
  }

  Summary summary{desc,
                  n,
                  budget,
                  json_double(root, "noise_scale"),
                  CoefficientVector(MonomialIndexSpace(
                      static_cast<std::uint32_t>(desc.m),
                      static_cast<std::uint32_t>(desc.t))),
                  std::nullopt};
  const json& coeffs = root["coeffs"];
  if (coeffs.size() != summary.coeffs.space.size()) {
    throw ParseError("coeffs has " + std::to_string(coeffs.size()) +
                     " entries, the monomial space needs " +
                     std::to_string(summary.coeffs.space.size()));
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_number()) throw ParseError("coeffs must be numbers");
    const double v = coeffs[i].get<double>();
    if (!std::isfinite(v)) throw ParseError("coeffs must be finite");
    summary.coeffs.values[i] = v;
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
      throw ParseError("seed must be an unsigned integer");
    }
    summary.seed = root["seed"].get<std::uint64_t>();
  }

  const double expected_scale = noise_scale(
      budget, summary.coeffs.space.size(),
      sensitivity_bound(desc.norm_bound, n));
  if (std::abs(summary.noise_scale - expected_scale) >
      1e-9 * std::max(1.0, expected_scale)) {
    throw ParseError(
        "noise_scale " + format_double17(summary.noise_scale) +
        " is inconsistent with the declared family and budget (expected " +
        format_double17(expected_scale) + ")");
  }
  return summary;
}

std::string serialize_audit_report(const AuditReport& report) {
  std::string out = "{\n";
  out +=
      "  \"note\": \"audit tool: compares against the raw database; its "
      "output is NOT privacy-preserving\",\n";
  append_family(report.family, &out);
  out += "  \"n\": " + std::to_string(report.n) + ",\n";
  if (std::isinf(report.budget.epsilon)) {
    out += "  \"epsilon\": \"inf\",\n";
  } else {
    out += "  \"epsilon\": " + format_double17(report.budget.epsilon) + ",\n";
  }
  out += "  \"delta\": " + format_double17(report.budget.delta) + ",\n";
  out += "  \"beta\": " + format_double17(report.beta) + ",\n";
  out += "  \"sampled\": " + std::string(report.sampled ? "true" : "false") +
         ",\n";
  out += "  \"queries_audited\": " + std::to_string(report.queries_audited) +
         ",\n";
  out += "  \"max_abs_error\": " + format_double17(report.max_abs_error) +
         ",\n";
  std::string worst;
  for (std::uint8_t b : report.worst_query.bits) worst += b ? '1' : '0';
  out += "  \"worst_query\": \"" + worst + "\",\n";
  out += "  \"alpha_bound\": " + format_double17(report.alpha_bound) +
         ",\n";
  out += "  \"pass\": " + std::string(report.pass ? "true" : "false") + ",\n";
  out += "  \"runtime_ms\": " + format_double17(report.runtime_ms) + "\n";
  out += "}\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

}  // namespace privpoly
