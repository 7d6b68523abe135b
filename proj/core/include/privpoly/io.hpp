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

#ifndef PRIVPOLY_IO_HPP_
#define PRIVPOLY_IO_HPP_

#include <istream>
#include <string>
#include <vector>

#include "privpoly/families.hpp"
#include "privpoly/harness.hpp"
#include "privpoly/sanitizer.hpp"

namespace privpoly {

struct ParsedBits {
  std::vector<BitRow> rows;
  int width = 0;
};

// One row per line, either comma-separated ("0,1,1") or compact ("011").
// Blank lines and lines starting with '#' are skipped.  Throws ParseError
// with a line number on malformed input or ragged widths.
ParsedBits parse_bits_csv(std::istream& in);

// Decision-list syntax:  [!]x<var>:<bit>, ..., default:<bit>
// Variables are 1-based in the text.  A list may have no rules at all
// ("default:1").  Throws ParseError past k rules or variables above m.
DecisionList parse_declist(const std::string& text, int k, int m);
std::vector<DecisionList> parse_declist_file(std::istream& in, int k, int m);

// Shortest-exact decimal forms are not portable across printf
// implementations, so all doubles are written with %.17g, which
// round-trips bit for bit.
std::string format_double17(double value);

std::string family_kind_token(FamilyKind kind);
FamilyKind family_kind_from_token(const std::string& token);

// Canonical JSON form: fixed key order, %.17g doubles, epsilon written as
// the string "inf" when infinite, "r" present only for r-of-k families and
// "seed" only when the release was seeded.  Two equal summaries serialize
// to identical bytes.
std::string serialize_summary(const Summary& summary);
Summary parse_summary(const std::string& text);

std::string serialize_audit_report(const AuditReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace privpoly

#endif  // PRIVPOLY_IO_HPP_
