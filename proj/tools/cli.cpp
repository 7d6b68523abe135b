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

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "privpoly/approximants.hpp"
#include "privpoly/errors.hpp"
#include "privpoly/families.hpp"
#include "privpoly/harness.hpp"
#include "privpoly/io.hpp"
#include "privpoly/sanitizer.hpp"

namespace privpoly {
namespace {

// Flag combinations CLI11 cannot express (kind-dependent requirements).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_epsilon(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("--eps must be a positive number or 'inf'");
  }
  if (used != text.size() || !(value > 0.0) || std::isnan(value)) {
    throw UsageError("--eps must be a positive number or 'inf'");
  }
  return value;
}

struct FamilySpec {
  std::string kind_token;
  int k = 0;
  int r = 0;
  int m = 0;
  double gamma = 0.1;
};

void check_family_flags(const FamilySpec& spec, bool require_m) {
  const FamilyKind kind = [&] {
    try {
      return family_kind_from_token(spec.kind_token);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }();
  if (spec.k < 1) throw UsageError("--k must be at least 1");
  if (kind == FamilyKind::kROfK) {
    if (spec.r < 1 || spec.r > spec.k) {
      throw UsageError("rofk needs --r with 1 <= r <= k");
    }
  } else if (spec.r != 0) {
    throw UsageError("--r is only valid with --family rofk");
  }
  if (!(spec.gamma > 0.0 && spec.gamma < 1.0)) {
    throw UsageError("--gamma must lie in (0, 1)");
  }
  if (kind == FamilyKind::kDecisionList || require_m) {
    if (spec.m < 1) {
      throw UsageError(require_m ? "this command needs --m (at least 1)"
                                 : "declist families need --m (at least 1)");
    }
  } else if (spec.m < 0) {
    throw UsageError("--m must be at least 1");
  }
}

QueryFamily build_family(const FamilySpec& spec, int m) {
  switch (family_kind_from_token(spec.kind_token)) {
    case FamilyKind::kDisjunction:
      return make_disjunction_family(spec.k, m, spec.gamma);
    case FamilyKind::kROfK:
      return make_r_of_k_family(spec.r, spec.k, m, spec.gamma);
    case FamilyKind::kDecisionList:
      return make_decision_list_family(spec.k, m, spec.gamma);
  }
  throw InvalidArgument("unknown family kind");
}

QueryFamily rebuild_family(const FamilyDescriptor& desc) {
  QueryFamily family = [&] {
    switch (desc.kind) {
      case FamilyKind::kDisjunction:
        return make_disjunction_family(desc.k, desc.m, desc.gamma);
      case FamilyKind::kROfK:
        return make_r_of_k_family(desc.r, desc.k, desc.m, desc.gamma);
      case FamilyKind::kDecisionList:
        return make_decision_list_family(desc.k, desc.m, desc.gamma);
    }
    throw InvalidArgument("unknown family kind");
  }();
  if (family.desc.t != desc.t ||
      std::abs(family.desc.norm_bound - desc.norm_bound) >
          1e-9 * std::max(1.0, desc.norm_bound)) {
    throw InvalidArgument(
        "summary family descriptor does not match a freshly constructed "
        "family (t=" + std::to_string(family.desc.t) + " vs " +
        std::to_string(desc.t) + ")");
  }
  return family;
}

struct Database {
  std::vector<BitRow> bit_rows;
  std::vector<DecisionList> dl_rows;
  bool decision_lists = false;

  std::size_t size() const {
    return decision_lists ? dl_rows.size() : bit_rows.size();
  }
};

Database load_database(const std::string& path, FamilyKind kind, int k, int m) {
  Database db;
  const std::string content = read_file(path);
  std::istringstream stream(content);
  if (kind == FamilyKind::kDecisionList) {
    db.decision_lists = true;
    db.dl_rows = parse_declist_file(stream, k, m);
  } else {
    db.bit_rows = std::move(parse_bits_csv(stream).rows);
  }
  if (db.size() == 0) {
    throw InvalidArgument("database '" + path + "' contains no rows");
  }
  return db;
}

int do_sanitize(const FamilySpec& spec, const std::string& eps_text,
                double delta, std::optional<std::uint64_t> seed,
                const std::string& input, const std::string& output,
                std::ostream& out) {
  const PrivacyBudget budget{parse_epsilon(eps_text), delta};
  const FamilyKind kind = family_kind_from_token(spec.kind_token);

  int m = spec.m;
  Database db;
  if (kind == FamilyKind::kDecisionList) {
    db = load_database(input, kind, spec.k, m);
  } else {
    db = load_database(input, kind, spec.k, 0);
    const int width = static_cast<int>(db.bit_rows[0].bits.size());
    if (m != 0 && m != width) {
      throw InvalidArgument("--m is " + std::to_string(m) + " but '" + input +
                            "' has rows of width " + std::to_string(width));
    }
    m = width;
  }

  const QueryFamily family = build_family(spec, m);
  const Summary summary =
      db.decision_lists ? sanitize(family, db.dl_rows, budget, seed)
                        : sanitize(family, db.bit_rows, budget, seed);
  write_file(output, serialize_summary(summary));
  out << "wrote " << output << " (n=" << summary.n
      << ", coords=" << summary.coeffs.space.size()
      << ", noise_scale=" << format_double17(summary.noise_scale) << ")\n";
  return 0;
}

int do_query(const std::string& summary_path, const std::string& bits,
             bool clamp, std::ostream& out) {
  const Summary summary = parse_summary(read_file(summary_path));
  QueryIndex y;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw UsageError("--y must be a bitstring like 0110");
    }
    y.bits.push_back(c == '1' ? 1 : 0);
  }
  out << format_double17(answer(summary, y, clamp)) << "\n";
  return 0;
}

int do_audit(const std::string& summary_path, const std::string& input,
             const AuditOptions& options, int runs, std::uint64_t runs_seed,
             std::ostream& out) {
  const Summary summary = parse_summary(read_file(summary_path));
  const FamilyDescriptor& desc = summary.family;
  Database db = load_database(input, desc.kind, desc.k, desc.m);

  if (runs == 1) {
    const AuditReport report =
        db.decision_lists ? audit(summary, db.dl_rows, options)
                          : audit(summary, db.bit_rows, options);
    out << serialize_audit_report(report);
    return report.pass ? 0 : 1;
  }

  // Monte Carlo over fresh releases of the same database: re-derives the
  // family from the descriptor and checks the pass rate against beta.
  const QueryFamily family = rebuild_family(desc);
  int passes = 0;
  double worst_error = 0.0;
  double alpha_bound = 0.0;
  for (int i = 0; i < runs; ++i) {
    const std::uint64_t seed = runs_seed + static_cast<std::uint64_t>(i);
    const Summary fresh =
        db.decision_lists
            ? sanitize(family, db.dl_rows, summary.budget, seed)
            : sanitize(family, db.bit_rows, summary.budget, seed);
    const AuditReport report = db.decision_lists
                                   ? audit(fresh, db.dl_rows, options)
                                   : audit(fresh, db.bit_rows, options);
    passes += report.pass ? 1 : 0;
    worst_error = std::max(worst_error, report.max_abs_error);
    alpha_bound = report.alpha_bound;
  }
  const double pass_rate = static_cast<double>(passes) / runs;
  const bool pass = pass_rate >= 1.0 - options.beta - 0.05;
  out << "{\n"
      << "  \"runs\": " << runs << ",\n"
      << "  \"passes\": " << passes << ",\n"
      << "  \"pass_rate\": " << format_double17(pass_rate) << ",\n"
      << "  \"beta\": " << format_double17(options.beta) << ",\n"
      << "  \"alpha_bound\": " << format_double17(alpha_bound) << ",\n"
      << "  \"worst_error\": " << format_double17(worst_error) << ",\n"
      << "  \"pass\": " << (pass ? "true" : "false") << "\n"
      << "}\n";
  return pass ? 0 : 1;
}

int do_approx(const std::string& kind, int k, int r, double gamma,
              bool explicit_path, std::ostream& out) {
  if (kind == "threshold" && explicit_path) {
    const ExplicitThresholdResult result =
        construct_threshold_explicit(r, k, gamma);
    out << "kind: threshold (explicit construction)\n"
        << "k: " << k << "\nr: " << r << "\n"
        << "verified: " << (result.verified ? "true" : "false") << "\n"
        << "detail: " << result.detail << "\n";
    if (result.verified) {
      const UnivariateApproximant& a = result.approximant;
      out << "degree: " << a.poly.degree() << "\n"
          << "achieved_error: " << format_double17(a.gamma) << "\n";
      out << "coeffs:";
      for (double c : a.poly.coeffs) out << " " << format_double17(c);
      out << "\n";
    }
    return result.verified ? 0 : 1;
  }

  UnivariateApproximant approx = [&] {
    if (kind == "or") return construct_or_approximant(k, gamma);
    if (kind == "threshold") return construct_threshold_approximant(r, k, gamma);
    return construct_dl_helper(k, gamma);
  }();
  const FamilyKind family_kind = kind == "dl-helper"
                                     ? FamilyKind::kDecisionList
                                     : FamilyKind::kDisjunction;
  out << "kind: " << kind << "\n"
      << "k: " << k << "\n";
  if (kind == "threshold") out << "r: " << r << "\n";
  out << "degree: " << approx.poly.degree() << "\n"
      << "achieved_error: " << format_double17(approx.gamma) << "\n"
      << "max_abs_coeff: " << format_double17(approx.poly.max_abs_coeff())
      << "\n"
      << "lift_norm_bound: "
      << format_double17(certified_norm_bound(family_kind, approx.poly, k))
      << "\n";
  out << "coeffs:";
  for (double c : approx.poly.coeffs) out << " " << format_double17(c);
  out << "\n";
  return 0;
}

int do_plan(const FamilySpec& spec, const std::string& eps_text, double delta,
            double alpha, double beta, std::ostream& out) {
  const PrivacyBudget budget{parse_epsilon(eps_text), delta};
  const QueryFamily family = build_family(spec, spec.m);
  const std::int64_t n = min_database_size(family.desc, budget, alpha, beta);
  out << "family: " << spec.kind_token << " k=" << spec.k;
  if (family.desc.kind == FamilyKind::kROfK) out << " r=" << spec.r;
  out << " m=" << spec.m << " gamma=" << format_double17(spec.gamma) << "\n"
      << "degree: " << family.desc.t << "\n"
      << "coords: " << family.space.size() << "\n"
      << "norm_bound: " << format_double17(family.desc.norm_bound) << "\n"
      << "min_n: " << n << "\n"
      << "alpha_at_min_n: "
      << format_double17(accuracy_bound(family.desc, n, budget, beta)) << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"differentially private polynomial summaries for disjunction, "
               "r-of-k and decision-list counting queries"};
  app.require_subcommand(1);

  FamilySpec spec;
  std::string eps_text = "1";
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string input_path;
  std::string output_path;
  std::string summary_path;

  CLI::App* san = app.add_subcommand(
      "sanitize", "release a noisy polynomial summary of a database");
  san->add_option("--family", spec.kind_token, "disj, rofk or declist")
      ->required();
  san->add_option("--k", spec.k, "query width bound")->required();
  san->add_option("--r", spec.r, "threshold for rofk");
  san->add_option("--m", spec.m,
                  "number of variables (required for declist, otherwise "
                  "checked against the input width)");
  san->add_option("--gamma", spec.gamma, "approximation error target")
      ->required();
  san->add_option("--eps", eps_text, "epsilon, or 'inf' for a noise-free run")
      ->required();
  san->add_option("--delta", delta, "delta (default 0: pure epsilon)");
  CLI::Option* seed_opt =
      san->add_option("--seed", seed, "RNG seed for a reproducible release");
  san->add_option("--input", input_path, "database file")->required();
  san->add_option("--output", output_path, "summary file to write")->required();

  std::string query_bits;
  bool clamp = false;
  CLI::App* qry = app.add_subcommand("query", "answer one query from a summary");
  qry->add_option("--summary", summary_path, "summary file")->required();
  qry->add_option("--y", query_bits, "query index as a bitstring")->required();
  qry->add_flag("--clamp", clamp, "clamp the answer to [0, 1]");

  double beta = 0.1;
  std::uint64_t sample_count = 0;
  std::uint64_t sample_seed = 1;
  std::uint64_t max_queries = 1'000'000;
  int runs = 1;
  std::uint64_t runs_seed = 1000;
  CLI::App* aud = app.add_subcommand(
      "audit", "compare a summary against the raw database (NOT private)");
  aud->add_option("--summary", summary_path, "summary file")->required();
  aud->add_option("--input", input_path, "database file")->required();
  aud->add_option("--beta", beta, "failure probability for the bound");
  CLI::Option* sample_opt = aud->add_option(
      "--sample", sample_count, "audit this many sampled queries");
  aud->add_option("--sample-seed", sample_seed, "seed for query sampling");
  aud->add_option("--max-queries", max_queries,
                  "refuse exhaustive audits past this many queries");
  aud->add_option("--runs", runs,
                  "Monte Carlo: audit this many fresh releases");
  aud->add_option("--runs-seed", runs_seed, "base seed for --runs");

  std::string approx_kind;
  bool explicit_path = false;
  CLI::App* apx = app.add_subcommand(
      "approx", "fit and print one approximating polynomial");
  apx->add_option("--kind", approx_kind, "or, threshold or dl-helper")
      ->required();
  apx->add_option("--k", spec.k, "query width bound")->required();
  apx->add_option("--r", spec.r, "threshold for kind=threshold");
  apx->add_option("--gamma", spec.gamma, "approximation error target")
      ->required();
  apx->add_flag("--explicit", explicit_path,
                "use the closed-form threshold construction");

  double alpha = 0.0;
  CLI::App* pln = app.add_subcommand(
      "plan", "minimum database size for a target accuracy");
  pln->add_option("--family", spec.kind_token, "disj, rofk or declist")
      ->required();
  pln->add_option("--k", spec.k, "query width bound")->required();
  pln->add_option("--r", spec.r, "threshold for rofk");
  pln->add_option("--m", spec.m, "number of variables")->required();
  pln->add_option("--gamma", spec.gamma, "approximation error target")
      ->required();
  pln->add_option("--alpha", alpha, "target worst-case accuracy")->required();
  pln->add_option("--beta", beta, "failure probability");
  pln->add_option("--eps", eps_text, "epsilon, or 'inf'")->required();
  pln->add_option("--delta", delta, "delta (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (san->parsed()) {
      check_family_flags(spec, false);
      if (!(delta >= 0.0 && delta < 1.0)) {
        throw UsageError("--delta must lie in [0, 1)");
      }
      std::optional<std::uint64_t> maybe_seed;
      if (seed_opt->count() > 0) maybe_seed = seed;
      return do_sanitize(spec, eps_text, delta, maybe_seed, input_path,
                         output_path, out);
    }
    if (qry->parsed()) {
      return do_query(summary_path, query_bits, clamp, out);
    }
    if (aud->parsed()) {
      if (!(beta > 0.0 && beta < 1.0)) {
        throw UsageError("--beta must lie in (0, 1)");
      }
      if (sample_opt->count() > 0 && sample_count == 0) {
        throw UsageError("--sample must be at least 1");
      }
      if (runs < 1) throw UsageError("--runs must be at least 1");
      AuditOptions options;
      options.beta = beta;
      if (sample_opt->count() > 0) options.sample = sample_count;
      options.sample_seed = sample_seed;
      options.max_queries = max_queries;
      return do_audit(summary_path, input_path, options, runs, runs_seed, out);
    }
    if (apx->parsed()) {
      if (approx_kind != "or" && approx_kind != "threshold" &&
          approx_kind != "dl-helper") {
        throw UsageError("--kind must be or, threshold or dl-helper");
      }
      if (spec.k < 1) throw UsageError("--k must be at least 1");
      if (approx_kind == "threshold") {
        if (spec.r < 1 || spec.r > spec.k) {
          throw UsageError("kind=threshold needs --r with 1 <= r <= k");
        }
      } else {
        if (spec.r != 0) throw UsageError("--r is only valid with threshold");
        if (explicit_path) {
          throw UsageError("--explicit is only valid with kind=threshold");
        }
      }
      if (!(spec.gamma > 0.0 && spec.gamma < 1.0)) {
        throw UsageError("--gamma must lie in (0, 1)");
      }
      return do_approx(approx_kind, spec.k, spec.r, spec.gamma, explicit_path,
                       out);
    }
    if (pln->parsed()) {
      check_family_flags(spec, true);
      if (!(delta >= 0.0 && delta < 1.0)) {
        throw UsageError("--delta must lie in [0, 1)");
      }
      if (!(alpha > 0.0 && alpha < 1.0)) {
        throw UsageError("--alpha must lie in (0, 1)");
      }
      if (!(beta > 0.0 && beta < 1.0)) {
        throw UsageError("--beta must lie in (0, 1)");
      }
      return do_plan(spec, eps_text, delta, alpha, beta, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

}  // namespace privpoly
