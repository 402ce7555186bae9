#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nfq/elattice.hpp"
#include "nfq/estimator.hpp"

namespace nfq {

/// A field plus the optional defaults carried in its spec document.
struct FieldBundle {
  NumberField field;
  std::vector<std::string> s_primes;               // "s_primes"
  std::optional<std::vector<mpq_class>> s_unit;    // "s_unit"
  nlohmann::json source;
};

FieldBundle load_field_bundle(const std::string& json_text);

/// Resolved run configuration; echoed into every report.
struct RunConfig {
  std::string command;  // invariants | factor | estimate | scgp | verify
  std::string target;   // estimate target or verify kind
  std::string format = "json";
  std::string field_path;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::optional<unsigned> precision_bits;  // defaults to the field's
  double tau = 1e-3;
  std::uint64_t effort = kDefaultFactorEffort;
  CostModel model;
  HSPOracleParams hsp;
  std::optional<std::vector<std::string>> s_primes;  // defaults to the field's
  std::optional<nlohmann::json> ideal;               // ideal-spec document
  std::optional<std::vector<mpq_class>> unit;        // periodicity element
};

nlohmann::json config_to_json(const RunConfig& config);
/// Accepts the keys written by config_to_json; missing keys keep defaults.
RunConfig config_from_json(const nlohmann::json& doc);

struct CommandResult {
  nlohmann::json report;
  bool verified = true;  // false only for a failed verify run
};

CommandResult run_command(const FieldBundle& bundle, const RunConfig& config);

nlohmann::json prime_to_json(const PrimeIdeal& P);
nlohmann::json factorization_to_json(const Factorization& f);
nlohmann::json estimate_to_json(const ResourceEstimate& e);
nlohmann::json sunit_estimate_to_json(const SUnitEstimate& e);
nlohmann::json scgp_to_json(const SCGPReport& r);
nlohmann::json lemma_to_json(const LemmaReport& r);

/// Two-column text rendering of a report: flattened key path and value.
std::string render_table(const nlohmann::json& report);

}  // namespace nfq
