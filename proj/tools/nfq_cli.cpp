#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nfq.h"

using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

struct Owned {
  char* s = nullptr;
  ~Owned() { nfq_string_free(s); }
};

struct FieldHandle {
  nfq_field* f = nullptr;
  ~FieldHandle() { nfq_field_free(f); }
};

int fail_with(int code, const std::string& msg) {
  std::cerr << "nfq: " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Number-field qubit-count estimator and verifier"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string field_path, ideal_path, element, format = "json", log_base = "e", s_primes, unit;
  std::optional<double> tau;
  std::optional<std::uint64_t> seed, trials, effort;
  std::optional<unsigned> precision;
  std::optional<double> c_deg5, c_deg4_disc, c_deg4_s, c_tau, c_pip, c_cgp, c_lip;
  std::optional<long> amplification;
  std::optional<double> eta, delta, epsilon, lambda1, log2_a, hsp_r;

  app.add_option("--field", field_path, "field-spec JSON file")->envname("NFQ_FIELD");
  auto* ideal_opt = app.add_option("--ideal", ideal_path, "ideal-spec JSON file")->envname("NFQ_IDEAL");
  auto* elem_opt = app.add_option("--element", element, "principal ideal generator, comma-separated coordinates")
                       ->envname("NFQ_ELEMENT");
  ideal_opt->excludes(elem_opt);
  app.add_option("--tau", tau, "error bound tau > 0")->envname("NFQ_TAU");
  app.add_option("--seed", seed, "64-bit seed")->envname("NFQ_SEED");
  app.add_option("--trials", trials, "verification trials")->envname("NFQ_TRIALS");
  app.add_option("--precision", precision, "working precision in bits")->envname("NFQ_PRECISION");
  app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}))->envname("NFQ_FORMAT");
  app.add_option("--norm-log-base", log_base, "log base in the S_CGP norm bound")
      ->check(CLI::IsMember({"e", "2", "10"}))
      ->envname("NFQ_NORM_LOG_BASE");
  app.add_option("--effort", effort, "integer factoring effort bound")->envname("NFQ_EFFORT");
  auto* s_opt = app.add_option("--s-primes", s_primes, "prime set, e.g. \"5:0,13\"")->envname("NFQ_S_PRIMES");
  auto* unit_opt = app.add_option("--unit", unit, "S-unit for periodicity, comma-separated coordinates")->envname("NFQ_UNIT");
  app.add_option("--c-deg5", c_deg5)->envname("NFQ_C_DEG5");
  app.add_option("--c-deg4-disc", c_deg4_disc)->envname("NFQ_C_DEG4_DISC");
  app.add_option("--c-deg4-s", c_deg4_s)->envname("NFQ_C_DEG4_S");
  app.add_option("--c-tau", c_tau)->envname("NFQ_C_TAU");
  app.add_option("--c-pip", c_pip)->envname("NFQ_C_PIP");
  app.add_option("--c-cgp", c_cgp)->envname("NFQ_C_CGP");
  app.add_option("--c-lip", c_lip)->envname("NFQ_C_LIP");
  app.add_option("--amplification", amplification)->envname("NFQ_AMPLIFICATION");
  app.add_option("--eta", eta)->envname("NFQ_ETA");
  app.add_option("--delta", delta)->envname("NFQ_DELTA");
  app.add_option("--epsilon", epsilon)->envname("NFQ_EPSILON");
  app.add_option("--lambda1-star", lambda1)->envname("NFQ_LAMBDA1_STAR");
  app.add_option("--log2-a", log2_a)->envname("NFQ_LOG2_A");
  app.add_option("--hsp-r", hsp_r)->envname("NFQ_HSP_R");
  auto* version = app.add_flag("--version", "print the library version");

  std::string target, kind;
  app.add_subcommand("invariants", "field invariants and the Minkowski determinant check");
  app.add_subcommand("factor", "prime factorization of a fractional ideal");
  app.add_subcommand("estimate", "qubit-count upper-bound surrogates")
      ->add_option("target", target, "unit | sunit | cgp | pip | hsp")
      ->required()
      ->check(CLI::IsMember({"unit", "sunit", "cgp", "pip", "hsp"}));
  app.add_subcommand("scgp", "the prime set S_CGP");
  app.add_subcommand("verify", "seeded verification runs")
      ->add_option("kind", kind, "lemma1 | lemma2 | periodicity")
      ->required()
      ->check(CLI::IsMember({"lemma1", "lemma2", "periodicity"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (*version) {
      std::cout << nfq_version() << "\n";
      return 0;
    }
    app.exit(e);
    return 2;
  }
  if (field_path.empty()) return fail_with(2, "--field is required");

  const std::string command = app.get_subcommands().front()->get_name();
  json config = {{"command", command}, {"format", format}, {"field_path", field_path}};
  if (!target.empty()) config["target"] = target;
  if (!kind.empty()) config["target"] = kind;
  if (tau) config["tau"] = *tau;
  if (seed) config["seed"] = *seed;
  if (trials) config["trials"] = *trials;
  if (precision) config["precision_bits"] = *precision;
  if (effort) config["effort"] = *effort;
  json model = {{"norm_log_base", log_base}};
  auto put = [](json& obj, const char* key, const std::optional<double>& v) {
    if (v) obj[key] = *v;
  };
  put(model, "c_deg5", c_deg5);
  put(model, "c_deg4_disc", c_deg4_disc);
  put(model, "c_deg4_s", c_deg4_s);
  put(model, "c_tau", c_tau);
  put(model, "c_pip", c_pip);
  put(model, "c_cgp", c_cgp);
  put(model, "c_lip", c_lip);
  if (amplification) model["amplification"] = *amplification;
  config["cost_model"] = model;
  json hsp = json::object();
  put(hsp, "eta", eta);
  put(hsp, "delta", delta);
  put(hsp, "epsilon", epsilon);
  put(hsp, "lambda1_star_lower", lambda1);
  put(hsp, "log2_a", log2_a);
  put(hsp, "r", hsp_r);
  config["hsp"] = hsp;
  if (s_opt->count() > 0) config["s_primes"] = split_list(s_primes);
  if (unit_opt->count() > 0) config["unit"] = split_list(unit);
  if (!element.empty()) config["ideal"] = {{"element", split_list(element)}};
  if (!ideal_path.empty()) {
    std::ifstream in(ideal_path);
    if (!in) return fail_with(2, "cannot read ideal spec " + ideal_path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      config["ideal"] = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      return fail_with(2, ideal_path + ": malformed JSON: " + e.what());
    }
  }

  FieldHandle field;
  if (int rc = nfq_field_load_file(field_path.c_str(), &field.f); rc != NFQ_OK) return fail_with(rc, nfq_last_error());

  Owned report;
  const std::string config_text = config.dump();
  const int rc = nfq_run(field.f, config_text.c_str(), &report.s);
  const std::string err = nfq_last_error();
  if (report.s) {
    if (format == "table") {
      Owned table;
      if (nfq_render_table(report.s, &table.s) != NFQ_OK) return fail_with(5, nfq_last_error());
      std::cout << table.s;
    } else {
      std::cout << report.s;
    }
    std::cout.flush();
  }
  if (rc != NFQ_OK) return fail_with(rc, err);
  return 0;
}
