#include "nfq/report.hpp"

#include <cmath>
#include <sstream>

#include "nfq/error.hpp"
#include "nfq/poly.hpp"
#include "nfq/spec_io.hpp"

namespace nfq {

using nlohmann::json;

namespace {

json int_json(const mpz_class& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json rat_json(const mpq_class& q) {
  if (q.get_den() == 1) return int_json(q.get_num());
  return q.get_str();
}

json real_json(const Real& x) { return x.to_double(); }

json int_matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json poly_json(const poly::ZPoly& f) {
  json out = json::array();
  for (const auto& c : f) out.push_back(int_json(c));
  return out;
}

json elem_json(const FieldElement& x) {
  json out = json::array();
  for (const auto& c : x.coords) out.push_back(rat_json(c));
  return out;
}

std::vector<std::string> json_string_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(ErrorKind::kInvalidInput, where + ": expected a list");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (item.is_string()) out.push_back(item.get<std::string>());
    else if (item.is_number_unsigned() || item.is_number_integer()) out.push_back(item.dump());
    else fail(ErrorKind::kInvalidInput, where + ": entries must be strings or integers");
  }
  return out;
}

std::uint64_t json_u64(const json& v, const std::string& where) {
  const mpz_class z = json_integer(v, where);
  if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64) fail(ErrorKind::kInvalidInput, where + ": out of range");
  return std::stoull(z.get_str());
}

double json_double(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = v.get<std::string>();
      const double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
  }
  fail(ErrorKind::kInvalidInput, where + ": expected a real number");
}

unsigned resolved_precision(const FieldBundle& b, const RunConfig& c) {
  const unsigned p = c.precision_bits.value_or(b.field.precision_bits);
  if (p < 64) fail(ErrorKind::kInvalidInput, "precision must be at least 64 bits");
  return p;
}

std::vector<std::string> resolved_primes(const FieldBundle& b, const RunConfig& c) {
  return c.s_primes.value_or(b.s_primes);
}

FieldElement element_from_coords(const NumberField& field, const std::vector<mpq_class>& coords, const std::string& what) {
  if (static_cast<int>(coords.size()) != field.degree)
    fail(ErrorKind::kInvalidInput, what + ": expected " + std::to_string(field.degree) + " coordinates");
  return FieldElement{coords};
}

// ---------------------------------------------------------------------------

json cmd_invariants(const FieldBundle& b, unsigned prec) {
  const NumberField& k = b.field;
  const EmbeddingData emb = embeddings(k, prec);
  const Real d = abs(det(emb.minkowski));
  const Real target = sqrt(Real(mpz_class(abs(k.field_disc)), prec));
  const Real rel = abs(d - target) / target;
  json basis = json::array();
  for (std::size_t i = 0; i < k.integral_basis.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k.integral_basis.cols(); ++j) row.push_back(rat_json(k.integral_basis(i, j)));
    basis.push_back(row);
  }
  json real_roots = json::array(), complex_roots = json::array();
  for (const auto& r : emb.real_roots) real_roots.push_back(real_json(r));
  for (const auto& z : emb.complex_roots) complex_roots.push_back({real_json(z.re), real_json(z.im)});
  return {{"n", k.degree},
          {"n1", k.real_places},
          {"n2", k.complex_places},
          {"m", k.unit_rank},
          {"disc", int_json(k.field_disc)},
          {"poly_disc", int_json(k.poly_disc)},
          {"index", int_json(k.index)},
          {"maximal_order_assumed", k.maximal_order_assumed},
          {"integral_basis", basis},
          {"real_roots", real_roots},
          {"complex_roots", complex_roots},
          {"minkowski",
           {{"abs_det", real_json(d)},
            {"sqrt_abs_disc", real_json(target)},
            {"relative_error", real_json(rel)},
            {"tolerance_log2", -static_cast<long>(prec / 4)},
            {"ok", rel < two_pow_neg(prec / 4, prec)}}}};
}

json cmd_factor(const FieldBundle& b, const RunConfig& c) {
  if (!c.ideal) fail(ErrorKind::kInvalidInput, "factor needs --ideal or --element");
  const NumberField& k = b.field;
  const FractionalIdeal I = ideal_from_json(k, *c.ideal);
  const Factorization f = factor_ideal(k, I, c.effort);
  return {{"ideal", {{"denominator", int_json(I.denominator)}, {"hnf", int_matrix_json(I.basis)}}},
          {"norm", rat_json(ideal_norm(I))},
          {"factors", factorization_to_json(f)},
          {"reassembly_ok", reassemble(k, f) == I}};
}

json cmd_estimate(const FieldBundle& b, const RunConfig& c, const std::vector<PrimeIdeal>& S) {
  const NumberField& k = b.field;
  if (c.target == "unit") return sunit_estimate_to_json(estimate_unit(k, c.tau, c.model));
  if (c.target == "sunit") {
    json out = sunit_estimate_to_json(estimate_sunit(k, S, c.tau, c.model));
    json primes = json::array();
    for (const auto& P : S) primes.push_back(prime_to_json(P));
    out["s"] = primes;
    return out;
  }
  if (c.target == "cgp") {
    const CGPEstimate e = estimate_cgp(k, c.tau, c.model);
    return {{"formula", estimate_to_json(e.formula)},
            {"actual", sunit_estimate_to_json(e.actual)},
            {"scgp", scgp_to_json(e.scgp)}};
  }
  if (c.target == "pip") {
    if (!c.ideal) fail(ErrorKind::kInvalidInput, "estimate pip needs --ideal or --element");
    const PIPEstimate e = estimate_pip(k, ideal_from_json(k, *c.ideal), c.tau, c.model, c.effort);
    json out = sunit_estimate_to_json(e.estimate);
    out["factors"] = factorization_to_json(e.factorization);
    out["log2_norm_dI"] = e.log2_norm_dI;
    out["log2_norm_dO"] = e.log2_norm_dO;
    out["sum_log2_norm_support"] = e.sum_log2_norm_support;
    out["support_within_norm"] = e.support_within_norm;
    return out;
  }
  if (c.target == "hsp") {
    const double lip = lip_log_bound(k, S, c.model);
    const double q = estimate_Q(k.unit_rank, lip, c.hsp, c.model);
    const double reg = q * k.unit_rank;
    return {{"lip_log2", lip},
            {"Q", q},
            {"first_register_qubits", reg},
            {"oracle_register_qubits", reg},
            {"total", reg + reg},
            {"label", kSurrogateLabel}};
  }
  fail(ErrorKind::kInvalidInput, "unknown estimate target \"" + c.target + "\" (unit, sunit, cgp, pip, hsp)");
}

std::optional<FieldElement> periodicity_unit(const FieldBundle& b, const RunConfig& c) {
  if (c.unit) return element_from_coords(b.field, *c.unit, "unit");
  if (b.s_unit) return element_from_coords(b.field, *b.s_unit, "field spec: s_unit");
  if (b.field.degree == 2 && b.field.real_places == 2)
    return quadratic_unit_element(b.field, fundamental_unit_real_quadratic(quadratic_radicand(b.field)));
  return std::nullopt;
}

CommandResult cmd_verify(const FieldBundle& b, const RunConfig& c, const SContext& ctx) {
  CommandResult out;
  if (c.target == "lemma1" || c.target == "lemma2") {
    const LemmaReport r = c.target == "lemma1" ? verify_lemma1(ctx, c.trials, c.seed) : verify_lemma2(ctx, c.trials, c.seed);
    out.report = lemma_to_json(r);
    out.verified = r.passed();
    return out;
  }
  if (c.target != "periodicity") fail(ErrorKind::kInvalidInput, "unknown verify kind \"" + c.target + "\" (lemma1, lemma2, periodicity)");
  if (c.trials < 1) fail(ErrorKind::kInvalidInput, "trials must be >= 1");
  const auto unit = periodicity_unit(b, c);
  if (!unit) fail(ErrorKind::kInvalidInput, "periodicity needs an S-unit (--unit or \"s_unit\" in the field spec)");

  json failures = json::array();
  std::size_t periodic = 0;
  Real max_residual(ctx.precision_bits);
  std::vector<long> valuations;
  for (std::size_t t = 0; t < c.trials; ++t) {
    TrialRng rng(c.seed + t);
    const GroupPoint x = random_point(ctx, rng);
    const PeriodicityResult r = check_periodicity(ctx, x, *unit);
    valuations = r.valuations_used;
    if (r.comparison.residual > max_residual) max_residual = r.comparison.residual;
    if (r.periodic) ++periodic;
    else failures.push_back({{"seed_offset", t}, {"reason", "lattices differ"}});
  }
  json mismatch = nullptr;
  if (!ctx.primes.empty()) {
    std::vector<long> wrong = valuations;
    wrong[0] += 1;
    TrialRng rng(c.seed);
    const PeriodicityResult r = check_periodicity(ctx, random_point(ctx, rng), *unit, wrong);
    mismatch = {{"valuations", wrong}, {"periodic", r.periodic}};
    if (r.periodic) failures.push_back({{"seed_offset", 0}, {"reason", "mismatched valuations reported periodic"}});
  }
  out.verified = failures.empty();
  out.report = {{"kind", "periodicity"},
                {"unit", elem_json(*unit)},
                {"valuations", valuations},
                {"trials", c.trials},
                {"seed", c.seed},
                {"periodic_trials", periodic},
                {"max_residual", real_json(max_residual)},
                {"tolerance_log2", -static_cast<long>(ctx.precision_bits / 4)},
                {"mismatch", mismatch},
                {"failures", failures},
                {"passed", out.verified}};
  return out;
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    if (v.empty()) rows.emplace_back(prefix, "{}");
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (v.is_array()) {
    if (v.empty()) rows.emplace_back(prefix, "[]");
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (v.is_string()) {
    rows.emplace_back(prefix, v.get<std::string>());
  } else {
    rows.emplace_back(prefix, v.dump());
  }
}

}  // namespace

FieldBundle load_field_bundle(const std::string& json_text) {
  FieldBundle b;
  b.source = parse_json_document(json_text);
  b.field = field_from_json(b.source);
  if (b.source.contains("s_primes")) b.s_primes = json_string_list(b.source["s_primes"], "field spec: s_primes");
  if (b.source.contains("s_unit")) b.s_unit = json_rational_vector(b.source["s_unit"], "field spec: s_unit");
  return b;
}

json config_to_json(const RunConfig& c) {
  const CostModel& m = c.model;
  json out = {{"command", c.command},
              {"target", c.target},
              {"format", c.format},
              {"field_path", c.field_path},
              {"seed", c.seed},
              {"trials", c.trials},
              {"precision_bits", c.precision_bits ? json(*c.precision_bits) : json(nullptr)},
              {"tau", c.tau},
              {"effort", c.effort},
              {"cost_model",
               {{"c_deg5", m.c_deg5},
                {"c_deg4_disc", m.c_deg4_disc},
                {"c_deg4_s", m.c_deg4_s},
                {"c_tau", m.c_tau},
                {"c_pip", m.c_pip},
                {"c_cgp", m.c_cgp},
                {"c_lip", m.c_lip},
                {"amplification", m.amplification},
                {"norm_log_base", log_base_name(m.norm_log_base)}}},
              {"hsp",
               {{"log2_a", c.hsp.log2_a},
                {"r", c.hsp.r},
                {"epsilon", c.hsp.epsilon},
                {"eta", c.hsp.eta},
                {"delta", c.hsp.delta},
                {"lambda1_star_lower", c.hsp.lambda1_star_lower}}},
              {"s_primes", c.s_primes ? json(*c.s_primes) : json(nullptr)},
              {"ideal", c.ideal ? *c.ideal : json(nullptr)},
              {"unit", nullptr}};
  if (c.unit) {
    json u = json::array();
    for (const auto& q : *c.unit) u.push_back(rat_json(q));
    out["unit"] = u;
  }
  return out;
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::kInvalidInput, "config: expected an object");
  RunConfig c;
  auto has = [&](const char* key) { return doc.contains(key) && !doc[key].is_null(); };
  auto str = [&](const char* key) {
    if (!doc[key].is_string()) fail(ErrorKind::kInvalidInput, std::string("config: ") + key + " must be a string");
    return doc[key].get<std::string>();
  };
  if (has("command")) c.command = str("command");
  if (has("target")) c.target = str("target");
  if (has("format")) c.format = str("format");
  if (has("field_path")) c.field_path = str("field_path");
  if (has("seed")) c.seed = json_u64(doc["seed"], "config: seed");
  if (has("trials")) c.trials = json_u64(doc["trials"], "config: trials");
  if (has("precision_bits")) {
    const auto p = json_u64(doc["precision_bits"], "config: precision_bits");
    if (p < 64 || p > 4096) fail(ErrorKind::kInvalidInput, "config: precision_bits must lie in [64, 4096]");
    c.precision_bits = static_cast<unsigned>(p);
  }
  if (has("tau")) c.tau = json_double(doc["tau"], "config: tau");
  if (!(c.tau > 0)) fail(ErrorKind::kInvalidInput, "config: tau must be positive");
  if (has("effort")) c.effort = json_u64(doc["effort"], "config: effort");
  if (has("cost_model")) {
    const json& m = doc["cost_model"];
    if (!m.is_object()) fail(ErrorKind::kInvalidInput, "config: cost_model must be an object");
    auto get = [&](const char* key, double& slot) {
      if (m.contains(key) && !m[key].is_null()) slot = json_double(m[key], std::string("config: cost_model.") + key);
    };
    get("c_deg5", c.model.c_deg5);
    get("c_deg4_disc", c.model.c_deg4_disc);
    get("c_deg4_s", c.model.c_deg4_s);
    get("c_tau", c.model.c_tau);
    get("c_pip", c.model.c_pip);
    get("c_cgp", c.model.c_cgp);
    get("c_lip", c.model.c_lip);
    if (m.contains("amplification") && !m["amplification"].is_null())
      c.model.amplification = static_cast<long>(json_u64(m["amplification"], "config: cost_model.amplification"));
    if (m.contains("norm_log_base") && !m["norm_log_base"].is_null()) {
      const json& nb = m["norm_log_base"];
      c.model.norm_log_base = parse_log_base(nb.is_string() ? nb.get<std::string>() : nb.dump());
    }
    c.model.validate();
  }
  if (has("hsp")) {
    const json& h = doc["hsp"];
    if (!h.is_object()) fail(ErrorKind::kInvalidInput, "config: hsp must be an object");
    auto get = [&](const char* key, double& slot) {
      if (h.contains(key) && !h[key].is_null()) slot = json_double(h[key], std::string("config: hsp.") + key);
    };
    get("log2_a", c.hsp.log2_a);
    get("r", c.hsp.r);
    get("epsilon", c.hsp.epsilon);
    get("eta", c.hsp.eta);
    get("delta", c.hsp.delta);
    get("lambda1_star_lower", c.hsp.lambda1_star_lower);
  }
  if (has("s_primes")) c.s_primes = json_string_list(doc["s_primes"], "config: s_primes");
  if (has("ideal")) c.ideal = doc["ideal"];
  if (has("unit")) c.unit = json_rational_vector(doc["unit"], "config: unit");
  if (c.format != "json" && c.format != "table") fail(ErrorKind::kInvalidInput, "config: format must be json or table");
  return c;
}

CommandResult run_command(const FieldBundle& b, const RunConfig& config) {
  RunConfig c = config;
  c.precision_bits = resolved_precision(b, c);
  c.s_primes = resolved_primes(b, c);
  c.model.validate();
  if (!(c.tau > 0)) fail(ErrorKind::kInvalidInput, "tau must be positive");

  CommandResult out;
  json result;
  const bool needs_s = c.command == "verify" || (c.command == "estimate" && (c.target == "sunit" || c.target == "hsp"));
  std::vector<PrimeIdeal> S;
  if (needs_s) S = parse_prime_set(b.field, *c.s_primes);

  if (c.command == "invariants") {
    result = cmd_invariants(b, *c.precision_bits);
  } else if (c.command == "factor") {
    result = cmd_factor(b, c);
  } else if (c.command == "estimate") {
    result = cmd_estimate(b, c, S);
  } else if (c.command == "scgp") {
    result = scgp_to_json(build_scgp(b.field, c.model.norm_log_base));
  } else if (c.command == "verify") {
    if (c.trials < 1) fail(ErrorKind::kInvalidInput, "trials must be >= 1");
    const SContext ctx = make_context(b.field, S, *c.precision_bits);
    CommandResult v = cmd_verify(b, c, ctx);
    json primes = json::array();
    for (const auto& P : S) primes.push_back(prime_to_json(P));
    v.report["s"] = primes;
    result = std::move(v.report);
    out.verified = v.verified;
  } else {
    fail(ErrorKind::kInvalidInput, "unknown command \"" + c.command + "\"");
  }

  out.report = {{"command", c.command},
                {"config", config_to_json(c)},
                {"field",
                 {{"name", b.field.name},
                  {"poly", poly_json(b.field.defining_poly)},
                  {"precision_bits", b.field.precision_bits}}},
                {"result", std::move(result)}};
  return out;
}

json prime_to_json(const PrimeIdeal& P) {
  return {{"label", prime_label(P)},
          {"p", int_json(P.p)},
          {"f", P.f},
          {"e", P.e},
          {"norm", int_json(P.norm)},
          {"generator_poly", poly_json(P.generator_poly)}};
}

json factorization_to_json(const Factorization& f) {
  json out = json::array();
  for (const auto& [P, k] : f.factors) {
    json item = prime_to_json(P);
    item["exponent"] = k;
    out.push_back(item);
  }
  return out;
}

json estimate_to_json(const ResourceEstimate& e) {
  json terms = json::array();
  for (const auto& [name, value] : e.terms) terms.push_back({{"name", name}, {"value", value}});
  json inputs = {{"degree_symbol", e.inputs.degree_symbol},
                 {"degree", e.inputs.degree_value},
                 {"log2_disc", e.inputs.log2_disc},
                 {"sum_log2_norm", e.inputs.sum_log2_norm},
                 {"log2_inv_tau", e.inputs.log2_inv_tau},
                 {"extra", json::object()}};
  for (const auto& [k, v] : e.inputs.extra) inputs["extra"][k] = v;
  return {{"formula_id", e.formula_id}, {"terms", terms}, {"total", e.total}, {"inputs", inputs}, {"label", e.label}};
}

json sunit_estimate_to_json(const SUnitEstimate& e) {
  return {{"m_form", estimate_to_json(e.m_form)}, {"n_form", estimate_to_json(e.n_form)}};
}

json scgp_to_json(const SCGPReport& r) {
  json primes = json::array();
  for (const auto& P : r.prime_ideals) primes.push_back(prime_to_json(P));
  return {{"norm_bound", r.norm_bound},
          {"log_base", log_base_name(r.log_base)},
          {"rational_primes", r.rational_primes},
          {"rational_prime_count", r.rational_primes.size()},
          {"prime_ideals", primes},
          {"count", r.count},
          {"prime_power_estimate", r.prime_power_estimate},
          {"skipped_index_divisors", r.skipped_index_divisors}};
}

json lemma_to_json(const LemmaReport& r) {
  json ratios = json::array();
  for (const auto& x : r.ratios) ratios.push_back(real_json(x));
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"seed_offset", f.seed_offset}, {"reason", f.reason}});
  json out = {{"kind", r.lemma},
              {"seed", r.seed},
              {"trials", r.trials},
              {"evaluated", r.evaluated},
              {"skipped", r.skipped},
              {"ratios", ratios},
              {"ratio_trials", r.ratio_trial},
              {"max_ratio", real_json(r.max_ratio)},
              {"median_ratio", real_json(r.median_ratio)},
              {"predicted_bound_shape", r.predicted_bound_shape},
              {"predicted_bound_value", real_json(r.predicted_bound_value)},
              {"failures", failures},
              {"passed", r.passed()}};
  if (r.lemma == "lemma2") {
    out["pure_u_trials"] = r.pure_u_trials;
    out["pure_u_max_deviation"] = real_json(r.pure_u_max_deviation);
    out["chain_checked"] = r.chain_checked;
  }
  return out;
}

std::string render_table(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return os.str();
}

}  // namespace nfq
