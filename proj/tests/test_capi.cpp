#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "nfq.h"

using nlohmann::json;

namespace {

std::string field_file(const char* name) { return std::string(NFQ_DATA_DIR) + "/fields/" + name + ".json"; }

struct Field {
  nfq_field* f = nullptr;
  explicit Field(const char* name) { REQUIRE(nfq_field_load_file(field_file(name).c_str(), &f) == NFQ_OK); }
  ~Field() { nfq_field_free(f); }
};

json take(char* s) {
  REQUIRE(s != nullptr);
  json out = json::parse(s);
  nfq_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("field loading errors") {
  nfq_field* f = nullptr;
  CHECK(nfq_field_load("{\"poly\": [1,", &f) == NFQ_ERR_INPUT);
  CHECK(f == nullptr);
  CHECK(std::string(nfq_last_error()).find("line") != std::string::npos);
  CHECK(nfq_field_load("{\"poly\": [-1, 0]}", &f) == NFQ_ERR_INPUT);
  CHECK(nfq_field_load_file("/nonexistent/field.json", &f) == NFQ_ERR_INPUT);
  CHECK(nfq_field_load(nullptr, &f) == NFQ_ERR_INPUT);
  CHECK(nfq_field_load("{\"poly\": [1, 0]}", &f) == NFQ_OK);
  CHECK(std::string(nfq_last_error()).empty());
  nfq_field_free(f);
}

TEST_CASE("invariants report") {
  Field k("qi");
  char* out = nullptr;
  REQUIRE(nfq_invariants(k.f, nullptr, &out) == NFQ_OK);
  const json r = take(out);
  CHECK(r["result"]["n"] == 2);
  CHECK(r["result"]["n1"] == 0);
  CHECK(r["result"]["n2"] == 1);
  CHECK(r["result"]["m"] == 0);
  CHECK(r["result"]["disc"] == -4);
  CHECK(r["result"]["minkowski"]["ok"] == true);
  CHECK(r["config"]["command"] == "invariants");
  CHECK(r["config"]["precision_bits"] == 128);
}

TEST_CASE("factor report") {
  Field k("qi");
  char* out = nullptr;
  REQUIRE(nfq_factor_ideal(k.f, "{\"element\": [30, 0]}", nullptr, &out) == NFQ_OK);
  const json r = take(out);
  CHECK(r["result"]["factors"].size() == 4);
  CHECK(r["result"]["reassembly_ok"] == true);
  CHECK(r["result"]["norm"] == 900);
  CHECK(nfq_factor_ideal(k.f, "{\"element\": [0, 0]}", nullptr, &out) == NFQ_ERR_INPUT);
  CHECK(nfq_factor_ideal(k.f, "{\"element\": [1000036000099, 0]}", "{\"effort\": 1}", &out) == NFQ_ERR_RESOURCE);
}

TEST_CASE("index divisor is a resource error") {
  Field k("qsqrt5_half");
  char* out = nullptr;
  CHECK(nfq_factor_ideal(k.f, "{\"element\": [2, 0]}", nullptr, &out) == NFQ_ERR_RESOURCE);
  CHECK(std::string(nfq_last_error()).find("index divisor") != std::string::npos);
}

TEST_CASE("estimate targets") {
  Field k("qi");
  char* out = nullptr;
  REQUIRE(nfq_estimate(k.f, "pip", "{\"ideal\": {\"element\": [30, 0]}, \"tau\": 0.001}", &out) == NFQ_OK);
  json r = take(out);
  bool found = false;
  for (const auto& t : r["result"]["m_form"]["terms"])
    if (t["name"] == "factoring log2 N(dI) + log2 N(dO)") {
      found = true;
      CHECK(std::fabs(t["value"].get<double>() - std::log2(900.0)) < 1e-12);
    }
  CHECK(found);
  REQUIRE(nfq_estimate(k.f, "cgp", nullptr, &out) == NFQ_OK);
  r = take(out);
  CHECK(r["result"].contains("formula"));
  CHECK(r["result"].contains("actual"));
  CHECK(r["result"]["scgp"]["count"].get<int>() > 0);
  CHECK(nfq_estimate(k.f, "bogus", nullptr, &out) == NFQ_ERR_INPUT);
  CHECK(nfq_estimate(k.f, "unit", "{\"tau\": -1}", &out) == NFQ_ERR_INPUT);
  CHECK(nfq_estimate(k.f, "unit", "{\"cost_model\": {\"c_deg5\": 0}}", &out) == NFQ_ERR_INPUT);
}

TEST_CASE("verify statuses") {
  Field q2("qsqrt2");
  char* out = nullptr;
  REQUIRE(nfq_verify(q2.f, "periodicity", "{\"trials\": 10, \"seed\": 3}", &out) == NFQ_OK);
  json r = take(out);
  CHECK(r["result"]["passed"] == true);
  CHECK(r["result"]["periodic_trials"] == 10);
  CHECK(nfq_verify(q2.f, "periodicity", "{\"trials\": 2, \"unit\": [3, 0]}", &out) == NFQ_ERR_VERIFICATION);
  CHECK(nfq_verify(q2.f, "lemma2", "{\"trials\": 0}", &out) == NFQ_ERR_INPUT);
  CHECK(nfq_verify(q2.f, "lemma3", "{\"trials\": 1}", &out) == NFQ_ERR_INPUT);
}

TEST_CASE("reports are deterministic by seed") {
  Field k("cubic2");
  char *a = nullptr, *b = nullptr, *c = nullptr;
  REQUIRE(nfq_verify(k.f, "lemma1", "{\"trials\": 12, \"seed\": 77}", &a) == NFQ_OK);
  REQUIRE(nfq_verify(k.f, "lemma1", "{\"trials\": 12, \"seed\": 77}", &b) == NFQ_OK);
  REQUIRE(nfq_verify(k.f, "lemma1", "{\"trials\": 12, \"seed\": 78}", &c) == NFQ_OK);
  CHECK(std::strcmp(a, b) == 0);
  CHECK(std::strcmp(a, c) != 0);
  nfq_string_free(a);
  nfq_string_free(b);
  nfq_string_free(c);
}

TEST_CASE("table rendering is derived from the JSON report") {
  Field k("qi");
  char* out = nullptr;
  REQUIRE(nfq_invariants(k.f, "{\"format\": \"table\"}", &out) == NFQ_OK);
  char* table = nullptr;
  REQUIRE(nfq_render_table(out, &table) == NFQ_OK);
  const std::string t = table;
  CHECK(t.find("result.disc") != std::string::npos);
  CHECK(t.find("-4") != std::string::npos);
  CHECK(t.find("config.format") != std::string::npos);
  nfq_string_free(table);
  nfq_string_free(out);
  CHECK(nfq_render_table("{", &table) == NFQ_ERR_INPUT);
}

TEST_CASE("version") { CHECK(std::strlen(nfq_version()) > 0); }
