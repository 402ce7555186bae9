#include "nfq.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "nfq/error.hpp"
#include "nfq/report.hpp"
#include "nfq/spec_io.hpp"

struct nfq_field {
  nfq::FieldBundle bundle;
};

namespace {

thread_local std::string last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int status_for(nfq::ErrorKind kind) {
  switch (kind) {
    case nfq::ErrorKind::kInvalidInput: return NFQ_ERR_INPUT;
    case nfq::ErrorKind::kMath:
    case nfq::ErrorKind::kUnsupported:
    case nfq::ErrorKind::kEffort: return NFQ_ERR_RESOURCE;
    case nfq::ErrorKind::kVerification: return NFQ_ERR_VERIFICATION;
  }
  return NFQ_ERR_INTERNAL;
}

template <class F>
int guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const nfq::Error& e) {
    last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NFQ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NFQ_ERR_INTERNAL;
  }
}

nfq::RunConfig parse_config(const char* config_json) {
  if (!config_json || !*config_json) return {};
  return nfq::config_from_json(nfq::parse_json_document(config_json));
}

int run(const nfq_field* field, nfq::RunConfig config, char** out_json) {
  if (!field || !out_json) nfq::fail(nfq::ErrorKind::kInvalidInput, "null argument");
  *out_json = nullptr;
  const nfq::CommandResult r = nfq::run_command(field->bundle, config);
  *out_json = dup_string(r.report.dump(2) + "\n");
  if (!r.verified) {
    last_error = "verification failed";
    const auto& failures = r.report["result"]["failures"];
    if (!failures.empty())
      last_error += " at seed offset " + failures[0]["seed_offset"].dump() + ": " + failures[0]["reason"].get<std::string>();
    return NFQ_ERR_VERIFICATION;
  }
  return NFQ_OK;
}

}  // namespace

extern "C" {

int nfq_field_load(const char* json_text, nfq_field** out) {
  return guarded([&] {
    if (!json_text || !out) nfq::fail(nfq::ErrorKind::kInvalidInput, "null argument");
    *out = nullptr;
    auto* f = new nfq_field{nfq::load_field_bundle(json_text)};
    *out = f;
    return NFQ_OK;
  });
}

int nfq_field_load_file(const char* path, nfq_field** out) {
  return guarded([&] {
    if (!path || !out) nfq::fail(nfq::ErrorKind::kInvalidInput, "null argument");
    std::ifstream in(path);
    if (!in) nfq::fail(nfq::ErrorKind::kInvalidInput, std::string("cannot read field spec ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = nullptr;
    try {
      *out = new nfq_field{nfq::load_field_bundle(ss.str())};
    } catch (const nfq::Error& e) {
      throw nfq::Error(e.kind(), std::string(path) + ": " + e.what());
    }
    return NFQ_OK;
  });
}

void nfq_field_free(nfq_field* field) { delete field; }

int nfq_run(const nfq_field* field, const char* config_json, char** out_json) {
  return guarded([&] { return run(field, parse_config(config_json), out_json); });
}

int nfq_invariants(const nfq_field* field, const char* config_json, char** out_json) {
  return guarded([&] {
    auto c = parse_config(config_json);
    c.command = "invariants";
    return run(field, c, out_json);
  });
}

int nfq_factor_ideal(const nfq_field* field, const char* ideal_json, const char* config_json, char** out_json) {
  return guarded([&] {
    auto c = parse_config(config_json);
    c.command = "factor";
    if (ideal_json) c.ideal = nfq::parse_json_document(ideal_json);
    return run(field, c, out_json);
  });
}

int nfq_estimate(const nfq_field* field, const char* target, const char* config_json, char** out_json) {
  return guarded([&] {
    auto c = parse_config(config_json);
    c.command = "estimate";
    if (target) c.target = target;
    return run(field, c, out_json);
  });
}

int nfq_scgp(const nfq_field* field, const char* config_json, char** out_json) {
  return guarded([&] {
    auto c = parse_config(config_json);
    c.command = "scgp";
    return run(field, c, out_json);
  });
}

int nfq_verify(const nfq_field* field, const char* kind, const char* config_json, char** out_json) {
  return guarded([&] {
    auto c = parse_config(config_json);
    c.command = "verify";
    if (kind) c.target = kind;
    return run(field, c, out_json);
  });
}

int nfq_render_table(const char* report_json, char** out_text) {
  return guarded([&] {
    if (!report_json || !out_text) nfq::fail(nfq::ErrorKind::kInvalidInput, "null argument");
    *out_text = dup_string(nfq::render_table(nfq::parse_json_document(report_json)));
    return NFQ_OK;
  });
}

void nfq_string_free(char* s) { std::free(s); }

const char* nfq_last_error(void) { return last_error.c_str(); }

const char* nfq_version(void) { return "0.1.0"; }

}  // extern "C"
