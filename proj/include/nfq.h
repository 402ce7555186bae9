#ifndef NFQ_H
#define NFQ_H

#if defined(__GNUC__)
#define NFQ_API __attribute__((visibility("default")))
#else
#define NFQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as CLI exit codes. */
typedef enum nfq_status {
  NFQ_OK = 0,
  NFQ_ERR_INPUT = 2,        /* malformed document, bad argument */
  NFQ_ERR_RESOURCE = 3,     /* math failure, unsupported prime, effort exhausted */
  NFQ_ERR_VERIFICATION = 4, /* a verification run or self-check failed */
  NFQ_ERR_INTERNAL = 5
} nfq_status;

typedef struct nfq_field nfq_field;

/* Field from a field-spec JSON document. */
NFQ_API int nfq_field_load(const char* json_text, nfq_field** out);
NFQ_API int nfq_field_load_file(const char* path, nfq_field** out);
NFQ_API void nfq_field_free(nfq_field* field);

/*
 * Every command takes a config JSON object (may be NULL or "{}") and writes a
 * report JSON document to *out_json, to be released with nfq_string_free.
 * nfq_run reads the command from the config's "command" key; the other entry
 * points set it themselves.
 */
NFQ_API int nfq_run(const nfq_field* field, const char* config_json, char** out_json);
NFQ_API int nfq_invariants(const nfq_field* field, const char* config_json, char** out_json);
NFQ_API int nfq_factor_ideal(const nfq_field* field, const char* ideal_json, const char* config_json, char** out_json);
/* target: unit | sunit | cgp | pip | hsp */
NFQ_API int nfq_estimate(const nfq_field* field, const char* target, const char* config_json, char** out_json);
NFQ_API int nfq_scgp(const nfq_field* field, const char* config_json, char** out_json);
/* kind: lemma1 | lemma2 | periodicity. A failed run returns
 * NFQ_ERR_VERIFICATION and still writes the report. */
NFQ_API int nfq_verify(const nfq_field* field, const char* kind, const char* config_json, char** out_json);

/* Two-column text rendering of a report document. */
NFQ_API int nfq_render_table(const char* report_json, char** out_text);

NFQ_API void nfq_string_free(char* s);
/* Message of the last failure on this thread; empty after success. */
NFQ_API const char* nfq_last_error(void);
NFQ_API const char* nfq_version(void);

#ifdef __cplusplus
}
#endif

#endif
