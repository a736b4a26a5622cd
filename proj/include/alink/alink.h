#ifndef ALINK_H
#define ALINK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ALINK_API __declspec(dllexport)
#else
#define ALINK_API __attribute__((visibility("default")))
#endif

/* Mirrors alink::ErrorCode. */
typedef enum alink_status {
  ALINK_OK = 0,
  ALINK_UNKNOWN_GENERATOR = 1,
  ALINK_SPEC_MISMATCH,
  ALINK_IDENTITY_INPUT,
  ALINK_UNSUPPORTED,
  ALINK_NOT_IN_CENTRALIZER,
  ALINK_ENDPOINT_MISMATCH,
  ALINK_LATITUDE_MISMATCH,
  ALINK_NOT_SELF_TRACE,
  ALINK_NON_VANISHING_LINKING,
  ALINK_DIMENSION_MISMATCH,
  ALINK_PARSE_ERROR,
  ALINK_UNRESOLVED_REFERENCE,
  ALINK_INVARIANT_VIOLATION,
  ALINK_INVALID_ARGUMENT,
  ALINK_OVERFLOW,
  ALINK_IO,
  ALINK_INTERNAL = 100
} alink_status;

typedef struct alink_scenario alink_scenario;
typedef struct alink_report alink_report;

typedef struct alink_options {
  int depth;
  int translate_len;
  int support_len;
  int json;
  int strict;
  int strict_sign;
  int timing;
  uint64_t seed;
} alink_options;

ALINK_API const char* alink_version(void);
ALINK_API const char* alink_status_name(int status);
/* Message of the last failure on the calling thread. */
ALINK_API const char* alink_last_error(void);

ALINK_API void alink_options_default(alink_options* opts);

ALINK_API int alink_scenario_parse(const char* text, const char* name, alink_scenario** out);
ALINK_API int alink_scenario_load(const char* path, alink_scenario** out);
/* Canonical text of the scenario; release with alink_string_free. */
ALINK_API int alink_scenario_print(const alink_scenario* scenario, char** out);
ALINK_API void alink_scenario_free(alink_scenario* scenario);

/* Runs one command. scenario may be NULL for "examples" and "properties". */
ALINK_API int alink_run(const alink_scenario* scenario, const char* command, const char* const* args, size_t nargs,
                        const alink_options* opts, alink_report** out);
/* Text or JSON rendering, selected by opts->json at run time. */
ALINK_API const char* alink_report_output(const alink_report* report);
ALINK_API int alink_report_exit_code(const alink_report* report);
ALINK_API void alink_report_free(alink_report* report);

/* Group word in normal form, e.g. spec "Free{x,y}", word "x x^-1 y". */
ALINK_API int alink_normalize(const char* group_spec, const char* word, char** out);

ALINK_API void alink_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
