#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "alink/alink.h"

static int failures = 0;

#define CHECK(cond)                                               \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: CHECK(%s)\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const char* kScenario =
    "group FreeTimesZ{x,y,z;t}\n"
    "knot k class x y z\n"
    "trace H from k to k latitude 1 points [(+, x), (-, x y)]\n"
    "phi P knot k toroidal [H]\n"
    "element e in P = +1*[x] -1*[z]\n"
    "expect mu H => +1*[x] -1*[z]\n";

static void test_parse_and_print(void) {
  alink_scenario* s = NULL;
  CHECK(alink_scenario_parse(kScenario, "capi", &s) == ALINK_OK);
  CHECK(s != NULL);
  char* text = NULL;
  CHECK(alink_scenario_print(s, &text) == ALINK_OK);
  CHECK(text && strcmp(text, kScenario) == 0);
  alink_string_free(text);
  alink_scenario_free(s);
}

static void test_errors(void) {
  alink_scenario* s = NULL;
  CHECK(alink_scenario_parse("group Free{x}\nknot k class q\n", "bad", &s) == ALINK_PARSE_ERROR);
  CHECK(s == NULL);
  CHECK(strstr(alink_last_error(), "line 2, column 14") != NULL);
  CHECK(strcmp(alink_status_name(ALINK_PARSE_ERROR), "ParseError") == 0);
  CHECK(alink_scenario_parse("group Free{x}\nsphere s unlink k\n", "bad", &s) == ALINK_UNRESOLVED_REFERENCE);
  CHECK(alink_scenario_parse(NULL, "bad", &s) == ALINK_INVALID_ARGUMENT);
  CHECK(alink_scenario_load("/nonexistent.scn", &s) == ALINK_IO);
  CHECK(strcmp(alink_status_name(12345), "Unknown") == 0);

  char* out = NULL;
  CHECK(alink_normalize("Free{x,y}", "x x^-1 y", &out) == ALINK_OK);
  CHECK(out && strcmp(out, "y") == 0);
  alink_string_free(out);
  CHECK(alink_last_error()[0] == '\0');
  CHECK(alink_normalize("Free{x,y}", "w", &out) == ALINK_UNKNOWN_GENERATOR);
  CHECK(alink_normalize("Nope{x}", "x", &out) == ALINK_PARSE_ERROR);
}

static void test_run(void) {
  alink_scenario* s = NULL;
  CHECK(alink_scenario_parse(kScenario, "capi", &s) == ALINK_OK);
  alink_options o;
  alink_options_default(&o);
  CHECK(o.depth > 0 && o.translate_len > 0 && o.support_len > 0);

  alink_report* r = NULL;
  const char* args[] = {"H"};
  CHECK(alink_run(s, "mu", args, 1, &o, &r) == ALINK_OK);
  CHECK(strcmp(alink_report_output(r), "mu H: +1*[x] -1*[z]\n") == 0);
  CHECK(alink_report_exit_code(r) == 0);
  alink_report_free(r);

  o.json = 1;
  const char* dargs[] = {"e", "0"};
  CHECK(alink_run(s, "decide", dargs, 2, &o, &r) == ALINK_OK);
  CHECK(strstr(alink_report_output(r), "\"schema\": 1") != NULL);
  CHECK(strstr(alink_report_output(r), "\"label\": \"H\"") != NULL);
  CHECK(strstr(alink_report_output(r), "\"verdict\": \"equal\"") != NULL);
  alink_report_free(r);

  o.json = 0;
  CHECK(alink_run(s, "examples", NULL, 0, &o, &r) == ALINK_OK);
  CHECK(strstr(alink_report_output(r), "1 passed, 0 failed") != NULL);
  alink_report_free(r);

  const char* missing[] = {"nope"};
  r = NULL;
  CHECK(alink_run(s, "mu", missing, 1, &o, &r) == ALINK_UNRESOLVED_REFERENCE);
  CHECK(r == NULL);
  CHECK(alink_run(NULL, "mu", args, 1, &o, &r) != ALINK_OK);
  o.depth = -1;
  CHECK(alink_run(s, "mu", args, 1, &o, &r) == ALINK_INVALID_ARGUMENT);

  alink_options_default(&o);
  const char* pargs[] = {"50"};
  CHECK(alink_run(NULL, "properties", pargs, 1, &o, &r) == ALINK_OK);
  CHECK(alink_report_exit_code(r) == 0);
  alink_report_free(r);

  alink_scenario_free(s);
  alink_scenario_free(NULL);
  alink_report_free(NULL);
}

int main(void) {
  CHECK(alink_version()[0] != '\0');
  test_parse_and_print();
  test_errors();
  test_run();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
