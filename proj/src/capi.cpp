#include "alink/alink.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "alink/error.hpp"
#include "alink/scenario.hpp"

struct alink_scenario {
  alink::Scenario value;
};

struct alink_report {
  std::string output;
  int exit_code = 0;
};

namespace {

thread_local std::string last_error;

template <class F>
int guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return ALINK_OK;
  } catch (const alink::Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ALINK_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ALINK_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) alink::fail(alink::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* alink_version(void) { return "1.0.0"; }

const char* alink_status_name(int status) {
  if (status == ALINK_OK) return "Ok";
  if (status == ALINK_INTERNAL) return "Internal";
  if (status >= ALINK_UNKNOWN_GENERATOR && status <= ALINK_IO)
    return alink::error_code_name(static_cast<alink::ErrorCode>(status));
  return "Unknown";
}

const char* alink_last_error(void) { return last_error.c_str(); }

void alink_options_default(alink_options* opts) {
  if (!opts) return;
  const alink::RunOptions d;
  opts->depth = d.bounds.depth;
  opts->translate_len = d.bounds.translate_len;
  opts->support_len = d.bounds.support_len;
  opts->json = 0;
  opts->strict = 0;
  opts->strict_sign = 0;
  opts->timing = 0;
  opts->seed = d.seed;
}

int alink_scenario_parse(const char* text, const char* name, alink_scenario** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new alink_scenario{alink::parse_scenario(text, name ? name : "")};
  });
}

int alink_scenario_load(const char* path, alink_scenario** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new alink_scenario{alink::load_scenario(path)};
  });
}

int alink_scenario_print(const alink_scenario* scenario, char** out) {
  return guarded([&] {
    require(scenario, "scenario");
    require(out, "out");
    *out = copy_string(alink::print_scenario(scenario->value));
  });
}

void alink_scenario_free(alink_scenario* scenario) { delete scenario; }

int alink_run(const alink_scenario* scenario, const char* command, const char* const* args, size_t nargs,
              const alink_options* opts, alink_report** out) {
  return guarded([&] {
    require(command, "command");
    require(out, "out");
    if (nargs) require(args, "args");
    alink::RunOptions o;
    if (opts) {
      if (opts->depth < 0 || opts->translate_len < 0 || opts->support_len < 0)
        alink::fail(alink::ErrorCode::InvalidArgument, "bounds must be nonnegative");
      o.bounds.depth = opts->depth;
      o.bounds.translate_len = opts->translate_len;
      o.bounds.support_len = opts->support_len;
      o.json = opts->json != 0;
      o.strict = opts->strict != 0;
      o.strict_sign = opts->strict_sign != 0;
      o.timing = opts->timing != 0;
      o.seed = opts->seed;
    }
    std::vector<std::string> a;
    for (size_t i = 0; i < nargs; ++i) {
      require(args[i], "argument");
      a.emplace_back(args[i]);
    }
    const alink::Report r = alink::run_command(scenario ? &scenario->value : nullptr, command, a, o);
    *out = new alink_report{o.json ? r.json : r.text, r.exit_code};
  });
}

const char* alink_report_output(const alink_report* report) { return report ? report->output.c_str() : ""; }

int alink_report_exit_code(const alink_report* report) { return report ? report->exit_code : 1; }

void alink_report_free(alink_report* report) { delete report; }

int alink_normalize(const char* group_spec, const char* word, char** out) {
  return guarded([&] {
    require(group_spec, "group_spec");
    require(word, "word");
    require(out, "out");
    const alink::GroupPtr g = alink::make_group(alink::parse_group_spec(group_spec));
    *out = copy_string(g->format(g->parse(word)));
  });
}

void alink_string_free(char* s) { std::free(s); }

}  // extern "C"
