#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "alink/alink.h"

namespace {

int report_error(int status) {
  std::fprintf(stderr, "error: %s: %s\n", alink_status_name(status), alink_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative self-linking numbers: scenario runner"};
  alink_options opts;
  alink_options_default(&opts);
  std::vector<std::string> items;
  bool json = false, strict = false, strict_sign = false, timing = false;

  app.add_option("--depth", opts.depth, "orbit search composition depth")->check(CLI::NonNegativeNumber);
  app.add_option("--translate-len", opts.translate_len, "word length of materialized sphere translates")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--support-len", opts.support_len, "letters per key in explored states")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opts.seed, "seed for the properties command");
  app.add_flag("--json", json, "print the JSON report");
  app.add_flag("--strict", strict, "exit with status 2 when a verdict is unknown");
  app.add_flag("--strict-sign", strict_sign, "compare expected ring values without a global sign flip");
  app.add_flag("--timing", timing, "add wall-clock times to the report");
  app.add_option("items", items, "[scenario.scn] command [args...]")->required();
  app.footer(
      "Commands: normalize <word>, canon <word> [in <ctx>], mu <trace>, lambda <sphere> <knot>,\n"
      "lambda <linktrace>, relative <trace> [phi], decide <elem> <elem> [phi], spherical [phi],\n"
      "quotient [phi], print, examples, properties [count].\n"
      "examples and properties run without a scenario file.");
  CLI11_PARSE(app, argc, argv);
  opts.json = json;
  opts.strict = strict;
  opts.strict_sign = strict_sign;
  opts.timing = timing;

  alink_scenario* scenario = nullptr;
  std::size_t next = 0;
  const bool standalone = items[0] == "examples" || items[0] == "properties";
  if (!standalone) {
    if (items.size() < 2) {
      std::fprintf(stderr, "error: expected a scenario file and a command\n");
      return 1;
    }
    if (int s = alink_scenario_load(items[0].c_str(), &scenario)) return report_error(s);
    next = 1;
  }
  const std::string command = items[next];
  if (command == "print") {
    char* text = nullptr;
    const int s = scenario ? alink_scenario_print(scenario, &text) : ALINK_INVALID_ARGUMENT;
    alink_scenario_free(scenario);
    if (s) return report_error(s);
    std::fputs(text, stdout);
    alink_string_free(text);
    return 0;
  }
  std::vector<const char*> args;
  for (std::size_t i = next + 1; i < items.size(); ++i) args.push_back(items[i].c_str());
  alink_report* report = nullptr;
  const int s = alink_run(scenario, command.c_str(), args.data(), args.size(), &opts, &report);
  alink_scenario_free(scenario);
  if (s) return report_error(s);
  std::fputs(alink_report_output(report), stdout);
  const int code = alink_report_exit_code(report);
  alink_report_free(report);
  return code;
}
