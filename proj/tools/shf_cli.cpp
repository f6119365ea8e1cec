// Command line front end. Talks to the library through the C interface only.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "shf/shf.h"

namespace {

int fail(shf_status s) {
  std::fprintf(stderr, "error (%d): %s\n", static_cast<int>(s), shf_last_error());
  return 2;
}

int finish(shf_report* rep) {
  std::fputs(shf_report_text(rep), stdout);
  const int code = shf_report_passed(rep) ? 0 : 1;
  shf_report_free(rep);
  return code;
}

using Runner = shf_status (*)(const shf_config*, shf_report**);

int run_with_config(const std::string& path, const std::vector<std::string>& sets,
                    Runner runner) {
  shf_config* cfg = nullptr;
  shf_status s = shf_config_load(path.c_str(), &cfg);
  if (s != SHF_OK) return fail(s);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      shf_config_free(cfg);
      return 2;
    }
    s = shf_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (s != SHF_OK) {
      shf_config_free(cfg);
      return fail(s);
    }
  }
  shf_report* rep = nullptr;
  s = runner(cfg, &rep);
  shf_config_free(cfg);
  if (s != SHF_OK) return fail(s);
  return finish(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hover-and-fly UAV charging trajectory planner"};
  app.set_version_flag("--version", std::string(shf_version()));
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> sets;
  auto add_config_cmd = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--set", sets, "Override a config key (key=value), repeatable");
    return cmd;
  };
  auto* solve = add_config_cmd("solve", "Solve one instance with the configured algorithms");
  auto* sweep = add_config_cmd("sweep", "Sweep T or V over seeded random topologies");
  auto* verify = add_config_cmd("verify", "Check the optimum against the oracle bounds");
  auto* selftest = app.add_subcommand("selftest", "Run the built-in analytic checks");

  CLI11_PARSE(app, argc, argv);

  if (*solve) return run_with_config(config, sets, shf_run_solve);
  if (*sweep) return run_with_config(config, sets, shf_run_sweep);
  if (*verify) return run_with_config(config, sets, shf_run_verify);
  if (*selftest) {
    shf_report* rep = nullptr;
    const shf_status s = shf_run_selftest(&rep);
    if (s != SHF_OK) return fail(s);
    return finish(rep);
  }
  return 0;
}
