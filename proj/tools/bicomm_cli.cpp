#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bicomm.h"

namespace {

int report_failure(const char* stage, bicomm_status status) {
  std::fprintf(stderr, "bicomm: %s failed (status %d): %s\n", stage, static_cast<int>(status), bicomm_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> commands;
  for (size_t i = 0; i < bicomm_command_count(); ++i) commands.emplace_back(bicomm_command_name(i));

  CLI::App app{"Commutator, wavelet and product BMO experiments"};
  app.set_version_flag("--version", bicomm_version());
  std::string command, config_path, out_dir;
  uint64_t seed = 0;
  int jobs = 1;
  app.add_option("command", command, "Experiment to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("--out", out_dir, "Output directory (default: the config's \"out\" or .)");
  auto* seed_opt = app.add_option("--seed", seed, "Override the configuration seed");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  bicomm_config* config = nullptr;
  if (auto s = bicomm_config_load(config_path.c_str(), command.c_str(), &config); s != BICOMM_OK)
    return report_failure("loading the configuration", s);
  if (*seed_opt) bicomm_config_set_seed(config, seed);
  if (*jobs_opt) bicomm_config_set_jobs(config, jobs);
  if (*out_opt) bicomm_config_set_out_dir(config, out_dir.c_str());

  char hash[32];
  bicomm_config_hash(config, hash, sizeof hash);
  std::printf("%s  config %s  version %s\n", command.c_str(), hash, bicomm_version());

  bicomm_report* report = nullptr;
  if (auto s = bicomm_run(config, &report); s != BICOMM_OK) {
    bicomm_config_free(config);
    return report_failure(command.c_str(), s);
  }
  if (auto s = bicomm_report_write(report, config); s != BICOMM_OK) {
    bicomm_report_free(report);
    bicomm_config_free(config);
    return report_failure("writing the report", s);
  }

  std::printf("%zu rows in %.2f s\n", bicomm_report_rows(report), bicomm_report_runtime(report));
  for (size_t i = 0; i < bicomm_report_check_count(report); ++i) {
    const char *name = nullptr, *relation = nullptr;
    double value = 0, limit = 0;
    int passed = 0;
    bicomm_report_check(report, i, &name, &relation, &value, &limit, &passed);
    std::printf("  %-4s %s = %.6g (%s %.6g)\n", passed ? "ok" : "FAIL", name, value, relation, limit);
  }
  const int passed = bicomm_report_passed(report);
  bicomm_report_free(report);
  bicomm_config_free(config);
  return passed ? 0 : 2;
}
