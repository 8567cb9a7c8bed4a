#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "bicomm.h"
#include "doctest.h"

namespace {

std::vector<double> random_interleaved(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(2 * n * n);
  for (auto& x : v) x = g(gen);
  return v;
}

}  // namespace

TEST_CASE("version and command list") {
  CHECK(std::string(bicomm_version()) == "0.1.0");
  CHECK(bicomm_command_count() == 10);
  CHECK(std::string(bicomm_command_name(0)) == "identity-check");
  CHECK(bicomm_command_name(bicomm_command_count()) == nullptr);
}

TEST_CASE("configuration round trip") {
  bicomm_config* cfg = nullptr;
  REQUIRE(bicomm_config_parse(R"({"instances":2,"N":64})", "identity-check", &cfg) == BICOMM_OK);
  CHECK(std::string(bicomm_config_command(cfg)) == "identity-check");

  char hash[17];
  REQUIRE(bicomm_config_hash(cfg, hash, sizeof hash) == BICOMM_OK);
  CHECK(std::string(hash).size() == 16);
  char small[8];
  CHECK(bicomm_config_hash(cfg, small, sizeof small) == BICOMM_ERR_INVALID_ARGUMENT);

  CHECK(bicomm_config_set_jobs(cfg, 0) == BICOMM_ERR_CONFIG);
  CHECK(bicomm_config_set_jobs(cfg, 2) == BICOMM_OK);
  char same[17];
  bicomm_config_hash(cfg, same, sizeof same);
  CHECK(std::string(hash) == same);
  CHECK(bicomm_config_set_seed(cfg, 7) == BICOMM_OK);
  bicomm_config_hash(cfg, same, sizeof same);
  CHECK(std::string(hash) != same);

  bicomm_report* rep = nullptr;
  REQUIRE(bicomm_run(cfg, &rep) == BICOMM_OK);
  CHECK(bicomm_report_rows(rep) == 2);
  CHECK(bicomm_report_passed(rep) == 1);
  CHECK(bicomm_report_runtime(rep) >= 0.0);
  CHECK(std::string(bicomm_report_csv(rep)).rfind("instance,", 0) == 0);
  REQUIRE(bicomm_report_check_count(rep) > 0);
  const char* name = nullptr;
  const char* rel = nullptr;
  double value = -1, limit = -1;
  int passed = -1;
  REQUIRE(bicomm_report_check(rep, 0, &name, &rel, &value, &limit, &passed) == BICOMM_OK);
  CHECK(std::string(name).size() > 0);
  CHECK(passed == 1);
  CHECK(value <= limit);
  CHECK(bicomm_report_check(rep, 999, &name, &rel, &value, &limit, &passed) == BICOMM_ERR_INVALID_ARGUMENT);

  const auto dir = std::filesystem::temp_directory_path() / "bicomm_test_capi";
  std::filesystem::remove_all(dir);
  REQUIRE(bicomm_config_set_out_dir(cfg, dir.string().c_str()) == BICOMM_OK);
  REQUIRE(bicomm_report_write(rep, cfg) == BICOMM_OK);
  CHECK(std::filesystem::exists(dir / "identity-check.csv"));
  CHECK(std::filesystem::exists(dir / "identity-check_summary.json"));

  bicomm_report_free(rep);
  bicomm_config_free(cfg);
}

TEST_CASE("configuration errors") {
  bicomm_config* cfg = nullptr;
  CHECK(bicomm_config_parse(R"({"command":"bmo-scan"})", "norm-compare", &cfg) == BICOMM_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(bicomm_last_error()).size() > 0);
  CHECK(bicomm_config_parse("{not json", nullptr, &cfg) == BICOMM_ERR_CONFIG);
  CHECK(bicomm_config_parse(R"({"command":"bmo-scan","N":7})", nullptr, &cfg) == BICOMM_ERR_CONFIG);
  CHECK(bicomm_config_load("/nonexistent/cfg.json", nullptr, &cfg) == BICOMM_ERR_IO);
  CHECK(bicomm_config_parse(nullptr, nullptr, &cfg) == BICOMM_ERR_INVALID_ARGUMENT);
  CHECK(bicomm_config_parse("{}", nullptr, nullptr) == BICOMM_ERR_INVALID_ARGUMENT);
  CHECK(bicomm_run(nullptr, nullptr) == BICOMM_ERR_INVALID_ARGUMENT);
  bicomm_config_free(nullptr);
  bicomm_report_free(nullptr);
  bicomm_signal_free(nullptr);
}

TEST_CASE("signals and the operator norm") {
  const std::size_t n = 32;
  bicomm_signal* zero = nullptr;
  const std::vector<double> zeros(2 * n * n, 0.0);
  REQUIRE(bicomm_signal_create(n, zeros.data(), &zero) == BICOMM_OK);
  CHECK(bicomm_signal_size(zero) == n);
  double norm = -1;
  REQUIRE(bicomm_operator_norm(zero, 1e-10, 500, 1, &norm) == BICOMM_OK);
  CHECK(norm == doctest::Approx(0.0));
  bicomm_signal_free(zero);

  bicomm_signal* bad = nullptr;
  CHECK(bicomm_signal_create(24, zeros.data(), &bad) == BICOMM_ERR_INVALID_ARGUMENT);

  const auto data = random_interleaved(n, 5);
  bicomm_signal* b = nullptr;
  REQUIRE(bicomm_signal_create(n, data.data(), &b) == BICOMM_OK);
  double a1 = 0, a2 = 0;
  REQUIRE(bicomm_operator_norm(b, 1e-10, 2000, 1, &a1) == BICOMM_OK);
  REQUIRE(bicomm_operator_norm(b, 1e-10, 2000, 2, &a2) == BICOMM_OK);
  CHECK(a1 > 0.0);
  CHECK(a1 == doctest::Approx(a2).epsilon(1e-6));
  double lower = 0;
  REQUIRE(bicomm_product_bmo_lower(b, 2, 16, &lower) == BICOMM_OK);
  CHECK(lower > 0.0);
  CHECK(bicomm_product_bmo_lower(b, 9, 16, &lower) != BICOMM_OK);

  const auto base = (std::filesystem::temp_directory_path() / "bicomm_capi_signal").string();
  REQUIRE(bicomm_signal_write(b, base.c_str()) == BICOMM_OK);
  bicomm_signal* back = nullptr;
  REQUIRE(bicomm_signal_read(base.c_str(), &back) == BICOMM_OK);
  double a3 = 0;
  REQUIRE(bicomm_operator_norm(back, 1e-10, 2000, 1, &a3) == BICOMM_OK);
  CHECK(a3 == a1);
  bicomm_signal_free(back);
  bicomm_signal_free(b);
  CHECK(bicomm_signal_read("/nonexistent/sig", &back) == BICOMM_ERR_IO);
}
