#include <filesystem>

#include "bicomm/error.hpp"
#include "bicomm/experiments.hpp"
#include "doctest.h"

using namespace bicomm;
using experiments::ExperimentConfig;
using io::Json;

namespace {

ExperimentConfig config(const std::string& text) { return experiments::parse_config(Json::parse(text)); }

}  // namespace

TEST_CASE("configuration defaults and validation") {
  const auto c = config(R"({"command":"norm-compare"})");
  CHECK(c.grid == 128);
  CHECK(c.resolution == 3);
  CHECK(c.instances == 200);
  CHECK(config(R"({"command":"bmo-scan","n":3})").grid == 128);
  CHECK(config(R"({"command":"identity-check","N":64})").resolution == 2);
  CHECK(experiments::parse_config(Json::parse(R"({"command":"journe-scan"})")).params.delta == 0.5);

  for (const char* bad : {R"({"command":"nope"})", R"({})", R"({"command":"bmo-scan","N":100})",
                          R"({"command":"bmo-scan","N":64,"n":3})", R"({"command":"oracle-audit","N":64})",
                          R"({"command":"bmo-scan","extra":1})", R"({"command":"bmo-scan","params":{"delta":1.5}})",
                          R"({"command":"bmo-scan","params":{"typo":1}})", R"({"command":"bmo-scan","family":{"kind":"x"}})",
                          R"({"command":"bmo-scan","family":{"kind":"file"}})", R"({"command":"bmo-scan","jobs":0})",
                          R"({"command":"bmo-scan","seed":"x"})", R"({"command":"plotdata"})",
                          R"({"command":"bmo-scan","family":{"rectangle":[1,2,0,0]}})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(config(bad), Error);
  }
}

TEST_CASE("config hash covers results, not plumbing") {
  const auto a = config(R"({"command":"bmo-scan","seed":1})");
  auto b = a;
  b.jobs = 4;
  b.out_dir = "/elsewhere";
  CHECK(experiments::config_hash(a) == experiments::config_hash(b));
  b.seed = 2;
  CHECK(experiments::config_hash(a) != experiments::config_hash(b));
  CHECK(experiments::config_hash(a).size() == 16);
  CHECK(experiments::fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(experiments::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("every command runs and reruns byte-identically") {
  const char* configs[] = {
      R"({"command":"identity-check","N":64,"instances":3})",
      R"({"command":"wavelet-audit","N":256})",
      R"({"command":"bmo-scan","n":2,"instances":4})",
      R"({"command":"norm-compare","n":2,"instances":4})",
      R"({"command":"journe-scan","n":4,"instances":4,"params":{"row_resolution":7}})",
      R"({"command":"decomposition","n":2,"instances":2})",
      R"({"command":"oracle-audit","N":16,"instances":2})",
      R"({"command":"maximal-audit","n":4,"instances":4})",
      R"({"command":"thinning-audit","n":4,"instances":6})",
  };
  for (const char* text : configs) {
    CAPTURE(text);
    auto c = config(text);
    c.seed = 99;
    const auto r1 = experiments::run(c);
    c.jobs = 3;
    const auto r2 = experiments::run(c);
    CHECK(r1.table.size() > 0);
    CHECK(r1.table.str() == r2.table.str());
    CHECK(r1.files == r2.files);
    const auto s = experiments::summary(r1, c);
    CHECK(s["command"] == c.command);
    CHECK(s["config_hash"] == experiments::config_hash(c));
    CHECK(s["code_version"] == experiments::code_version());
    CHECK(s["metrics"].is_object());
    c.seed = 100;
    if (c.command != "wavelet-audit") CHECK(experiments::run(c).table.str() != r1.table.str());
  }
}

TEST_CASE("reports are written with their extras") {
  const auto dir = std::filesystem::temp_directory_path() / "bicomm_test_experiments";
  std::filesystem::remove_all(dir);
  auto c = config(R"({"command":"thinning-audit","n":3,"instances":3})");
  c.out_dir = dir.string();
  const auto paths = experiments::write_report(experiments::run(c), c);
  CHECK(paths.size() == 3);
  CHECK(std::filesystem::exists(dir / "thinning-audit.csv"));
  CHECK(std::filesystem::exists(dir / "thinning-audit_counterexamples.json"));
  const auto s = Json::parse(io::read_text((dir / "thinning-audit_summary.json").string()));
  CHECK(s["passed"] == true);
  CHECK(s["metrics"]["subclasses"]["min"].get<double>() >= 0.0);
}

TEST_CASE("plot data") {
  io::CsvTable t({"instance", "a", "b"});
  CHECK(experiments::plotdata(t, {"", "scatter", "a", "b", 4}) == "a b\n");
  CHECK(experiments::plotdata(t, {"", "histogram", "a", "", 4}) == "bin_lo bin_hi count\n");
  t.add_row({0LL, 1.0, 2.0});
  t.add_row({1LL, 3.0, 4.0});
  CHECK(experiments::plotdata(t, {"", "scatter", "a", "b", 4}) == "a b\n1 2\n3 4\n");
  CHECK(experiments::plotdata(t, {"", "histogram", "a", "", 2}) == "bin_lo bin_hi count\n1 2 1\n2 3 1\n");
  CHECK_THROWS_AS(experiments::plotdata(t, {"", "scatter", "a", "missing", 4}), Error);
  CHECK_THROWS_AS(experiments::plotdata(t, {"", "pie", "a", "b", 4}), Error);

  const auto dir = std::filesystem::temp_directory_path() / "bicomm_test_plot";
  io::write_text((dir / "src.csv").string(), t.str());
  auto c = config(R"({"command":"plotdata","plot":{"source":")" + (dir / "src.csv").string() +
                  R"(","kind":"scatter","x":"a","y":"b"}})");
  const auto r = experiments::run(c);
  CHECK(r.files.at("plotdata_scatter.dat") == "a b\n1 2\n3 4\n");
}

TEST_CASE("instance failures carry the instance id") {
  auto c = config(R"({"command":"norm-compare","n":2,"instances":2,"params":{"max_iter":1,"tol":1e-15}})");
  try {
    (void)experiments::run(c);
    FAIL("expected non-convergence");
  } catch (const NotConverged& e) {
    CHECK(std::string(e.what()).rfind("instance 0:", 0) == 0);
  }
}
