#include <cmath>
#include <cstring>
#include <filesystem>

#include "bicomm/error.hpp"
#include "bicomm/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bicomm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "bicomm_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("cell set hex rows") {
  const auto u = CellSet(3).with_cell(0, 0, true).with_cell(7, 0, true).with_cell(2, 5, true);
  const auto j = io::to_json(u);
  CHECK(j["n"] == 3);
  CHECK(j["rows"][0] == "81");
  CHECK(j["rows"][5] == "20");
  CHECK(j["rows"][1] == "00");
  CHECK(io::cellset_from_json(j) == u);

  // Sides below four bits are padded on the right.
  const auto small = CellSet(1).with_cell(1, 0, true);
  CHECK(io::to_json(small)["rows"][0] == "4");
  CHECK(io::cellset_from_json(io::to_json(small)) == small);
  CHECK_THROWS_AS(io::cellset_from_json(io::Json::parse(R"({"n":1,"rows":["1","0"]})")), Error);
  CHECK_THROWS_AS(io::cellset_from_json(io::Json::parse(R"({"n":1,"rows":["0"]})")), Error);
  CHECK_THROWS_AS(io::cellset_from_json(io::Json::parse(R"({"n":3,"rows":["zz","0","0","0","0","0","0","0"]})")), Error);

  Rng rng(60);
  for (int t = 0; t < 20; ++t) {
    const auto v = testing::random_open_set(rng, 1 + t % 6);
    CHECK(io::cellset_from_json(io::Json::parse(io::to_json(v).dump())) == v);
  }
}

TEST_CASE("coefficient and BMO records") {
  WaveletCoefficients c(3);
  c.set(DyadicRectangle(1, 1, 3, 5), Complex(0.25, -1.5));
  c.set(DyadicRectangle(0, 0, 0, 0), Complex(1e-300, 3.0));
  const auto j = io::to_json(c);
  CHECK(j.size() == 2);
  CHECK(j[0]["j1"] == 0);
  const auto back = io::coefficients_from_json(io::Json::parse(j.dump()));
  CHECK(back.resolution() == 3);
  CHECK(back.values() == c.values());

  const BmoEstimate e{0.75, CellSet::box(2, 0, 2, 1, 3), true};
  const auto eb = io::bmo_from_json(io::Json::parse(io::to_json(e).dump()));
  CHECK(eb.value == 0.75);
  CHECK(eb.exact);
  CHECK(eb.witness == e.witness);
}

TEST_CASE("signal binary files") {
  Rng rng(61);
  const auto f = testing::random_signal_2d(rng, 8);
  const auto base = scratch("sig2").string();
  io::write_signal(base, f);
  CHECK(fs::file_size(base + ".bin") == 8 * 8 * 16);
  CHECK(io::Json::parse(io::read_text(base + ".json"))["dims"] == io::Json::array({8, 8}));
  const auto g = io::read_signal_2d(base + ".bin");
  CHECK(testing::max_abs_diff(f, g) == 0.0);

  // First sample: little-endian re then im.
  const auto bytes = io::read_text(base + ".bin");
  double re, im;
  std::memcpy(&re, bytes.data(), 8);
  std::memcpy(&im, bytes.data() + 8, 8);
  CHECK(re == f.at(0, 0).real());
  CHECK(im == f.at(0, 0).imag());

  const auto h = testing::random_signal_1d(rng, 16);
  io::write_signal(scratch("sig1").string(), h);
  CHECK(testing::max_abs_diff(h, io::read_signal_1d(scratch("sig1").string())) == 0.0);
  CHECK_THROWS_AS(io::read_signal_2d(scratch("sig1").string()), Error);
  io::write_text(scratch("bad.json").string(), R"({"dims":[4,4]})");
  io::write_text(scratch("bad.bin").string(), "short");
  CHECK_THROWS_AS(io::read_signal_2d(scratch("bad").string()), Error);
  CHECK_THROWS_AS(io::read_signal_2d(scratch("missing").string()), Error);
}

TEST_CASE("CSV tables") {
  io::CsvTable t({"id", "value", "label"});
  t.add_row({1LL, 0.1, std::string("plain")});
  t.add_row({2LL, 1.0 / 3.0, std::string("a,b")});
  CHECK(t.str() == "id,value,label\n1,0.10000000000000001,plain\n2,0.33333333333333331,\"a,b\"\n");
  CHECK_THROWS_AS(t.add_row({1LL}), Error);
  CHECK(t.column("label") == 2);
  CHECK_THROWS_AS(t.column("nope"), Error);

  const auto p = io::CsvTable::parse(t.str());
  CHECK(p.header() == t.header());
  CHECK(p.size() == 2);
  CHECK(std::get<std::string>(p.rows()[1][2]) == "a,b");
  CHECK(std::strtod(std::get<std::string>(p.rows()[1][1]).c_str(), nullptr) == 1.0 / 3.0);

  const auto trace = io::trace_table({{0, 1.5, 1.0}, {1, 2.0, 0.25}});
  CHECK(trace.str() == "iter,rayleigh,gap\n0,1.5,1\n1,2,0.25\n");

  EmbeddednessReport e;
  e.rect = DyadicRectangle(1, 0, 2, 3);
  e.mu = 3.0;
  const auto jt = io::journe_table({e});
  CHECK(jt.str() == "j1,k1,j2,k2,area,mu,nu,stratum,tag\n1,0,2,3,0.125,3,nan,2,\n");
}
