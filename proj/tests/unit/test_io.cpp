#include "doctest.h"
#include "json.hpp"
#include "sggl/config.hpp"
#include "sggl/csv.hpp"
#include "sggl/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sggl;
namespace fs = std::filesystem;

namespace {

std::string error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / "sggl-test-io";
  fs::create_directories(d);
  return d / name;
}

SpectralField sample(std::size_t n1, std::size_t n2) {
  GLParams p;
  p.L1 = 2.5;
  p.L2 = 7.0;
  SpectralField u(n1, n2, p);
  Rng r(3, 0, Stream::Sampler);
  for (auto& a : u.a) a = cplx(r.normal(), r.normal()) * std::pow(10.0, 20.0 * r.uniform() - 10.0);
  return u;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string s; std::getline(in, s);) out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("config defaults and round trip") {
  const auto c = parse_config("{}");
  CHECK(c.params.sigma == 3.0);
  CHECK(c.sim.n1 == 8);
  CHECK(c.noise.marks() == 0);
  CHECK(c.levels == std::vector<std::size_t>{8, 16, 32});

  const std::string text = R"({
    "params": {"sigma": 2.5, "beta": 0.3, "lambda1_y_im": 0.04, "L1": 2.0},
    "noise": {"marks": 2, "nu": [1.0, 0.5], "h": [0.5, 1.0], "family": "quadratic", "cap": 4},
    "sim": {"n1": 12, "dt": 0.002, "levels": [4, 8, 16], "initial": {"mode": "mode", "j": 2}},
    "monotonicity": {"eps9": 0.003, "samples": 50}
  })";
  const auto d = parse_config(text);
  CHECK(d.params.sigma == 2.5);
  CHECK(d.params.lambda1[1] == cplx(0.0, 0.04));
  CHECK(d.params.L1 == 2.0);
  CHECK(d.noise.family == NoiseFamily::Quadratic);
  CHECK(d.noise.cap == 4.0);
  CHECK(d.sim.n1 == 12);
  CHECK(d.initial.mode == InitialCondition::Mode::Mode);
  CHECK(d.initial.j == 2);
  CHECK(d.monotonicity.eps9 == 0.003);
  CHECK(d.suite.samples == 50);

  const auto again = parse_config(dump_config(d));
  CHECK(dump_config(again) == dump_config(d));
  CHECK(std::isinf(parse_config(dump_config(c)).noise.cap));
}

TEST_CASE("config errors name the key") {
  CHECK(error_key(R"({"params": {"betta": 1}})") == "params.betta");
  CHECK(error_key(R"({"parms": {}})") == "parms");
  CHECK(error_key(R"({"params": {"beta": "x"}})") == "params.beta");
  CHECK(error_key(R"({"params": {"sigma": -1}})") == "params.sigma");
  CHECK(error_key(R"({"sim": {"n1": 1.5}})") == "sim.n1");
  CHECK(error_key(R"({"sim": {"dt": 0}})") == "sim.dt");
  CHECK(error_key(R"({"sim": {"initial": {"mode": "blob"}}})") == "sim.initial.mode");
  CHECK(error_key(R"({"sim": {"initial": {"foo": 1}}})") == "sim.initial.foo");
  CHECK(error_key(R"({"sim": {"levels": [8, 4, 16]}})") == "sim.levels");
  CHECK(error_key(R"({"noise": {"marks": 3, "nu": [1], "h": [1]}})") == "noise.marks");
  CHECK(error_key(R"({"noise": {"nu": [1, 2], "h": [1]}})").rfind("noise.", 0) == 0);
  CHECK(error_key(R"({"noise": {"family": "cubic"}})") == "noise.family");
  CHECK(error_key(R"({"noise": {"cap": "big"}})") == "noise.cap");
  CHECK(error_key(R"({"noise": {"p": 7}})") == "noise.p");
  CHECK(error_key(R"({"monotonicity": {"eps12": 0}})") == "monotonicity.eps12");
  CHECK(error_key("{not json") == "<file>");
  CHECK_THROWS_AS(load_config("/nonexistent/sggl.json"), ConfigError);
  try {
    load_config("/nonexistent/sggl.json");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "--config");
  }
}

TEST_CASE("help lists every key") {
  const auto help = config_key_help();
  const auto j = nlohmann::json::parse(dump_config(RunConfig{}));
  std::size_t seen = 0;
  auto walk = [&](auto&& self, const nlohmann::json& o, const std::string& prefix) -> void {
    for (auto it = o.begin(); it != o.end(); ++it) {
      const std::string k = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (it->is_object()) {
        self(self, *it, k);
      } else {
        ++seen;
        CHECK_MESSAGE(help.find(k + " ") != std::string::npos, k);
      }
    }
  };
  walk(walk, j, "");
  CHECK(seen > 40);
}

TEST_CASE("snapshot round trip") {
  const auto u = sample(5, 3);
  std::stringstream ss;
  write_field(ss, u);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == 4 + 2 + 4 + 4 + 8 + 8 + 15 * 16);
  CHECK(bytes.substr(0, 4) == "SGGL");
  CHECK(std::uint8_t(bytes[4]) == 1);
  CHECK(std::uint8_t(bytes[5]) == 0);
  CHECK(std::uint8_t(bytes[6]) == 5);
  CHECK(std::uint8_t(bytes[10]) == 3);
  // L1 little-endian
  std::uint64_t l1 = 0;
  for (int i = 0; i < 8; ++i) l1 |= std::uint64_t(std::uint8_t(bytes[14 + i])) << (8 * i);
  CHECK(std::bit_cast<double>(l1) == 2.5);

  const auto v = read_field(ss);
  CHECK(v.n1 == 5);
  CHECK(v.n2 == 3);
  CHECK(v.L1 == 2.5);
  CHECK(v.L2 == 7.0);
  CHECK(v.a == u.a);

  const auto path = scratch("pair.sggl").string();
  const auto w = sample(4, 4);
  save_pair(path, u, w);
  const auto [a, b] = load_pair(path);
  CHECK(a.a == u.a);
  CHECK(b.a == w.a);
  save_field(path, w);
  CHECK(load_field(path).a == w.a);
}

TEST_CASE("snapshot corruption") {
  std::stringstream good;
  write_field(good, sample(2, 2));
  const std::string bytes = good.str();
  auto read = [](const std::string& s) {
    std::stringstream in(s);
    return read_field(in);
  };
  std::string bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(read(bad), SnapshotError);
  bad = bytes;
  bad[4] = 9;
  CHECK_THROWS_AS(read(bad), SnapshotError);
  CHECK_THROWS_AS(read(bytes.substr(0, bytes.size() - 3)), SnapshotError);
  CHECK_THROWS_AS(read(bytes.substr(0, 7)), SnapshotError);
  CHECK_THROWS_AS(read(""), SnapshotError);
  CHECK_THROWS_AS(load_field("/nonexistent/x.sggl"), SnapshotError);
}

TEST_CASE("csv formatting") {
  Rng r(9, 0, Stream::Sampler);
  for (int i = 0; i < 1000; ++i) {
    const double x = r.normal() * std::pow(10.0, 600.0 * r.uniform() - 300.0);
    CHECK(std::strtod(fmt_g17(x).c_str(), nullptr) == x);
  }
  CHECK(fmt_g17(0.1) == "0.10000000000000001");
  CHECK(fmt_g17(1.0) == "1");

  const auto path = scratch("w.csv");
  {
    CsvWriter w(path.string(), {"a", "b", "c"});
    w.row({1.5, std::size_t(7), std::string("x")});
    CHECK_THROWS_AS(w.row({1.0}), std::logic_error);
  }
  const auto l = lines(path);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "a,b,c");
  CHECK(l[1] == "1.5,7,x");
}

TEST_CASE("energy csv") {
  Trajectory tr;
  tr.times = {0.0, 0.1, 0.1, 0.2};
  tr.kinds = {RecordKind::Grid, RecordKind::PreJump, RecordKind::PostJump, RecordKind::Grid};
  for (double t : tr.times) {
    EnergyRecord e;
    e.t = t;
    e.l2_sq = 1.0 / 3.0 + t;
    tr.records.push_back(e);
  }
  const auto path = scratch("energy.csv");
  write_energy_csv(path.string(), tr);
  const auto l = lines(path);
  REQUIRE(l.size() == 3);
  CHECK(l[0] == "t,l2_sq,h1_sq,l2s2_pow,mixed");
  const auto comma = l[2].find(',');
  CHECK(std::strtod(l[2].c_str() + comma + 1, nullptr) == 1.0 / 3.0 + 0.2);

  std::vector<LemmaStatistic> rows(1);
  rows[0].n1 = rows[0].n2 = 8;
  write_lemma_stats_csv(scratch("lemma.csv").string(), rows);
  CHECK(lines(scratch("lemma.csv"))[0] == "lemma,n1,n2,value,se,rhs_scale,ratio");
  CHECK(lines(scratch("lemma.csv"))[1].rfind("L31,8,8,", 0) == 0);
  write_inequality_report(scratch("ineq.csv").string(), {CheckResult{}});
  CHECK(lines(scratch("ineq.csv"))[0] == "check,sigma,beta,samples,violations,max_slack,tolerance");
}
