#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "kitecc/continuation.hpp"
#include "kitecc/io.hpp"
#include "kitecc/prover.hpp"

namespace iotest {

struct SquareMinusTwo {
  static constexpr int kIn = 1;
  static constexpr int kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 1>& x) const {
    return {kitecc::pow_int(x[0], 2) - S(2.0)};
  }
};

}  // namespace iotest

namespace {

using kitecc::Box;
using kitecc::Interval;

bool same_bits(double a, double b) {
  std::uint64_t ua, ub;
  std::memcpy(&ua, &a, 8);
  std::memcpy(&ub, &b, 8);
  return ua == ub;
}

double random_finite(std::mt19937_64* rng) {
  for (;;) {
    std::uint64_t bits = (*rng)();
    double x;
    std::memcpy(&x, &bits, 8);
    if (std::isfinite(x)) return x;
  }
}

kitecc::CampaignDocument sample_document() {
  Box domain(1);
  domain[0] = Interval(1.0, 2.0);
  kitecc::CampaignConfig cfg;
  cfg.initial_grid = 4;
  auto res = kitecc::certify_all_zeros(iotest::SquareMinusTwo{}, domain, cfg);
  return kitecc::make_document("square-minus-two", domain, cfg, res);
}

}  // namespace

TEST_CASE("doubles round-trip through shortest decimals") {
  const double cases[] = {0.0,
                          1.0,
                          -1.0,
                          0.1,
                          2.0 / 3.0,
                          1.0000000000000002,
                          5e-324,
                          -5e-324,
                          2.2250738585072011e-308,
                          1e308,
                          std::numeric_limits<double>::max(),
                          std::numeric_limits<double>::denorm_min(),
                          1048576.0,
                          0.5,
                          3.141592653589793,
                          -2.718281828459045e-100};
  for (double x : cases) {
    CAPTURE(x);
    CHECK(same_bits(kitecc::parse_double(kitecc::format_double(x)), x));
  }

  CHECK(kitecc::format_double(-0.0) == "-0.0");
  CHECK(same_bits(kitecc::parse_double("-0.0"), -0.0));
  CHECK(kitecc::format_double(2.0) == "2");
  CHECK(kitecc::format_double(0.1) == "0.1");

  CHECK_THROWS_AS(kitecc::format_double(std::numeric_limits<double>::infinity()),
                  kitecc::IoError);
  CHECK_THROWS_AS(kitecc::format_double(std::nan("")), kitecc::IoError);
  CHECK_THROWS_AS(kitecc::parse_double("12,5"), kitecc::IoError);
  CHECK_THROWS_AS(kitecc::parse_double(""), kitecc::IoError);

  std::mt19937_64 rng(2026);
  for (int i = 0; i < 100000; ++i) {
    double x = random_finite(&rng);
    CHECK(same_bits(kitecc::parse_double(kitecc::format_double(x)), x));
  }
}

TEST_CASE("emitted numbers survive a generic JSON parser bit for bit") {
  std::mt19937_64 rng(7);
  std::vector<double> values = {-0.0, 0.0, 2.0, 1e-8, 5e-324, 1e308,
                                9007199254740993.0, -9.5e18};
  for (int i = 0; i < 20000; ++i) values.push_back(random_finite(&rng));
  for (double x : values) {
    CAPTURE(x);
    nlohmann::json j =
        nlohmann::json::parse("[" + kitecc::format_double(x) + "]");
    CHECK(same_bits(j[0].get<double>(), x));
  }
}

TEST_CASE("campaign documents round-trip exactly") {
  kitecc::CampaignDocument doc = sample_document();
  REQUIRE(doc.unique_zeros == 1);
  REQUIRE(doc.unknown == 0);
  REQUIRE(doc.certificates.size() >= 4);

  const std::string text = kitecc::to_json(doc);
  kitecc::CampaignDocument back = kitecc::campaign_from_json(text);

  CHECK(back.system == doc.system);
  CHECK(back.config.initial_grid == doc.config.initial_grid);
  CHECK(back.config.max_boxes == doc.config.max_boxes);
  REQUIRE(back.certificates.size() == doc.certificates.size());
  for (std::size_t i = 0; i < doc.certificates.size(); ++i) {
    const auto& a = doc.certificates[i];
    const auto& b = back.certificates[i];
    CHECK(a.verdict == b.verdict);
    REQUIRE(a.box.size() == b.box.size());
    for (Eigen::Index k = 0; k < a.box.size(); ++k) {
      CHECK(same_bits(a.box[k].lo(), b.box[k].lo()));
      CHECK(same_bits(a.box[k].hi(), b.box[k].hi()));
    }
    REQUIRE(a.enclosure.has_value() == b.enclosure.has_value());
    if (a.enclosure)
      for (Eigen::Index k = 0; k < a.enclosure->size(); ++k) {
        CHECK(same_bits((*a.enclosure)[k].lo(), (*b.enclosure)[k].lo()));
        CHECK(same_bits((*a.enclosure)[k].hi(), (*b.enclosure)[k].hi()));
      }
  }

  // Re-serialization is byte-identical, so reruns can be diffed directly.
  CHECK(kitecc::to_json(back) == text);
}

TEST_CASE("campaign parser rejects malformed documents") {
  const std::string text = kitecc::to_json(sample_document());

  CHECK_THROWS_AS(kitecc::campaign_from_json("{]"), kitecc::IoError);
  CHECK_THROWS_AS(kitecc::campaign_from_json("[1, 2]"), kitecc::IoError);

  std::string missing = text;
  auto pos = missing.find("\"summary\"");
  REQUIRE(pos != std::string::npos);
  missing.replace(pos, 9, "\"summmary\"");
  CHECK_THROWS_AS(kitecc::campaign_from_json(missing), kitecc::IoError);

  std::string tampered = text;
  pos = tampered.find("\"unique_zeros\": 1");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 17, "\"unique_zeros\": 2");
  CHECK_THROWS_AS(kitecc::campaign_from_json(tampered), kitecc::IoError);
}

TEST_CASE("interval parsing preserves bound order checks") {
  CHECK_THROWS(kitecc::campaign_from_json(
      R"({"system": "s", "domain": [[2, 1]], "config": {"initial_grid": 1,
          "min_box_width": 1e-8, "refine_width": 1e-12, "max_depth": 1,
          "max_boxes": 1, "worker_count": 1}, "certificates": [],
          "summary": {"unique_zeros": 0, "unknown": 0}})"));
}

TEST_CASE("curve csv lists enclosure bounds") {
  auto samples = kitecc::trace_curve(4);
  std::string csv = kitecc::curve_csv(samples);
  REQUIRE(csv.rfind("a_lo,a_hi,b_lo,b_hi,m_lo,m_hi\n", 0) == 0);

  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == samples.size() + 1);

  // First data row starts at the left endpoint; the bound prints exactly.
  auto line_start = csv.find('\n') + 1;
  auto first_comma = csv.find(',', line_start);
  CHECK(same_bits(kitecc::parse_double(csv.substr(
                      line_start, first_comma - line_start)),
                  samples.front().a.lo()));
}

TEST_CASE("branch and table csv formatting") {
  kitecc::BranchRow row;
  row.m = 0.996;
  row.branch = "asym1";
  row.q3x = -0.5;
  row.q3y = 0.25;
  row.q4x = 0.125;
  row.q4y = 1.5;
  row.symmetric = false;
  CHECK(kitecc::branches_csv({row}) ==
        "m,branch,q3x,q3y,q4x,q4y,symmetric\n"
        "0.996,asym1,-0.5,0.25,0.125,1.5,0\n");

  kitecc::TableRow trow;
  trow.label = "demo";
  trow.mass = 1.0;
  trow.symmetric = true;
  trow.state = Box(5);
  trow.state << Interval(0.0), Interval(0.5), Interval(0.0), Interval(1.5),
      Interval(1.25);
  CHECK(kitecc::table_csv({trow}) ==
        "label,m,massless_base,symmetric,q3x,q3y,q4x,q4y,lambda\n"
        "demo,1,0,1,0,0.5,0,1.5,1.25\n");
}

TEST_CASE("manifest validation checks every referenced output") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "kitecc_io_test";
  fs::remove_all(dir);

  kitecc::write_file(dir / "certificates.json",
                     kitecc::to_json(sample_document()));
  kitecc::write_file(dir / "curve.csv", kitecc::curve_csv(kitecc::trace_curve(2)));
  kitecc::write_file(dir / "report.json", "{\"ok\": true}\n");

  kitecc::RunManifest m;
  m.command = "kitecc demo";
  m.config = {{"initial_grid", "4"}};
  m.inputs = {{"config", kitecc::hash_hex("initial_grid=4")}};
  m.outputs = {"certificates.json", "curve.csv", "report.json"};
  m.wall_seconds = 0.25;
  m.unique_zeros = 1;
  kitecc::write_file(dir / "manifest.json", kitecc::to_json(m));

  CHECK_NOTHROW(kitecc::validate_run_outputs(dir / "manifest.json"));

  // A missing output breaks the manifest invariant.
  fs::remove(dir / "report.json");
  CHECK_THROWS_AS(kitecc::validate_run_outputs(dir / "manifest.json"),
                  kitecc::IoError);
  kitecc::write_file(dir / "report.json", "{\"ok\": true}\n");

  // A corrupted certificate file fails its schema check.
  kitecc::write_file(dir / "certificates.json", "{\"system\": \"x\"}");
  CHECK_THROWS_AS(kitecc::validate_run_outputs(dir / "manifest.json"),
                  kitecc::IoError);

  fs::remove_all(dir);
}

TEST_CASE("bifurcation report serialization is well formed") {
  kitecc::BifurcationReport r;
  r.point = Box(2);
  r.point << Interval(1.0, 1.0 + 1e-12), Interval(2.0);
  r.mu = Interval(0.996);
  r.J = kitecc::IntervalMatrix(2, 2);
  r.J << Interval(1.0), Interval(2.0), Interval(3.0), Interval(4.0);
  r.v = Box(2);
  r.v << Interval(1.0), Interval(0.0);
  r.w = Box(2);
  r.w << Interval(0.0), Interval(1.0);
  r.t1 = Interval(-227.01, -227.0);
  r.kind = kitecc::BifurcationKind::Fold;

  std::string text = kitecc::to_json(r);
  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["kind"] == "Fold");
  CHECK(j["t1"][0] == -227.01);
  CHECK(j["jacobian"][1][0][0] == 3.0);
  CHECK(j["t1_structural"] == false);
}

TEST_CASE("key=value config parsing") {
  auto kv = kitecc::parse_key_values(
      "# budgets\n"
      "initial_grid = 50\n"
      "\n"
      "output_dir=out/run1\n"
      "min_box_width =1e-8\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"initial_grid", "50"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"output_dir", "out/run1"});
  CHECK(kv[2] == std::pair<std::string, std::string>{"min_box_width", "1e-8"});

  CHECK_THROWS_AS(kitecc::parse_key_values("no equals sign here\n"),
                  kitecc::IoError);
  CHECK_THROWS_AS(kitecc::parse_key_values("= value\n"), kitecc::IoError);
}
