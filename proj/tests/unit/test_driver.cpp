#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core/driver.hpp"
#include "core/verify.hpp"

using namespace pmproc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("pmproc_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SweepConfig tiny_config(const std::string& out_dir) {
  SweepConfig cfg;
  cfg.r_values = {2};
  cfg.n_offsets = {1};
  cfg.seeds = {7};
  cfg.opt.t_max = 200;
  cfg.opt.step = 1e-2;
  cfg.restarts_full = 2;
  cfg.restarts_sub = 2;
  cfg.workers = 1;
  cfg.output_dir = out_dir;
  return cfg;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("sweep config round-trips through JSON and validates") {
  SweepConfig cfg = tiny_config("somewhere");
  SweepConfig back = SweepConfig::from_json_text(cfg.to_json_text());
  CHECK(back.r_values == cfg.r_values);
  CHECK(back.seeds == cfg.seeds);
  CHECK(back.opt.t_max == cfg.opt.t_max);
  CHECK(back.output_dir == cfg.output_dir);

  SUBCASE("bad values are rejected") {
    SweepConfig bad = cfg;
    bad.r_values = {1};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.n_offsets = {-1};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.seeds.clear();
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.opt.step = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK_THROWS_AS(SweepConfig::from_json_text("{oops"), Error);
  }
}

TEST_CASE("run_sweep writes a stable, deterministic CSV") {
  fs::path dir = fresh_dir("sweep");
  SweepConfig cfg = tiny_config(dir.string());
  std::string csv_path = run_sweep(cfg);
  CHECK(fs::exists(csv_path));
  CHECK(fs::exists(dir / "results.json"));

  std::string first = slurp(csv_path);
  CHECK(first.rfind(std::string(kCsvHeader) + "\n", 0) == 0);

  auto rows = parse_results_csv(csv_path);
  REQUIRE(rows.size() == 2);  // restarts-many rows for one (r, n, seed)
  for (const auto& row : rows) {
    CHECK(row.r == 2);
    CHECK(row.n == 3);
    CHECK(row.seed == 7);
    CHECK(row.k_hat == doctest::Approx(row.numerator / row.denominator));
    CHECK(row.wall_ms == 0);  // timing disabled by default
    CHECK(row.numerator > 0.0);
    CHECK(row.denominator > 0.0);
  }

  SUBCASE("second run is byte-identical") {
    std::string json_first = slurp(dir / "results.json");
    run_sweep(cfg);
    CHECK(slurp(csv_path) == first);
    CHECK(slurp(dir / "results.json") == json_first);
  }
  SUBCASE("worker count does not change the bytes") {
    std::string json_first = slurp(dir / "results.json");
    SweepConfig wide = cfg;
    wide.workers = 3;
    fs::path dir2 = fresh_dir("sweep_w3");
    wide.output_dir = dir2.string();
    run_sweep(wide);
    CHECK(slurp(dir2 / "results.csv") == first);
    CHECK(slurp(dir2 / "results.json") == json_first);
  }
  SUBCASE("missing output directory is an io error naming the path") {
    SweepConfig missing = cfg;
    missing.output_dir = (dir / "does_not_exist").string();
    try {
      run_sweep(missing);
      FAIL("expected an io error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::io_error);
      CHECK(std::string(e.what()).find("does_not_exist") != std::string::npos);
    }
  }
}

TEST_CASE("median_ratios reduces restarts and seeds correctly") {
  std::vector<ResultRow> rows;
  auto push = [&](std::uint64_t seed, int restart, double num, double den) {
    ResultRow row;
    row.r = 2;
    row.n = 3;
    row.seed = seed;
    row.restart = restart;
    row.numerator = num;
    row.denominator = den;
    row.k_hat = num / den;
    rows.push_back(row);
  };
  push(1, 0, 0.5, 0.8);
  push(1, 1, 0.7, 0.6);  // best-of: 0.7 / 0.8
  push(2, 0, 0.9, 0.9);  // 1.0
  push(3, 0, 0.8, 0.8);  // 1.0
  auto medians = median_ratios(rows);
  REQUIRE(medians.size() == 1);
  CHECK(medians[0].r == 2);
  CHECK(medians[0].n == 3);
  CHECK(medians[0].median_ratio == doctest::Approx(1.0));
}

TEST_CASE("results CSV parser rejects malformed input") {
  fs::path dir = fresh_dir("csv");
  SUBCASE("wrong header") {
    fs::path bad = dir / "bad.csv";
    std::ofstream(bad) << "r,n,seed\n1,2,3\n";
    CHECK_THROWS_AS(parse_results_csv(bad.string()), Error);
  }
  SUBCASE("wrong field count") {
    fs::path bad = dir / "bad2.csv";
    std::ofstream(bad) << kCsvHeader << "\n1,2,3\n";
    CHECK_THROWS_AS(parse_results_csv(bad.string()), Error);
  }
  SUBCASE("non-numeric field") {
    fs::path bad = dir / "bad3.csv";
    std::ofstream(bad) << kCsvHeader
                       << "\n2,3,7,0,x,0.5,1,0,0,0,0,0\n";
    CHECK_THROWS_AS(parse_results_csv(bad.string()), Error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_results_csv((dir / "nope.csv").string()), Error);
  }
}

TEST_CASE("emit_plot renders markers, reference line and legend") {
  fs::path dir = fresh_dir("plot");
  SUBCASE("single data row gives one marker and the reference line") {
    fs::path csv = dir / "one.csv";
    std::ofstream(csv) << kCsvHeader << "\n2,3,7,0,0.5,0.52,0.9615,10,12,1e-3,1e-3,0\n";
    std::string svg_path = emit_plot(csv.string(), (dir / "one.svg").string());
    std::string svg = slurp(svg_path);
    CHECK(count_occurrences(svg, "<circle") == 2);  // one marker + legend dot
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("n = r+1") != std::string::npos);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);  // self-contained
  }
  SUBCASE("three offsets give three legend entries") {
    fs::path csv = dir / "three.csv";
    std::ofstream out(csv);
    out << kCsvHeader << "\n";
    for (int off = 1; off <= 3; ++off) {
      for (int r = 2; r <= 4; ++r) {
        out << r << ',' << (r + off) << ",7,0,0.5,0.5,1,1,1,0,0,0\n";
      }
    }
    out.close();
    std::string svg = slurp(emit_plot(csv.string(), (dir / "three.svg").string()));
    CHECK(svg.find("n = r+1") != std::string::npos);
    CHECK(svg.find("n = r+2") != std::string::npos);
    CHECK(svg.find("n = r+3") != std::string::npos);
    CHECK(count_occurrences(svg, "<polyline") == 3);
  }
  SUBCASE("malformed csv raises a parse error") {
    fs::path bad = dir / "bad.csv";
    std::ofstream(bad) << "nope\n";
    CHECK_THROWS_AS(emit_plot(bad.string(), (dir / "bad.svg").string()), Error);
  }
}

TEST_CASE("golden files pin the output format") {
  fs::path data_dir(PMPROC_TEST_DATA_DIR);
  fs::path golden_csv = data_dir / "golden_results.csv";
  fs::path golden_json = data_dir / "golden_results.json";
  REQUIRE(fs::exists(golden_csv));
  REQUIRE(fs::exists(golden_json));

  // Regenerate with: build/tools/pmproc sweep --r 2 --n-offset 1 --seed 7
  //   --tmax 200 --restarts 2 --workers 1 --out tests/data && rename.
  fs::path dir = fresh_dir("golden");
  SweepConfig cfg = tiny_config(dir.string());
  run_sweep(cfg);
  CHECK(slurp(dir / "results.csv") == slurp(golden_csv));
  CHECK(slurp(dir / "results.json") == slurp(golden_json));
}

TEST_CASE("verify campaigns reject unknown selectors") {
  CHECK_THROWS_AS(run_campaign("foo", 1), Error);
  try {
    run_campaign("foo", 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_selector);
  }
}

TEST_CASE("decompose dump writes a coherent weight list") {
  fs::path dir = fresh_dir("decompose");
  fs::path out = dir / "decomposition.json";
  decompose_dump(7, 3, 99, 20, out.string());
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["n"] == 7);
  CHECK(j["r"] == 3);
  CHECK(j["tiles"] == 3);
  CHECK(j["frame_size"] == 9);
  CHECK(j["partition_identity_residual"].get<double>() <= 1e-8);
  CHECK(j["variance_matrix_opnorm"].get<double>() <=
        j["initial_opnorm"].get<double>() + 1e-12);
  CHECK(j["perm"].size() == 9);
  CHECK(j["weights"].size() == 3);
  CHECK(j["weights"][0].size() == 3);
  CHECK(j["weights"][0][0].size() == 3);
  CHECK(j["weights"][0][0][0].size() == 2);

  CHECK_THROWS_AS(decompose_dump(2, 3, 1, 10, out.string()), Error);
  CHECK_THROWS_AS(decompose_dump(4, 2, 1, 0, out.string()), Error);
}
