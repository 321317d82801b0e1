#include "core/driver.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "core/frames.hpp"
#include "core/parallel.hpp"
#include "core/quantum.hpp"
#include "core/rng.hpp"
#include "core/verify.hpp"

namespace pmproc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt_coord(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot open for writing: " + path.string());
  }
  out << text;
  if (!out) {
    throw Error(ErrorCode::io_error, "write failed: " + path.string());
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot open for reading: " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double parse_double_field(const std::string& field, int line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing garbage");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error,
                "malformed numeric field '" + field + "' on line " +
                    std::to_string(line_no));
  }
}

long long parse_int_field(const std::string& field, int line_no) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing garbage");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error,
                "malformed integer field '" + field + "' on line " +
                    std::to_string(line_no));
  }
}

std::uint64_t parse_u64_field(const std::string& field, int line_no) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing garbage");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error,
                "malformed integer field '" + field + "' on line " +
                    std::to_string(line_no));
  }
}

}  // namespace

void SweepConfig::validate() const {
  if (r_values.empty() || n_offsets.empty() || seeds.empty()) {
    throw Error(ErrorCode::invalid_config,
                "r_values, n_offsets and seeds must be non-empty");
  }
  for (int r : r_values) {
    if (r < 2) throw Error(ErrorCode::invalid_config, "every r must be >= 2");
  }
  for (int off : n_offsets) {
    if (off < 0) throw Error(ErrorCode::invalid_config, "offsets must be >= 0");
  }
  if (restarts_full < 1 || restarts_sub < 1) {
    throw Error(ErrorCode::invalid_config, "restart counts must be >= 1");
  }
  if (workers < 0) throw Error(ErrorCode::invalid_config, "workers must be >= 0");
  if (output_dir.empty()) {
    throw Error(ErrorCode::invalid_config, "output_dir is required");
  }
  opt.validate();
}

SweepConfig SweepConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("bad config JSON: ") + e.what());
  }
  SweepConfig cfg;
  try {
    if (j.contains("r_values")) cfg.r_values = j["r_values"].get<std::vector<int>>();
    if (j.contains("n_offsets")) cfg.n_offsets = j["n_offsets"].get<std::vector<int>>();
    if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("t_max")) cfg.opt.t_max = j["t_max"].get<long>();
    if (j.contains("step")) cfg.opt.step = j["step"].get<double>();
    if (j.contains("grad_tol")) cfg.opt.grad_tol = j["grad_tol"].get<double>();
    if (j.contains("restarts_full")) cfg.restarts_full = j["restarts_full"].get<int>();
    if (j.contains("restarts_sub")) cfg.restarts_sub = j["restarts_sub"].get<int>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("record_timing")) cfg.record_timing = j["record_timing"].get<bool>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_config,
                std::string("bad config value: ") + e.what());
  }
  return cfg;
}

std::string SweepConfig::to_json_text() const {
  json j;
  j["r_values"] = r_values;
  j["n_offsets"] = n_offsets;
  j["seeds"] = seeds;
  j["t_max"] = opt.t_max;
  j["step"] = opt.step;
  j["grad_tol"] = opt.grad_tol;
  j["restarts_full"] = restarts_full;
  j["restarts_sub"] = restarts_sub;
  j["workers"] = workers;
  j["record_timing"] = record_timing;
  j["output_dir"] = output_dir;
  return j.dump(2);
}

std::string run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  fs::path dir(cfg.output_dir);
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::io_error,
                "output directory does not exist: " + dir.string());
  }

  struct Point {
    int r, n;
    std::uint64_t seed;
  };
  std::vector<Point> points;
  for (int r : cfg.r_values) {
    for (int off : cfg.n_offsets) {
      for (std::uint64_t seed : cfg.seeds) {
        points.push_back(Point{r, r + off, seed});
      }
    }
  }

  // One independent task per grid point; the row block for point i is
  // written to slot i, so the file content does not depend on scheduling.
  std::vector<std::vector<ResultRow>> blocks(points.size());
  parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
    const Point& pt = points[i];
    Rng rng = Rng(pt.seed).derive(
        {static_cast<std::uint64_t>(pt.r), static_cast<std::uint64_t>(pt.n)});
    KEstimate est = estimate_k(pt.n, pt.r, cfg.opt, cfg.restarts_full,
                               cfg.restarts_sub, rng);
    int rows = std::max(cfg.restarts_full, cfg.restarts_sub);
    for (int k = 0; k < rows; ++k) {
      const RestartOutcome& full =
          est.full_runs[std::min<std::size_t>(k, est.full_runs.size() - 1)];
      const RestartOutcome& sub =
          est.subspace_runs[std::min<std::size_t>(k, est.subspace_runs.size() - 1)];
      ResultRow row;
      row.r = pt.r;
      row.n = pt.n;
      row.seed = pt.seed;
      row.restart = k;
      row.numerator = full.best_value;
      row.denominator = sub.best_value;
      row.k_hat = full.best_value / sub.best_value;
      row.best_iter_num = full.best_iter;
      row.best_iter_den = sub.best_iter;
      row.resid_num = full.stationarity_residual;
      row.resid_den = sub.stationarity_residual;
      row.wall_ms = cfg.record_timing ? full.wall_ms + sub.wall_ms : 0;
      blocks[i].push_back(row);
    }
  });

  std::ostringstream csv;
  csv << kCsvHeader << "\n";
  for (const auto& block : blocks) {
    for (const auto& row : block) {
      csv << row.r << ',' << row.n << ',' << row.seed << ',' << row.restart
          << ',' << fmt_double(row.numerator) << ','
          << fmt_double(row.denominator) << ',' << fmt_double(row.k_hat) << ','
          << row.best_iter_num << ',' << row.best_iter_den << ','
          << fmt_double(row.resid_num) << ',' << fmt_double(row.resid_den)
          << ',' << row.wall_ms << "\n";
    }
  }
  fs::path csv_path = dir / "results.csv";
  write_text_file(csv_path, csv.str());

  json sidecar;
  json config_echo = json::parse(cfg.to_json_text());
  // The echo identifies the experiment. Where the results land and how many
  // workers produced them must not affect the output bytes.
  config_echo.erase("workers");
  config_echo.erase("output_dir");
  sidecar["config"] = config_echo;
  sidecar["csv"] = "results.csv";
  sidecar["rows"] = points.size() *
                    static_cast<std::size_t>(std::max(cfg.restarts_full, cfg.restarts_sub));
  sidecar["rng"] = {{"algorithm", Rng::algorithm()},
                    {"normal", Rng::normal_method()}};
  sidecar["version"] = kVersion;
  write_text_file(dir / "results.json", sidecar.dump(2) + "\n");

  return csv_path.string();
}

std::vector<ResultRow> parse_results_csv(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (ch != '\r') {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(current);
  if (lines.empty() || lines[0] != kCsvHeader) {
    throw Error(ErrorCode::parse_error,
                "results CSV header does not match the expected schema");
  }
  std::vector<ResultRow> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(lines[li]);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 12) {
      throw Error(ErrorCode::parse_error,
                  "expected 12 fields on line " + std::to_string(li + 1));
    }
    int line_no = static_cast<int>(li + 1);
    ResultRow row;
    row.r = static_cast<int>(parse_int_field(fields[0], line_no));
    row.n = static_cast<int>(parse_int_field(fields[1], line_no));
    row.seed = parse_u64_field(fields[2], line_no);
    row.restart = static_cast<int>(parse_int_field(fields[3], line_no));
    row.numerator = parse_double_field(fields[4], line_no);
    row.denominator = parse_double_field(fields[5], line_no);
    row.k_hat = parse_double_field(fields[6], line_no);
    row.best_iter_num = static_cast<long>(parse_int_field(fields[7], line_no));
    row.best_iter_den = static_cast<long>(parse_int_field(fields[8], line_no));
    row.resid_num = parse_double_field(fields[9], line_no);
    row.resid_den = parse_double_field(fields[10], line_no);
    row.wall_ms = parse_int_field(fields[11], line_no);
    rows.push_back(row);
  }
  return rows;
}

std::vector<MedianPoint> median_ratios(const std::vector<ResultRow>& rows) {
  // Best-of-restarts per (r, n, seed), then the median over seeds.
  std::map<std::tuple<int, int, std::uint64_t>, std::pair<double, double>> best;
  for (const auto& row : rows) {
    auto key = std::make_tuple(row.r, row.n, row.seed);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, std::make_pair(row.numerator, row.denominator));
    } else {
      it->second.first = std::max(it->second.first, row.numerator);
      it->second.second = std::max(it->second.second, row.denominator);
    }
  }
  std::map<std::pair<int, int>, std::vector<double>> ratios;
  for (const auto& [key, value] : best) {
    ratios[{std::get<0>(key), std::get<1>(key)}].push_back(value.first /
                                                           value.second);
  }
  std::vector<MedianPoint> out;
  for (auto& [rn, values] : ratios) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    double median = n % 2 == 1 ? values[n / 2]
                               : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    out.push_back(MedianPoint{rn.first, rn.second, median});
  }
  return out;
}

std::int64_t run_verify(const std::string& selector, std::uint64_t seed,
                        const std::string& out_path) {
  std::vector<CheckResult> checks = run_campaign(selector, seed);
  std::int64_t failures = 0;
  json report;
  report["selector"] = selector;
  report["seed"] = seed;
  report["rng"] = {{"algorithm", Rng::algorithm()},
                   {"normal", Rng::normal_method()}};
  report["version"] = kVersion;
  report["checks"] = json::array();
  for (const auto& check : checks) {
    failures += check.failures;
    report["checks"].push_back({{"name", check.name},
                                {"instances", check.instances},
                                {"failures", check.failures},
                                {"worst_slack", check.worst_slack},
                                {"notes", check.notes}});
  }
  report["failures_total"] = failures;
  write_text_file(out_path, report.dump(2) + "\n");
  return failures;
}

namespace {

constexpr double kPlotW = 720.0;
constexpr double kPlotH = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 548.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 420.0;

const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  return palette[i % 6];
}

}  // namespace

std::string emit_plot(const std::string& csv_path, const std::string& svg_path) {
  std::vector<ResultRow> rows = parse_results_csv(csv_path);
  if (rows.empty()) {
    throw Error(ErrorCode::parse_error, "results CSV contains no data rows");
  }
  std::vector<MedianPoint> medians = median_ratios(rows);

  // One series per offset n - r.
  std::map<int, std::vector<MedianPoint>> series;
  double rmin = 1e300, rmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& pt : medians) {
    series[pt.n - pt.r].push_back(pt);
    rmin = std::min(rmin, double(pt.r));
    rmax = std::max(rmax, double(pt.r));
    ymin = std::min(ymin, pt.median_ratio);
    ymax = std::max(ymax, pt.median_ratio);
  }
  if (rmin == rmax) {
    rmin -= 1.0;
    rmax += 1.0;
  } else {
    rmin -= 0.5;
    rmax += 0.5;
  }
  ymin = std::min(0.9, ymin) - 0.02;
  ymax = std::max(1.1, ymax) + 0.02;

  auto xpix = [&](double r) {
    return kLeft + (r - rmin) / (rmax - rmin) * (kRight - kLeft);
  };
  auto ypix = [&](double v) {
    return kBottom - (v - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kPlotW
      << " " << kPlotH << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg << "<rect width=\"" << kPlotW << "\" height=\"" << kPlotH
      << "\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << fmt_coord(kLeft) << "\" y1=\"" << fmt_coord(kBottom)
      << "\" x2=\"" << fmt_coord(kRight) << "\" y2=\"" << fmt_coord(kBottom)
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << fmt_coord(kLeft) << "\" y1=\"" << fmt_coord(kTop)
      << "\" x2=\"" << fmt_coord(kLeft) << "\" y2=\"" << fmt_coord(kBottom)
      << "\" stroke=\"black\"/>\n";

  // x ticks at integer r
  for (int r = static_cast<int>(std::ceil(rmin)); r <= std::floor(rmax); ++r) {
    double x = xpix(r);
    svg << "<line x1=\"" << fmt_coord(x) << "\" y1=\"" << fmt_coord(kBottom)
        << "\" x2=\"" << fmt_coord(x) << "\" y2=\"" << fmt_coord(kBottom + 5)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt_coord(x) << "\" y=\"" << fmt_coord(kBottom + 20)
        << "\" text-anchor=\"middle\">" << r << "</text>\n";
  }
  // y ticks
  for (int i = 0; i <= 5; ++i) {
    double v = ymin + (ymax - ymin) * i / 5.0;
    double y = ypix(v);
    char label[32];
    std::snprintf(label, sizeof(label), "%.3g", v);
    svg << "<line x1=\"" << fmt_coord(kLeft - 5) << "\" y1=\"" << fmt_coord(y)
        << "\" x2=\"" << fmt_coord(kLeft) << "\" y2=\"" << fmt_coord(y)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt_coord(kLeft - 9) << "\" y=\""
        << fmt_coord(y + 4) << "\" text-anchor=\"end\">" << label
        << "</text>\n";
  }

  // axis labels
  svg << "<text x=\"" << fmt_coord((kLeft + kRight) / 2) << "\" y=\""
      << fmt_coord(kPlotH - 14) << "\" text-anchor=\"middle\">r</text>\n";
  svg << "<text x=\"18\" y=\"" << fmt_coord((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fmt_coord((kTop + kBottom) / 2) << ")\">K̂_r</text>\n";

  // reference line at 1
  svg << "<line x1=\"" << fmt_coord(kLeft) << "\" y1=\"" << fmt_coord(ypix(1.0))
      << "\" x2=\"" << fmt_coord(kRight) << "\" y2=\"" << fmt_coord(ypix(1.0))
      << "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";

  std::size_t idx = 0;
  for (const auto& [offset, pts] : series) {
    const char* color = series_color(idx);
    if (pts.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (const auto& pt : pts) {
        svg << fmt_coord(xpix(pt.r)) << "," << fmt_coord(ypix(pt.median_ratio))
            << " ";
      }
      svg << "\"/>\n";
    }
    for (const auto& pt : pts) {
      svg << "<circle cx=\"" << fmt_coord(xpix(pt.r)) << "\" cy=\""
          << fmt_coord(ypix(pt.median_ratio)) << "\" r=\"3.5\" fill=\"" << color
          << "\"/>\n";
    }
    // legend entry
    double ly = kTop + 10 + 22.0 * static_cast<double>(idx);
    svg << "<line x1=\"" << fmt_coord(kRight + 12) << "\" y1=\"" << fmt_coord(ly)
        << "\" x2=\"" << fmt_coord(kRight + 36) << "\" y2=\"" << fmt_coord(ly)
        << "\" stroke=\"" << color << "\"/>\n";
    svg << "<circle cx=\"" << fmt_coord(kRight + 24) << "\" cy=\""
        << fmt_coord(ly) << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << fmt_coord(kRight + 42) << "\" y=\""
        << fmt_coord(ly + 4) << "\">n = r+" << offset << "</text>\n";
    ++idx;
  }
  svg << "</svg>\n";

  write_text_file(svg_path, svg.str());
  return svg_path;
}

std::string decompose_dump(int n, int r, std::uint64_t seed, long budget,
                           const std::string& out_path) {
  if (r < 1 || n < r) {
    throw Error(ErrorCode::invalid_dimension,
                "decompose requires 1 <= r <= n");
  }
  if (budget < 1) {
    throw Error(ErrorCode::invalid_config, "budget must be >= 1");
  }
  Rng rng = Rng(seed).derive({0xDECu});
  ProjectiveMeasurement pm = haar_unitary(n, rng);
  Subspace s = Subspace::canonical(n, r);
  ParsevalFrame frame = project_frame(pm, s);
  PartitionSearchResult found = search_partition(frame, budget, rng);
  WeightList wl = build_weights(frame, found.best_perm, found.best_phases);

  json out;
  out["n"] = n;
  out["r"] = r;
  out["seed"] = seed;
  out["tiles"] = wl.tiles();
  out["frame_size"] = frame.m();
  out["budget"] = budget;
  out["initial_opnorm"] = found.initial_opnorm;
  out["variance_matrix_opnorm"] = found.best_opnorm;
  out["partition_identity_residual"] = partition_identity_residual(wl);
  out["perm"] = wl.perm;
  out["phases"] = wl.phases;
  json weights = json::array();
  for (const auto& lt : wl.weights) {
    json rows_json = json::array();
    for (int i = 0; i < lt.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < lt.cols(); ++j) {
        row.push_back({lt(i, j).real(), lt(i, j).imag()});
      }
      rows_json.push_back(row);
    }
    weights.push_back(rows_json);
  }
  out["weights"] = weights;
  out["rng"] = {{"algorithm", Rng::algorithm()}, {"normal", Rng::normal_method()}};
  out["version"] = kVersion;
  write_text_file(out_path, out.dump(2) + "\n");
  return out_path;
}

}  // namespace pmproc
