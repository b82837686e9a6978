#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "fractrend/boxdim.hpp"
#include "fractrend/curvature.hpp"
#include "fractrend/error.hpp"
#include "fractrend/pgm.hpp"
#include "fractrend/population.hpp"
#include "fractrend/radialdim.hpp"
#include "fractrend/raster.hpp"
#include "fractrend/synth.hpp"
#include "fractrend/trend.hpp"

namespace fs = std::filesystem;

namespace fractrend::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kOutputDirEnv = "FRACTREND_OUTPUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_number(std::string_view text, const std::string& where) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    fail(ErrorCode::kMalformed, where + ": not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Small CSV reader: header row, comma separated, no quoting. Blank lines
// and lines starting with '#' are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;

  std::size_t column(std::initializer_list<std::string_view> names, const fs::path& path) const {
    for (auto n : names) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == n) return i;
      }
    }
    fail(ErrorCode::kMalformed, path.string() + ": missing column '" + std::string(*names.begin()) + "'");
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto a = cell.find_first_not_of(" \t");
    const auto b = cell.find_last_not_of(" \t");
    out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Table read_csv(const fs::path& path) {
  std::istringstream in(read_file(path));
  Table t;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      fail(ErrorCode::kMalformed, path.string() + ":" + std::to_string(no) + ": expected " +
                                      std::to_string(t.header.size()) + " fields");
    }
    t.rows.push_back(std::move(cells));
    t.lines.push_back(no);
  }
  if (t.header.empty()) fail(ErrorCode::kMalformed, path.string() + ": empty file");
  return t;
}

double cell_number(const Table& t, std::size_t row, std::size_t col, const fs::path& path) {
  return parse_number(t.rows[row][col], path.string() + ":" + std::to_string(t.lines[row]));
}

json read_json(const fs::path& path) {
  const auto text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformed, path.string() + ": " + e.what());
  }
}

// Where reports land. Relative -o paths are placed under the output
// directory (flag, else environment) when one is set.
struct Sink {
  std::string output;
  std::string output_dir;

  fs::path resolve(const std::string& path) const {
    fs::path p(path);
    if (p.is_relative() && !output_dir.empty()) p = fs::path(output_dir) / p;
    return p;
  }

  void write_file(const std::string& path, const std::string& bytes) const {
    const auto p = resolve(path);
    if (p.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(p, std::ios::binary);
    if (!f) fail(ErrorCode::kIo, "cannot write " + p.string());
    f << bytes;
    if (!f) fail(ErrorCode::kIo, "write failed " + p.string());
  }

  void emit(const std::string& text, std::ostream& out) const {
    if (output.empty()) {
      out << text;
    } else {
      write_file(output, text);
    }
  }

  void emit(const json& report, std::ostream& out) const { emit(report.dump(2) + "\n", out); }
};

struct Threshold {
  int value = 128;
  std::string polarity = "light";

  Polarity pol() const {
    if (polarity == "light") return Polarity::kLightIsOccupied;
    if (polarity == "dark") return Polarity::kDarkIsOccupied;
    throw UsageError("--polarity must be 'light' or 'dark'");
  }

  json config() const { return {{"threshold", value}, {"polarity", polarity}}; }

  void add(CLI::App* app) {
    app->add_option("--threshold", value, "binarization threshold 0..255")
        ->check(CLI::Range(0, 255))
        ->capture_default_str();
    app->add_option("--polarity", polarity, "light | dark: which side of the threshold is occupied")
        ->check(CLI::IsMember({"light", "dark"}))
        ->capture_default_str();
  }
};

BinaryRaster load_binary(const std::string& path, const Threshold& th) {
  return binarize(load_gray(path), th.value, th.pol());
}

PgmFormat parse_format(const std::string& s) { return s == "plain" ? PgmFormat::kPlain : PgmFormat::kRaw; }

void save_binary(const Sink& sink, const std::string& path, const BinaryRaster& b, PgmFormat fmt) {
  sink.write_file(path, encode_pgm(to_gray(b), fmt));
}

json estimate_json(const DimensionEstimate& e) {
  return {{"dimension", e.dimension},
          {"r_squared", e.fit.r_squared},
          {"stderr", e.fit.stderr_slope},
          {"slope", e.fit.slope},
          {"intercept", e.fit.intercept}};
}

std::string counts_csv(const char* scale_name, const std::vector<ScaleCount>& counts) {
  std::string s = std::string(scale_name) + ",count,ln_" + scale_name + ",ln_count\n";
  for (const auto& c : counts) {
    s += num(c.scale) + "," + std::to_string(c.count) + "," + num(std::log(c.scale)) + ",";
    if (c.count > 0) s += num(std::log(double(c.count)));
    s += "\n";
  }
  return s;
}

json counts_json(const char* scale_name, const std::vector<ScaleCount>& counts) {
  json a = json::array();
  for (const auto& c : counts) a.push_back({{scale_name, c.scale}, {"count", c.count}});
  return a;
}

struct RadialOptions {
  std::string center = "geometric";
  std::optional<double> cx;
  std::optional<double> cy;
  std::vector<double> radii;

  void add(CLI::App* app) {
    app->add_option("--center", center, "geometric | centroid")
        ->check(CLI::IsMember({"geometric", "centroid"}))
        ->capture_default_str();
    app->add_option("--cx", cx, "explicit center x (pixel index)");
    app->add_option("--cy", cy, "explicit center y (pixel index)");
  }

  Center resolve(const BinaryRaster& b) const {
    if (cx.has_value() != cy.has_value()) throw UsageError("--cx and --cy must be given together");
    if (cx) return {*cx, *cy};
    return counting_center(b, center == "centroid" ? CenterMode::kMassCentroid : CenterMode::kGeometric);
  }

  json config(const Center& c) const {
    json j{{"center", cx ? "explicit" : center}, {"cx", c.x}, {"cy", c.y}};
    return j;
  }
};

struct FitOptions {
  MultiStartConfig search;

  void add(CLI::App* app) {
    app->add_option("--seed", search.seed, "multi-start seed")->capture_default_str();
    app->add_option("--starts", search.starts, "number of multi-start candidates")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--max-iterations", search.max_iterations, "simplex iteration cap per start")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  json config() const {
    return {{"seed", search.seed}, {"starts", search.starts}, {"max_iterations", search.max_iterations}};
  }
};

DimensionSeries read_dimension_series(const fs::path& path) {
  const auto t = read_csv(path);
  const auto cy = t.column({"year", "t"}, path);
  const auto cd = t.column({"dimension", "d"}, path);
  std::vector<DimensionSample> s;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    s.push_back({cell_number(t, i, cy, path), cell_number(t, i, cd, path)});
  }
  try {
    return DimensionSeries(std::move(s));
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

PopulationSeries read_population(const fs::path& path) {
  const auto t = read_csv(path);
  const auto cy = t.column({"year", "t"}, path);
  const auto cp = t.column({"population", "p"}, path);
  std::vector<PopulationSample> s;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    s.push_back({cell_number(t, i, cy, path), cell_number(t, i, cp, path)});
  }
  try {
    return PopulationSeries(std::move(s));
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

double json_number(const json& j, const char* key, const fs::path& path) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number()) {
    fail(ErrorCode::kMalformed, path.string() + ": expected numeric '" + key + "'");
  }
  return j[key].get<double>();
}

SegmentKind json_kind(const json& j, const fs::path& path) {
  if (!j.contains("kind") || !j["kind"].is_string()) {
    fail(ErrorCode::kMalformed, path.string() + ": expected string 'kind'");
  }
  try {
    return parse_segment_kind(j["kind"].get<std::string>());
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<Period> read_periods(const fs::path& path) {
  const auto j = read_json(path);
  const json& list = j.is_object() && j.contains("periods") ? j["periods"] : j;
  if (!list.is_array()) fail(ErrorCode::kMalformed, path.string() + ": expected an array of periods");
  std::vector<Period> out;
  for (const auto& p : list) {
    out.push_back({json_number(p, "t_start", path), json_number(p, "t_end", path), json_kind(p, path)});
  }
  return out;
}

PiecewiseModel read_model(const fs::path& path) {
  const auto j = read_json(path);
  const json& list = j.is_object() && j.contains("segments") ? j["segments"] : j;
  if (!list.is_array()) fail(ErrorCode::kMalformed, path.string() + ": expected 'segments' array");
  std::vector<Segment> segs;
  for (const auto& s : list) {
    segs.push_back({json_kind(s, path), json_number(s, "t_start", path), json_number(s, "t_end", path),
                    json_number(s, "a", path), json_number(s, "b", path)});
  }
  try {
    return PiecewiseModel(std::move(segs));
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

json model_json(const PiecewiseModel& m, int panels) {
  json segs = json::array();
  for (const auto& s : m.segments()) {
    segs.push_back({{"kind", to_string(s.kind)},
                    {"t_start", s.t_start},
                    {"t_end", s.t_end},
                    {"a", s.a},
                    {"b", s.b},
                    {"average_curvature", average_curvature(s, panels)}});
  }
  return segs;
}

json alphas_json(const std::vector<AlphaRatio>& alphas) {
  json a = json::array();
  for (const auto& r : alphas) {
    a.push_back({{"index", r.index},
                 {"numerator_period", r.numerator_period},
                 {"numerator", r.numerator},
                 {"denominator", r.denominator},
                 {"alpha", r.alpha}});
  }
  return a;
}

std::size_t exponential_count(const PiecewiseModel& m) {
  std::size_t n = 0;
  for (const auto& s : m.segments()) n += s.kind == SegmentKind::kExponential;
  return n;
}

// ---------------------------------------------------------------- series

struct ManifestEntry {
  double year = 0.0;
  std::string path;      // as written in the manifest
  fs::path resolved;     // relative to the manifest's directory
};

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  const auto t = read_csv(path);
  const auto cy = t.column({"year"}, path);
  const auto cp = t.column({"path"}, path);
  std::vector<ManifestEntry> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    ManifestEntry e;
    e.year = cell_number(t, i, cy, path);
    e.path = t.rows[i][cp];
    fs::path p(e.path);
    e.resolved = p.is_relative() ? path.parent_path() / p : p;
    out.push_back(std::move(e));
  }
  if (out.empty()) fail(ErrorCode::kTooFewSamples, path.string() + ": manifest has no entries");
  return out;
}

struct SeriesRow {
  std::optional<DimensionEstimate> estimate;
  std::optional<Error> error;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fractal dimension and growth-trend analysis"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand help for every subcommand");

  Sink sink;
  std::string format = "raw";
  const auto add_output = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("-o,--output", sink.output,
                              required ? "output file" : "report file (default: stdout)");
    if (required) o->required();
    sub->add_option("--output-dir", sink.output_dir,
                    std::string("base directory for relative outputs (default: $") + kOutputDirEnv + ")");
  };
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "PGM encoding: raw (P5) | plain (P2)")
        ->check(CLI::IsMember({"raw", "plain"}))
        ->capture_default_str();
  };

  Threshold th;
  std::string input;
  std::string csv_path;

  // binarize
  auto* c_bin = app.add_subcommand("binarize", "threshold a grayscale PGM into a 0/255 PGM");
  c_bin->add_option("input", input, "input PGM")->required();
  th.add(c_bin);
  add_format(c_bin);
  add_output(c_bin, true);

  // crop
  std::size_t cx0 = 0, cy0 = 0, cw = 0, ch = 0;
  auto* c_crop = app.add_subcommand("crop", "cut a rectangular region from a PGM");
  c_crop->add_option("input", input, "input PGM")->required();
  c_crop->add_option("--x", cx0, "left column")->required();
  c_crop->add_option("--y", cy0, "top row")->required();
  c_crop->add_option("--width", cw, "region width")->required();
  c_crop->add_option("--height", ch, "region height")->required();
  add_format(c_crop);
  add_output(c_crop, true);

  // synth
  std::string kind;
  std::size_t n = 1024, width = 256, height = 256, radius = 256;
  int depth = 6;
  double p = 0.5;
  std::uint64_t seed = MultiStartConfig::kDefaultSeed;
  auto* c_synth = app.add_subcommand("synth", "generate a reference raster");
  c_synth->add_option("--kind", kind, "raster family")
      ->required()
      ->check(CLI::IsMember({"sierpinski-triangle", "sierpinski-carpet", "filled-rect", "line", "disk",
                             "random-density"}));
  c_synth->add_option("--n", n, "side length (triangle: power of two; line: length)")->capture_default_str();
  c_synth->add_option("--depth", depth, "carpet depth (side 3^depth)")->capture_default_str();
  c_synth->add_option("--width", width, "filled-rect / random-density width")->capture_default_str();
  c_synth->add_option("--height", height, "filled-rect / random-density height")->capture_default_str();
  c_synth->add_option("--radius", radius, "disk radius")->capture_default_str();
  c_synth->add_option("--p", p, "random-density occupancy probability")->capture_default_str();
  c_synth->add_option("--seed", seed, "random-density seed")->capture_default_str();
  add_format(c_synth);
  add_output(c_synth, true);

  // boxdim
  std::vector<std::size_t> sizes;
  auto* c_box = app.add_subcommand("boxdim", "box-counting dimension of a raster");
  c_box->add_option("input", input, "input PGM")->required();
  th.add(c_box);
  c_box->add_option("--sizes", sizes, "box sizes, strictly decreasing (default: powers of two)")
      ->delimiter(',');
  c_box->add_option("--csv", csv_path, "also write size,count,ln_size,ln_count");
  add_output(c_box, false);

  // radialdim
  RadialOptions radial;
  auto* c_rad = app.add_subcommand("radialdim", "radial (mass-radius) dimension of a raster");
  c_rad->add_option("input", input, "input PGM")->required();
  th.add(c_rad);
  radial.add(c_rad);
  c_rad->add_option("--radii", radial.radii, "radii, strictly increasing (default: 4*sqrt2^k)")
      ->delimiter(',');
  c_rad->add_option("--csv", csv_path, "also write radius,count,ln_radius,ln_count");
  add_output(c_rad, false);

  // series
  std::string estimator = "box";
  unsigned jobs = 1;
  auto* c_series = app.add_subcommand("series", "dimension time series from a year,path manifest");
  c_series->add_option("manifest", input, "CSV with header year,path")->required();
  c_series->add_option("--estimator", estimator, "box | radial")
      ->check(CLI::IsMember({"box", "radial"}))
      ->capture_default_str();
  c_series->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  th.add(c_series);
  radial.add(c_series);
  add_output(c_series, false);

  // fit-diff
  FitOptions fit;
  auto* c_fd = app.add_subcommand("fit-diff", "fit the difference-equation model (L1)");
  c_fd->add_option("input", input, "CSV with header year,dimension")->required();
  fit.add(c_fd);
  add_output(c_fd, false);

  // fit-logistic
  double offset = 1.0;
  auto* c_fl = app.add_subcommand("fit-logistic", "fit offset + K/(1 + A exp(-r t)) (least squares)");
  c_fl->add_option("input", input, "CSV with header year,dimension")->required();
  c_fl->add_option("--offset", offset, "fixed vertical offset")->capture_default_str();
  fit.add(c_fl);
  add_output(c_fl, false);

  // stability
  std::optional<double> b_opt, r_opt;
  auto* c_st = app.add_subcommand("stability", "classify x(t+1) = b(1-x)x by b");
  auto* ob = c_st->add_option("--b", b_opt, "map parameter b");
  auto* orr = c_st->add_option("--r", r_opt, "logistic rate r (b = r + 1)");
  ob->excludes(orr);
  orr->excludes(ob);
  add_output(c_st, false);

  // orbit
  double b_orbit = 0.0, x0 = 0.1, tol = 1e-9;
  std::size_t steps = 500, tail = 64;
  auto* c_orb = app.add_subcommand("orbit", "iterate x(t+1) = b(1-x)x and summarize the orbit");
  c_orb->add_option("--b", b_orbit, "map parameter b")->required();
  c_orb->add_option("--x0", x0, "initial state in (0,1)")->capture_default_str();
  c_orb->add_option("--steps", steps, "iterations")->capture_default_str();
  c_orb->add_option("--tolerance", tol, "limit-cycle detection tolerance")->capture_default_str();
  c_orb->add_option("--tail", tail, "trailing iterates examined")->capture_default_str();
  c_orb->add_option("--csv", csv_path, "also write step,x");
  add_output(c_orb, false);

  // fit-pop
  std::string periods_path;
  int panels = kDefaultPanels;
  auto* c_fp = app.add_subcommand("fit-pop", "piecewise exponential/linear population fit");
  c_fp->add_option("input", input, "CSV with header year,population")->required();
  c_fp->add_option("--periods", periods_path, "JSON array of {t_start,t_end,kind}")->required();
  c_fp->add_option("--panels", panels, "Simpson panels for average curvature")->capture_default_str();
  add_output(c_fp, false);

  // compare-pop
  std::vector<std::string> models;
  std::string periods_a, periods_b;
  double tolerance = 0.0;
  auto* c_cp = app.add_subcommand("compare-pop", "compare two growth shapes via alpha ratios");
  c_cp->add_option("models", models, "two model JSON files (from fit-pop), or population CSVs")
      ->required()
      ->expected(2);
  c_cp->add_option("--tolerance", tolerance, "similar iff |ln(alpha_a/alpha_b)| <= ln(1+tolerance)")
      ->required();
  c_cp->add_option("--periods-a", periods_a, "periods JSON when the first input is a CSV");
  c_cp->add_option("--periods-b", periods_b, "periods JSON when the second input is a CSV");
  c_cp->add_option("--panels", panels, "Simpson panels for average curvature")->capture_default_str();
  add_output(c_cp, false);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  }

  if (sink.output_dir.empty()) {
    if (const char* env = std::getenv(kOutputDirEnv)) sink.output_dir = env;
  }

  try {
    if (*c_bin) {
      const auto b = load_binary(input, th);
      save_binary(sink, sink.output, b, parse_format(format));
    } else if (*c_crop) {
      const auto g = load_gray(input);
      sink.write_file(sink.output, encode_pgm(crop(g, Rect{cx0, cy0, cw, ch}), parse_format(format)));
    } else if (*c_synth) {
      BinaryRaster b = BinaryRaster::empty(1, 1);
      if (kind == "sierpinski-triangle") b = sierpinski_triangle(n);
      else if (kind == "sierpinski-carpet") b = sierpinski_carpet(depth);
      else if (kind == "filled-rect") b = filled_rect(width, height);
      else if (kind == "line") b = line(n);
      else if (kind == "disk") b = disk(radius);
      else b = random_density(width, height, p, seed);
      save_binary(sink, sink.output, b, parse_format(format));
    } else if (*c_box) {
      const auto b = load_binary(input, th);
      const auto sched = sizes.empty() ? default_schedule(b) : BoxSchedule(sizes);
      const auto est = estimate_box_dimension(b, sched);
      json cfg{{"command", "boxdim"}, {"input", input}};
      cfg.update(th.config());
      cfg["sizes"] = std::vector<std::size_t>(sched.sizes().begin(), sched.sizes().end());
      json report{{"config", cfg}};
      report.update(estimate_json(est));
      report["counts"] = counts_json("size", est.counts);
      if (!csv_path.empty()) sink.write_file(csv_path, counts_csv("size", est.counts));
      sink.emit(report, out);
    } else if (*c_rad) {
      const auto b = load_binary(input, th);
      const auto center = radial.resolve(b);
      const auto sched = radial.radii.empty() ? default_radial_schedule(b, center)
                                              : RadialSchedule(b, center, radial.radii);
      const auto est = estimate_radial_dimension(b, sched);
      json cfg{{"command", "radialdim"}, {"input", input}};
      cfg.update(th.config());
      cfg.update(radial.config(center));
      cfg["radii"] = std::vector<double>(sched.radii().begin(), sched.radii().end());
      cfg["max_valid_radius"] = max_valid_radius(b, center);
      json report{{"config", cfg}};
      report.update(estimate_json(est));
      report["counts"] = counts_json("radius", est.counts);
      if (!csv_path.empty()) sink.write_file(csv_path, counts_csv("radius", est.counts));
      sink.emit(report, out);
    } else if (*c_series) {
      const auto entries = read_manifest(input);
      std::vector<SeriesRow> rows(entries.size());
      std::atomic<std::size_t> next{0};
      const auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
          try {
            const auto b = load_binary(entries[i].resolved.string(), th);
            try {
              rows[i].estimate = estimator == "box"
                                     ? estimate_box_dimension(b, default_schedule(b))
                                     : estimate_radial_dimension(
                                           b, default_radial_schedule(b, radial.resolve(b)));
            } catch (const Error& e) {
              rows[i].error = Error(e.code(), entries[i].resolved.string() + ": " + e.what());
            }
          } catch (const Error& e) {
            rows[i].error = e;
          } catch (const UsageError& e) {
            rows[i].error = Error(ErrorCode::kInvalidArgument, e.what());
          }
        }
      };
      const unsigned workers = std::min<std::size_t>(jobs, entries.size());
      std::vector<std::thread> pool;
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      for (const auto& r : rows) {
        if (r.error) throw *r.error;
      }
      std::string csv = "year,dimension,r_squared,stderr,path\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& e = *rows[i].estimate;
        csv += num(entries[i].year) + "," + num(e.dimension) + "," + num(e.fit.r_squared) + "," +
               num(e.fit.stderr_slope) + "," + entries[i].path + "\n";
      }
      sink.emit(csv, out);
    } else if (*c_fd) {
      const auto series = read_dimension_series(input);
      const auto f = fit_difference_model(series, fit.search);
      json cfg{{"command", "fit-diff"}, {"input", input}};
      cfg.update(fit.config());
      json fitted = json::array();
      for (const auto& s : series.samples()) {
        fitted.push_back({{"year", s.t}, {"observed", s.d}, {"fitted", eval_difference_model(f.params, s.t)}});
      }
      json report{{"config", cfg},
                  {"params", {{"c1", f.params.c1}, {"c2", f.params.c2}, {"c3", f.params.c3},
                              {"c4", f.params.c4}, {"c5", f.params.c5}}},
                  {"l1", f.l1},
                  {"best_start", f.best_start},
                  {"fitted", fitted}};
      sink.emit(report, out);
    } else if (*c_fl) {
      const auto series = read_dimension_series(input);
      const auto f = fit_logistic(series, offset, fit.search);
      const auto form = logistic_to_difference(f.params);
      json cfg{{"command", "fit-logistic"}, {"input", input}, {"offset", offset}};
      cfg.update(fit.config());
      json fitted = json::array();
      for (const auto& s : series.samples()) {
        fitted.push_back({{"year", s.t}, {"observed", s.d}, {"fitted", eval_logistic(f.params, s.t)}});
      }
      json report{{"config", cfg},
                  {"params", {{"K", f.params.K}, {"A", f.params.A}, {"r", f.params.r},
                              {"offset", f.params.offset}}},
                  {"limit", f.params.offset + f.params.K},
                  {"rmse", f.rmse},
                  {"best_start", f.best_start},
                  {"difference_form", {{"b", form.b}, {"state_scale", form.state_scale}}},
                  {"class", to_string(classify_stability(form.b))},
                  {"fitted", fitted}};
      sink.emit(report, out);
    } else if (*c_st) {
      if (!b_opt && !r_opt) throw UsageError("stability needs --b or --r");
      const double b = b_opt ? *b_opt : *r_opt + 1.0;
      json cfg{{"command", "stability"}};
      if (b_opt) cfg["b"] = *b_opt;
      else cfg["r"] = *r_opt;
      json report{{"config", cfg}, {"b", b}, {"class", to_string(classify_stability(b))}};
      sink.emit(report, out);
    } else if (*c_orb) {
      const auto orbit = simulate_difference(b_orbit, x0, steps);
      const auto sum = summarize_orbit(orbit, tol, tail);
      if (!csv_path.empty()) {
        std::string csv = "step,x\n";
        for (std::size_t i = 0; i < orbit.size(); ++i) csv += std::to_string(i) + "," + num(orbit[i]) + "\n";
        sink.write_file(csv_path, csv);
      }
      json cfg{{"command", "orbit"}, {"b", b_orbit}, {"x0", x0}, {"steps", steps},
               {"tolerance", tol}, {"tail", tail}};
      json report{{"config", cfg},
                  {"class", to_string(classify_stability(b_orbit))},
                  {"behavior", to_string(sum.behavior)},
                  {"cycle", sum.cycle},
                  {"monotone", sum.monotone},
                  {"fixed_point", b_orbit > 0 ? 1.0 - 1.0 / b_orbit : 0.0},
                  {"final", orbit.back()}};
      sink.emit(report, out);
    } else if (*c_fp) {
      const auto series = read_population(input);
      const auto periods = read_periods(periods_path);
      const auto model = fit_piecewise(series, periods);
      json cfg{{"command", "fit-pop"}, {"input", input}, {"periods", periods_path}, {"panels", panels}};
      json report{{"config", cfg}, {"segments", model_json(model, panels)}};
      if (exponential_count(model) >= 2) report["alphas"] = alphas_json(alpha_ratios(model, panels));
      sink.emit(report, out);
    } else if (*c_cp) {
      const auto load = [&](const std::string& path, const std::string& periods) {
        if (fs::path(path).extension() == ".csv") {
          if (periods.empty()) throw UsageError(path + " is a CSV; pass its periods with --periods-a/-b");
          return fit_piecewise(read_population(path), read_periods(periods));
        }
        return read_model(path);
      };
      const auto ma = load(models[0], periods_a);
      const auto mb = load(models[1], periods_b);
      const auto rep = compare_similarity(ma, mb, tolerance, panels);
      json cfg{{"command", "compare-pop"}, {"a", models[0]}, {"b", models[1]},
               {"tolerance", tolerance}, {"panels", panels}};
      if (!periods_a.empty()) cfg["periods_a"] = periods_a;
      if (!periods_b.empty()) cfg["periods_b"] = periods_b;
      json entries = json::array();
      for (const auto& e : rep.entries) {
        entries.push_back({{"index", e.index},
                           {"alpha_a", e.alpha_a},
                           {"alpha_b", e.alpha_b},
                           {"log_ratio", e.log_ratio},
                           {"similar", e.similar}});
      }
      json report{{"config", cfg},
                  {"bound", std::log1p(tolerance)},
                  {"entries", entries},
                  {"similar", rep.similar},
                  {"alphas_a", alphas_json(alpha_ratios(ma, panels))},
                  {"alphas_b", alphas_json(alpha_ratios(mb, panels))}};
      sink.emit(report, out);
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace fractrend::cli
