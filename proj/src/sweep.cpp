#include "motzkin/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "motzkin/format.hpp"
#include "motzkin/schmidt.hpp"

namespace motzkin {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<int> parse_samples(std::string_view text) {
  std::vector<int> out;
  for (const auto &item : split(text, ',')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(static_cast<int>(parse_integer(parts[0])));
      continue;
    }
    if (parts.size() > 3) throw std::invalid_argument("bad n range '" + item + "'");
    const auto lo = parse_integer(parts[0]);
    const auto hi = parse_integer(parts[1]);
    const auto step = parts.size() == 3 ? parse_integer(parts[2]) : 1;
    if (step < 1 || hi < lo) throw std::invalid_argument("bad n range '" + item + "'");
    for (auto n = lo; n <= hi; n += step) out.push_back(static_cast<int>(n));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::vector<SweepRow> sweep_point(const GridPoint &point, const std::vector<int> &samples) {
  std::vector<SweepRow> rows;
  try {
    const int n_max = samples.back();
    if (n_max > kMaxProfileN) throw std::length_error("n exceeds " + std::to_string(kMaxProfileN));
    double c_bound = 0.0, n0 = 0.0;
    if (point.t < 1.0) c_bound = entropy_bound_c(point.s, point.t);
    if (point.t > 1.0) n0 = peak_offset_n0(point.s, point.t);

    SchmidtProfile p = seed_profile(point.s, point.t);
    auto next = samples.begin();
    for (int n = 1; n <= n_max; ++n) {
      advance(p);
      if (n != *next) continue;
      ++next;
      finalize(p);
      SweepRow row{point.s, point.t, n, p.entropy, peak_height(p), p.norm.log(), "ok"};
      if (point.t < 1.0 && row.entropy > c_bound) row.status = "bound-violated: entropy above C(s;t)";
      if (point.t > 1.0 && row.mstar < n - 2.0 * n0) row.status = "bound-violated: peak below n - 2 N0";
      rows.push_back(std::move(row));
    }
  } catch (const std::exception &e) {
    rows.clear();
    for (int n : samples)
      rows.push_back({point.s, point.t, n, std::nan(""), -1, std::nan(""), "error: " + sanitize(e.what())});
  }
  return rows;
}

}  // namespace

std::vector<GridPoint> default_grid() {
  std::vector<GridPoint> grid;
  for (int s : {1, 2})
    for (double t : {0.5, 1.0, 2.0}) grid.push_back({s, t});
  return grid;
}

SweepPlan parse_plan(std::string_view text) {
  SweepPlan plan;
  bool have_grid = false;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("plan line without '=': " + line);
    const auto key = trim(std::string_view(line).substr(0, eq));
    const auto value = trim(std::string_view(line).substr(eq + 1));
    if (key == "grid") {
      have_grid = true;
      for (const auto &pair : split(value, ';')) {
        if (pair.empty()) continue;
        const auto st = split(pair, ',');
        if (st.size() != 2) throw std::invalid_argument("grid entries are 's,t' pairs, got '" + pair + "'");
        plan.grid.push_back({static_cast<int>(parse_integer(st[0])), parse_double(st[1])});
      }
    } else if (key == "n" || key == "n_samples") {
      plan.n_samples = parse_samples(value);
    } else if (key == "out" || key == "output") {
      plan.output = value;
    } else if (key == "jobs" || key == "parallelism") {
      plan.jobs = static_cast<int>(parse_integer(value));
    } else {
      throw std::invalid_argument("unknown plan key '" + key + "'");
    }
  }
  if (!have_grid) plan.grid = default_grid();
  validate(plan);
  return plan;
}

void validate(const SweepPlan &plan) {
  if (plan.grid.empty()) throw std::invalid_argument("plan grid is empty");
  for (const auto &p : plan.grid) {
    if (p.s < 1) throw std::invalid_argument("grid s must be >= 1");
    if (!(p.t > 0.0) || !std::isfinite(p.t)) throw std::invalid_argument("grid t must be positive");
  }
  if (plan.n_samples.empty()) throw std::invalid_argument("plan has no n samples");
  if (!std::is_sorted(plan.n_samples.begin(), plan.n_samples.end()) ||
      std::adjacent_find(plan.n_samples.begin(), plan.n_samples.end()) != plan.n_samples.end())
    throw std::invalid_argument("n samples must be ascending and unique");
  if (plan.n_samples.front() < 1) throw std::invalid_argument("n samples must be >= 1");
  if (plan.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

std::vector<SweepRow> run_sweep(const SweepPlan &plan) {
  validate(plan);
  std::vector<std::vector<SweepRow>> per_point(plan.grid.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < plan.grid.size(); i = cursor++) per_point[i] = sweep_point(plan.grid[i], plan.n_samples);
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(plan.jobs), plan.grid.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  std::vector<SweepRow> rows;
  for (auto &chunk : per_point) std::move(chunk.begin(), chunk.end(), std::back_inserter(rows));
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto &r : rows) {
    out += std::to_string(r.s) + ',' + format_double(r.t) + ',' + std::to_string(r.n) + ',' + format_double(r.entropy) +
           ',' + std::to_string(r.mstar) + ',' + format_double(r.log_norm) + ',' + r.status + '\n';
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("sweep CSV is empty");
  const auto header = split(line, ',');
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char *needed : {"s", "t", "n", "entropy_nats", "mstar", "logN"})
    if (!col.count(needed)) throw std::invalid_argument(std::string("sweep CSV lacks column '") + needed + "'");

  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() < header.size() - (col.count("status") ? 1 : 0))
      throw std::invalid_argument("short sweep CSV row: " + line);
    SweepRow r;
    r.s = static_cast<int>(parse_integer(f[col["s"]]));
    r.t = parse_double(f[col["t"]]);
    r.n = static_cast<int>(parse_integer(f[col["n"]]));
    r.entropy = parse_double(f[col["entropy_nats"]]);
    r.mstar = static_cast<int>(parse_integer(f[col["mstar"]]));
    r.log_norm = parse_double(f[col["logN"]]);
    r.status = col.count("status") && col["status"] < f.size() ? f[col["status"]] : "ok";
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_sweep_csv(const std::filesystem::path &path, std::span<const SweepRow> rows) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << sweep_csv(rows);
    if (!out.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

std::string_view to_string(ScalingModel model) {
  switch (model) {
    case ScalingModel::Linear: return "linear";
    case ScalingModel::Sqrt: return "sqrt";
    case ScalingModel::Log: return "log";
    case ScalingModel::Constant: return "constant";
  }
  return "?";
}

ScalingModel parse_model(std::string_view name) {
  for (auto m : kAllModels)
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown model '" + std::string(name) + "' (linear, sqrt, log, constant)");
}

FitResult fit_scaling(std::span<const SweepRow> rows, ScalingModel model) {
  if (rows.size() < kMinFitRows)
    throw std::invalid_argument("fit needs at least " + std::to_string(kMinFitRows) + " rows, got " +
                                std::to_string(rows.size()));
  auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.n < b.n; });
  if (lo->n == hi->n) throw std::invalid_argument("degenerate fit slice: all rows share n = " + std::to_string(lo->n));
  for (const auto &r : rows)
    if (r.n < 1 || !std::isfinite(r.entropy)) throw std::invalid_argument("fit slice contains an error row");

  auto feature = [model](int n) {
    switch (model) {
      case ScalingModel::Linear: return static_cast<double>(n);
      case ScalingModel::Sqrt: return std::sqrt(static_cast<double>(n));
      case ScalingModel::Log: return std::log(static_cast<double>(n));
      case ScalingModel::Constant: return 0.0;
    }
    return 0.0;
  };

  const auto count = static_cast<double>(rows.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto &r : rows) {
    mean_x += feature(r.n);
    mean_y += r.entropy;
  }
  mean_x /= count;
  mean_y /= count;

  FitResult fit;
  fit.model = model;
  fit.n_range = {lo->n, hi->n};
  if (model == ScalingModel::Constant) {
    fit.coefficient = mean_y;
    fit.intercept = mean_y;
  } else {
    double sxx = 0.0, sxy = 0.0;
    for (const auto &r : rows) {
      const double dx = feature(r.n) - mean_x;
      sxx += dx * dx;
      sxy += dx * (r.entropy - mean_y);
    }
    fit.coefficient = sxy / sxx;
    fit.intercept = mean_y - fit.coefficient * mean_x;
  }
  double ss = 0.0;
  for (const auto &r : rows) {
    const double pred =
        model == ScalingModel::Constant ? fit.intercept : fit.coefficient * feature(r.n) + fit.intercept;
    ss += (r.entropy - pred) * (r.entropy - pred);
  }
  fit.residual = std::sqrt(ss / count);
  return fit;
}

FitResult best_fit(std::span<const SweepRow> rows) {
  FitResult best = fit_scaling(rows, kAllModels[0]);
  for (auto m : kAllModels) {
    const auto f = fit_scaling(rows, m);
    if (f.residual < best.residual) best = f;
  }
  return best;
}

}  // namespace motzkin
