#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pzeta/dirichlet.hpp"
#include "pzeta/error.hpp"
#include "pzeta/littlewood.hpp"
#include "pzeta/parallel.hpp"
#include "pzeta/strip_bounds.hpp"
#include "pzeta/table.hpp"
#include "pzeta/verify.hpp"
#include "pzeta/winding.hpp"
#include "pzeta/zero_finder.hpp"
#include "pzeta/zstats.hpp"

namespace pzeta::cli {

enum class Command { bounds, zeros, count, stats, littlewood, mollifier, sweep, verify };

inline constexpr std::string_view command_names[] = {"bounds", "zeros",     "count", "stats",
                                                     "littlewood", "mollifier", "sweep", "verify"};

inline std::string_view to_string(Command c) { return command_names[static_cast<int>(c)]; }

inline std::optional<Command> parse_command(std::string_view name) {
  for (int i = 0; i < 8; ++i)
    if (command_names[i] == name) return static_cast<Command>(i);
  return std::nullopt;
}

inline constexpr std::size_t max_sweep_cells = 10000;
inline constexpr long max_mollifier_limit = 10000000;

struct RunConfig {
  Command command = Command::verify;
  std::vector<long> xs;
  std::vector<double> ts;
  std::vector<double> sigmas;
  std::optional<double> u;
  std::optional<long> y;
  double eval_tol = 1e-12;
  double residual_tol = 1e-10;
  double quad_tol = 0.0;  // 0 selects the per-operation default
  std::string format = "auto";  // auto | csv | json
  std::string output_path;  // empty or "-" writes to the output stream
  unsigned workers = 0;  // 0 uses every hardware thread

  // bounds defaults to JSON, everything else to CSV.
  std::string resolved_format() const {
    if (format != "auto") return format;
    return command == Command::bounds ? "json" : "csv";
  }
};

// ---------------------------------------------------------------------------
// Grid parsing: comma-separated numbers or ranges start:stop[:step].

inline std::vector<double> parse_real_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    std::vector<double> parts;
    std::stringstream ts(token);
    std::string p;
    while (std::getline(ts, p, ':')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(p, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == p.size() && !p.empty() && std::isfinite(v), "cannot parse grid value '" + p + "'");
      parts.push_back(v);
    }
    require(parts.size() >= 1 && parts.size() <= 3, "grid token must be v, a:b or a:b:step");
    if (parts.size() == 1) {
      out.push_back(parts[0]);
      continue;
    }
    const double a = parts[0], b = parts[1], step = parts.size() == 3 ? parts[2] : 1.0;
    require(step > 0.0, "grid step must be positive");
    require(b >= a, "grid range must be increasing");
    const double span = (b - a) / step;
    require(span <= static_cast<double>(max_sweep_cells), "grid range too long");
    const long n = static_cast<long>(std::floor(span + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  }
  return out;
}

inline std::vector<long> parse_integer_grid(const std::string& text) {
  std::vector<long> out;
  for (double v : parse_real_grid(text)) {
    require(v == std::floor(v) && std::abs(v) < 1e15, "X must be an integer");
    out.push_back(static_cast<long>(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation, before any computation.

namespace detail {

inline std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (double d : v) out += (out.empty() ? "" : ",") + format_real(d);
  return out;
}

inline std::string join_longs(const std::vector<long>& v) {
  std::string out;
  for (long d : v) out += (out.empty() ? "" : ",") + std::to_string(d);
  return out;
}

inline long single_x(const RunConfig& c) {
  require(c.xs.size() == 1, "command needs exactly one X");
  require(c.xs[0] >= 2, "X must be at least 2");
  return c.xs[0];
}

inline double single_t(const RunConfig& c) {
  require(c.ts.size() == 1, "command needs exactly one T");
  require(c.ts[0] > count_bottom_edge, "T must exceed 1e-6");
  return c.ts[0];
}

template <typename V>
void sort_unique(V& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

inline std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> out{
      {"command", std::string(to_string(c.command))},
      {"X", detail::join_longs(c.xs)},
      {"T", detail::join_reals(c.ts)},
      {"sigma", detail::join_reals(c.sigmas)},
      {"U", c.u ? format_real(*c.u) : "default"},
      {"Y", c.y ? std::to_string(*c.y) : "default"},
      {"eval_tol", format_real(c.eval_tol)},
      {"residual_tol", format_real(c.residual_tol)},
      {"quad_tol", c.quad_tol > 0.0 ? format_real(c.quad_tol) : "default"},
      {"format", c.resolved_format()},
      {"output", c.output_path.empty() ? "-" : c.output_path},
      {"workers", std::to_string(c.workers)},
  };
  return out;
}

// Checks ranges for the selected command and normalizes grids; throws
// precondition errors.
inline void validate(RunConfig& c) {
  const std::string fmt = c.resolved_format();
  require(fmt == "csv" || fmt == "json", "format must be csv, json or auto");
  require(c.eval_tol > 0.0 && c.eval_tol <= 1e-6, "eval_tol must lie in (0, 1e-6]");
  require(c.residual_tol > 0.0 && c.residual_tol < 1e-3, "residual_tol must lie in (0, 1e-3)");
  require(c.quad_tol >= 0.0 && std::isfinite(c.quad_tol), "quad_tol must be finite and non-negative");
  for (double t : c.ts) require(std::isfinite(t), "T must be finite");
  for (double s : c.sigmas) require(std::isfinite(s), "sigma must be finite");
  if (c.u) require(std::isfinite(*c.u), "U must be finite");

  switch (c.command) {
    case Command::bounds:
      detail::single_x(c);
      break;
    case Command::zeros:
      detail::single_x(c);
      detail::single_t(c);
      break;
    case Command::count: {
      const double x = static_cast<double>(detail::single_x(c));
      detail::single_t(c);
      const double u = c.u.value_or(x);
      require(u >= x && u <= 2.0 * x, "U must lie in [X, 2X]");
      break;
    }
    case Command::stats: {
      const double x = static_cast<double>(detail::single_x(c));
      detail::single_t(c);
      if (c.sigmas.empty()) c.sigmas = {0.5};
      require(c.u.value_or(x) >= x, "U must be at least X");
      break;
    }
    case Command::littlewood:
      detail::single_x(c);
      detail::single_t(c);
      if (c.sigmas.empty()) c.sigmas = {0.0};
      for (double s : c.sigmas) require(s < 2.0, "sigma0 must be below 2");
      break;
    case Command::mollifier: {
      const long x = detail::single_x(c);
      const long y = c.y.value_or(x);
      require(y >= 2, "Y must be at least 2");
      require(x <= max_mollifier_limit / y, "X*Y must not exceed 1e7");
      break;
    }
    case Command::sweep:
      detail::sort_unique(c.xs);
      detail::sort_unique(c.ts);
      detail::sort_unique(c.sigmas);
      for (long x : c.xs) require(x >= 2, "X must be at least 2");
      for (double t : c.ts) require(t > count_bottom_edge, "T must exceed 1e-6");
      require(c.xs.size() * c.ts.size() * c.sigmas.size() <= max_sweep_cells, "sweep grid exceeds 1e4 cells");
      break;
    case Command::verify:
      break;
  }
}

// ---------------------------------------------------------------------------
// Commands.

namespace detail {

inline Table run_bounds(const RunConfig& c) {
  const long x = c.xs[0];
  const StripBounds b = strip_bounds(x);
  Table t{{"X", "alpha", "beta", "turan_line"}, {}, {}};
  t.add_row({x, b.alpha, b.beta, x >= 16 ? Entry(turan_line(x)) : Entry(NotApplicable{})});
  return t;
}

inline FinderOptions finder_options(const RunConfig& c) {
  FinderOptions o;
  o.residual_tol = c.residual_tol;
  return o;
}

inline Table run_zeros(const RunConfig& c) {
  const PartialSum f(c.xs[0], c.eval_tol);
  Table t{{"beta", "gamma", "residual", "multiplicity", "newton_iters"}, {}, {}};
  for (const auto& z : locate_strip_zeros(f, c.ts[0], finder_options(c)))
    t.add_row({z.beta, z.gamma, z.residual, static_cast<long>(z.multiplicity), static_cast<long>(z.newton_iters)});
  return t;
}

inline Table run_count(const RunConfig& c) {
  const long x = c.xs[0];
  const PartialSum f(x, c.eval_tol);
  const double T = c.ts[0];
  const double u = c.u.value_or(static_cast<double>(x));
  Table t{{"X", "T", "U", "count", "main_term"}, {}, {}};
  t.add_row({x, T, u, count_up_to(f, T, u), count_main_term(x, T)});
  return t;
}

inline Table run_stats(const RunConfig& c) {
  const long x = c.xs[0];
  const double T = c.ts[0];
  const double u = c.u.value_or(static_cast<double>(x));
  const PartialSum f(x, c.eval_tol);
  const auto zeros = locate_strip_zeros(f, T, finder_options(c));
  const StatReport r = build_report(zeros, x, T, c.sigmas, u);
  Table t{{"sigma", "n_sigma", "sum_excess", "bound_name", "bound_value"}, {}, {}};
  for (const auto& row : r.rows)
    t.add_row({row.sigma, row.n_sigma, row.sum_excess, row.bound_name,
               row.bound_value ? Entry(*row.bound_value) : Entry(NotApplicable{})});
  const bool t6 = T >= static_cast<double>(x);
  t.footer = {{"X", x},
              {"T", T},
              {"n_total", r.n_total},
              {"avg_beta", r.n_total > 0 ? Entry(r.avg_beta) : Entry(NotApplicable{})},
              {"U", u},
              {"sum_beta_plus_u", r.sum_beta_plus_u},
              {"theorem6_main_term", t6 ? Entry(theorem6_main_term(x, T, u)) : Entry(NotApplicable{})}};
  return t;
}

inline Table run_littlewood(const RunConfig& c) {
  const long x = c.xs[0];
  const double T = c.ts[0];
  const PartialSum f(x, c.eval_tol);
  const auto zeros = locate_strip_zeros(f, T, finder_options(c));
  Table t{{"sigma0", "T", "lhs", "rhs_log_integral", "rhs_ref_integral", "rhs_arg_integrals", "rhs", "discrepancy"},
          {},
          {}};
  for (double s0 : c.sigmas) {
    const LittlewoodCheck k = littlewood_identity_check(f, s0, T, zeros, c.quad_tol);
    t.add_row({s0, T, k.lhs, k.rhs_log_integral, k.rhs_ref_integral, k.rhs_arg_integrals, k.rhs(), k.discrepancy});
  }
  return t;
}

inline Table run_mollifier(const RunConfig& c) {
  const long x = c.xs[0];
  const long y = c.y.value_or(x);
  const MollifierCoeffs m = mollifier_coeffs(x, y);
  const std::vector<long> d = divisor_count_table(static_cast<std::size_t>(m.limit()));
  Table t{{"n", "a", "d"}, {}, {}};
  for (long n = 1; n <= m.limit(); ++n) t.add_row({n, m.at(n), d[static_cast<std::size_t>(n)]});
  const auto first = first_nonvanishing_below_x(m);
  t.footer = {{"X", x},
              {"Y", y},
              {"vanishes_below_x", static_cast<long>(!first.has_value())},
              {"first_nonvanishing_below_x", first ? Entry(*first) : Entry(NotApplicable{})}};
  return t;
}

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{
      "X",           "T",                "sigma",          "n_total",         "n_winding",
      "main_term",   "n_sigma",          "sum_excess",     "sum_excess_half", "theorem5_bound",
      "theorem5_corollary_bound",        "sum_beta_plus_x", "theorem6_main_term", "theorem7_bound",
      "theorem7_main_term", "density_ratio", "status"};
  return cols;
}

struct SweepCell {
  std::vector<Entry> row;
  bool ok = false;
  long x = 0;
  double T = 0.0;
  double sigma = 0.0;
  long n_total = 0;
  double sum_excess_half = 0.0;
  double sum_beta_plus_x = 0.0;
  double sum_excess = 0.0;
};

inline std::string describe(const std::exception& e) {
  if (const auto* pe = dynamic_cast<const Error*>(&e); pe && !pe->location().empty())
    return std::string(pe->what()) + " at " + pe->location();
  return e.what();
}

inline std::vector<SweepCell> sweep_one_x(const RunConfig& c, long x) {
  std::vector<SweepCell> out;
  const double xd = static_cast<double>(x);
  auto failed_row = [&](double T, double sigma, const std::string& why) {
    SweepCell cell;
    cell.x = x;
    cell.T = T;
    cell.sigma = sigma;
    cell.row.assign(sweep_columns().size(), Entry(NotApplicable{}));
    cell.row[0] = x;
    cell.row[1] = T;
    cell.row[2] = sigma;
    cell.row.back() = "error: " + why;
    return cell;
  };

  std::vector<ZeroRecord> zeros;
  std::optional<PartialSum> f;
  try {
    f.emplace(x, c.eval_tol);
    zeros = locate_strip_zeros(*f, c.ts.back(), finder_options(c));
  } catch (const std::exception& e) {
    for (double T : c.ts)
      for (double s : c.sigmas) out.push_back(failed_row(T, s, describe(e)));
    return out;
  }

  for (double T : c.ts) {
    Entry n_winding;
    try {
      n_winding = count_up_to(*f, T, xd);
    } catch (const std::exception& e) {
      for (double s : c.sigmas) out.push_back(failed_row(T, s, describe(e)));
      continue;
    }
    const long n_total = count_up_to_height(zeros, T);
    const double half = excess_sum(zeros, 0.5, T);
    const double beta_plus_x = sum_beta_plus_u(zeros, T, xd);
    const bool x_le_t = xd <= T;
    for (double s : c.sigmas) {
      SweepCell cell;
      cell.ok = true;
      cell.x = x;
      cell.T = T;
      cell.sigma = s;
      cell.n_total = n_total;
      cell.sum_excess_half = half;
      cell.sum_beta_plus_x = beta_plus_x;
      cell.sum_excess = excess_sum(zeros, s, T);
      const bool t5 = x >= 3 && x_le_t;
      const bool t5c = t5 && s - 0.5 >= min_sigma_gap;
      const bool t7 = s < 0.5 && x_le_t;
      const bool dens = T > 1.0 && s >= 0.5 + 1.0 / std::log(T);
      cell.row = {x,
                  T,
                  s,
                  n_total,
                  n_winding,
                  count_main_term(x, T),
                  count_right_of(zeros, s, T),
                  cell.sum_excess,
                  half,
                  t5 ? Entry(theorem5_bound(x, T)) : Entry(NotApplicable{}),
                  t5c ? Entry(theorem5_corollary_bound(x, T, s)) : Entry(NotApplicable{}),
                  beta_plus_x,
                  T >= xd ? Entry(theorem6_main_term(x, T, xd)) : Entry(NotApplicable{}),
                  t7 ? Entry(theorem7_bound(x, T, s)) : Entry(NotApplicable{}),
                  s < 0.5 ? Entry((0.5 - s) * count_main_term(x, T)) : Entry(NotApplicable{}),
                  dens ? Entry(density_report(zeros, x, T, s)) : Entry(NotApplicable{}),
                  std::string("ok")};
      out.push_back(std::move(cell));
    }
  }
  return out;
}

inline void add_fit(Table& t, const std::string& name, const std::vector<FitPoint>& pts, double t_split) {
  const bool has_base = std::any_of(pts.begin(), pts.end(), [&](const FitPoint& p) { return p.T <= t_split; });
  if (pts.empty() || !has_base) {
    t.footer.emplace_back(name + "_constant", NotApplicable{});
    t.footer.emplace_back(name + "_constant_base", NotApplicable{});
    t.footer.emplace_back(name + "_stable", NotApplicable{});
    return;
  }
  const SlackFit fit = fit_slack(pts, t_split);
  t.footer.emplace_back(name + "_constant", fit.constant);
  t.footer.emplace_back(name + "_constant_base", fit.constant_base);
  t.footer.emplace_back(name + "_stable", static_cast<long>(fit.stable));
}

inline Table run_sweep(const RunConfig& c) {
  Table t{sweep_columns(), {}, {}};
  if (c.xs.empty() || c.ts.empty() || c.sigmas.empty()) return t;
  const auto per_x = parallel_map(c.xs.size(), [&](std::size_t i) { return sweep_one_x(c, c.xs[i]); }, c.workers);

  std::vector<FitPoint> p2, p5, p6, p7;
  long failures = 0;
  for (const auto& cells : per_x) {
    double last_t = -1.0;
    for (const auto& cell : cells) {
      t.add_row(cell.row);
      if (!cell.ok) {
        ++failures;
        continue;
      }
      const double xd = static_cast<double>(cell.x);
      if (cell.T != last_t) {
        last_t = cell.T;
        p2.push_back({cell.x, cell.T, std::abs(static_cast<double>(cell.n_total) - count_main_term(cell.x, cell.T)), xd});
        if (cell.x >= 3 && xd <= cell.T)
          p5.push_back({cell.x, cell.T, cell.sum_excess_half - theorem5_bound(cell.x, cell.T), xd / std::log(xd)});
        if (cell.T >= xd)
          p6.push_back({cell.x, cell.T, std::abs(cell.sum_beta_plus_x - theorem6_main_term(cell.x, cell.T, xd)),
                        xd * xd + cell.T});
      }
      if (cell.sigma < 0.5 && xd <= cell.T)
        p7.push_back({cell.x, cell.T, cell.sum_excess - theorem7_bound(cell.x, cell.T, cell.sigma),
                      (1.0 + std::abs(cell.sigma)) * xd + cell.T});
    }
  }
  const double t_split = c.ts.back() / 2.0;
  t.footer.emplace_back("t_split", t_split);
  t.footer.emplace_back("failed_cells", failures);
  add_fit(t, "theorem2", p2, t_split);
  add_fit(t, "theorem5", p5, t_split);
  add_fit(t, "theorem6", p6, t_split);
  add_fit(t, "theorem7", p7, t_split);
  return t;
}

}  // namespace detail

struct VerifySummary {
  Table table;
  bool all_passed = true;
};

inline VerifySummary run_verify(std::ostream& progress) {
  VerifySummary s;
  s.table.columns = {"id", "title", "passed", "seconds", "detail"};
  const auto results = verify::run_all([&](const verify::CriterionResult& r) {
    progress << verify::format_line(r) << std::endl;
  });
  for (const auto& r : results) {
    s.all_passed = s.all_passed && r.passed;
    s.table.add_row({static_cast<long>(r.id), r.title, static_cast<long>(r.passed), r.seconds, r.detail});
  }
  return s;
}

inline nlohmann::ordered_json error_payload(ErrorCode code, const std::string& message, const std::string& location) {
  nlohmann::ordered_json j;
  j["error"]["code"] = std::string(pzeta::to_string(code));
  j["error"]["message"] = message;
  j["error"]["location"] = location;
  return j;
}

// Runs one command. Results go to config.output_path (or `out`); errors are
// written to `err` as a JSON payload. Returns 0, 1 (validation) or 2
// (numerical failure, or a failed verify criterion).
inline int run(RunConfig config, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    validate(config);
    Table table;
    bool verify_failed = false;
    switch (config.command) {
      case Command::bounds: table = detail::run_bounds(config); break;
      case Command::zeros: table = detail::run_zeros(config); break;
      case Command::count: table = detail::run_count(config); break;
      case Command::stats: table = detail::run_stats(config); break;
      case Command::littlewood: table = detail::run_littlewood(config); break;
      case Command::mollifier: table = detail::run_mollifier(config); break;
      case Command::sweep: table = detail::run_sweep(config); break;
      case Command::verify: {
        VerifySummary v = run_verify(err);
        table = std::move(v.table);
        verify_failed = !v.all_passed;
        break;
      }
    }
    Metadata meta{config_echo(config),
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
    std::ostringstream buffer;
    if (config.resolved_format() == "json")
      write_json(buffer, table, meta);
    else
      write_csv(buffer, table, meta);

    if (config.output_path.empty() || config.output_path == "-") {
      out << buffer.str();
    } else {
      std::ofstream file(config.output_path, std::ios::binary);
      require(static_cast<bool>(file), "cannot open output file " + config.output_path);
      file << buffer.str();
      require(static_cast<bool>(file), "cannot write output file " + config.output_path);
    }
    return verify_failed ? 2 : 0;
  } catch (const Error& e) {
    err << error_payload(e.code(), e.what(), e.location()).dump() << '\n';
    return is_validation(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    nlohmann::ordered_json j;
    j["error"]["code"] = "internal";
    j["error"]["message"] = e.what();
    j["error"]["location"] = "";
    err << j.dump() << '\n';
    return 2;
  }
}

}  // namespace pzeta::cli
