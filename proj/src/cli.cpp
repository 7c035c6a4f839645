#include "harnack/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "harnack/comparators.hpp"
#include "harnack/errors.hpp"
#include "harnack/io.hpp"
#include "harnack/ratio_analysis.hpp"
#include "harnack/solutions.hpp"
#include "harnack/verify.hpp"

namespace harnack::cli {
namespace {

using io::Json;
using io::format_number;

struct PairArgs {
  double x1 = 0.0, t1 = 0.0, x2 = 0.0, t2 = 0.0;
  PointPair pair() const { return {{x1, t1}, {x2, t2}}; }
};

void add_pair(CLI::App* cmd, PairArgs& p, bool required) {
  auto* a = cmd->add_option("--x1", p.x1, "position of the first point");
  auto* b = cmd->add_option("--t1", p.t1, "time of the first point");
  auto* c = cmd->add_option("--x2", p.x2, "position of the second point");
  auto* d = cmd->add_option("--t2", p.t2, "time of the second point");
  if (required) {
    for (auto* o : {a, b, c, d}) o->required();
  }
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string table_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string table_cell(const std::optional<double>& v) { return v ? table_number(*v) : std::string("-"); }

void print_table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) out << k << std::string(w - k.size() + 2, ' ') << v << '\n';
}

std::string site_name(const ExtremumLocation& loc) {
  switch (loc.site) {
    case ExtremumSite::Interior: return "interior";
    case ExtremumSite::Peak: return "peak";
    case ExtremumSite::AtInfinity: return "at_infinity";
  }
  return "unknown";
}

// ---- bound -------------------------------------------------------------------------------

void emit_bound(std::ostream& out, const std::string& format, const SharpBracket& b) {
  if (format == "json") {
    out << io::dump_json(io::to_json(b)) << '\n';
  } else if (format == "csv") {
    out << "kappa0,c_low,c_high,x_low,x_high,lower,upper\n"
        << format_number(b.kappa0) << ',' << format_number(b.c_low) << ',' << format_number(b.c_high) << ','
        << cell(b.x_low) << ',' << cell(b.x_high) << ',' << format_number(b.lower) << ',' << format_number(b.upper)
        << '\n';
  } else {
    print_table(out, {{"kappa0", table_number(b.kappa0)},
                      {"c_low", table_number(b.c_low)},
                      {"c_high", table_number(b.c_high)},
                      {"x_low", table_cell(b.x_low)},
                      {"x_high", table_cell(b.x_high)},
                      {"lower", table_number(b.lower)},
                      {"upper", table_number(b.upper)}});
  }
}

// ---- extrema ------------------------------------------------------------------------------

void emit_extrema(std::ostream& out, const std::string& format, const PointPair& pair, double tau,
                  const RatioExtrema& cf, const std::optional<RatioExtrema>& oracle) {
  if (format == "json") {
    Json j;
    j["pair"] = io::to_json(pair);
    j["tau"] = tau;
    j["closed_form"] = io::to_json(cf);
    if (oracle) {
      j["oracle"] = io::to_json(*oracle);
      j["deviation"] = Json{{"m_low", std::abs(cf.m_low - oracle->m_low)}, {"m_high", std::abs(cf.m_high - oracle->m_high)}};
    }
    out << io::dump_json(j) << '\n';
    return;
  }
  auto y = [](const ExtremumLocation& l) { return l.attained() ? std::optional<double>(l.y) : std::nullopt; };
  if (format == "csv") {
    out << "source,m_low,arg_low_site,arg_low_y,m_high,arg_high_site,arg_high_y\n";
    auto row = [&](const char* name, const RatioExtrema& e) {
      out << name << ',' << format_number(e.m_low) << ',' << site_name(e.arg_low) << ',' << cell(y(e.arg_low)) << ','
          << format_number(e.m_high) << ',' << site_name(e.arg_high) << ',' << cell(y(e.arg_high)) << '\n';
    };
    row("closed_form", cf);
    if (oracle) {
      row("oracle", *oracle);
      out << "deviation," << format_number(std::abs(cf.m_low - oracle->m_low)) << ",,,"
          << format_number(std::abs(cf.m_high - oracle->m_high)) << ",,\n";
    }
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows{
      {"m_low", table_number(cf.m_low)},   {"arg_low", site_name(cf.arg_low) + " " + table_cell(y(cf.arg_low))},
      {"m_high", table_number(cf.m_high)}, {"arg_high", site_name(cf.arg_high) + " " + table_cell(y(cf.arg_high))}};
  if (oracle) {
    rows.push_back({"oracle m_low", table_number(oracle->m_low)});
    rows.push_back({"oracle m_high", table_number(oracle->m_high)});
    rows.push_back({"deviation m_low", table_number(std::abs(cf.m_low - oracle->m_low))});
    rows.push_back({"deviation m_high", table_number(std::abs(cf.m_high - oracle->m_high))});
  }
  print_table(out, rows);
}

// ---- compare ------------------------------------------------------------------------------

struct CompareRow {
  ComparatorResult result;
  bool applicable = true;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<CompareRow> compare_rows(const PointPair& pair, const std::vector<std::string>& names,
                                     std::optional<double> wz_c, std::optional<double> bsv_c) {
  validate(pair);
  const bool ordered = pair.p1.t < pair.p2.t;
  std::vector<CompareRow> rows;
  for (const auto& n : names) {
    CompareRow row;
    row.result.name = n;
    if (n == "hadamard_pini") {
      row.result.comparator_only = true;
      if (ordered) row.result.lower = comparators::hadamard_pini_lower(pair);
      row.applicable = ordered;
    } else if (n == "simple") {
      if (ordered) row.result.lower = comparators::simple_fractional_lower(pair);
      row.applicable = ordered;
    } else if (n == "wz") {
      if (!wz_c) throw ContractError("the wz row needs --wz-c");
      row.result.comparator_only = true;
      row.result.constants_used = {{"c", *wz_c}};
      if (ordered) row.result.lower = comparators::wz_lower(pair, *wz_c);
      row.applicable = ordered;
    } else if (n == "bsv") {
      if (!bsv_c) throw ContractError("the bsv row needs --bsv-c");
      row.result = comparators::bsv_bracket(pair, *bsv_c);
    } else if (n == "sharp") {
      const SharpBracket b = ratio::sharp_bracket(pair);
      row.result.lower = b.lower;
      row.result.upper = b.upper;
    } else {
      throw ContractError("unknown comparison row '" + n + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_compare(std::ostream& out, const std::string& format, const std::vector<CompareRow>& rows) {
  auto constants = [](const ComparatorResult& r) {
    std::string s;
    for (const auto& [k, v] : r.constants_used) s += (s.empty() ? "" : ";") + k + "=" + format_number(v);
    return s;
  };
  if (format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j = io::to_json(r.result);
      j["status"] = r.applicable ? "ok" : "not_applicable";
      arr.push_back(j);
    }
    out << io::dump_json(Json{{"rows", arr}}) << '\n';
  } else if (format == "csv") {
    out << "name,lower,upper,status,constants_used\n";
    for (const auto& r : rows) {
      out << r.result.name << ',' << cell(r.result.lower) << ',' << cell(r.result.upper) << ','
          << (r.applicable ? "ok" : "not_applicable") << ',' << constants(r.result) << '\n';
    }
  } else {
    std::vector<std::pair<std::string, std::string>> t;
    for (const auto& r : rows) {
      std::string v = r.applicable ? table_cell(r.result.lower) + " .. " + table_cell(r.result.upper) : "not applicable";
      if (!r.result.constants_used.empty()) v += "  (" + constants(r.result) + ")";
      t.push_back({r.result.name, v});
    }
    print_table(out, t);
  }
}

// ---- verify -------------------------------------------------------------------------------

Interval parse_range(const std::string& s, const char* what) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw ContractError(std::string(what) + " must be lo:hi");
  try {
    return {std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
    throw ContractError(std::string(what) + " must be lo:hi with numeric bounds");
  }
}

struct Grid {
  double lo, hi;
  std::size_t n;
  double at(std::size_t i) const { return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1); }
};

Grid parse_grid(const std::string& s, const char* what) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ContractError(std::string(what) + " must be lo:hi:n");
  Grid g{};
  try {
    g.lo = std::stod(parts[0]);
    g.hi = std::stod(parts[1]);
    const long n = std::stol(parts[2]);
    if (n < 1) throw ContractError(std::string(what) + ": n must be positive");
    g.n = static_cast<std::size_t>(n);
  } catch (const ContractError&) {
    throw;
  } catch (const std::exception&) {
    throw ContractError(std::string(what) + " must be lo:hi:n");
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.lo > g.hi) throw ContractError(std::string(what) + " is empty");
  return g;
}

void emit_report(std::ostream& out, const std::string& format, const VerificationReport& rep) {
  if (format == "json") {
    out << io::dump_json(io::to_json(rep)) << '\n';
  } else if (format == "csv") {
    io::write_csv(out, rep);
  } else {
    std::vector<std::pair<std::string, std::string>> t{
        {"bound", rep.bound},
        {"pairs", std::to_string(rep.rows.size())},
        {"checked", std::to_string(rep.n_checked)},
        {"violations", std::to_string(rep.violations.size())},
        {"min lower margin", rep.n_checked ? table_number(rep.min_lower_margin) : "-"},
        {"min upper margin",
         rep.n_checked && std::isfinite(rep.min_upper_margin) ? table_number(rep.min_upper_margin) : "-"}};
    if (rep.worst_case) {
      const auto& p = rep.rows[*rep.worst_case].pair;
      t.push_back({"worst pair", "((" + table_number(p.p1.x) + ", " + table_number(p.p1.t) + "), (" +
                                     table_number(p.p2.x) + ", " + table_number(p.p2.t) + "))"});
    }
    print_table(out, t);
  }
}

// ---- residual -----------------------------------------------------------------------------

NumericValue residual_at(const SolutionModel& model, const std::string& which, double x, double t) {
  if (which == "pde") return pde_residual(model, x, t);
  if (which == "ably") return ably_residual(model, x, t);
  return fractional_liyau_residual(model, x, t);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harnack bracket calculator and verifier for the half-Laplacian heat flow", "harnack"};
  app.require_subcommand(1);
  std::string format = "table";
  const std::vector<std::string> formats{"csv", "json", "table"};

  PairArgs bound_pair;
  auto* bound = app.add_subcommand("bound", "sharp two-sided ratio bracket");
  add_pair(bound, bound_pair, true);
  bound->add_option("--format", format)->check(CLI::IsMember(formats));

  PairArgs ext_pair;
  double tau = 0.0;
  bool oracle = false;
  std::size_t resolution = 4096;
  auto* extrema = app.add_subcommand("extrema", "extrema of the shifted kernel ratio");
  add_pair(extrema, ext_pair, true);
  extrema->add_option("--tau", tau, "time shift in [0, min(t1, t2))");
  extrema->add_flag("--oracle", oracle, "also run the brute-force extremiser");
  extrema->add_option("--resolution", resolution, "brute-force grid size (>= 1024)");
  extrema->add_option("--format", format)->check(CLI::IsMember(formats));

  PairArgs cmp_pair;
  std::optional<double> wz_c, bsv_c;
  std::string rows_arg;
  auto* compare = app.add_subcommand("compare", "sharp bracket next to the comparator bounds");
  add_pair(compare, cmp_pair, true);
  compare->add_option("--wz-c", wz_c, "constant c of the wz row");
  compare->add_option("--bsv-c", bsv_c, "constant C(R0) of the bsv row");
  compare->add_option("--rows", rows_arg,
                      "comma-separated rows among hadamard_pini,simple,wz,bsv,sharp; default: hadamard_pini,simple, "
                      "wz/bsv when their constant is given, sharp");
  compare->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string spec_path;
  std::size_t n_pairs = 1000;
  std::uint64_t seed = 0;
  double slack = 1e-10;
  std::string x_range = "-5:5", t_range = "0.1:5";
  std::optional<double> vx1, vt1, vx2, vt2;
  std::string bound_name;
  auto* verify_cmd = app.add_subcommand("verify", "check a solution against the bracket on random pairs");
  verify_cmd->add_option("--spec", spec_path, "solution-spec JSON file")->required();
  verify_cmd->add_option("--n-pairs", n_pairs);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--slack", slack);
  verify_cmd->add_option("--bound", bound_name, "sharp or hadamard_pini; default by the solution kind")
      ->check(CLI::IsMember({"sharp", "hadamard_pini"}));
  verify_cmd->add_option("--x-range", x_range, "lo:hi");
  verify_cmd->add_option("--t-range", t_range, "lo:hi");
  verify_cmd->add_option("--x1", vx1, "check this single pair instead of a random sweep");
  verify_cmd->add_option("--t1", vt1);
  verify_cmd->add_option("--x2", vx2);
  verify_cmd->add_option("--t2", vt2);
  verify_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string res_spec, which = "pde", x_grid, t_grid;
  auto* residual = app.add_subcommand("residual", "PDE or differential-Harnack residuals on a grid");
  residual->add_option("--spec", res_spec, "solution-spec JSON file")->required();
  residual->add_option("--which", which)->check(CLI::IsMember({"pde", "ably", "liyau"}));
  residual->add_option("--x-grid", x_grid, "lo:hi:n")->required();
  residual->add_option("--t-grid", t_grid, "lo:hi:n")->required();
  residual->add_option("--format", format)->check(CLI::IsMember(formats));

  std::vector<std::string> argv_store{"harnack"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*bound) {
      emit_bound(out, format, ratio::sharp_bracket(bound_pair.pair()));
      return kSuccess;
    }
    if (*extrema) {
      const PointPair p = ext_pair.pair();
      validate(p);
      const RatioExtrema cf = ratio::ratio_extrema(p, tau);
      std::optional<RatioExtrema> bf;
      if (oracle) bf = verify::brute_force_extrema(p, tau, resolution);
      emit_extrema(out, format, p, tau, cf, bf);
      return kSuccess;
    }
    if (*compare) {
      std::vector<std::string> names;
      if (rows_arg.empty()) {
        names = {"hadamard_pini", "simple"};
        if (wz_c) names.push_back("wz");
        if (bsv_c) names.push_back("bsv");
      } else {
        names = split(rows_arg, ',');
      }
      if (std::find(names.begin(), names.end(), "sharp") == names.end()) names.push_back("sharp");
      emit_compare(out, format, compare_rows(cmp_pair.pair(), names, wz_c, bsv_c));
      return kSuccess;
    }
    if (*verify_cmd) {
      const SolutionModel model = io::load_solution_spec(spec_path);
      std::vector<PointPair> pairs;
      const int given = vx1.has_value() + vt1.has_value() + vx2.has_value() + vt2.has_value();
      if (given == 4) {
        pairs.push_back({{*vx1, *vt1}, {*vx2, *vt2}});
      } else if (given == 0) {
        SweepConfig cfg;
        cfg.seed = seed;
        cfg.n_pairs = n_pairs;
        cfg.slack = slack;
        cfg.x_range = parse_range(x_range, "--x-range");
        cfg.t_range = parse_range(t_range, "--t-range");
        pairs = verify::random_pairs(cfg);
      } else {
        throw ContractError("a single pair needs all of --x1 --t1 --x2 --t2");
      }
      const unsigned threads = verify::sweep_threads_from_env();
      if (bound_name.empty()) bound_name = kind_of(model) == KernelKind::Cauchy ? "sharp" : "hadamard_pini";
      const VerificationReport rep = bound_name == "sharp"
                                         ? verify::harnack_compliance(model, pairs, slack, threads)
                                         : verify::hadamard_pini_compliance(model, pairs, slack, threads);
      emit_report(out, format, rep);
      const auto errors = std::count_if(rep.rows.begin(), rep.rows.end(),
                                        [](const PairOutcome& r) { return r.status == PairStatus::Error; });
      if (!rep.compliant()) return kViolation;
      if (errors > 0) {
        err << "error: " << errors << " pair(s) could not be evaluated\n";
        return kUsageError;
      }
      return kSuccess;
    }
    if (*residual) {
      const SolutionModel model = io::load_solution_spec(res_spec);
      const Grid xs = parse_grid(x_grid, "--x-grid");
      const Grid ts = parse_grid(t_grid, "--t-grid");
      if (!(ts.lo > 0.0)) throw DomainError("--t-grid must lie in t > 0");
      struct Row {
        double x, t;
        NumericValue r;
      };
      std::vector<Row> rows;
      for (std::size_t j = 0; j < ts.n; ++j) {
        for (std::size_t i = 0; i < xs.n; ++i) {
          const double x = xs.at(i), t = ts.at(j);
          rows.push_back({x, t, residual_at(model, which, x, t)});
        }
      }
      double min_r = std::numeric_limits<double>::infinity(), max_abs = 0.0;
      for (const auto& r : rows) {
        min_r = std::min(min_r, r.r.value);
        max_abs = std::max(max_abs, std::abs(r.r.value));
      }
      if (format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(Json{{"x", r.x}, {"t", r.t}, {"residual", r.r.value}, {"error_estimate", r.r.error}});
        out << io::dump_json(Json{{"which", which}, {"rows", arr}, {"min_residual", min_r}, {"max_abs_residual", max_abs}})
            << '\n';
      } else if (format == "csv") {
        out << "x,t,residual,error_estimate\n";
        for (const auto& r : rows) {
          out << format_number(r.x) << ',' << format_number(r.t) << ',' << format_number(r.r.value) << ','
              << format_number(r.r.error) << '\n';
        }
        out << "# min_residual=" << format_number(min_r) << " max_abs_residual=" << format_number(max_abs) << '\n';
      } else {
        out << "x               t               residual          error_estimate\n";
        for (const auto& r : rows) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "%-15.8g %-15.8g %-17.10g %.3g\n", r.x, r.t, r.r.value, r.r.error);
          out << buf;
        }
        out << "min residual " << table_number(min_r) << ", max |residual| " << table_number(max_abs) << '\n';
      }
      return kSuccess;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace harnack::cli
