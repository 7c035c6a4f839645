#include "harnack/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace harnack::io {
namespace {

using RawJson = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SpecError((where.empty() ? std::string("/") : where) + ": " + what);
}

const RawJson& member(const RawJson& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing member \"") + key + "\"");
  return *it;
}

double number(const RawJson& obj, const std::string& where, const char* key) {
  const RawJson& v = member(obj, where, key);
  if (!v.is_number()) fail(where + "/" + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + "/" + key, "expected a finite number");
  return d;
}

void only_keys(const RawJson& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.count(k)) fail(where + "/" + k, "unknown member");
  }
}

KernelKind parse_kind(const RawJson& root) {
  const RawJson& k = member(root, "", "kind");
  if (k == "cauchy") return KernelKind::Cauchy;
  if (k == "gaussian") return KernelKind::Gaussian;
  fail("/kind", "expected \"cauchy\" or \"gaussian\"");
}

KernelMixture parse_mixture(KernelKind kind, const RawJson& arr) {
  if (!arr.is_array()) fail("/mixture", "expected an array");
  if (arr.empty()) fail("/mixture", "mixture needs at least one term");
  std::vector<SourceTerm> terms;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "/mixture/" + std::to_string(i);
    only_keys(arr[i], where, {"weight", "center", "time_offset"});
    SourceTerm s;
    s.weight = number(arr[i], where, "weight");
    s.center = number(arr[i], where, "center");
    s.time_offset = arr[i].contains("time_offset") ? number(arr[i], where, "time_offset") : 0.0;
    if (!(s.weight > 0.0)) fail(where + "/weight", "weight must be positive");
    if (s.time_offset < 0.0) fail(where + "/time_offset", "time offset must be non-negative");
    terms.push_back(s);
  }
  return KernelMixture(kind, std::move(terms));
}

ConvolutionSolution parse_datum(KernelKind kind, const RawJson& d) {
  const std::string where = "/datum";
  only_keys(d, where, {"name", "params", "growth_certificate", "growth_scale"});
  const RawJson& name = member(d, where, "name");
  if (!name.is_string()) fail(where + "/name", "expected a string");
  const RawJson& params = member(d, where, "params");
  const std::string pw = where + "/params";

  GrowthCertificate cert;
  cert.bound = number(d, where, "growth_certificate");
  if (!(cert.bound > 0.0)) fail(where + "/growth_certificate", "growth certificate must be positive");
  if (d.contains("growth_scale")) {
    cert.gaussian_scale = number(d, where, "growth_scale");
    if (!(*cert.gaussian_scale > 0.0)) fail(where + "/growth_scale", "growth scale must be positive");
  }

  const std::string n = name.get<std::string>();
  auto build = [&]() -> InitialDatum {
    if (n == "constant") {
      only_keys(params, pw, {"value"});
      return InitialDatum::constant(number(params, pw, "value"), cert);
    }
    if (n == "cauchy_bump" || n == "gaussian_bump") {
      only_keys(params, pw, {"mass", "center", "spread"});
      const double mass = number(params, pw, "mass");
      const double center = number(params, pw, "center");
      const double spread = number(params, pw, "spread");
      return n == "cauchy_bump" ? InitialDatum::cauchy_bump(mass, center, spread, cert)
                                : InitialDatum::gaussian_bump(mass, center, spread, cert);
    }
    if (n == "indicator") {
      only_keys(params, pw, {"lo", "hi", "value"});
      return InitialDatum::indicator(number(params, pw, "lo"), number(params, pw, "hi"), number(params, pw, "value"),
                                     cert);
    }
    fail(where + "/name", "unknown datum \"" + n + "\"; expected constant, cauchy_bump, gaussian_bump or indicator");
  };
  try {
    return ConvolutionSolution(build(), kind);
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    fail(pw, e.what());
  }
}

void emit(std::string& out, const Json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += Json(k).dump();
        out += indent >= 0 ? ": " : ":";
        emit(out, v, indent, depth + 1);
      }
      pad(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        emit(out, v, indent, depth + 1);
      }
      pad(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json location(const ExtremumLocation& loc) {
  Json j;
  switch (loc.site) {
    case ExtremumSite::Interior: j["site"] = "interior"; break;
    case ExtremumSite::Peak: j["site"] = "peak"; break;
    case ExtremumSite::AtInfinity: j["site"] = "at_infinity"; break;
  }
  j["y"] = loc.attained() ? Json(loc.y) : Json(nullptr);
  return j;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

SolutionModel parse_solution_spec(std::string_view text) {
  RawJson root;
  try {
    root = RawJson::parse(text);
  } catch (const RawJson::parse_error& e) {
    throw SpecError("byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  only_keys(root, "", {"kind", "mixture", "datum"});
  const KernelKind kind = parse_kind(root);
  const bool has_mix = root.contains("mixture");
  const bool has_datum = root.contains("datum");
  if (has_mix == has_datum) fail("", "exactly one of \"mixture\" or \"datum\" is required");
  if (has_mix) return parse_mixture(kind, root["mixture"]);
  return parse_datum(kind, root["datum"]);
}

SolutionModel load_solution_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open solution spec '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_solution_spec(ss.str());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  emit(out, j, indent, 0);
  return out;
}

Json to_json(const PointPair& pair) {
  return Json{{"x1", pair.p1.x}, {"t1", pair.p1.t}, {"x2", pair.p2.x}, {"t2", pair.p2.t}};
}

Json to_json(const SharpBracket& b) {
  Json j;
  j["kappa0"] = b.kappa0;
  j["c_low"] = b.c_low;
  j["c_high"] = b.c_high;
  j["x_low"] = opt(b.x_low);
  j["x_high"] = opt(b.x_high);
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  return j;
}

Json to_json(const RatioExtrema& e) {
  Json j;
  j["m_low"] = e.m_low;
  j["m_high"] = e.m_high;
  j["arg_low"] = location(e.arg_low);
  j["arg_high"] = location(e.arg_high);
  return j;
}

Json to_json(const ComparatorResult& r) {
  Json j;
  j["name"] = r.name;
  j["lower"] = opt(r.lower);
  j["upper"] = opt(r.upper);
  Json c = Json::object();
  for (const auto& [k, v] : r.constants_used) c[k] = v;
  j["constants_used"] = c;
  j["comparator_only"] = r.comparator_only;
  return j;
}

Json to_json(const VerificationReport& rep) {
  auto row_json = [&](const PairOutcome& r) {
    Json j;
    j["pair_index"] = r.index;
    j["pair"] = to_json(r.pair);
    j["status"] = std::string(to_string(r.status));
    if (r.status == PairStatus::Ok || r.status == PairStatus::Violation) {
      j["ratio"] = r.ratio;
      j["lower"] = r.lower;
      j["upper"] = opt(r.upper);
      j["lower_margin"] = r.lower_margin;
      j["upper_margin"] = opt(r.upper_margin);
      j["error_estimate"] = r.error_estimate;
    }
    if (!r.message.empty()) j["message"] = r.message;
    return j;
  };
  const bool any = rep.n_checked > 0;
  Json j;
  j["bound"] = rep.bound;
  j["slack"] = rep.slack;
  j["n_pairs"] = rep.rows.size();
  j["n_checked"] = rep.n_checked;
  j["compliant"] = rep.compliant();
  j["min_lower_margin"] = any ? Json(rep.min_lower_margin) : Json(nullptr);
  j["min_upper_margin"] = any && std::isfinite(rep.min_upper_margin) ? Json(rep.min_upper_margin) : Json(nullptr);
  j["worst_case"] = rep.worst_case ? row_json(rep.rows[*rep.worst_case]) : Json(nullptr);
  Json viol = Json::array();
  for (std::size_t i : rep.violations) {
    const auto& r = rep.rows[i];
    Json v = row_json(r);
    const double widen = rep.slack + r.error_estimate;
    v["lower_margin_adjusted"] = r.lower_margin + widen;
    v["upper_margin_adjusted"] = r.upper_margin ? Json(*r.upper_margin + widen) : Json(nullptr);
    viol.push_back(v);
  }
  j["violations"] = viol;
  Json rows = Json::array();
  for (const auto& r : rep.rows) rows.push_back(row_json(r));
  j["rows"] = rows;
  return j;
}

void write_csv(std::ostream& os, const VerificationReport& rep) {
  os << kReportCsvHeader << '\n';
  for (const auto& r : rep.rows) {
    const bool evaluated = r.status == PairStatus::Ok || r.status == PairStatus::Violation;
    os << r.index << ',' << format_number(r.pair.p1.x) << ',' << format_number(r.pair.p1.t) << ','
       << format_number(r.pair.p2.x) << ',' << format_number(r.pair.p2.t) << ',';
    if (evaluated) {
      os << format_number(r.ratio) << ',' << format_number(r.lower) << ',' << cell(r.upper) << ','
         << format_number(r.lower_margin) << ',' << cell(r.upper_margin);
    } else {
      os << ",,,,";
    }
    os << ',' << to_string(r.status) << '\n';
  }
}

}  // namespace harnack::io
