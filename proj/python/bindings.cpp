#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "harnack/cli.hpp"
#include "harnack/comparators.hpp"
#include "harnack/errors.hpp"
#include "harnack/io.hpp"
#include "harnack/kernels.hpp"
#include "harnack/ratio_analysis.hpp"
#include "harnack/solutions.hpp"
#include "harnack/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace harnack;

namespace {

// Solution models cross the boundary as JSON documents or mixture term lists.
struct Model {
  SolutionModel inner;
};

KernelKind parse_kind(const std::string& s) {
  if (s == "cauchy") return KernelKind::Cauchy;
  if (s == "gaussian") return KernelKind::Gaussian;
  throw DomainError("kind must be 'cauchy' or 'gaussian'");
}

py::object json_to_py(const io::Json& j) {
  return py::module_::import("json").attr("loads")(io::dump_json(j, -1));
}

py::tuple numeric(const NumericValue& v) { return py::make_tuple(v.value, v.error); }

std::string site(const ExtremumLocation& l) {
  switch (l.site) {
    case ExtremumSite::Interior: return "interior";
    case ExtremumSite::Peak: return "peak";
    case ExtremumSite::AtInfinity: return "at_infinity";
  }
  return "unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sharp Harnack bracket for the half-Laplacian heat flow, with oracles and residuals";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<OrderingError>(m, "OrderingError", domain.ptr());
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);
  auto contract = py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<SpecError>(m, "SpecError", contract.ptr());
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);

  m.def("gaussian_kernel", &kernels::gaussian_kernel, "x"_a, "t"_a);
  m.def("cauchy_kernel", &kernels::cauchy_kernel, "x"_a, "t"_a);
  m.def("frac_constant", &kernels::frac_constant, "n"_a, "alpha"_a);
  m.def(
      "half_laplacian",
      [](const std::function<double(double)>& f, double x, double window, double tail_scale, double abs_tol) {
        kernels::PvQuadrature q;
        q.symmetric_window = window;
        q.tail_map.scale = tail_scale;
        q.abs_tol = abs_tol;
        return numeric(kernels::half_laplacian(f, x, q));
      },
      "f"_a, "x"_a, "window"_a = 1e-4, "tail_scale"_a = 1.0, "abs_tol"_a = 1e-10,
      "(value, error) of (-Delta)^{1/2} f at x");

  py::class_<PointPair>(m, "PointPair")
      .def(py::init([](double x1, double t1, double x2, double t2) { return PointPair{{x1, t1}, {x2, t2}}; }), "x1"_a,
           "t1"_a, "x2"_a, "t2"_a)
      .def_property_readonly("x1", [](const PointPair& p) { return p.p1.x; })
      .def_property_readonly("t1", [](const PointPair& p) { return p.p1.t; })
      .def_property_readonly("x2", [](const PointPair& p) { return p.p2.x; })
      .def_property_readonly("t2", [](const PointPair& p) { return p.p2.t; })
      .def("swapped", &PointPair::swapped)
      .def("__repr__", [](const PointPair& p) {
        std::ostringstream os;
        os << "PointPair(" << p.p1.x << ", " << p.p1.t << ", " << p.p2.x << ", " << p.p2.t << ")";
        return os.str();
      });

  py::class_<SharpBracket>(m, "SharpBracket")
      .def_readonly("kappa0", &SharpBracket::kappa0)
      .def_readonly("c_low", &SharpBracket::c_low)
      .def_readonly("c_high", &SharpBracket::c_high)
      .def_readonly("x_low", &SharpBracket::x_low)
      .def_readonly("x_high", &SharpBracket::x_high)
      .def_readonly("lower", &SharpBracket::lower)
      .def_readonly("upper", &SharpBracket::upper);

  py::class_<RatioExtrema>(m, "RatioExtrema")
      .def_readonly("m_low", &RatioExtrema::m_low)
      .def_readonly("m_high", &RatioExtrema::m_high)
      .def_property_readonly("site_low", [](const RatioExtrema& e) { return site(e.arg_low); })
      .def_property_readonly("site_high", [](const RatioExtrema& e) { return site(e.arg_high); })
      .def_property_readonly("y_low", [](const RatioExtrema& e) { return e.arg_low.attained() ? py::cast(e.arg_low.y) : py::none(); })
      .def_property_readonly("y_high", [](const RatioExtrema& e) { return e.arg_high.attained() ? py::cast(e.arg_high.y) : py::none(); });

  m.def("kernel_ratio", &ratio::kernel_ratio, "pair"_a, "tau"_a, "y"_a);
  m.def("sharp_bracket", &ratio::sharp_bracket, "pair"_a);
  m.def("ratio_extrema", &ratio::ratio_extrema, "pair"_a, "tau"_a = 0.0);
  m.def("brute_force_extrema", &verify::brute_force_extrema, "pair"_a, "tau"_a = 0.0, "resolution"_a = 4096);
  m.def("critical_points", [](const PointPair& p, double tau) {
    const auto c = ratio::critical_points(p, tau);
    return py::make_tuple(c.x_low, c.x_high, c.kappa);
  }, "pair"_a, "tau"_a = 0.0, "(x_low, x_high, kappa)");
  m.def("extrema_log_derivative", [](const PointPair& p, double tau) {
    const auto d = ratio::extrema_log_derivative(p, tau);
    return py::make_tuple(d.d_low, d.d_high);
  }, "pair"_a, "tau"_a);

  m.def("hadamard_pini_lower", &comparators::hadamard_pini_lower, "pair"_a);
  m.def("simple_fractional_lower", &comparators::simple_fractional_lower, "pair"_a);
  m.def("wz_lower", &comparators::wz_lower, "pair"_a, "c"_a);
  m.def("bsv_bracket", [](const PointPair& p, double c) { return json_to_py(io::to_json(comparators::bsv_bracket(p, c))); },
        "pair"_a, "c_r0"_a);

  py::class_<Model>(m, "Model")
      .def_property_readonly("kind", [](const Model& md) { return std::string(to_string(kind_of(md.inner))); })
      .def("evaluate", [](const Model& md, double x, double t) { return numeric(evaluate(md.inner, x, t)); }, "x"_a, "t"_a)
      .def("pde_residual", [](const Model& md, double x, double t) { return numeric(pde_residual(md.inner, x, t)); },
           "x"_a, "t"_a)
      .def("ably_residual", [](const Model& md, double x, double t) { return numeric(ably_residual(md.inner, x, t)); },
           "x"_a, "t"_a)
      .def("fractional_liyau_residual",
           [](const Model& md, double x, double t) { return numeric(fractional_liyau_residual(md.inner, x, t)); }, "x"_a,
           "t"_a);

  m.def("mixture", [](const std::string& kind, const std::vector<std::tuple<double, double, double>>& terms) {
    std::vector<SourceTerm> st;
    for (const auto& [w, c, s] : terms) st.push_back({w, c, s});
    return Model{KernelMixture(parse_kind(kind), st)};
  }, "kind"_a, "terms"_a, "terms are (weight, center, time_offset) triples");
  m.def("parse_solution_spec", [](const std::string& text) { return Model{io::parse_solution_spec(text)}; }, "text"_a);

  m.def("random_pairs", [](std::uint64_t seed, std::size_t n, std::pair<double, double> xr, std::pair<double, double> tr) {
    SweepConfig cfg;
    cfg.seed = seed;
    cfg.n_pairs = n;
    cfg.x_range = {xr.first, xr.second};
    cfg.t_range = {tr.first, tr.second};
    return verify::random_pairs(cfg);
  }, "seed"_a, "n"_a, "x_range"_a = std::make_pair(-5.0, 5.0), "t_range"_a = std::make_pair(0.1, 5.0));
  m.def("harnack_compliance", [](const Model& md, const std::vector<PointPair>& pairs, double slack, unsigned threads) {
    VerificationReport rep;
    {
      py::gil_scoped_release release;
      rep = verify::harnack_compliance(md.inner, pairs, slack, threads);
    }
    return json_to_py(io::to_json(rep));
  }, "model"_a, "pairs"_a, "slack"_a = 1e-10, "threads"_a = 1, "report as a dict");
  m.def("printed_prefactor_counterexample", [] {
    const auto r = verify::printed_prefactor_counterexample();
    py::dict d;
    d["realized_upper"] = r.realized_upper;
    d["printed_upper"] = r.printed_upper;
    d["corrected_upper"] = r.corrected_upper;
    d["realized_lower"] = r.realized_lower;
    d["printed_lower"] = r.printed_lower;
    d["corrected_lower"] = r.corrected_lower;
    d["printed_upper_violated"] = r.printed_upper_violated;
    d["corrected_compliant"] = r.corrected_compliant;
    return d;
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "args"_a, "(exit_code, stdout, stderr) of one command line");
}
