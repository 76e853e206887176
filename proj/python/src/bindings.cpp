#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "app/verify.hpp"
#include "korteweg/errors.hpp"
#include "korteweg/lifespan.hpp"
#include "korteweg/lp_besov.hpp"
#include "korteweg/model.hpp"

namespace py = pybind11;
using namespace korteweg;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

RealField to_field(const Array& a, double length) {
  if (a.ndim() != 1 && a.ndim() != 2) throw ConfigError("field must be one- or two-dimensional");
  if (a.ndim() == 2 && a.shape(0) != a.shape(1)) throw ConfigError("two-dimensional field must be square");
  const Grid g(static_cast<int>(a.ndim()), static_cast<int>(a.shape(0)), length);
  return RealField(g, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const RealField& f) {
  std::vector<py::ssize_t> shape(f.grid().dim(), f.grid().n());
  Array out(shape);
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

// The app layer reports results as JSON; Python receives them as JSON text and decodes it.
std::string capture(int (*cmd)(const app::RunConfig&, std::ostream&), const std::string& ini,
                    const std::vector<std::string>& overrides, int& code) {
  std::ostringstream out;
  code = cmd(app::parse_config(ini, overrides), out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_korteweg, m) {
  m.doc() = "Pseudo-spectral Korteweg fluid solver and harmonic-analysis diagnostics";

  static py::exception<Error> error(m, "KortewegError");
  static py::exception<ConfigError> config_error(m, "ConfigError", error.ptr());
  static py::exception<DomainError> domain_error(m, "DomainError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "div_k", [](const Array& rho, double kappa, double length) {
        const VectorField d = div_k_form_b(to_field(rho, length), kappa);
        py::list out;
        for (const auto& c : d) out.append(to_array(c));
        return out;
      },
      py::arg("rho"), py::arg("kappa"), py::arg("length") = kTwoPi,
      "Capillary force kappa div(rho grad grad ln rho), one array per component.");

  m.def(
      "besov_norm", [](const Array& f, double s, double p, double r, double length) {
        return besov_norm(to_field(f, length), {s, p, r}, build_bumps());
      },
      py::arg("f"), py::arg("s"), py::arg("p"), py::arg("r"), py::arg("length") = kTwoPi,
      "Dyadic Besov norm of a periodic field with the mean excluded.");

  m.def(
      "dyadic_blocks", [](const Array& f, double length) {
        const DyadicDecomposition d = decompose(to_field(f, length), build_bumps());
        py::dict blocks;
        for (int l = d.l_min; l <= d.l_max; ++l) blocks[py::int_(l)] = to_array(d.block(l));
        return py::make_tuple(d.mean, blocks);
      },
      py::arg("f"), py::arg("length") = kTwoPi, "Mean and Littlewood-Paley blocks of a field.");

  m.def(
      "lifespan_bound",
      [](double q_crit, double v_crit, double q_sur, double v_sur, double C, double C1, double c, double mu, double eps,
         double eps_prime) {
        LifespanInputs in;
        in.norm_q0_crit = q_crit;
        in.norm_v0_crit = v_crit;
        in.norm_q0_sur = q_sur;
        in.norm_v0_sur = v_sur;
        in.k = {C, C1, c, mu, eps, eps_prime};
        const LifespanResult r = lifespan_lower_bound(in);
        py::dict branches;
        for (std::size_t i = 0; i < r.branches.size(); ++i) branches[kBranchNames[i]] = r.branches[i];
        return py::make_tuple(r.T, std::string(r.active_name()), branches);
      },
      py::arg("q_crit"), py::arg("v_crit"), py::arg("q_sur"), py::arg("v_sur"), py::arg("C") = 1.0,
      py::arg("C1") = 1.0, py::arg("c") = 1.0, py::arg("mu") = 1.0, py::arg("eps") = 1.0, py::arg("eps_prime") = 1.0,
      "Existence-time lower bound: (T, active branch, all branches).");

  m.def(
      "run_json", [](const std::string& ini, const std::vector<std::string>& overrides) {
        int code = 0;
        std::string text = capture(app::cmd_run, ini, overrides, code);
        return py::make_tuple(code, text);
      },
      py::arg("ini"), py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "lifespan_json", [](const std::string& ini, const std::vector<std::string>& overrides) {
        return app::lifespan_report(app::parse_config(ini, overrides)).dump();
      },
      py::arg("ini"), py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "picard_json", [](const std::string& ini, const std::vector<std::string>& overrides) {
        int code = 0;
        std::string text = capture(app::cmd_picard, ini, overrides, code);
        return py::make_tuple(code, text);
      },
      py::arg("ini"), py::arg("overrides") = std::vector<std::string>{});

  m.def("suite_names", &app::suite_names);
  m.def(
      "verify", [](const std::string& suite) {
        const app::SuiteReport r = app::run_suite(suite);
        py::list cases;
        for (const auto& c : r.cases) {
          py::dict d;
          d["name"] = c.name;
          d["value"] = c.value;
          d["threshold"] = c.threshold;
          d["relation"] = c.relation;
          d["pass"] = c.pass;
          cases.append(d);
        }
        return py::make_tuple(r.pass(), cases);
      },
      py::arg("suite"));
}
