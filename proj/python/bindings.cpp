#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "selfsim/config.hpp"
#include "selfsim/expand.hpp"
#include "selfsim/render.hpp"
#include "selfsim/scenarios.hpp"
#include "selfsim/subst_io.hpp"
#include "selfsim/substitution.hpp"
#include "selfsim/tiling.hpp"

namespace py = pybind11;
using namespace selfsim;

namespace {

// (extents..., color_dim) array of uint16, C order.
py::array_t<std::uint16_t> to_array(const TilingBox& T) {
  std::vector<py::ssize_t> shape(T.extents().begin(), T.extents().end());
  shape.push_back(static_cast<py::ssize_t>(T.color_dim()));
  py::array_t<std::uint16_t> out(shape);
  auto data = T.data();
  std::copy(data.begin(), data.end(), out.mutable_data());
  return out;
}

py::array_t<std::uint16_t> to_array(const FpMatrix& m) {
  py::array_t<std::uint16_t> out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  auto data = m.data();
  std::copy(data.begin(), data.end(), out.mutable_data());
  return out;
}

TilingBox from_array(std::uint32_t p, const py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() < 2) throw Error(ErrorCode::DimensionMismatch, "expected an array of shape (extents..., color_dim)");
  std::vector<int> extents;
  for (py::ssize_t i = 0; i + 1 < a.ndim(); ++i) extents.push_back(static_cast<int>(a.shape(i)));
  const std::size_t dim = static_cast<std::size_t>(a.shape(a.ndim() - 1));
  PrimeField f(p);
  TilingBox T(f, extents, dim == 1 ? ColorSpec::scalar() : ColorSpec::vector(dim));
  const std::uint16_t* src = a.data();
  auto dst = T.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (src[i] >= p) throw Error(ErrorCode::InvalidArgument, "array entry outside [0, p)");
    dst[i] = src[i];
  }
  return T;
}

RunConfig make_config(std::uint32_t p, const std::string& Q, const std::string& P, std::size_t d, std::size_t n,
                      const std::string& side, std::optional<std::vector<int>> box) {
  RunConfig cfg;
  cfg.p = p;
  cfg.Q_text = Q;
  cfg.P_text = P;
  cfg.d = d;
  cfg.n = n;
  cfg.side = parse_side(side);
  if (box) cfg.box = box->size() == 1 ? std::vector<int>(n, (*box)[0]) : *box;
  validate(cfg);
  return cfg;
}

struct PySynthesis {
  RunConfig cfg;
  Synthesis syn;
};

PySynthesis synthesize_config(const RunConfig& cfg) { return {cfg, synthesize(cfg.P(), cfg.Q(), cfg.side)}; }

py::list maps_list(const LinearSubstitution& S) {
  py::list out;
  for (const auto& m : S.maps()) out.append(to_array(m));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Self-similar tilings from rational power series over finite fields";

  // Kept alive for the interpreter's lifetime; carries the error code as .code.
  static py::handle error_type = py::exception<Error>(m, "SelfsimError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      py::object exc = error_type(e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<RunConfig>(m, "Config")
      .def(py::init(&make_config), py::arg("p"), py::arg("Q"), py::arg("P") = "1", py::arg("d") = 1, py::arg("n") = 2,
           py::arg("side") = "right", py::arg("box") = py::none())
      .def_static("from_preset", &config_from_preset, py::arg("name"))
      .def_static("from_json", [](const std::string& text) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
          throw SyntaxError(e.byte, "invalid config JSON");
        }
        return config_from_json(j);
      }, py::arg("text"))
      .def_static("load", &load_config, py::arg("path"))
      .def_readonly("p", &RunConfig::p)
      .def_readonly("d", &RunConfig::d)
      .def_readonly("n", &RunConfig::n)
      .def_readonly("P", &RunConfig::P_text)
      .def_readonly("Q", &RunConfig::Q_text)
      .def_readonly("box", &RunConfig::box)
      .def_readonly("preset", &RunConfig::preset)
      .def_property_readonly("side", [](const RunConfig& c) { return side_name(c.side); })
      .def("to_json", [](const RunConfig& c) { return c.to_json().dump(); })
      .def("__repr__", [](const RunConfig& c) { return "Config(" + c.to_json().dump() + ")"; });

  m.def("preset_names", &preset_names);

  m.def("expand", [](const RunConfig& cfg, std::optional<std::vector<int>> box) {
    std::vector<int> ext = box ? (box->size() == 1 ? std::vector<int>(cfg.n, (*box)[0]) : *box) : cfg.box;
    return to_array(expand_quotient(cfg.P(), cfg.Q(), cfg.side, ext));
  }, py::arg("config"), py::arg("box") = py::none(),
        "Coefficients of P Q^-1 (right) or Q^-1 P (left) on the box, shape (extents..., color_dim).");

  m.def("binomial_tiling", [](std::uint32_t p, std::vector<int> box) {
    return to_array(binomial_tiling(PrimeField(p), box));
  }, py::arg("p"), py::arg("box"));

  m.def("count_colors", [](std::uint32_t p, const py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>& a) {
    return count_colors(from_array(p, a));
  }, py::arg("p"), py::arg("tiling"));

  m.def("block_tiling", [](std::uint32_t p, const py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>& a, int l) {
    return to_array(block_tiling(from_array(p, a), l));
  }, py::arg("p"), py::arg("tiling"), py::arg("l"));

  m.def("encode_ppm", [](std::uint32_t p, const py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>& a) {
    return py::bytes(encode_ppm(from_array(p, a)));
  }, py::arg("p"), py::arg("tiling"), "P6 image of a 2-d tiling; pixel (x, y) shows tiling[x, y].");

  m.def("render", [](const RunConfig& cfg, const std::string& path) {
    render_ppm(expand_quotient(cfg.P(), cfg.Q(), cfg.side, cfg.box), path);
  }, py::arg("config"), py::arg("path"));

  py::class_<LinearSubstitution>(m, "Substitution")
      .def_property_readonly("p", [](const LinearSubstitution& S) { return S.field().p(); })
      .def_property_readonly("n", &LinearSubstitution::n)
      .def_property_readonly("t", &LinearSubstitution::t)
      .def_property_readonly("length", &LinearSubstitution::length)
      .def_property_readonly("color_dim", &LinearSubstitution::in_dim)
      .def_property_readonly("maps", &maps_list)
      .def("cell", [](const LinearSubstitution& S, std::size_t k) {
        MultiIndex b = S.cell_of(k);
        return std::vector<int>(b.begin(), b.end());
      }, py::arg("k"))
      .def("apply", [](const LinearSubstitution& S, const py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>& a) {
        return to_array(apply_substitution(S, from_array(S.field().p(), a)));
      }, py::arg("tiling"))
      .def("dumps", &dump_substitution)
      .def_static("loads", &load_substitution, py::arg("text"))
      .def("__eq__", [](const LinearSubstitution& a, const LinearSubstitution& b) { return a == b; });

  py::class_<PySynthesis>(m, "Synthesis")
      .def_property_readonly("D", [](const PySynthesis& s) { return s.syn.tau.D; })
      .def_property_readonly("D_bound", [](const PySynthesis& s) { return s.syn.tau.D_bound; })
      .def_property_readonly("tau", [](const PySynthesis& s) { return to_array(s.syn.tau.tau.matrix); })
      .def_property_readonly("phi1", [](const PySynthesis& s) { return to_array(s.syn.phi1); })
      .def_property_readonly("substitution", [](const PySynthesis& s) { return s.syn.S; })
      .def("window_tiling", [](const PySynthesis& s, std::optional<std::vector<int>> box) {
        std::vector<int> ext = box ? (box->size() == 1 ? std::vector<int>(s.cfg.n, (*box)[0]) : *box) : s.cfg.box;
        return to_array(tbar(base_tiling(s.syn, ext), s.syn.tau.D));
      }, py::arg("box") = py::none())
      .def("verify", [](const PySynthesis& s, int side) {
        std::vector<int> box(s.cfg.n, side);
        TilingBox Tb = tbar(base_tiling(s.syn, box), s.syn.tau.D);
        InvarianceReport inv = verify_invariance(Tb, s.syn.S);
        TauReport tau = verify_tau(expand_quotient(s.cfg.P(), s.cfg.Q(), s.cfg.side, box), Tb, s.syn.tau.tau);
        py::dict out;
        out["invariant"] = inv.ok;
        out["invariance"] = inv.summary();
        out["tau_ok"] = tau.ok;
        out["tau"] = tau.summary();
        return out;
      }, py::arg("side") = 256, "Checks that the window tiling is fixed by S and that M = tau(Tbar).")
      .def("find_block_substitution", [](const PySynthesis& s, unsigned s_max) {
        BlockSubstitution bs = find_block_substitution(s.syn.tau.tau, s.syn.S, s_max);
        py::dict out;
        out["r"] = bs.r;
        out["t"] = bs.t;
        out["rank"] = bs.rho_rank;
        out["kernel_dims"] = bs.kernel_dims;
        out["substitution"] = bs.substitution;
        return out;
      }, py::arg("s_max") = 8);

  m.def("synthesize", &synthesize_config, py::arg("config"),
        "Builds tau, Phi_1 and the length-p substitution for the configuration.");

  m.def("verify_invariance", [](const LinearSubstitution& S, const py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>& a) {
    InvarianceReport rep = verify_invariance(from_array(S.field().p(), a), S);
    py::dict out;
    out["ok"] = rep.ok;
    out["checked"] = rep.checked;
    out["failures"] = rep.failure_count;
    out["summary"] = rep.summary();
    return out;
  }, py::arg("substitution"), py::arg("tiling"));

  m.def("razpet_check", [](std::uint32_t p, long long a, long long b, long long c, unsigned e) {
    RazpetReport rep = razpet_check(RecurrenceSpec::scalar(PrimeField(p), a, b, c), e);
    return py::make_tuple(rep.ok, rep.checked, rep.violations);
  }, py::arg("p"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("e") = 3);
}
