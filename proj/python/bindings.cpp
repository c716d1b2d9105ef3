#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modtrace/ambitrace.hpp"
#include "modtrace/errors.hpp"
#include "modtrace/io.hpp"

namespace py = pybind11;
using namespace modtrace;

namespace {

// ModulePtr points to const, which pybind11 holders do not accept.
struct ModuleHandle {
  ModulePtr ptr;
  const ModuleRep* operator->() const { return ptr.get(); }
};

std::vector<std::vector<std::string>> matrix_strings(const Matrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r].push_back(m.at(r, c).to_string());
  return out;
}

Matrix matrix_from(const FieldSpec& f, const std::vector<std::vector<py::object>>& rows) {
  const std::size_t n = rows.size(), m = n ? rows[0].size() : 0;
  Matrix out(f, n, m);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != m) throw MalformedInput("ragged matrix");
    for (std::size_t c = 0; c < m; ++c) {
      const py::object& x = rows[r][c];
      out.set(r, c, py::isinstance<py::int_>(x) ? f.from_int(x.cast<long long>()) : f.parse_scalar(py::str(x).cast<std::string>()));
    }
  }
  return out;
}

py::dict verdict_dict(const AmbiVerdict& a) {
  py::dict d;
  d["direct"] = a.direct ? py::cast(*a.direct) : py::none();
  d["structural"] = a.structural ? py::cast(*a.structural) : py::none();
  d["structural_note"] = a.structural_note;
  d["j"] = a.j ? py::cast(*a.j) : py::none();
  d["jprime"] = a.jprime ? py::cast(*a.jprime) : py::none();
  d["self_dual"] = a.self_dual ? py::cast(*a.self_dual) : py::none();
  d["summand_dims"] = a.summand_dims;
  d["audit_consistent"] = a.audit_consistent;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact modified traces over finite-dimensional pivotal Hopf algebras";

  auto base = py::register_exception<Error>(m, "ModtraceError");
  py::register_exception<MalformedInput>(m, "MalformedInput", base.ptr());
  py::register_exception<NotAbsolutelySimple>(m, "NotAbsolutelySimple", base.ptr());
  py::register_exception<NotAmbi>(m, "NotAmbi", base.ptr());
  py::register_exception<NoSplitting>(m, "NoSplitting", base.ptr());
  py::register_exception<Unsupported>(m, "Unsupported", base.ptr());

  py::class_<ModuleHandle>(m, "Module")
      .def_property_readonly("dim", [](const ModuleHandle& r) { return r->dim(); })
      .def_property_readonly("label", [](const ModuleHandle& r) { return r->label(); })
      .def_property_readonly("field", [](const ModuleHandle& r) { return r->field().to_string(); })
      .def("generator_actions",
           [](const ModuleHandle& r) {
             std::vector<std::vector<std::vector<std::string>>> out;
             for (const auto& g : r->generator_actions()) out.push_back(matrix_strings(g));
             return out;
           })
      .def("to_json", [](const ModuleHandle& r) { return module_to_json(*r.ptr); })
      .def("__repr__", [](const ModuleHandle& r) {
        return "<Module " + r->label() + " dim " + std::to_string(r->dim()) + ">";
      });

  py::class_<Family>(m, "Algebra")
      .def_property_readonly("name", [](const Family& f) { return f.algebra->name(); })
      .def_property_readonly("dim", [](const Family& f) { return f.algebra->dim(); })
      .def_property_readonly("field", [](const Family& f) { return f.algebra->field().to_string(); })
      .def_property_readonly("simples", [](const Family& f) { return f.simples; })
      .def_property_readonly("distinguished", [](const Family& f) { return f.distinguished; })
      .def("module_names", &Family::module_names)
      .def("module", [](const Family& f, const std::string& ref, std::uint64_t seed) {
             const bool plain = ref.rfind("module:", 0) != 0 && ref.find('/') == std::string::npos;
             return ModuleHandle{resolve_module(f, plain ? "module:" + ref : ref, seed)};
           },
           py::arg("ref"), py::arg("seed") = 0)
      .def("is_unimodular", [](const Family& f) { return is_unimodular(*f.algebra); })
      .def("socle_is_trivial", [](const Family& f, std::uint64_t seed) {
             return projective_cover_unit(f.algebra, seed).socle_is_trivial;
           },
           py::arg("seed") = 0)
      .def("validate", [](const Family& f) {
        return validate_hopf(*f.algebra).passed() && validate_pivot(*f.algebra).passed();
      })
      .def("to_json", [](const Family& f) { return hopf_to_json(*f.algebra); });

  m.def("algebra", &resolve_algebra, py::arg("ref"), "Build or load an algebra, e.g. 'builder:usl2:p=3'.");

  m.def("tensor", [](const ModuleHandle& a, const ModuleHandle& b) { return ModuleHandle{tensor_modules(a.ptr, b.ptr)}; });
  m.def("dual", [](const ModuleHandle& a) { return ModuleHandle{dual_module(a.ptr)}; });
  m.def("hom_dim", [](const ModuleHandle& a, const ModuleHandle& b) { return hom_basis(a.ptr, b.ptr).dim(); });

  m.def("ambi", [](const ModuleHandle& v, const std::string& method, std::uint64_t seed) {
          AmbiMethod am = method == "direct" ? AmbiMethod::direct
                          : method == "structural" ? AmbiMethod::structural
                                                    : AmbiMethod::both;
          return verdict_dict(decide_ambi(v.ptr, am, seed));
        },
        py::arg("module"), py::arg("method") = "both", py::arg("seed") = 0);

  m.def("decompose", [](const ModuleHandle& v, std::uint64_t seed) {
          DecompositionResult d = decompose(v.ptr, seed);
          py::list out;
          for (const auto& s : d.summands) {
            py::dict e;
            e["module"] = ModuleHandle{s.module};
            e["dim"] = s.module->dim();
            e["status"] = to_string(s.status);
            out.append(e);
          }
          return out;
        },
        py::arg("module"), py::arg("seed") = 0);

  m.def("iso", [](const ModuleHandle& a, const ModuleHandle& b, std::uint64_t seed) {
          switch (iso_test(a.ptr, b.ptr, seed, true).verdict) {
            case IsoResult::Verdict::isomorphic: return py::object(py::bool_(true));
            case IsoResult::Verdict::not_isomorphic: return py::object(py::bool_(false));
            default: return py::object(py::none());
          }
        },
        py::arg("a"), py::arg("b"), py::arg("seed") = 0);

  m.def("pivotal_trace_of_identity", [](const ModuleHandle& u) {
    return pivotal_trace(Morphism::identity(u.ptr)).to_string();
  });

  py::class_<TraceFunctional, std::shared_ptr<TraceFunctional>>(m, "TraceFunctional")
      .def(py::init([](const ModuleHandle& v) { return std::make_shared<TraceFunctional>(v.ptr); }),
           py::arg("ambi_module"))
      .def_property_readonly("ambi_module", [](const TraceFunctional& t) { return ModuleHandle{t.ambi_module()}; })
      .def("dimension", [](const TraceFunctional& t, const ModuleHandle& u) { return t.dimension(u.ptr).to_string(); })
      .def("trace",
           [](const TraceFunctional& t, const ModuleHandle& u, const std::vector<std::vector<py::object>>& f) {
             return t.trace(u.ptr, matrix_from(u->field(), f)).to_string();
           });
}
