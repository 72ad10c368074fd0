#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "gifs/contfrac.hpp"
#include "gifs/error.hpp"
#include "gifs/limitset.hpp"
#include "gifs/spec.hpp"

namespace py = pybind11;
using namespace gifs;

namespace {

// Accepts floats (real points) or 1- and 2-element sequences.
Point to_point(const py::handle& h) {
  if (py::isinstance<py::float_>(h) || py::isinstance<py::int_>(h)) return {h.cast<double>(), 0.0};
  const auto seq = h.cast<py::sequence>();
  if (seq.size() == 1) return {seq[0].cast<double>(), 0.0};
  if (seq.size() == 2) return {seq[0].cast<double>(), seq[1].cast<double>()};
  throw ArgumentError("points need one or two coordinates");
}

std::vector<Point> to_points(const py::iterable& items) {
  std::vector<Point> out;
  for (const auto& h : items) out.push_back(to_point(h));
  return out;
}

py::object from_point(const Point& p, int dimension) {
  if (dimension == 1) return py::float_(p[0]);
  return py::make_tuple(p[0], p[1]);
}

py::list from_points(const std::vector<Point>& pts, int dimension) {
  py::list out;
  for (const auto& p : pts) out.append(from_point(p, dimension));
  return out;
}

py::dict envelope_dict(const std::vector<double>& terms, const std::vector<double>& partial) {
  py::dict d;
  d["terms"] = terms;
  d["partial_sums"] = partial;
  return d;
}

/// Spec-backed IFS with its audited certificate.
class System {
 public:
  explicit System(const std::string& text)
      : spec_(spec::parse_spec(text)), built_(spec::build(spec_)) {}

  static System from_preset(const std::string& name, const std::string& param) {
    return System(spec::preset(name, param));
  }

  std::string name() const { return spec_.name; }
  double uniform_c() const { return built_.ifs.uniform_c(); }
  int dimension() const { return built_.ifs.space().dimension(); }

  py::dict certify() const {
    const auto r = certify_levels(built_.ifs, built_.envelope);
    if (const auto* div = std::get_if<DivergenceReport>(&r)) {
      py::dict d = envelope_dict(div->terms, div->partial_sums);
      d["status"] = "diverged";
      d["first_violation"] = div->first_violation;
      d["observed"] = div->observed;
      d["allowed"] = div->allowed;
      return d;
    }
    const auto& cert = std::get<LevelCertificate>(r);
    py::dict d = envelope_dict(cert.terms, cert.partial_sums);
    d["status"] = cert.certified ? "certified" : "empirical";
    d["mode"] = to_string(cert.envelope.mode);
    if (cert.certified) d["tail_1"] = cert.tail(1);
    return d;
  }

  py::dict project(const Word& prefix, const Word& period, double tol, bool cylinder) const {
    const auto cert = certificate();
    const ProjectedPoint p = cylinder ? project_prefix(built_.ifs, cert, prefix, tol)
                                      : gifs::project(built_.ifs, cert, {prefix, period}, tol);
    py::dict d;
    d["point"] = from_point(p.point, dimension());
    d["error_bound"] = p.error_bound;
    d["depth"] = p.depth;
    d["prefix_length"] = p.prefix_length;
    return d;
  }

  py::dict render(std::size_t depth, const Word& root, const py::object& seeds, bool exp_rate) const {
    const auto cert = certificate();
    const std::vector<Point> seed_points =
        seeds.is_none() ? built_.seeds : to_points(seeds.cast<py::iterable>());
    const LimitSetApprox a = exp_rate ? exp_rate_limit_set(built_.ifs, cert, root, seed_points, depth)
                                      : iterate_limit_set(built_.ifs, cert, root, seed_points, depth);
    py::dict d;
    d["points"] = from_points(a.cloud.points, a.cloud.dimension);
    d["labels"] = a.cloud.labels;
    d["error_bound"] = a.error_bound;
    d["depth"] = a.depth;
    d["merged"] = a.merged;
    return d;
  }

  double modulus(std::size_t s) const { return modulus_of_continuity(built_.ifs, certificate(), s); }

  py::dict equivariance(const Word& head, const Word& prefix, const Word& period, double tol) const {
    const auto r = shift_equivariance_residual(built_.ifs, certificate(), head, {prefix, period}, tol);
    py::dict d;
    d["residual"] = r.residual;
    d["bound"] = r.bound;
    return d;
  }

  py::list compatible(std::size_t first, std::size_t last, double tol) const {
    if (!built_.sequence) throw ArgumentError("spec does not describe a map sequence");
    const auto r = check_summability(*built_.sequence);
    if (const auto* div = std::get_if<DivergenceReport>(&r)) {
      throw CertificationError("envelope violated at level " + std::to_string(div->first_violation));
    }
    py::list out;
    for (const auto& x : compatible_sequence(*built_.sequence, std::get<SummabilityCertificate>(r),
                                             first, last, tol)) {
      py::dict d;
      d["index"] = x.index;
      d["point"] = x.point[0];
      d["depth"] = x.depth;
      d["error_bound"] = x.error_bound;
      out.append(d);
    }
    return out;
  }

  TreeHandle tree() const { return built_.ifs.tree(); }
  std::string serialize() const { return spec::serialize(spec_); }

 private:
  LevelCertificate certificate() const {
    return require_certificate(certify_levels(built_.ifs, built_.envelope));
  }

  spec::IFSSpec spec_;
  spec::Built built_;
};

}  // namespace

PYBIND11_MODULE(_gifs, m) {
  m.doc() = "Certified limit sets of general iterated function systems";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<NotConvergedError>(m, "NotConvergedError", base.ptr());
  py::register_exception<CapExceededError>(m, "CapExceededError", base.ptr());
  py::register_exception<PrefixError>(m, "PrefixError", base.ptr());
  py::register_exception<CertificationError>(m, "CertificationError", base.ptr());
  py::register_exception<SpecError>(m, "SpecError", base.ptr());

  py::class_<ContractionMap>(m, "Map")
      .def_static("affine1d", &ContractionMap::affine1d, py::arg("slope"), py::arg("offset"))
      .def_static("affine2d", &ContractionMap::affine2d, py::arg("matrix"), py::arg("offset"))
      .def_static("moebius_digit", &ContractionMap::moebius_digit, py::arg("digit"))
      .def_static(
          "custom",
          [](std::function<double(double)> fn, double lipschitz) {
            return ContractionMap::custom([fn](const Point& p) { return Point{fn(p[0]), 0.0}; }, lipschitz);
          },
          py::arg("fn"), py::arg("lipschitz"))
      .def_property_readonly("lipschitz", &ContractionMap::lipschitz)
      .def("__call__", [](const ContractionMap& f, const py::object& p) {
        return from_point(f(to_point(p)), py::isinstance<py::float_>(p) || py::isinstance<py::int_>(p) ? 1 : 2);
      });

  m.def(
      "fixed_point",
      [](const ContractionMap& f, double c, double tol, const py::object& start) {
        const auto r = fixed_point(f, c, tol, start.is_none() ? Point{0.0, 0.0} : to_point(start));
        py::dict d;
        d["point"] = py::make_tuple(r.point[0], r.point[1]);
        d["error_bound"] = r.error_bound;
        d["iterations"] = r.iterations;
        return d;
      },
      py::arg("map"), py::arg("c"), py::arg("tol") = 1e-9, py::arg("start") = py::none());

  py::class_<TreeHandle>(m, "Tree")
      .def_static("full", &TreeHandle::full, py::arg("alphabet"))
      .def_static("product", &TreeHandle::product, py::arg("levels"), py::arg("period") = 1)
      .def_static("indexed_path", &TreeHandle::indexed_path)
      .def_static(
          "sum_bounded", [](const std::string& alpha) { return TreeHandle::sum_bounded(Rational::parse(alpha)); },
          py::arg("alpha"))
      .def("children", &TreeHandle::children, py::arg("prefix") = Word{})
      .def("subtree", &TreeHandle::subtree, py::arg("prefix"))
      .def("level_set", [](const TreeHandle& t, std::size_t n) { return t.level_set(n); }, py::arg("n"))
      .def_property_readonly("root", &TreeHandle::root)
      .def_property_readonly("kind", [](const TreeHandle& t) { return to_string(t.kind()); });

  m.def("prefixes", [](const TreeHandle& t, std::size_t n) { return prefixes(t, n); }, py::arg("tree"),
        py::arg("n"));
  m.def(
      "variability",
      [](const TreeHandle& t, std::size_t n, std::size_t d) {
        const auto v = variability(t, n, d);
        return py::make_tuple(v.count, v.exact);
      },
      py::arg("tree"), py::arg("n"), py::arg("signature_depth") = 3);
  m.def("one_variable_check", [](const TreeHandle& t, std::size_t n) { return one_variable_check(t, n); },
        py::arg("tree"), py::arg("n"));

  m.def("evaluate_cf", &contfrac::evaluate_cf, py::arg("digits"));
  m.def(
      "evaluate_cf_exact",
      [](const Word& digits) {
        const auto f = contfrac::evaluate_cf_exact(digits);
        return py::make_tuple(f.num, f.den);
      },
      py::arg("digits"));
  m.def(
      "limit_set_alpha",
      [](const std::string& alpha, std::size_t n, const std::vector<double>& seeds, double resolution) {
        const auto a = contfrac::limit_set_alpha(Rational::parse(alpha), n, seeds, resolution);
        py::dict d;
        d["points"] = a.reals;
        d["labels"] = a.labels;
        d["error_bound"] = a.error_bound;
        d["collapsed"] = a.collapsed;
        return d;
      },
      py::arg("alpha"), py::arg("n"), py::arg("seeds") = std::vector<double>{0.5},
      py::arg("resolution") = 0.0);
  m.def(
      "box_dimension_estimate",
      [](const py::iterable& cloud, const py::object& scales) {
        const auto ladder = scales.is_none() ? contfrac::default_scales() : scales.cast<std::vector<double>>();
        const auto e = contfrac::box_dimension_estimate(to_points(cloud), ladder);
        py::dict d;
        d["slope"] = e.slope;
        d["scales"] = e.scales;
        d["counts"] = e.counts;
        d["usable"] = e.usable;
        d["reason"] = e.reason;
        return d;
      },
      py::arg("cloud"), py::arg("scales") = py::none());

  m.def(
      "hausdorff_distance",
      [](const py::iterable& a, const py::iterable& b) { return hausdorff_distance(to_points(a), to_points(b)); },
      py::arg("a"), py::arg("b"));

  m.def("preset_names", &spec::preset_names);
  m.def("preset", &spec::preset, py::arg("name"), py::arg("parameter") = "");
  m.def(
      "parse_spec", [](const std::string& text) { return spec::serialize(spec::parse_spec(text)); },
      py::arg("text"), "Validates a spec and returns its normalized JSON text.");

  py::class_<System>(m, "System")
      .def(py::init<const std::string&>(), py::arg("spec_text"))
      .def_static("preset", &System::from_preset, py::arg("name"), py::arg("parameter") = "")
      .def_property_readonly("name", &System::name)
      .def_property_readonly("uniform_c", &System::uniform_c)
      .def_property_readonly("tree", &System::tree)
      .def("certify", &System::certify)
      .def("project", &System::project, py::arg("prefix"), py::arg("period") = Word{}, py::arg("tol") = 1e-9,
           py::arg("cylinder") = false)
      .def("render", &System::render, py::arg("depth"), py::arg("root") = Word{}, py::arg("seeds") = py::none(),
           py::arg("exp_rate") = false)
      .def("modulus_of_continuity", &System::modulus, py::arg("s"))
      .def("equivariance_residual", &System::equivariance, py::arg("head"), py::arg("prefix"),
           py::arg("period") = Word{}, py::arg("tol") = 1e-7)
      .def("compatible_sequence", &System::compatible, py::arg("first"), py::arg("last"), py::arg("tol") = 1e-8)
      .def("serialize", &System::serialize);
}
