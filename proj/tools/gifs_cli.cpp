// gifs: command-line front end for general IFS computations.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gifs/cloud_io.hpp"
#include "gifs/contfrac.hpp"
#include "gifs/error.hpp"
#include "gifs/ifs.hpp"
#include "gifs/limitset.hpp"
#include "gifs/nonauto.hpp"
#include "gifs/spec.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace gifs;

namespace {

constexpr int kUsage = 1;
constexpr int kCertification = 2;
constexpr int kCap = 3;

// Exit-code carrier for failures that are reported but not exceptions of the library.
struct ExitWith {
  int code;
  json error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A path to a JSON spec file, or a preset name with an optional ":parameter".
spec::IFSSpec load_spec(const std::string& ref) {
  if (std::filesystem::is_regular_file(ref)) return spec::parse_spec(read_file(ref));
  const auto colon = ref.find(':');
  const std::string name = ref.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : ref.substr(colon + 1);
  return spec::parse_spec(spec::preset(name, param));
}

struct ParsedWord {
  InfiniteWord word;
  bool cylinder = false;  // only a prefix was given
};

ParsedWord parse_word(std::string text) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  auto symbols = [](const std::string& s) {
    Word w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ArgumentError("malformed symbol '" + tok + "' in word");
      w.push_back(v);
    }
    return w;
  };
  ParsedWord out;
  const auto open = text.find('(');
  if (open != std::string::npos) {
    if (text.back() != ')' || text.find('(', open + 1) != std::string::npos) {
      throw ArgumentError("periodic block must be the final '(...)' of the word");
    }
    out.word.prefix = symbols(text.substr(0, open));
    out.word.period = symbols(text.substr(open + 1, text.size() - open - 2));
    if (out.word.period.empty()) throw ArgumentError("periodic block must not be empty");
    return out;
  }
  if (!text.empty() && text.back() == '*') {
    out.word.prefix = symbols(text.substr(0, text.size() - 1));
    return out;
  }
  out.word.prefix = symbols(text);
  out.cylinder = true;
  return out;
}

json point_json(const Point& p, int dimension) {
  return dimension == 2 ? json::array({p[0], p[1]}) : json::array({p[0]});
}

json divergence_json(const DivergenceReport& d) {
  return {{"status", "divergent"},
          {"first_violation", d.first_violation},
          {"observed", d.observed},
          {"allowed", d.allowed},
          {"terms", d.terms},
          {"partial_sums", d.partial_sums}};
}

LevelCertificate certify_or_exit(const spec::Built& b) {
  const LevelResult r = certify_levels(b.ifs, b.envelope);
  if (const auto* d = std::get_if<DivergenceReport>(&r)) {
    throw ExitWith{kCertification,
                   {{"error", "certification"},
                    {"message", "envelope violated at level " + std::to_string(d->first_violation)},
                    {"first_violation", d->first_violation}}};
  }
  const auto& cert = std::get<LevelCertificate>(r);
  if (!cert.certified) {
    throw ExitWith{kCertification,
                   {{"error", "certification"}, {"message", "empirical envelope gives no certificate"}}};
  }
  return cert;
}

std::vector<double> parse_scales(const std::string& text) {
  if (text.empty()) return contfrac::default_scales();
  const auto dots = text.find("..");
  std::vector<double> out;
  if (dots != std::string::npos) {
    // k1..k2 means 2^-k1, ..., 2^-k2
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    if (a > b) throw ArgumentError("scale exponents must increase");
    for (int k = a; k <= b; ++k) out.push_back(std::ldexp(1.0, -k));
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

bool is_contfrac(const spec::IFSSpec& s) {
  return s.maps.kind == "moebius-digit" && s.tree.kind == "sum-bounded";
}

void print_json(const json& j) { std::cout << j.dump() << '\n'; }

// ---------------------------------------------------------------------------
// commands

int cmd_certify(const std::string& ref, std::size_t probe) {
  const spec::IFSSpec s = load_spec(ref);
  spec::Built b = spec::build(s);
  if (probe > 0) b.envelope.probe_depth = probe;
  const LevelResult r = certify_levels(b.ifs, b.envelope);
  if (const auto* d = std::get_if<DivergenceReport>(&r)) {
    print_json(divergence_json(*d));
    throw ExitWith{kCertification,
                   {{"error", "certification"},
                    {"message", "envelope violated at level " + std::to_string(d->first_violation)},
                    {"first_violation", d->first_violation}}};
  }
  const auto& cert = std::get<LevelCertificate>(r);
  json out{{"status", cert.certified ? "certified" : "uncertified"},
           {"mode", to_string(cert.envelope.mode)},
           {"uniform_c", cert.c},
           {"probe_depth", cert.envelope.probe_depth},
           {"base_point", point_json(cert.base_point(), s.space.dimension())}};
  if (cert.certified) {
    out["tail_1"] = cert.tail(1);
    if (cert.envelope.mode == EnvelopeMode::Geometric) {
      out["constant"] = cert.envelope.constant;
      out["rate"] = cert.envelope.rate;
    } else if (cert.envelope.mode == EnvelopeMode::PowerLaw) {
      out["constant"] = cert.envelope.constant;
      out["exponent"] = cert.envelope.exponent;
    }
  }
  out["terms"] = cert.terms;
  out["partial_sums"] = cert.partial_sums;
  print_json(out);
  if (!cert.certified) {
    throw ExitWith{kCertification,
                   {{"error", "certification"}, {"message", "empirical envelope gives no certificate"}}};
  }
  return 0;
}

int cmd_project(const std::string& ref, const std::string& word_text, double tol) {
  const spec::IFSSpec s = load_spec(ref);
  const spec::Built b = spec::build(s);
  const LevelCertificate cert = certify_or_exit(b);
  const ParsedWord pw = parse_word(word_text);
  const ProjectedPoint p = pw.cylinder ? project_prefix(b.ifs, cert, pw.word.prefix, tol)
                                       : project(b.ifs, cert, pw.word, tol);
  print_json({{"point", point_json(p.point, s.space.dimension())},
              {"error_bound", p.error_bound},
              {"depth", p.depth},
              {"prefix_length", p.prefix_length},
              {"cylinder", pw.cylinder}});
  return 0;
}

struct RenderOptions {
  std::string root;
  std::size_t depth = 0;
  std::string seed_file;
  std::string out;
  std::string image;
  int px = 512;
  std::vector<double> viewport;
  double resolution = 0.0;
  bool exp_rate = false;
};

int cmd_render(const std::string& ref, const RenderOptions& o) {
  const spec::IFSSpec s = load_spec(ref);
  const spec::Built b = spec::build(s);
  std::vector<Point> seeds = b.seeds;
  if (!o.seed_file.empty()) seeds = io::read_cloud_file(o.seed_file).points;
  const Word root = parse_word(o.root).word.prefix;

  PointCloud cloud;
  cloud.dimension = s.space.dimension();
  double bound = 0.0;
  json extra;
  if (o.resolution > 0.0) {
    if (!is_contfrac(s) || !root.empty()) {
      throw ArgumentError("--resolution applies to the sum-bounded digit preset at the root");
    }
    std::vector<double> reals;
    for (const auto& p : seeds) {
      if (p[1] != 0.0) throw ArgumentError("--resolution needs real seeds");
      reals.push_back(p[0]);
    }
    const auto ac = contfrac::limit_set_alpha(Rational::parse(s.tree.alpha), o.depth, reals, o.resolution);
    cloud.dimension = 1;
    for (double v : ac.reals) cloud.points.push_back({v, 0.0});
    cloud.labels = ac.labels;
    bound = ac.error_bound;
    extra["collapsed"] = ac.collapsed;
  } else {
    const LevelCertificate cert = certify_or_exit(b);
    const LimitSetApprox a = o.exp_rate ? exp_rate_limit_set(b.ifs, cert, root, seeds, o.depth)
                                        : iterate_limit_set(b.ifs, cert, root, seeds, o.depth);
    cloud.points = a.cloud.points;
    cloud.labels = a.cloud.labels;
    bound = a.error_bound;
    extra["d_of_a"] = a.d_of_a;
    extra["d_prime"] = a.d_prime;
    extra["merged"] = a.merged;
  }
  if (s.space.kind == SpaceKind::ComplexDisk) {
    const bool real = std::all_of(cloud.points.begin(), cloud.points.end(),
                                  [](const Point& p) { return p[1] == 0.0; });
    cloud.dimension = real ? 1 : 2;
  }

  if (o.out.empty()) {
    io::write_csv(std::cout, cloud);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ArgumentError("cannot write '" + o.out + "'");
    if (o.out.size() >= 5 && o.out.substr(o.out.size() - 5) == ".json") {
      io::write_json(f, cloud, bound, o.depth, root);
    } else {
      io::write_csv(f, cloud);
    }
  }
  if (!o.image.empty()) {
    io::Viewport view = io::fit_viewport(cloud);
    if (!o.viewport.empty()) {
      if (o.viewport.size() != 4) throw ArgumentError("--viewport takes x_min,x_max,y_min,y_max");
      view = {o.viewport[0], o.viewport[1], o.viewport[2], o.viewport[3]};
    }
    std::ofstream f(o.image, std::ios::binary);
    if (!f) throw ArgumentError("cannot write '" + o.image + "'");
    io::write_pgm(f, cloud, o.px, view);
  }
  if (!o.out.empty()) {
    json summary{{"points", cloud.points.size()}, {"error_bound", bound}, {"depth", o.depth}, {"root", root}};
    summary.update(extra);
    print_json(summary);
  }
  return 0;
}

int cmd_hausdorff(const std::string& a, const std::string& b) {
  const PointCloud ca = io::read_cloud_file(a);
  const PointCloud cb = io::read_cloud_file(b);
  print_json({{"distance", hausdorff_distance(ca.points, cb.points)}});
  return 0;
}

int cmd_tree(const std::string& ref, std::size_t depth, int variability_depth) {
  const spec::IFSSpec s = load_spec(ref);
  const spec::Built b = spec::build(s);
  const TreeHandle& t = b.ifs.tree();
  json out{{"kind", to_string(t.kind())}, {"depth", depth}, {"prefix_count", prefix_count(t, depth)}};
  out["level_sets"] = level_sets(t, depth);
  out["one_variable"] = one_variable_check(t, depth);
  if (variability_depth >= 0) {
    const VariabilityReport v = variability(t, depth, static_cast<std::size_t>(variability_depth));
    out["variability"] = {{"signature_depth", variability_depth}, {"count", v.count}, {"exact", v.exact}};
  }
  print_json(out);
  return 0;
}

bool looks_like_cloud(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) return false;
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return false;
  if (text[first] != '{') return true;
  try {
    return json::parse(text).contains("points");
  } catch (const json::parse_error&) {
    return false;
  }
}

int cmd_dimension(const std::string& ref, const std::string& scale_text, int depth_opt) {
  const std::vector<double> scales = parse_scales(scale_text);
  json out;
  contfrac::DimensionEstimate est;
  if (looks_like_cloud(ref)) {
    const PointCloud c = io::read_cloud_file(ref);
    est = c.dimension == 2 ? contfrac::box_dimension_estimate(c.points, scales)
                           : contfrac::box_dimension_estimate(
                                 [&] {
                                   std::vector<double> r;
                                   for (const auto& p : c.points) r.push_back(p[0]);
                                   return r;
                                 }(),
                                 scales);
    out["points"] = c.points.size();
  } else {
    const spec::IFSSpec s = load_spec(ref);
    if (is_contfrac(s)) {
      const std::size_t depth = depth_opt >= 0 ? static_cast<std::size_t>(depth_opt) : 12;
      const auto cloud = contfrac::dimension_cloud(Rational::parse(s.tree.alpha), depth, scales);
      est = contfrac::box_dimension_estimate(cloud.reals, scales);
      out["alpha"] = s.tree.alpha;
      out["depth"] = depth;
      out["points"] = cloud.reals.size();
      out["error_bound"] = cloud.error_bound;
    } else {
      const spec::Built b = spec::build(s);
      const LevelCertificate cert = certify_or_exit(b);
      const std::size_t depth = depth_opt >= 0 ? static_cast<std::size_t>(depth_opt) : 8;
      const LimitSetApprox a = iterate_limit_set(b.ifs, cert, {}, b.seeds, depth);
      est = contfrac::box_dimension_estimate(a.cloud.points, scales);
      out["depth"] = depth;
      out["points"] = a.cloud.points.size();
      out["error_bound"] = a.error_bound;
    }
  }
  out["slope"] = est.slope;
  out["usable"] = est.usable;
  if (!est.reason.empty()) out["reason"] = est.reason;
  out["scales"] = est.scales;
  out["counts"] = est.counts;
  print_json(out);
  return 0;
}

// ---------------------------------------------------------------------------
// built-in examples

std::string fmt(double v, int prec = 6) {
  std::ostringstream ss;
  ss << std::setprecision(prec) << std::scientific << v;
  return ss.str();
}

std::string fixed(double v, int prec = 12) {
  std::ostringstream ss;
  ss << std::setprecision(prec) << std::fixed << v;
  return ss.str();
}

void row(std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    std::cout << (first ? "" : "  ") << std::setw(18) << c;
    first = false;
  }
  std::cout << '\n';
}

int example_sequence_divergent() {
  const spec::Built b = spec::build(spec::parse_spec(spec::preset("1dimex")));
  const SummabilityResult r = check_summability(*b.sequence);
  const auto* d = std::get_if<DivergenceReport>(&r);
  std::cout << "1dimex: f_j(x) = x/2 + 2^j, declared geometric envelope C'=1 r=0.75\n";
  row({"level", "term", "allowed", "partial_sum"});
  const auto& terms = d ? d->terms : std::get<SummabilityCertificate>(r).terms;
  const auto& sums = d ? d->partial_sums : std::get<SummabilityCertificate>(r).partial_sums;
  for (std::size_t j = 1; j <= std::min<std::size_t>(8, terms.size()); ++j) {
    row({std::to_string(j), fmt(terms[j - 1]), fmt(b.envelope.term_bound(j)), fmt(sums[j - 1])});
  }
  if (!d) return 0;
  std::cout << "first envelope violation at level " << d->first_violation << '\n';
  throw ExitWith{kCertification,
                 {{"error", "certification"},
                  {"message", "envelope violated at level " + std::to_string(d->first_violation)},
                  {"first_violation", d->first_violation}}};
}

int example_unbounded() {
  const spec::Built b = spec::build(spec::parse_spec(spec::preset("unboundedex")));
  const auto cert = std::get<SummabilityCertificate>(check_summability(*b.sequence));
  const auto xs = compatible_sequence(*b.sequence, cert, 1, 5, 1e-8);
  std::cout << "unboundedex: f_j(x) = x/2 + j/2, x_m = m + c + c^2/(1-c) = m + 1\n";
  row({"m", "x_m", "closed_form", "|error|", "certified", "depth"});
  for (const auto& x : xs) {
    const double exact = static_cast<double>(x.index) + 1.0;
    row({std::to_string(x.index), fixed(x.point[0]), fixed(exact), fmt(std::abs(x.point[0] - exact)),
         fmt(x.error_bound), std::to_string(x.depth)});
  }
  return 0;
}

int example_polyfast() {
  const spec::Built b = spec::build(spec::parse_spec(spec::preset("polyfastconvexample")));
  const auto cert = std::get<SummabilityCertificate>(check_summability(*b.sequence));
  const double target = std::numbers::pi * std::numbers::pi / 6.0;
  const auto x1 = compatible_sequence(*b.sequence, cert, 1, 1, 1e-6).front();
  std::cout << "polyfastconvexample (l=1): a_j = 2^j / j^2, x_1 = pi^2/6\n";
  std::cout << "x_1 = " << fixed(x1.point[0]) << "  pi^2/6 = " << fixed(target)
            << "  |error| = " << fmt(std::abs(x1.point[0] - target)) << "  certified = " << fmt(x1.error_bound)
            << "  depth = " << x1.depth << '\n';
  std::cout << "exponential-rate certificate: " << (exp_rate_certificate(cert) ? "yes" : "none") << '\n';
  row({"n", "error", "reference_bound", "certified"});
  for (std::size_t n = 1; n <= 30; ++n) {
    const double err = std::abs(compose_range_stable(*b.sequence, 1, 1 + n, {0.0, 0.0})[0] - target);
    const double reference = std::max(std::pow(0.5, static_cast<double>(n + 1)), 2.0 / (1.0 + static_cast<double>(n)));
    row({std::to_string(n), fmt(err), fmt(reference), fmt(rate_bound(cert, 1, n, {0.0, 0.0}))});
  }
  return 0;
}

int example_cantor() {
  const spec::Built b = spec::build(spec::parse_spec(spec::preset("cantor")));
  const LevelCertificate cert = certify_or_exit(b);
  const LimitSetApprox reference = iterate_limit_set(b.ifs, cert, {}, b.seeds, 14);
  std::cout << "cantor: middle-thirds maps, reference cloud at depth 14\n";
  row({"depth", "points", "hausdorff_to_ref", "certified", "2*(1/3)^n"});
  for (std::size_t n = 2; n <= 12; n += 2) {
    const LimitSetApprox a = iterate_limit_set(b.ifs, cert, {}, b.seeds, n);
    row({std::to_string(n), std::to_string(a.cloud.points.size()),
         fmt(hausdorff_distance(a.cloud.points, reference.cloud.points)), fmt(a.error_bound),
         fmt(2.0 * std::pow(1.0 / 3.0, static_cast<double>(n)))});
  }
  const ProjectedPoint p = project(b.ifs, cert, InfiniteWord{{}, {0, 1}}, 1e-9);
  std::cout << "project((01)^inf) = " << fixed(p.point[0]) << "  expected 0.25  certified "
            << fmt(p.error_bound) << '\n';
  return 0;
}

int example_contfrac() {
  const spec::Built b = spec::build(spec::parse_spec(spec::preset("contfrac", "2.5")));
  const LevelCertificate cert = certify_or_exit(b);
  std::cout << "contfrac: phi_b(z) = 1/(z+b), sum-bounded tree alpha = 2.5\n";
  row({"word", "projection", "closed_form", "|error|", "certified"});
  const std::vector<std::pair<InfiniteWord, double>> cases = {
      {{{}, {1}}, (std::sqrt(5.0) - 1.0) / 2.0},
      {{{}, {2}}, std::sqrt(2.0) - 1.0},
      {{{}, {1, 2}}, std::sqrt(3.0) - 1.0},
  };
  for (const auto& [w, exact] : cases) {
    const ProjectedPoint p = project(b.ifs, cert, w, 1e-9);
    row({"(" + format_word(w.period) + ")", fixed(p.point[0]), fixed(exact), fmt(std::abs(p.point[0] - exact)),
         fmt(p.error_bound)});
  }
  std::cout << "box-counting slopes at depth 12, scales 2^-4..2^-12\n";
  row({"alpha", "points", "slope"});
  for (const char* alpha : {"1.2", "2", "5", "20"}) {
    const auto cloud = contfrac::dimension_cloud(Rational::parse(alpha), 12);
    const auto est = contfrac::box_dimension_estimate(cloud.reals);
    row({alpha, std::to_string(cloud.reals.size()), fixed(est.slope, 4)});
  }
  return 0;
}

int cmd_examples(const std::string& name) {
  if (name == "1dimex") return example_sequence_divergent();
  if (name == "unboundedex") return example_unbounded();
  if (name == "polyfastconvexample") return example_polyfast();
  if (name == "cantor") return example_cantor();
  if (name == "contfrac") return example_contfrac();
  throw ArgumentError("unknown example '" + name + "'");
}

json error_json(const Error& e) {
  json j{{"error", e.kind()}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const SpecError*>(&e)) j["path"] = s->path();
  if (const auto* p = dynamic_cast<const PrefixError*>(&e)) j["position"] = p->position();
  if (const auto* c = dynamic_cast<const CapExceededError*>(&e)) {
    j["count"] = c->count();
    j["best_bound"] = c->best_bound();
  }
  if (const auto* n = dynamic_cast<const NotConvergedError*>(&e)) j["last_bound"] = n->last_bound();
  return j;
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const CertificationError*>(&e)) return kCertification;
  if (dynamic_cast<const CapExceededError*>(&e) || dynamic_cast<const NotConvergedError*>(&e)) return kCap;
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"General IFS toolkit: certificates, projections, limit sets and dimension estimates"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Thread-count hint (results do not depend on it)");

  std::string spec_ref, word, cloud_a, cloud_b, scales, example_name;
  double tol = 1e-9;
  std::size_t probe = 0, tree_depth = 0;
  int variability_depth = -1, dimension_depth = -1;
  RenderOptions render;

  auto* certify = app.add_subcommand("certify", "Audit the declared envelope of a spec");
  certify->add_option("spec", spec_ref, "Spec file or preset name[:parameter]")->required();
  certify->add_option("--probe", probe, "Probe depth override");

  auto* proj = app.add_subcommand("project", "Certified projection of a word");
  proj->add_option("spec", spec_ref, "Spec file or preset name[:parameter]")->required();
  proj->add_option("--word", word, "Word: '0,1' cylinder, '0,(1)' periodic tail, '0,1,*' minimal extension")
      ->required();
  proj->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

  auto* rend = app.add_subcommand("render", "Limit-set point cloud");
  rend->add_option("spec", spec_ref, "Spec file or preset name[:parameter]")->required();
  rend->add_option("--root", render.root, "Root prefix of the subtree");
  rend->add_option("--depth", render.depth, "Word length")->required();
  rend->add_option("--seed", render.seed_file, "Cloud file with seed points");
  rend->add_option("--out", render.out, "Output cloud (.csv or .json); CSV to stdout if omitted");
  rend->add_option("--image", render.image, "PGM raster output");
  rend->add_option("--px", render.px, "Raster size in pixels")->check(CLI::PositiveNumber);
  rend->add_option("--viewport", render.viewport, "x_min,x_max,y_min,y_max")->delimiter(',');
  rend->add_option("--resolution", render.resolution, "Branch-collapse length for the digit preset");
  rend->add_flag("--exp-rate", render.exp_rate, "Use the exponential-rate bound");

  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance between two clouds");
  haus->add_option("cloudA", cloud_a)->required();
  haus->add_option("cloudB", cloud_b)->required();

  auto* tree = app.add_subcommand("tree", "Prefix counts, level sets and variability");
  tree->add_option("spec", spec_ref, "Spec file or preset name[:parameter]")->required();
  tree->add_option("--depth", tree_depth, "Prefix length")->required();
  tree->add_option("--variability", variability_depth, "Signature depth for the variability estimate");

  auto* dim = app.add_subcommand("dimension", "Box-counting slope of a spec or cloud");
  dim->add_option("source", spec_ref, "Spec file, preset name or cloud file")->required();
  dim->add_option("--scales", scales, "Box sizes: 'e1,e2,...' or 'k1..k2' for 2^-k1..2^-k2");
  dim->add_option("--depth", dimension_depth, "Word length of the generated cloud");

  auto* ex = app.add_subcommand("examples", "Built-in examples with computed vs certified bounds");
  ex->add_option("name", example_name, "1dimex | polyfastconvexample | unboundedex | cantor | contfrac")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << std::endl;
    return kUsage;
  }

  try {
    if (*certify) return cmd_certify(spec_ref, probe);
    if (*proj) return cmd_project(spec_ref, word, tol);
    if (*rend) return cmd_render(spec_ref, render);
    if (*haus) return cmd_hausdorff(cloud_a, cloud_b);
    if (*tree) return cmd_tree(spec_ref, tree_depth, variability_depth);
    if (*dim) return cmd_dimension(spec_ref, scales, dimension_depth);
    if (*ex) return cmd_examples(example_name);
  } catch (const ExitWith& e) {
    std::cout.flush();
    std::cerr << e.error.dump() << std::endl;
    return e.code;
  } catch (const Error& e) {
    std::cout.flush();
    std::cerr << error_json(e).dump() << std::endl;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << std::endl;
    return kUsage;
  }
  return kUsage;
}
