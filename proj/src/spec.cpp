#include "gifs/spec.hpp"

#include <cmath>
#include <set>

#include "gifs/error.hpp"
#include "json.hpp"

namespace gifs::spec {

using json = nlohmann::ordered_json;

namespace {

// Cursor into the document that knows its JSON pointer.
class Node {
 public:
  Node(const json& value, std::string path) : v_(value), path_(std::move(path)) {}

  const json& value() const { return v_; }
  const std::string& path() const { return path_; }
  [[noreturn]] void fail(const std::string& what) const { throw SpecError(what, path_.empty() ? "/" : path_); }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!v_.is_object()) fail("expected an object");
    for (const auto& [key, _] : v_.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) Node(v_[key], path_ + "/" + key).fail("unknown field '" + key + "'");
    }
  }
  bool has(const char* key) const { return v_.contains(key); }
  Node at(const char* key) const {
    if (!v_.contains(key)) fail(std::string("missing field '") + key + "'");
    return Node(v_.at(key), path_ + "/" + key);
  }
  Node at(std::size_t i) const { return Node(v_.at(i), path_ + "/" + std::to_string(i)); }
  std::size_t size() const { return v_.size(); }

  double number() const {
    if (!v_.is_number()) fail("expected a number");
    const double d = v_.get<double>();
    if (!std::isfinite(d)) fail("expected a finite number");
    return d;
  }
  std::int64_t integer() const {
    if (!v_.is_number_integer()) fail("expected an integer");
    return v_.get<std::int64_t>();
  }
  std::size_t count() const {
    const std::int64_t i = integer();
    if (i < 0) fail("expected a non-negative integer");
    return static_cast<std::size_t>(i);
  }
  std::string string() const {
    if (!v_.is_string()) fail("expected a string");
    return v_.get<std::string>();
  }
  bool boolean() const {
    if (!v_.is_boolean()) fail("expected true or false");
    return v_.get<bool>();
  }
  Node array() const {
    if (!v_.is_array()) fail("expected an array");
    return *this;
  }
  std::vector<Symbol> symbols() const {
    array();
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).integer());
    return out;
  }
  std::vector<double> numbers() const {
    array();
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
  }
  Point point() const {
    const auto xs = numbers();
    if (xs.empty() || xs.size() > 2) fail("a point has one or two coordinates");
    return {xs[0], xs.size() == 2 ? xs[1] : 0.0};
  }

 private:
  const json& v_;
  std::string path_;
};

Space parse_space(const Node& n) {
  n.expect_object({"kind", "lo", "hi"});
  const std::string kind = n.at("kind").string();
  if (kind == "real-line") return Space::real_line();
  if (kind == "complex-disk") return Space::unit_disk();
  if (kind == "euclidean-plane") return Space::plane();
  if (kind == "real-interval") {
    const double lo = n.at("lo").number(), hi = n.at("hi").number();
    if (!(lo < hi)) n.fail("interval needs lo < hi");
    return Space::interval(lo, hi);
  }
  n.at("kind").fail("unknown space kind '" + kind + "'");
}

OffsetRule parse_offsets(const Node& n) {
  n.expect_object({"rule", "values", "start", "step", "scale", "base", "shift", "power"});
  const std::string rule = n.at("rule").string();
  try {
    if (rule == "list") return OffsetRule::list(n.at("values").numbers());
    if (rule == "arithmetic") return OffsetRule::arithmetic(n.at("start").number(), n.at("step").number());
    if (rule == "geometric") {
      return OffsetRule::geometric(n.has("scale") ? n.at("scale").number() : 1.0,
                                   n.at("base").number(),
                                   n.has("shift") ? n.at("shift").number() : 0.0,
                                   n.has("power") ? n.at("power").number() : 0.0);
    }
  } catch (const ArgumentError& e) {
    n.fail(e.what());
  }
  n.at("rule").fail("unknown offset rule '" + rule + "'");
}

MapEntry parse_map(const Node& n, const Space& space, double c) {
  n.expect_object({"symbol", "kind", "slope", "offset", "matrix", "b"});
  MapEntry m;
  m.symbol = n.at("symbol").integer();
  m.kind = n.at("kind").string();
  if (m.kind == "affine1d") {
    if (space.dimension() != 1) n.at("kind").fail("affine1d maps need a real space");
    m.slope = n.at("slope").number();
    m.offset = n.at("offset").number();
    if (!(std::abs(m.slope) < 1.0) || std::abs(m.slope) > c) {
      n.at("slope").fail("contraction violation: |slope| must be < 1 and <= uniform_c");
    }
  } else if (m.kind == "affine2d") {
    if (space.kind != SpaceKind::Plane) n.at("kind").fail("affine2d maps need the euclidean plane");
    const Node mat = n.at("matrix").array();
    if (mat.size() != 2) mat.fail("matrix must have two rows");
    for (std::size_t r = 0; r < 2; ++r) {
      const auto row = mat.at(r).numbers();
      if (row.size() != 2) mat.at(r).fail("matrix rows have two entries");
      m.matrix[2 * r] = row[0];
      m.matrix[2 * r + 1] = row[1];
    }
    const double norm = operator_norm(m.matrix);
    if (!(norm < 1.0) || norm > c) mat.fail("contraction violation: operator norm must be < 1 and <= uniform_c");
    const auto off = n.at("offset").numbers();
    if (off.size() != 2) n.at("offset").fail("offset has two coordinates");
    m.shift = {off[0], off[1]};
  } else if (m.kind == "moebius-digit") {
    if (space.kind != SpaceKind::ComplexDisk) n.at("kind").fail("moebius-digit maps need the complex disk");
    m.digit = n.at("b").integer();
    if (m.digit < 1) n.at("b").fail("digit must be >= 1");
    if (0.8 > c) n.at("kind").fail("contraction violation: digit maps need uniform_c >= 0.8");
  } else {
    n.at("kind").fail("unknown map kind '" + m.kind + "'");
  }
  return m;
}

FamilySpec parse_family(const Node& n, const Space& space, double c) {
  FamilySpec f;
  if (n.value().is_array()) {
    f.kind = "table";
    std::set<Symbol> seen;
    for (std::size_t i = 0; i < n.size(); ++i) {
      MapEntry m = parse_map(n.at(i), space, c);
      if (!seen.insert(m.symbol).second) n.at(i).at("symbol").fail("duplicate symbol");
      f.entries.push_back(m);
    }
    if (f.entries.empty()) n.fail("map table must not be empty");
    return f;
  }
  n.expect_object({"kind", "offsets"});
  f.kind = n.at("kind").string();
  if (f.kind == "moebius-digit") {
    if (space.kind != SpaceKind::ComplexDisk) n.at("kind").fail("moebius-digit maps need the complex disk");
    if (n.has("offsets")) n.at("offsets").fail("unknown field 'offsets'");
    if (0.8 > c) n.at("kind").fail("contraction violation: digit maps need uniform_c >= 0.8");
  } else if (f.kind == "affine-sequence") {
    if (space.dimension() != 1) n.at("kind").fail("affine sequences need a real space");
    f.offsets = parse_offsets(n.at("offsets"));
  } else {
    n.at("kind").fail("unknown map family '" + f.kind + "'");
  }
  return f;
}

TreeSpec parse_tree(const Node& n) {
  n.expect_object({"kind", "alphabet", "levels", "period", "indexed", "alpha", "rows", "depth", "default"});
  TreeSpec t;
  t.kind = n.at("kind").string();
  if (t.kind == "full") {
    t.alphabet = n.at("alphabet").symbols();
    if (t.alphabet.empty()) n.at("alphabet").fail("alphabet must not be empty");
  } else if (t.kind == "product") {
    if (n.has("indexed")) t.indexed = n.at("indexed").boolean();
    if (t.indexed) {
      if (n.has("levels")) n.at("levels").fail("indexed product trees take no levels");
    } else {
      const Node lv = n.at("levels").array();
      if (lv.size() == 0) lv.fail("product tree needs at least one level");
      for (std::size_t i = 0; i < lv.size(); ++i) {
        t.levels.push_back(lv.at(i).symbols());
        if (t.levels.back().empty()) lv.at(i).fail("level must not be empty");
      }
      if (n.has("period")) t.period = n.at("period").count();
      if (t.period == 0 || t.period > t.levels.size()) n.at("period").fail("period must be in [1, #levels]");
    }
  } else if (t.kind == "sum-bounded") {
    const Node a = n.at("alpha");
    t.alpha = a.value().is_number() ? a.value().dump() : a.string();
    try {
      const Rational r = Rational::parse(t.alpha);
      if (r.num <= r.den) a.fail("alpha must exceed 1");
    } catch (const ArgumentError& e) {
      a.fail(e.what());
    }
  } else if (t.kind == "table") {
    t.depth = n.at("depth").count();
    t.fallback = n.at("default").symbols();
    if (t.fallback.empty()) n.at("default").fail("default children must not be empty");
    const Node rows = n.at("rows").array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Node row = rows.at(i);
      row.expect_object({"prefix", "children"});
      t.rows.emplace_back(row.at("prefix").symbols(), row.at("children").symbols());
      if (t.rows.back().second.empty()) row.at("children").fail("children must not be empty");
      if (t.rows.back().first.size() >= t.depth) row.at("prefix").fail("row deeper than the table depth");
    }
  } else {
    n.at("kind").fail("unknown tree kind '" + t.kind + "'");
  }
  return t;
}

CertificateSpec parse_certificate(const Node& n, const Space& space) {
  n.expect_object({"mode", "constant", "rate", "exponent", "base_point", "probe_depth"});
  CertificateSpec c;
  c.mode = n.at("mode").string();
  if (c.mode == "geometric") {
    c.constant = n.at("constant").number();
    c.rate = n.at("rate").number();
    if (c.constant < 0.0) n.at("constant").fail("constant must be >= 0");
    if (!(c.rate > 0.0 && c.rate < 1.0)) n.at("rate").fail("rate must lie in (0,1)");
  } else if (c.mode == "power_law") {
    c.constant = n.at("constant").number();
    c.exponent = n.at("exponent").number();
    if (c.constant < 0.0) n.at("constant").fail("constant must be >= 0");
    if (!(c.exponent > 0.0)) n.at("exponent").fail("exponent must be positive");
  } else if (c.mode != "empirical") {
    n.at("mode").fail("unknown certificate mode '" + c.mode + "'");
  }
  c.base_point = n.at("base_point").point();
  if (!space.contains(c.base_point)) n.at("base_point").fail("base point lies outside the space");
  if (n.has("probe_depth")) {
    c.probe_depth = n.at("probe_depth").count();
    if (c.probe_depth == 0) n.at("probe_depth").fail("probe depth must be positive");
  }
  return c;
}

void check_symbols(const IFSSpec& s, const Node& root) {
  const FamilySpec& f = s.maps;
  auto known = [&](Symbol sym) {
    if (f.kind == "table") {
      for (const auto& e : f.entries)
        if (e.symbol == sym) return true;
      return false;
    }
    return sym >= 1;
  };
  const Node tree = root.at("tree");
  auto check_list = [&](const std::vector<Symbol>& syms, const Node& where) {
    for (std::size_t i = 0; i < syms.size(); ++i) {
      if (!known(syms[i])) where.at(i).fail("dangling symbol " + std::to_string(syms[i]));
    }
  };
  const TreeSpec& t = s.tree;
  if (t.kind == "full") check_list(t.alphabet, tree.at("alphabet"));
  if (t.kind == "product" && !t.indexed) {
    for (std::size_t i = 0; i < t.levels.size(); ++i) check_list(t.levels[i], tree.at("levels").at(i));
  }
  if ((t.kind == "sum-bounded" || (t.kind == "product" && t.indexed)) && f.kind == "table") {
    tree.fail("dangling symbols: this tree uses every positive symbol, which needs a map generator");
  }
  if (t.kind == "table") {
    check_list(t.fallback, tree.at("default"));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      check_list(t.rows[i].second, tree.at("rows").at(i).at("children"));
    }
    try {
      std::map<Word, std::vector<Symbol>> rows(t.rows.begin(), t.rows.end());
      TreeHandle::table(rows, t.depth, t.fallback);
    } catch (const ArgumentError& e) {
      tree.at("rows").fail(e.what());
    }
  }
}

json point_json(const Point& p, const Space& space) {
  if (space.dimension() == 1) return json::array({p[0]});
  return json::array({p[0], p[1]});
}

}  // namespace

IFSSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what(), "/");
  }
  const Node root(doc, "");
  root.expect_object({"name", "space", "uniform_c", "maps", "tree", "certificate", "seeds"});
  IFSSpec s;
  if (root.has("name")) s.name = root.at("name").string();
  s.space = parse_space(root.at("space"));
  s.uniform_c = root.at("uniform_c").number();
  if (!(s.uniform_c > 0.0 && s.uniform_c < 1.0)) root.at("uniform_c").fail("uniform_c must lie in (0,1)");
  s.maps = parse_family(root.at("maps"), s.space, s.uniform_c);
  s.tree = parse_tree(root.at("tree"));
  s.certificate = parse_certificate(root.at("certificate"), s.space);
  if (root.has("seeds")) {
    const Node seeds = root.at("seeds").array();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      s.seeds.push_back(seeds.at(i).point());
      if (!s.space.contains(s.seeds.back())) seeds.at(i).fail("seed lies outside the space");
    }
  }
  check_symbols(s, root);
  return s;
}

std::string serialize(const IFSSpec& s) {
  json doc;
  if (!s.name.empty()) doc["name"] = s.name;
  json space{{"kind", s.space.kind == SpaceKind::Plane ? "euclidean-plane" : s.space.name()}};
  if (s.space.kind == SpaceKind::RealInterval) {
    space["lo"] = s.space.lo;
    space["hi"] = s.space.hi;
  }
  doc["space"] = space;
  doc["uniform_c"] = s.uniform_c;
  if (s.maps.kind == "table") {
    json maps = json::array();
    for (const auto& m : s.maps.entries) {
      json e{{"symbol", m.symbol}, {"kind", m.kind}};
      if (m.kind == "affine1d") {
        e["slope"] = m.slope;
        e["offset"] = m.offset;
      } else if (m.kind == "affine2d") {
        e["matrix"] = json::array({json::array({m.matrix[0], m.matrix[1]}),
                                   json::array({m.matrix[2], m.matrix[3]})});
        e["offset"] = json::array({m.shift[0], m.shift[1]});
      } else {
        e["b"] = m.digit;
      }
      maps.push_back(e);
    }
    doc["maps"] = maps;
  } else {
    json fam{{"kind", s.maps.kind}};
    if (s.maps.offsets) {
      const OffsetRule& r = *s.maps.offsets;
      json o;
      switch (r.kind) {
        case OffsetRule::Kind::List:
          o = {{"rule", "list"}, {"values", r.values}};
          break;
        case OffsetRule::Kind::Arithmetic:
          o = {{"rule", "arithmetic"}, {"start", r.start}, {"step", r.step}};
          break;
        case OffsetRule::Kind::Geometric:
          o = {{"rule", "geometric"}, {"scale", r.scale}, {"base", r.base}, {"shift", r.shift}, {"power", r.power}};
          break;
      }
      fam["offsets"] = o;
    }
    doc["maps"] = fam;
  }
  json tree{{"kind", s.tree.kind}};
  if (s.tree.kind == "full") tree["alphabet"] = s.tree.alphabet;
  if (s.tree.kind == "product") {
    if (s.tree.indexed) {
      tree["indexed"] = true;
    } else {
      tree["levels"] = s.tree.levels;
      tree["period"] = s.tree.period;
    }
  }
  if (s.tree.kind == "sum-bounded") tree["alpha"] = s.tree.alpha;
  if (s.tree.kind == "table") {
    tree["depth"] = s.tree.depth;
    json rows = json::array();
    for (const auto& [prefix, kids] : s.tree.rows) rows.push_back({{"prefix", prefix}, {"children", kids}});
    tree["rows"] = rows;
    tree["default"] = s.tree.fallback;
  }
  doc["tree"] = tree;
  json cert{{"mode", s.certificate.mode}};
  if (s.certificate.mode == "geometric") {
    cert["constant"] = s.certificate.constant;
    cert["rate"] = s.certificate.rate;
  } else if (s.certificate.mode == "power_law") {
    cert["constant"] = s.certificate.constant;
    cert["exponent"] = s.certificate.exponent;
  }
  cert["base_point"] = point_json(s.certificate.base_point, s.space);
  cert["probe_depth"] = s.certificate.probe_depth;
  doc["certificate"] = cert;
  if (!s.seeds.empty()) {
    json seeds = json::array();
    for (const auto& p : s.seeds) seeds.push_back(point_json(p, s.space));
    doc["seeds"] = seeds;
  }
  return doc.dump(2);
}

Built build(const IFSSpec& s) {
  const double c = s.uniform_c;
  MapFamily family = [&]() {
    if (s.maps.kind == "moebius-digit") {
      return MapFamily::generator([](Symbol b) { return ContractionMap::moebius_digit(b); }, "moebius-digit");
    }
    if (s.maps.kind == "affine-sequence") {
      const OffsetRule offsets = *s.maps.offsets;
      return MapFamily::generator(
          [c, offsets](Symbol j) {
            return ContractionMap::affine1d(c, (1.0 - c) * offsets.at(static_cast<std::size_t>(j)));
          },
          "affine-sequence");
    }
    std::map<Symbol, ContractionMap> table;
    for (const auto& m : s.maps.entries) {
      if (m.kind == "affine1d") table.emplace(m.symbol, ContractionMap::affine1d(m.slope, m.offset));
      if (m.kind == "affine2d") table.emplace(m.symbol, ContractionMap::affine2d(m.matrix, m.shift));
      if (m.kind == "moebius-digit") table.emplace(m.symbol, ContractionMap::moebius_digit(m.digit));
    }
    return MapFamily::table(std::move(table));
  }();

  const TreeSpec& t = s.tree;
  TreeHandle tree = [&]() {
    if (t.kind == "full") return TreeHandle::full(t.alphabet);
    if (t.kind == "product") return t.indexed ? TreeHandle::indexed_path() : TreeHandle::product(t.levels, t.period);
    if (t.kind == "sum-bounded") return TreeHandle::sum_bounded(Rational::parse(t.alpha));
    return TreeHandle::table(std::map<Word, std::vector<Symbol>>(t.rows.begin(), t.rows.end()), t.depth,
                             t.fallback);
  }();

  const CertificateSpec& cs = s.certificate;
  Envelope env;
  if (cs.mode == "geometric") env = Envelope::geometric(cs.constant, cs.rate, cs.base_point);
  if (cs.mode == "power_law") env = Envelope::power_law(cs.constant, cs.exponent, cs.base_point);
  if (cs.mode == "empirical") env = Envelope::empirical(cs.base_point);
  env.probe_depth = cs.probe_depth;

  Built b{GeneralIFS(s.space, c, std::move(family), std::move(tree)), env,
          s.seeds.empty() ? std::vector<Point>{cs.base_point} : s.seeds, std::nullopt};
  if (s.maps.kind == "affine-sequence" && t.kind == "product" && t.indexed) {
    b.sequence = MapSequence::affine(c, *s.maps.offsets, env);
  }
  return b;
}

}  // namespace gifs::spec
