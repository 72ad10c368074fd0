#include "gifs/ifs.hpp"

#include <algorithm>
#include <cmath>

#include "gifs/error.hpp"

namespace gifs {

MapFamily MapFamily::table(std::map<Symbol, ContractionMap> maps) {
  if (maps.empty()) throw ArgumentError("map table must not be empty");
  MapFamily f;
  f.table_ = std::move(maps);
  f.name_ = "table";
  return f;
}

MapFamily MapFamily::generator(std::function<ContractionMap(Symbol)> make, std::string name) {
  if (!make) throw ArgumentError("map generator must be callable");
  MapFamily f;
  f.make_ = std::move(make);
  f.name_ = std::move(name);
  return f;
}

ContractionMap MapFamily::at(Symbol s) const {
  if (make_) return make_(s);
  const auto it = table_.find(s);
  if (it == table_.end()) throw ArgumentError("no map for symbol " + std::to_string(s));
  return it->second;
}

bool MapFamily::has(Symbol s) const { return make_ || table_.count(s) > 0; }

GeneralIFS::GeneralIFS(Space space, double c, MapFamily family, TreeHandle tree)
    : space_(space), c_(c), family_(std::move(family)), tree_(std::move(tree)) {
  if (!(c_ > 0.0 && c_ < 1.0)) throw ArgumentError("contraction factor must lie in (0,1)");
  for (const auto& [symbol, f] : family_.entries()) {
    if (f.lipschitz() > c_) {
      throw ArgumentError("map for symbol " + std::to_string(symbol) + " exceeds the contraction factor");
    }
  }
}

GeneralIFS GeneralIFS::on_subtree(const Word& relative) const {
  return GeneralIFS(space_, c_, family_, tree_.subtree(relative));
}

Point GeneralIFS::apply_word(const Word& w, const Point& p) const {
  Point q = p;
  for (std::size_t k = w.size(); k-- > 0;) q = family_.at(w[k])(q);
  return q;
}

double LevelCertificate::tail(std::size_t l) const { return envelope.tail(l); }

std::size_t LevelCertificate::offset_of(const Word& subtree_root) const {
  if (subtree_root.size() < root.size() ||
      !std::equal(root.begin(), root.end(), subtree_root.begin())) {
    throw ArgumentError("certificate does not cover this subtree");
  }
  return subtree_root.size() - root.size();
}

double LevelCertificate::tail_below(const Word& subtree_root, std::size_t l) const {
  const std::size_t d = offset_of(subtree_root);
  if (d == 0) return tail(l);
  return std::pow(c, -static_cast<double>(d)) * tail(d + l);
}

LevelResult certify_levels(const GeneralIFS& g, const Envelope& envelope) {
  envelope.validate();
  const double c = g.uniform_c();
  const Point x = envelope.base_point;
  std::vector<double> terms;
  std::vector<double> partial;
  double running = 0.0;
  for (std::size_t n = 1; n <= envelope.probe_depth; ++n) {
    double worst = 0.0;
    for (Symbol s : g.tree().level_set(n)) {
      const ContractionMap f = g.map(s);
      Point z;
      if (f.closed_form_fixed_point()) {
        z = *f.closed_form_fixed_point();
      } else {
        const double scale = std::max(1.0, euclidean(f(x), x) / (1.0 - c));
        z = fixed_point(f, c, 1e-12 * scale, x).point;
      }
      const double err = collage_bounds(f, c, z, z).distance_bound;
      worst = std::max(worst, euclidean(x, z) + err);
    }
    const double term = std::pow(c, static_cast<double>(n)) * worst;
    terms.push_back(term);
    running += term;
    partial.push_back(running);
  }
  const AuditOutcome audit = audit_terms(envelope, terms);
  if (!audit.ok) {
    return DivergenceReport{audit.first_violation, audit.observed, audit.allowed, std::move(terms),
                            std::move(partial)};
  }
  LevelCertificate cert;
  cert.envelope = envelope;
  cert.c = c;
  cert.root = g.tree().root();
  cert.certified = envelope.certifying();
  if (envelope.mode == EnvelopeMode::ExactTail && envelope.dominance &&
      audit_dominance(*envelope.dominance, terms).ok) {
    cert.verified_dominance = envelope.dominance;
  }
  cert.terms = std::move(terms);
  cert.partial_sums = std::move(partial);
  return cert;
}

LevelCertificate require_certificate(const LevelResult& r) {
  if (const auto* div = std::get_if<DivergenceReport>(&r)) {
    throw CertificationError("envelope violated at level " + std::to_string(div->first_violation));
  }
  const auto& cert = std::get<LevelCertificate>(r);
  if (!cert.certified) throw CertificationError("empirical envelope gives no certificate");
  return cert;
}

Word InfiniteWord::take(const TreeHandle& t, std::size_t n) const {
  Word abs = t.root();
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Symbol s;
    if (i < prefix.size()) {
      s = prefix[i];
    } else if (!period.empty()) {
      s = period[(i - prefix.size()) % period.size()];
    } else {
      s = t.oracle().children(abs).front();
    }
    if (!t.oracle().admits(abs, s)) {
      throw PrefixError("word leaves the tree at position " + std::to_string(i + 1), i + 1);
    }
    abs.push_back(s);
    out.push_back(s);
  }
  return out;
}

Word canonical_extension(const TreeHandle& t, const Word& prefix, std::size_t length) {
  return InfiniteWord{prefix, {}}.take(t, std::max(length, prefix.size()));
}

double projection_depth_error(const GeneralIFS& g, const LevelCertificate& cert, std::size_t n) {
  const double c = g.uniform_c();
  return inflate((1.0 + c) / c * cert.tail_below(g.tree().root(), n + 2));
}

double modulus_of_continuity(const GeneralIFS& g, const LevelCertificate& cert, std::size_t s) {
  const double c = g.uniform_c();
  return inflate(2.0 * (1.0 + c) / c * cert.tail_below(g.tree().root(), s + 1));
}

namespace {

std::size_t smallest_depth(const std::function<double(std::size_t)>& bound, double tol,
                           std::size_t cap) {
  if (bound(0) <= tol) return 0;
  std::size_t hi = 1;
  while (bound(hi) > tol) {
    if (hi >= cap) throw CapExceededError("certified depth exceeds the depth cap", cap, bound(cap));
    hi = std::min(hi * 2, cap);
  }
  std::size_t lo = hi / 2;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (bound(mid) <= tol ? hi : lo) = mid;
  }
  return hi;
}

ProjectedPoint project_impl(const GeneralIFS& g, const LevelCertificate& cert,
                            const InfiniteWord& w, double tol, double floor_term,
                            std::size_t fixed_length, std::size_t depth_cap) {
  if (!cert.certified) throw CertificationError("projection needs a certified level envelope");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (floor_term >= tol) {
    throw ArgumentError("tolerance is below the prefix-ambiguity floor " + std::to_string(floor_term));
  }
  if (depth_cap == 0) depth_cap = default_depth_cap();
  const std::size_t n = smallest_depth(
      [&](std::size_t k) { return projection_depth_error(g, cert, k) + floor_term; }, tol,
      depth_cap);
  const Word symbols = w.take(g.tree(), n + 1);
  const Point p = g.apply_word(symbols, cert.base_point());
  return {p, projection_depth_error(g, cert, n) + floor_term, n,
          fixed_length == 0 ? n + 1 : fixed_length};
}

}  // namespace

ProjectedPoint project(const GeneralIFS& g, const LevelCertificate& cert, const InfiniteWord& w,
                       double tol, std::size_t depth_cap) {
  if (const std::size_t bad = g.tree().first_invalid(w.prefix)) {
    throw PrefixError("word leaves the tree at position " + std::to_string(bad), bad);
  }
  return project_impl(g, cert, w, tol, 0.0, 0, depth_cap);
}

ProjectedPoint project_prefix(const GeneralIFS& g, const LevelCertificate& cert,
                              const Word& prefix, double tol, std::size_t depth_cap) {
  if (const std::size_t bad = g.tree().first_invalid(prefix)) {
    throw PrefixError("word leaves the tree at position " + std::to_string(bad), bad);
  }
  const double ambiguity = modulus_of_continuity(g, cert, prefix.size());
  auto p = project_impl(g, cert, InfiniteWord{prefix, {}}, tol, ambiguity, prefix.size(), depth_cap);
  p.prefix_length = prefix.size();
  return p;
}

EquivarianceResidual shift_equivariance_residual(const GeneralIFS& g,
                                                 const LevelCertificate& cert, const Word& head,
                                                 const InfiniteWord& tail, double tol) {
  const GeneralIFS below = g.on_subtree(head);
  const ProjectedPoint inner = project(below, cert, tail, tol / 3.0);
  Word joined = head;
  joined.insert(joined.end(), tail.prefix.begin(), tail.prefix.end());
  const ProjectedPoint whole = project(g, cert, InfiniteWord{joined, tail.period}, tol / 3.0);
  const Point lhs = g.apply_word(head, inner.point);
  const double c = g.uniform_c();
  return {euclidean(lhs, whole.point),
          std::pow(c, static_cast<double>(head.size())) * inner.error_bound + whole.error_bound};
}

}  // namespace gifs
