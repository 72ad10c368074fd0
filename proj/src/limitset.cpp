#include "gifs/limitset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "gifs/error.hpp"

namespace gifs {

std::size_t default_point_cap() {
  if (const char* env = std::getenv("GIFS_POINT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 20'000'000;
}

namespace {

Word joined(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

double seed_radius_of(const LevelCertificate& cert, const std::vector<Point>& seeds) {
  double r = 0.0;
  for (const auto& a : seeds) r = std::max(r, euclidean(cert.base_point(), a));
  return r;
}

struct CloudBuilder {
  const GeneralIFS& g;
  const std::vector<Point>& seeds;
  std::size_t depth;
  std::size_t cap;
  PointCloud& cloud;
  std::vector<ContractionMap> stack;
  Word word;

  void emit() {
    if (cloud.points.size() + seeds.size() > cap) {
      throw CapExceededError("limit-set cloud exceeded the point cap", cloud.points.size() + seeds.size(),
                             std::numeric_limits<double>::infinity());
    }
    for (const auto& a : seeds) {
      Point p = a;
      for (std::size_t k = stack.size(); k-- > 0;) p = stack[k](p);
      cloud.points.push_back(p);
      cloud.labels.push_back(word);
    }
  }

  void descend(Word& abs) {
    if (word.size() == depth) {
      emit();
      return;
    }
    for (Symbol s : g.tree().oracle().children(abs)) {
      abs.push_back(s);
      word.push_back(s);
      stack.push_back(g.map(s));
      descend(abs);
      stack.pop_back();
      word.pop_back();
      abs.pop_back();
    }
  }
};

}  // namespace

std::size_t merge_close_points(PointCloud& cloud) {
  const std::size_t n = cloud.points.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return cloud.points[i] < cloud.points[j] || (cloud.points[i] == cloud.points[j] && i < j);
  });
  std::vector<char> dropped(n, 0);
  std::size_t removed = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    if (dropped[i]) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t j = order[b];
      if (cloud.points[j][0] - cloud.points[i][0] > kMergeRadius) break;
      if (!dropped[j] && euclidean(cloud.points[i], cloud.points[j]) <= kMergeRadius) {
        dropped[j] = 1;
        ++removed;
      }
    }
  }
  if (removed == 0) return 0;
  PointCloud kept;
  kept.dimension = cloud.dimension;
  for (std::size_t i = 0; i < n; ++i) {
    if (dropped[i]) continue;
    kept.points.push_back(cloud.points[i]);
    if (!cloud.labels.empty()) kept.labels.push_back(cloud.labels[i]);
  }
  cloud = std::move(kept);
  return removed;
}

double limit_set_bound(const GeneralIFS& g, const LevelCertificate& cert, const Word& root,
                       double seed_radius, std::size_t n) {
  const double c = g.uniform_c();
  const Word abs_root = joined(g.tree().root(), root);
  const std::size_t k = cert.offset_of(abs_root);
  const double d_of_a = std::max(1.0 + c, seed_radius);
  const double level = static_cast<double>(n + k + 1);
  const double inner = std::max(std::pow(c, level), cert.tail(n + k + 1));
  return inflate(d_of_a * std::pow(c, -static_cast<double>(k + 1)) * inner);
}

double exp_rate_bound(const GeneralIFS& g, const LevelCertificate& cert, const Word& root,
                      double seed_radius, std::size_t n) {
  const auto rate = cert.envelope.mode == EnvelopeMode::Geometric
                        ? std::optional<GeometricRate>(GeometricRate{cert.envelope.constant,
                                                                     cert.envelope.rate})
                        : cert.verified_dominance;
  if (!cert.certified || !rate) {
    throw CertificationError("exponential rate needs a geometric certificate");
  }
  const double c = g.uniform_c();
  const double r = rate->rate;
  const std::size_t k = cert.offset_of(joined(g.tree().root(), root));
  const double spread =
      (1.0 + c) * rate->constant / (1.0 - r) * std::pow(r / c, static_cast<double>(k + 1));
  return inflate(std::max(seed_radius, spread) * std::pow(r, static_cast<double>(n)));
}

LimitSetApprox iterate_limit_set(const GeneralIFS& g, const LevelCertificate& cert,
                                 const Word& root, const std::vector<Point>& seeds, std::size_t n,
                                 std::size_t point_cap) {
  if (!cert.certified) throw CertificationError("limit-set bounds need a certified level envelope");
  if (seeds.empty()) throw ArgumentError("seed set must not be empty");
  for (const auto& a : seeds) {
    if (!g.space().contains(a)) throw ArgumentError("seed point lies outside the space");
  }
  if (point_cap == 0) point_cap = default_point_cap();
  const GeneralIFS below = root.empty() ? g : g.on_subtree(root);

  LimitSetApprox out;
  out.root = root;
  out.depth = n;
  out.cloud.dimension = g.space().dimension();
  CloudBuilder builder{below, seeds, n, point_cap, out.cloud, {}, {}};
  Word abs = below.tree().root();
  builder.descend(abs);

  const double c = g.uniform_c();
  out.seed_radius = seed_radius_of(cert, seeds);
  out.d_of_a = std::max(1.0 + c, out.seed_radius);
  out.d_prime = out.d_of_a;
  const std::size_t k = cert.offset_of(below.tree().root());
  out.seed_distance_bound =
      inflate(out.d_prime * std::max(1.0, std::pow(c, -static_cast<double>(k + 1)) * cert.tail(k + 1)));
  out.error_bound = limit_set_bound(g, cert, root, out.seed_radius, n);
  out.merged = merge_close_points(out.cloud);
  if (out.merged > 0) out.error_bound += kMergeRadius;
  return out;
}

LimitSetApprox exp_rate_limit_set(const GeneralIFS& g, const LevelCertificate& cert,
                                  const Word& root, const std::vector<Point>& seeds,
                                  std::size_t n, std::size_t point_cap) {
  const double probe = exp_rate_bound(g, cert, root, 0.0, n);  // fails early without a rate
  (void)probe;
  LimitSetApprox out = iterate_limit_set(g, cert, root, seeds, n, point_cap);
  out.error_bound = exp_rate_bound(g, cert, root, out.seed_radius, n);
  if (out.merged > 0) out.error_bound += kMergeRadius;
  return out;
}

DecompositionResidual decomposition_residual(const GeneralIFS& g, const LevelCertificate& cert,
                                             const Word& root, std::size_t n,
                                             const std::vector<Point>& seeds, std::size_t m) {
  const GeneralIFS below = root.empty() ? g : g.on_subtree(root);
  std::vector<Point> lhs;
  double lhs_bound = 0.0;
  const double contraction = std::pow(g.uniform_c(), static_cast<double>(n));
  for_each_prefix(below.tree(), n, [&](const Word& head) {
    const LimitSetApprox part = iterate_limit_set(g, cert, joined(root, head), seeds, m);
    for (const auto& p : part.cloud.points) lhs.push_back(g.apply_word(head, p));
    lhs_bound = std::max(lhs_bound, contraction * part.error_bound);
  });
  const LimitSetApprox whole = iterate_limit_set(g, cert, root, seeds, n + m);
  return {hausdorff_distance(lhs, whole.cloud.points), lhs_bound, whole.error_bound};
}

double hausdorff_distance_bruteforce(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) throw ArgumentError("Hausdorff distance needs non-empty sets");
  auto directed = [](const std::vector<Point>& from, const std::vector<Point>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, euclidean(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

namespace {

// Uniform bucket grid over a point set for nearest-neighbour distance queries.
class Grid {
 public:
  explicit Grid(const std::vector<Point>& pts) : pts_(pts) {
    lo_ = hi_ = pts.front();
    for (const auto& p : pts) {
      for (int d = 0; d < 2; ++d) {
        lo_[d] = std::min(lo_[d], p[d]);
        hi_[d] = std::max(hi_[d], p[d]);
      }
    }
    const double span = std::max(hi_[0] - lo_[0], hi_[1] - lo_[1]);
    const double per_axis = std::max(1.0, std::sqrt(static_cast<double>(pts.size())));
    cell_ = span > 0.0 ? span / per_axis : 1.0;
    for (int d = 0; d < 2; ++d) {
      dims_[d] = static_cast<std::size_t>(std::floor((hi_[d] - lo_[d]) / cell_)) + 1;
    }
    start_.assign(dims_[0] * dims_[1] + 1, 0);
    std::vector<std::size_t> cell_of(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cell_of[i] = index(coord(pts[i], 0), coord(pts[i], 1));
      ++start_[cell_of[i] + 1];
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    members_.resize(pts.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) members_[fill[cell_of[i]]++] = i;
  }

  double nearest(const Point& q) const {
    const std::size_t qi = coord(q, 0), qj = coord(q, 1);
    double best = std::numeric_limits<double>::infinity();
    const std::size_t max_ring = std::max(dims_[0], dims_[1]);
    for (std::size_t ring = 0; ring <= max_ring; ++ring) {
      if (ring >= 1) {
        const double lower = static_cast<double>(ring - 1) * cell_;
        if (lower > best * (1.0 + 1e-12)) break;
      }
      visit_ring(qi, qj, ring, [&](std::size_t cell) {
        for (std::size_t k = start_[cell]; k < start_[cell + 1]; ++k) {
          best = std::min(best, euclidean(q, pts_[members_[k]]));
        }
      });
    }
    return best;
  }

 private:
  std::size_t coord(const Point& p, int d) const {
    const double t = std::floor((p[d] - lo_[d]) / cell_);
    if (!(t > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(t), dims_[d] - 1);
  }
  std::size_t index(std::size_t i, std::size_t j) const { return j * dims_[0] + i; }

  template <class F>
  void visit_ring(std::size_t qi, std::size_t qj, std::size_t ring, F&& f) const {
    const long long i0 = static_cast<long long>(qi) - static_cast<long long>(ring);
    const long long i1 = static_cast<long long>(qi) + static_cast<long long>(ring);
    const long long j0 = static_cast<long long>(qj) - static_cast<long long>(ring);
    const long long j1 = static_cast<long long>(qj) + static_cast<long long>(ring);
    const long long ni = static_cast<long long>(dims_[0]), nj = static_cast<long long>(dims_[1]);
    for (long long j = std::max(j0, 0LL); j <= std::min(j1, nj - 1); ++j) {
      const bool edge_row = (j == j0 || j == j1);
      for (long long i = std::max(i0, 0LL); i <= std::min(i1, ni - 1); ++i) {
        if (!edge_row && i != i0 && i != i1) {
          i = std::max(i, i1 - 1);  // jump to the right edge
          continue;
        }
        f(index(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      }
    }
  }

  const std::vector<Point>& pts_;
  Point lo_{}, hi_{};
  double cell_ = 1.0;
  std::size_t dims_[2] = {1, 1};
  std::vector<std::size_t> start_;
  std::vector<std::size_t> members_;
};

}  // namespace

double directed_hausdorff(const std::vector<Point>& from, const std::vector<Point>& to) {
  if (from.empty() || to.empty()) throw ArgumentError("Hausdorff distance needs non-empty sets");
  const Grid grid(to);
  double worst = 0.0;
  for (const auto& p : from) worst = std::max(worst, grid.nearest(p));
  return worst;
}

double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace gifs
