#include "gifs/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gifs/error.hpp"

namespace gifs {

Space Space::interval(double lo, double hi) {
  if (!(lo < hi)) throw ArgumentError("interval requires lo < hi");
  return {SpaceKind::RealInterval, lo, hi};
}

double euclidean(const Point& a, const Point& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

double Space::distance(const Point& a, const Point& b) const { return euclidean(a, b); }

bool Space::contains(const Point& p, double slack) const {
  if (!std::isfinite(p[0]) || !std::isfinite(p[1])) return false;
  switch (kind) {
    case SpaceKind::RealLine:
      return p[1] == 0.0;
    case SpaceKind::RealInterval:
      return p[1] == 0.0 && p[0] >= lo - slack && p[0] <= hi + slack;
    case SpaceKind::ComplexDisk:
      return euclidean(p, Point{0.5, 0.0}) <= 0.5 + slack;
    case SpaceKind::Plane:
      return true;
  }
  return false;
}

int Space::dimension() const {
  return (kind == SpaceKind::ComplexDisk || kind == SpaceKind::Plane) ? 2 : 1;
}

double Space::farthest_from(const Point& p) const {
  switch (kind) {
    case SpaceKind::RealInterval:
      return std::max(std::abs(p[0] - lo), std::abs(p[0] - hi)) + std::abs(p[1]);
    case SpaceKind::ComplexDisk:
      return euclidean(p, Point{0.5, 0.0}) + 0.5;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

std::string Space::name() const {
  switch (kind) {
    case SpaceKind::RealLine: return "real-line";
    case SpaceKind::RealInterval: return "real-interval";
    case SpaceKind::ComplexDisk: return "complex-disk";
    case SpaceKind::Plane: return "plane";
  }
  return "unknown";
}

double operator_norm(const std::array<double, 4>& m) {
  // largest singular value from the eigenvalues of M^T M
  const double a = m[0] * m[0] + m[2] * m[2];
  const double b = m[0] * m[1] + m[2] * m[3];
  const double d = m[1] * m[1] + m[3] * m[3];
  const double half_trace = 0.5 * (a + d);
  const double disc = std::sqrt(std::max(0.0, 0.25 * (a - d) * (a - d) + b * b));
  return std::sqrt(half_trace + disc);
}

ContractionMap ContractionMap::affine1d(double slope, double offset) {
  const double lip = std::abs(slope);
  std::optional<Point> fp;
  if (lip < 1.0) fp = Point{offset / (1.0 - slope), 0.0};
  return ContractionMap(Affine1D{slope, offset}, lip, fp);
}

ContractionMap ContractionMap::affine2d(const std::array<double, 4>& m, const Point& t) {
  const double lip = operator_norm(m);
  std::optional<Point> fp;
  const double a = 1.0 - m[0], b = -m[1], c = -m[2], d = 1.0 - m[3];
  const double det = a * d - b * c;
  if (lip < 1.0 && det != 0.0) {
    fp = Point{(d * t[0] - b * t[1]) / det, (a * t[1] - c * t[0]) / det};
  }
  return ContractionMap(Affine2D{m, t}, lip, fp);
}

ContractionMap ContractionMap::moebius_digit(long long digit) {
  if (digit < 1) throw ArgumentError("moebius digit must be >= 1");
  const double b = static_cast<double>(digit);
  const Point fp{(-b + std::sqrt(b * b + 4.0)) / 2.0, 0.0};
  return ContractionMap(MoebiusDigit{digit}, 0.8, fp);
}

ContractionMap ContractionMap::custom(std::function<Point(const Point&)> fn, double lipschitz,
                                      std::optional<Point> fixed_point) {
  if (!fn) throw ArgumentError("custom map needs a callable");
  return ContractionMap(CustomMap{std::move(fn)}, lipschitz, fixed_point);
}

namespace {
struct Apply {
  const Point& p;
  Point operator()(const Affine1D& f) const { return {f.slope * p[0] + f.offset, 0.0}; }
  Point operator()(const Affine2D& f) const {
    return {f.matrix[0] * p[0] + f.matrix[1] * p[1] + f.offset[0],
            f.matrix[2] * p[0] + f.matrix[3] * p[1] + f.offset[1]};
  }
  Point operator()(const MoebiusDigit& f) const {
    const double re = p[0] + static_cast<double>(f.digit);
    const double im = p[1];
    const double norm2 = re * re + im * im;
    return {re / norm2, -im / norm2};
  }
  Point operator()(const CustomMap& f) const { return f.fn(p); }
};
}  // namespace

Point ContractionMap::operator()(const Point& p) const { return std::visit(Apply{p}, kind_); }

CollageBounds collage_bounds(const ContractionMap& f, double c, const Point& a, const Point& z) {
  if (!(c > 0.0 && c < 1.0)) throw ArgumentError("contraction factor must lie in (0,1)");
  if (f.lipschitz() > c) throw ArgumentError("map Lipschitz constant exceeds c");
  return {inflate((1.0 + c) * euclidean(z, a)), inflate(euclidean(f(a), a) / (1.0 - c))};
}

FixedPointResult fixed_point(const ContractionMap& f, double c, double tol, const Point& start) {
  if (!(c > 0.0 && c < 1.0)) throw ArgumentError("contraction factor must lie in (0,1)");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (f.lipschitz() > c) throw ArgumentError("map Lipschitz constant exceeds c");

  auto bound_at = [&](const Point& a) { return inflate(euclidean(f(a), a) / (1.0 - c)); };

  if (const auto& fp = f.closed_form_fixed_point()) {
    const double b = bound_at(*fp);
    if (b <= tol) return {*fp, b, 0};
  }

  Point a = start;
  const double first_move = euclidean(f(a), a);
  if (first_move == 0.0) return {a, 0.0, 0};

  std::size_t cap = 64;
  const double ratio = std::log(tol * (1.0 - c) / first_move) / std::log(c);
  if (std::isfinite(ratio) && ratio > 0.0) {
    cap = std::max<std::size_t>(cap, 10 * static_cast<std::size_t>(std::ceil(ratio)));
  }

  double bound = bound_at(a);
  for (std::size_t k = 0; k < cap; ++k) {
    if (bound <= tol) return {a, bound, k};
    a = f(a);
    bound = bound_at(a);
  }
  if (bound <= tol) return {a, bound, cap};
  throw NotConvergedError("fixed-point iteration reached its cap", bound);
}

}  // namespace gifs
