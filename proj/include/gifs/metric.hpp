#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace gifs {

/// Planar point; real-valued spaces keep the second coordinate at 0.
using Point = std::array<double, 2>;

/// Relative inflation applied once to every certified bound.
inline constexpr double kCertSlack = 1e-9;

inline double inflate(double bound) { return bound * (1.0 + kCertSlack); }

enum class SpaceKind { RealLine, RealInterval, ComplexDisk, Plane };

/// Complete metric space the maps act on.
struct Space {
  SpaceKind kind = SpaceKind::RealLine;
  double lo = 0.0;  // RealInterval only
  double hi = 1.0;

  static Space real_line() { return {SpaceKind::RealLine, 0.0, 0.0}; }
  static Space interval(double lo, double hi);
  /// Closed disk |z - 1/2| <= 1/2 in the complex plane.
  static Space unit_disk() { return {SpaceKind::ComplexDisk, 0.0, 0.0}; }
  static Space plane() { return {SpaceKind::Plane, 0.0, 0.0}; }

  double distance(const Point& a, const Point& b) const;
  bool contains(const Point& p, double slack = 1e-12) const;
  /// Number of meaningful coordinates (1 or 2).
  int dimension() const;
  /// Supremum of distances from p to points of the space; infinite if unbounded.
  double farthest_from(const Point& p) const;
  std::string name() const;

  bool operator==(const Space&) const = default;
};

double euclidean(const Point& a, const Point& b);

struct Affine1D {
  double slope;
  double offset;
};

struct Affine2D {
  std::array<double, 4> matrix;  // row-major
  Point offset;
};

/// z -> 1/(z + digit) on the complex plane.
struct MoebiusDigit {
  long long digit;
};

struct CustomMap {
  std::function<Point(const Point&)> fn;
};

/// Contraction with a known Lipschitz constant.
class ContractionMap {
 public:
  static ContractionMap affine1d(double slope, double offset);
  static ContractionMap affine2d(const std::array<double, 4>& matrix, const Point& offset);
  static ContractionMap moebius_digit(long long digit);
  /// Arbitrary map; the caller vouches for the Lipschitz constant.
  static ContractionMap custom(std::function<Point(const Point&)> fn, double lipschitz,
                               std::optional<Point> fixed_point = std::nullopt);

  Point operator()(const Point& p) const;
  double lipschitz() const { return lipschitz_; }
  /// Fixed point when it is known in closed form.
  const std::optional<Point>& closed_form_fixed_point() const { return fixed_point_; }

  using Kind = std::variant<Affine1D, Affine2D, MoebiusDigit, CustomMap>;
  const Kind& kind() const { return kind_; }

 private:
  ContractionMap(Kind kind, double lipschitz, std::optional<Point> fp)
      : kind_(std::move(kind)), lipschitz_(lipschitz), fixed_point_(fp) {}

  Kind kind_;
  double lipschitz_;
  std::optional<Point> fixed_point_;
};

/// Result of a certified Banach iteration.
struct FixedPointResult {
  Point point;
  double error_bound;       // certified distance to the true fixed point
  std::size_t iterations;
};

/// Iterates f from start until the a-posteriori bound rho(f(a),a)/(1-c) <= tol.
/// Returns the closed form immediately when available.
FixedPointResult fixed_point(const ContractionMap& f, double c, double tol,
                             const Point& start = Point{0.0, 0.0});

/// Two-sided collage relations between the move of `a` and its distance to the fixed point z.
struct CollageBounds {
  double move_bound;      // (1+c) rho(z,a), bounds rho(f(a),a)
  double distance_bound;  // rho(f(a),a)/(1-c), bounds rho(z,a)
};

CollageBounds collage_bounds(const ContractionMap& f, double c, const Point& a, const Point& z);

/// Spectral norm of a 2x2 row-major matrix.
double operator_norm(const std::array<double, 4>& m);

}  // namespace gifs
