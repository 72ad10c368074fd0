#include "gifs/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gifs/error.hpp"

namespace gifs::contfrac {

ContractionMap phi(long long b) { return ContractionMap::moebius_digit(b); }

Point phi(long long b, const Point& z) { return phi(b)(z); }

namespace {
void check_digits(const Word& digits) {
  if (digits.empty()) throw ArgumentError("continued fraction needs at least one digit");
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 1) {
      throw ArgumentError("digit " + std::to_string(i + 1) + " must be a positive integer");
    }
  }
}
}  // namespace

double evaluate_cf(const Word& digits) {
  check_digits(digits);
  double v = 0.0;
  for (std::size_t k = digits.size(); k-- > 0;) v = 1.0 / (static_cast<double>(digits[k]) + v);
  return v;
}

Fraction evaluate_cf_exact(const Word& digits) {
  check_digits(digits);
  // value = num/den; 1/(d + num/den) = den/(d*den + num)
  std::uint64_t num = 0, den = 1;
  for (std::size_t k = digits.size(); k-- > 0;) {
    std::uint64_t scaled = 0, next = 0;
    if (__builtin_mul_overflow(static_cast<std::uint64_t>(digits[k]), den, &scaled) ||
        __builtin_add_overflow(scaled, num, &next)) {
      throw ArgumentError("continued fraction does not fit 64-bit integers");
    }
    num = den;
    den = next;
  }
  return {num, den};
}

std::vector<Symbol> alpha_children(std::int64_t prefix_sum, std::size_t level, const Rational& alpha) {
  const std::int64_t top = sum_bounded_max_child(alpha, level, prefix_sum);
  std::vector<Symbol> out;
  for (std::int64_t b = 1; b <= top; ++b) out.push_back(b);
  return out;
}

GeneralIFS make_ifs(const Rational& alpha) {
  return GeneralIFS(Space::unit_disk(), kContraction,
                    MapFamily::generator([](Symbol b) { return phi(b); }, "moebius-digit"),
                    TreeHandle::sum_bounded(alpha));
}

Envelope level_envelope() { return Envelope::geometric(0.5, kContraction, Point{0.5, 0.0}); }

namespace {

struct Convergent {
  double p, p_prev, q, q_prev;  // f_w(z) = (p + p_prev z) / (q + q_prev z)
  double at(double z) const { return (p + p_prev * z) / (q + q_prev * z); }
  Convergent then(Symbol b) const {
    const double d = static_cast<double>(b);
    return {p * d + p_prev, p, q * d + q_prev, q};
  }
  // |f_w(0) - f_w(1)| = 1 / (q (q + q_prev))
  double image_length() const { return 1.0 / (q * (q + q_prev)); }
};

struct AlphaWalker {
  const Rational& alpha;
  std::size_t depth;
  const std::vector<double>& seeds;
  double resolution;
  std::size_t cap;
  AlphaCloud& out;
  Word word;

  void emit(const Convergent& cv) {
    if (out.reals.size() + seeds.size() > cap) {
      throw CapExceededError("limit-set cloud exceeded the point cap", out.reals.size() + seeds.size(),
                             std::numeric_limits<double>::infinity());
    }
    for (double a : seeds) {
      out.reals.push_back(cv.at(a));
      out.labels.push_back(word);
    }
  }

  void descend(const Convergent& cv, std::int64_t sum) {
    if (word.size() == depth) {
      emit(cv);
      return;
    }
    if (!word.empty() && cv.image_length() <= resolution) {
      ++out.collapsed;
      emit(cv);
      return;
    }
    const std::int64_t top = sum_bounded_max_child(alpha, word.size(), sum);
    for (std::int64_t b = 1; b <= top; ++b) {
      word.push_back(b);
      descend(cv.then(b), sum + b);
      word.pop_back();
    }
  }
};

}  // namespace

AlphaCloud limit_set_alpha(const Rational& alpha, std::size_t n, const std::vector<double>& seeds,
                           double resolution, std::size_t point_cap) {
  if (alpha.num <= alpha.den) throw ArgumentError("alpha must exceed 1");
  if (seeds.empty()) throw ArgumentError("seed set must not be empty");
  for (double a : seeds) {
    if (!(a >= 0.0 && a <= 1.0)) throw ArgumentError("real seeds must lie in [0,1]");
  }
  if (!(resolution >= 0.0)) throw ArgumentError("resolution must be non-negative");
  if (point_cap == 0) point_cap = default_point_cap();

  const GeneralIFS g = make_ifs(alpha);
  const LevelCertificate cert = require_certificate(certify_levels(g, level_envelope()));

  AlphaCloud out;
  out.depth = n;
  if (resolution == 0.0) {
    std::vector<Point> pts;
    for (double a : seeds) pts.push_back({a, 0.0});
    const LimitSetApprox approx = iterate_limit_set(g, cert, {}, pts, n, point_cap);
    for (const auto& p : approx.cloud.points) out.reals.push_back(p[0]);
    out.labels = approx.cloud.labels;
    out.error_bound = approx.error_bound;
    return out;
  }
  AlphaWalker walker{alpha, n, seeds, resolution, point_cap, out, {}};
  walker.descend(Convergent{0.0, 1.0, 1.0, 0.0}, 0);
  double radius = 0.0;
  for (double a : seeds) radius = std::max(radius, std::abs(a - 0.5));
  out.error_bound = limit_set_bound(g, cert, {}, radius, n) + resolution;
  return out;
}

std::vector<double> default_scales() {
  std::vector<double> s;
  for (int k = 4; k <= 12; ++k) s.push_back(std::ldexp(1.0, -k));
  return s;
}

namespace {

DimensionEstimate fit(std::vector<double> scales, const std::vector<std::size_t>& counts) {
  DimensionEstimate est;
  est.scales = std::move(scales);
  est.counts = counts;
  const std::size_t k = counts.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += std::log(1.0 / est.scales[i]);
    my += std::log(static_cast<double>(counts[i]));
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double dx = std::log(1.0 / est.scales[i]) - mx;
    sxy += dx * (std::log(static_cast<double>(counts[i])) - my);
    sxx += dx * dx;
  }
  est.slope = sxy / sxx;
  est.usable = true;
  return est;
}

void check_scales(const std::vector<double>& scales) {
  if (scales.size() < 4) throw ArgumentError("box counting needs at least 4 scales");
  for (double e : scales) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ArgumentError("box sizes must be positive");
  }
  std::vector<double> sorted = scales;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ArgumentError("box sizes must be distinct");
  }
}

DimensionEstimate degenerate(std::vector<double> scales, std::size_t k) {
  DimensionEstimate est;
  est.scales = std::move(scales);
  est.counts.assign(k, 1);
  est.usable = false;
  est.reason = "degenerate cloud: every point shares one box at the smallest scale";
  return est;
}

}  // namespace

DimensionEstimate box_dimension_estimate(const std::vector<double>& reals,
                                         std::vector<double> scales) {
  check_scales(scales);
  if (reals.empty()) throw ArgumentError("box counting needs a non-empty cloud");
  std::vector<double> sorted = reals;
  std::sort(sorted.begin(), sorted.end());
  const double finest = *std::min_element(scales.begin(), scales.end());
  if (std::floor(sorted.front() / finest) == std::floor(sorted.back() / finest)) {
    return degenerate(std::move(scales), scales.size());
  }
  if (reals.size() < 100) throw ArgumentError("box counting needs at least 100 points");
  std::vector<std::size_t> counts;
  for (double eps : scales) {
    std::size_t boxes = 0;
    double last = std::numeric_limits<double>::quiet_NaN();
    for (double v : sorted) {
      const double box = std::floor(v / eps);
      if (!(box == last)) {
        ++boxes;
        last = box;
      }
    }
    counts.push_back(boxes);
  }
  return fit(std::move(scales), counts);
}

DimensionEstimate box_dimension_estimate(const std::vector<Point>& cloud,
                                         std::vector<double> scales) {
  check_scales(scales);
  if (cloud.empty()) throw ArgumentError("box counting needs a non-empty cloud");
  const double finest = *std::min_element(scales.begin(), scales.end());
  auto box_of = [](const Point& p, double eps) {
    return std::array<double, 2>{std::floor(p[0] / eps), std::floor(p[1] / eps)};
  };
  const auto first = box_of(cloud.front(), finest);
  const bool single = std::all_of(cloud.begin(), cloud.end(),
                                  [&](const Point& p) { return box_of(p, finest) == first; });
  if (single) return degenerate(std::move(scales), scales.size());
  if (cloud.size() < 100) throw ArgumentError("box counting needs at least 100 points");
  std::vector<std::size_t> counts;
  std::vector<std::array<double, 2>> boxes(cloud.size());
  for (double eps : scales) {
    for (std::size_t i = 0; i < cloud.size(); ++i) boxes[i] = box_of(cloud[i], eps);
    std::sort(boxes.begin(), boxes.end());
    counts.push_back(static_cast<std::size_t>(std::unique(boxes.begin(), boxes.end()) - boxes.begin()));
  }
  return fit(std::move(scales), counts);
}

std::vector<double> dimension_seeds() {
  std::vector<double> s;
  for (int i = 0; i <= 20; ++i) s.push_back(i / 20.0);
  return s;
}

AlphaCloud dimension_cloud(const Rational& alpha, std::size_t depth,
                           const std::vector<double>& scales) {
  const double finest = *std::min_element(scales.begin(), scales.end());
  return limit_set_alpha(alpha, depth, dimension_seeds(), finest / 2.0);
}

}  // namespace gifs::contfrac
