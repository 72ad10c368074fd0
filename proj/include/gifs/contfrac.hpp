#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gifs/ifs.hpp"
#include "gifs/limitset.hpp"
#include "gifs/tree.hpp"

namespace gifs::contfrac {

/// Uniform contraction constant registered for the digit maps.
inline constexpr double kContraction = 0.8;

/// z -> 1/(z + b) on the disk |z - 1/2| <= 1/2.
ContractionMap phi(long long b);
Point phi(long long b, const Point& z);

/// [0; d_1, d_2, ..., d_k] by backward recurrence.
double evaluate_cf(const Word& digits);

struct Fraction {
  std::uint64_t num;
  std::uint64_t den;
};

/// Exact value of the finite continued fraction; throws if it does not fit 64 bits.
Fraction evaluate_cf_exact(const Word& digits);

/// All b >= 1 with prefix_sum + b < (level + 1) alpha, for a valid prefix of length `level`.
std::vector<Symbol> alpha_children(std::int64_t prefix_sum, std::size_t level, const Rational& alpha);

/// Digit maps on the disk over the sum-bounded tree.
GeneralIFS make_ifs(const Rational& alpha);

/// Geometric level envelope about the disk centre: C' = 1/2, r = c.
Envelope level_envelope();

struct AlphaCloud {
  std::vector<double> reals;
  std::vector<Word> labels;
  double error_bound = 0.0;
  std::size_t depth = 0;
  std::size_t collapsed = 0;  // branches stopped by the resolution
};

/// Real limit-set cloud of the sum-bounded tree at depth n.
/// Branches whose image of [0,1] is at most `resolution` long are not refined further;
/// the resolution is added to the error bound. resolution = 0 enumerates every prefix.
AlphaCloud limit_set_alpha(const Rational& alpha, std::size_t n, const std::vector<double>& seeds,
                           double resolution = 0.0, std::size_t point_cap = 0);

struct DimensionEstimate {
  double slope = 0.0;
  std::vector<double> scales;
  std::vector<std::size_t> counts;
  bool usable = false;
  std::string reason;
};

/// 2^-4, ..., 2^-12.
std::vector<double> default_scales();

/// Least-squares slope of log N(eps) against log(1/eps) for boxes anchored at 0.
DimensionEstimate box_dimension_estimate(const std::vector<Point>& cloud,
                                         std::vector<double> scales = default_scales());
DimensionEstimate box_dimension_estimate(const std::vector<double>& reals,
                                         std::vector<double> scales = default_scales());

/// Seed grid and settings used for dimension estimates of the sum-bounded clouds.
std::vector<double> dimension_seeds();
AlphaCloud dimension_cloud(const Rational& alpha, std::size_t depth,
                           const std::vector<double>& scales = default_scales());

}  // namespace gifs::contfrac
