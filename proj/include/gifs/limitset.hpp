#pragma once

#include <cstddef>
#include <vector>

#include "gifs/ifs.hpp"

namespace gifs {

/// Finite point set in word order, with the word that produced each point.
struct PointCloud {
  std::vector<Point> points;
  std::vector<Word> labels;  // empty or one label per point
  int dimension = 1;
};

/// Radius below which two cloud points are merged.
inline constexpr double kMergeRadius = 1e-15;

struct LimitSetApprox {
  PointCloud cloud;
  double error_bound = 0.0;   // certified Hausdorff distance to the limit set of the subtree
  std::size_t depth = 0;
  Word root;                  // relative to the IFS tree root
  double seed_radius = 0.0;   // sup_a rho(x, a)
  double d_of_a = 0.0;        // max{1 + c, seed_radius}
  double d_prime = 0.0;
  double seed_distance_bound = 0.0;
  std::size_t merged = 0;
};

/// Point-count cap for limit-set clouds, honouring GIFS_POINT_CAP.
std::size_t default_point_cap();

/// Union of f_w(seeds) over the words w of length n below `root`, with its certified bound.
LimitSetApprox iterate_limit_set(const GeneralIFS& g, const LevelCertificate& cert,
                                 const Word& root, const std::vector<Point>& seeds, std::size_t n,
                                 std::size_t point_cap = 0);

/// Generic Hausdorff bound used by iterate_limit_set (without the merge radius).
double limit_set_bound(const GeneralIFS& g, const LevelCertificate& cert, const Word& root,
                       double seed_radius, std::size_t n);

/// Exponential-rate bound max{sup rho(x,a), (1+c) D'/(1-r) (r/c)^(|w|+1)} r^n.
double exp_rate_bound(const GeneralIFS& g, const LevelCertificate& cert, const Word& root,
                      double seed_radius, std::size_t n);

/// Same cloud as iterate_limit_set with the exponential-rate bound; requires a geometric certificate.
LimitSetApprox exp_rate_limit_set(const GeneralIFS& g, const LevelCertificate& cert,
                                  const Word& root, const std::vector<Point>& seeds,
                                  std::size_t n, std::size_t point_cap = 0);

struct DecompositionResidual {
  double residual;
  double lhs_bound;
  double rhs_bound;
};

/// Compares union_{w'} f_{w'}(cloud of T_{w w'} at depth m) with the cloud of T_w at depth n + m.
DecompositionResidual decomposition_residual(const GeneralIFS& g, const LevelCertificate& cert,
                                             const Word& root, std::size_t n,
                                             const std::vector<Point>& seeds, std::size_t m);

double directed_hausdorff(const std::vector<Point>& from, const std::vector<Point>& to);
/// Exact Hausdorff distance using a uniform grid; bit-identical to the brute-force result.
double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b);
double hausdorff_distance_bruteforce(const std::vector<Point>& a, const std::vector<Point>& b);

/// Drops points within kMergeRadius of an earlier point in coordinate order; returns the count removed.
std::size_t merge_close_points(PointCloud& cloud);

}  // namespace gifs
