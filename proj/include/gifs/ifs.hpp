#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gifs/envelope.hpp"
#include "gifs/metric.hpp"
#include "gifs/nonauto.hpp"
#include "gifs/tree.hpp"

namespace gifs {

/// Symbol -> contraction lookup, either a finite table or a generator for infinite alphabets.
class MapFamily {
 public:
  static MapFamily table(std::map<Symbol, ContractionMap> maps);
  static MapFamily generator(std::function<ContractionMap(Symbol)> make, std::string name);

  ContractionMap at(Symbol s) const;
  bool has(Symbol s) const;
  bool is_table() const { return !make_; }
  const std::map<Symbol, ContractionMap>& entries() const { return table_; }
  const std::string& name() const { return name_; }

 private:
  std::map<Symbol, ContractionMap> table_;
  std::function<ContractionMap(Symbol)> make_;
  std::string name_;
};

/// Maps indexed by a symbolic tree, sharing one contraction bound c.
class GeneralIFS {
 public:
  GeneralIFS(Space space, double c, MapFamily family, TreeHandle tree);

  const Space& space() const { return space_; }
  double uniform_c() const { return c_; }
  const MapFamily& family() const { return family_; }
  const TreeHandle& tree() const { return tree_; }
  ContractionMap map(Symbol s) const { return family_.at(s); }

  /// Same maps on the subtree below a relative prefix.
  GeneralIFS on_subtree(const Word& relative) const;
  /// f_{w_1} o ... o f_{w_k}(p) with the last symbol applied first.
  Point apply_word(const Word& w, const Point& p) const;

 private:
  Space space_;
  double c_;
  MapFamily family_;
  TreeHandle tree_;
};

/// Audited bound on b_x(l) = sum_{k >= l} max_{i in I_k} rho(x, z_i) c^k for one tree.
struct LevelCertificate {
  Envelope envelope;
  double c = 0.0;
  Word root;                  // root of the tree the levels were taken from
  bool certified = false;
  std::vector<double> terms;  // c^k (max_{I_k} rho(x, z_i) + fixed-point error), k = 1..probe
  std::vector<double> partial_sums;
  std::optional<GeometricRate> verified_dominance;

  Point base_point() const { return envelope.base_point; }
  double tail(std::size_t l) const;
  /// Levels below `root` are a subtree d levels deeper: returns c^-d tail(d + l).
  double tail_below(const Word& subtree_root, std::size_t l) const;
  /// Number of levels between the certificate root and a subtree root.
  std::size_t offset_of(const Word& subtree_root) const;
};

using LevelResult = std::variant<LevelCertificate, DivergenceReport>;

/// Audits the declared envelope against the level maxima of g on the probe window.
LevelResult certify_levels(const GeneralIFS& g, const Envelope& envelope);

/// Unwraps a level result, throwing CertificationError on divergence.
LevelCertificate require_certificate(const LevelResult& r);

/// Infinite word: fixed prefix, then the periodic block forever, or minimal children if empty.
struct InfiniteWord {
  Word prefix;
  Word period;

  /// First n symbols, checked against the tree (relative to its root).
  Word take(const TreeHandle& t, std::size_t n) const;
  bool operator==(const InfiniteWord&) const = default;
};

/// Prefix extended by minimal children up to the requested length.
Word canonical_extension(const TreeHandle& t, const Word& prefix, std::size_t length);

struct ProjectedPoint {
  Point point;
  double error_bound;
  std::size_t depth;          // n: point is f_{w_1} o ... o f_{w_{n+1}}(x)
  std::size_t prefix_length;  // symbols fixed by the caller; equals depth+1 for infinite words
};

/// Certified approximation of the projection of an infinite word.
ProjectedPoint project(const GeneralIFS& g, const LevelCertificate& cert, const InfiniteWord& w,
                       double tol, std::size_t depth_cap = 0);

/// Point of the projected cylinder of a finite prefix, within tol of every point in it.
ProjectedPoint project_prefix(const GeneralIFS& g, const LevelCertificate& cert,
                              const Word& prefix, double tol, std::size_t depth_cap = 0);

/// Certified depth error of f_{w_1..w_{n+1}}(x) against the projection.
double projection_depth_error(const GeneralIFS& g, const LevelCertificate& cert, std::size_t n);

/// Bound on the diameter of the projection of any cylinder of length s.
double modulus_of_continuity(const GeneralIFS& g, const LevelCertificate& cert, std::size_t s);

struct EquivarianceResidual {
  double residual;
  double bound;
};

/// rho(f_head(pi(tail)), pi(head tail)) with both projections at tol/3.
EquivarianceResidual shift_equivariance_residual(const GeneralIFS& g,
                                                 const LevelCertificate& cert, const Word& head,
                                                 const InfiniteWord& tail, double tol);

}  // namespace gifs
