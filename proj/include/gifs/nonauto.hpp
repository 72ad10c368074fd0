#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "gifs/envelope.hpp"
#include "gifs/metric.hpp"

namespace gifs {

/// mantissa * 2^exponent with a double mantissa in [0.5, 1) or zero.
struct ExtendedReal {
  double mantissa = 0.0;
  std::int64_t exponent = 0;

  static ExtendedReal from(double v);
  ExtendedReal& operator*=(const ExtendedReal& o);
  double to_double() const;
  bool is_zero() const { return mantissa == 0.0; }
};

ExtendedReal operator*(ExtendedReal a, const ExtendedReal& b);

/// Offsets a_j of an affine family f_j(x) = c x + (1-c) a_j, j >= 1.
struct OffsetRule {
  enum class Kind { List, Arithmetic, Geometric };
  Kind kind = Kind::List;
  std::vector<double> values;  // List: a_1, a_2, ...; the last value repeats
  double start = 0.0;          // Arithmetic: start + step * j
  double step = 1.0;
  double scale = 1.0;          // Geometric: scale * base^(j + shift) / j^power
  double base = 2.0;
  double shift = 0.0;
  double power = 0.0;

  static OffsetRule list(std::vector<double> v);
  static OffsetRule arithmetic(double start, double step);
  static OffsetRule geometric(double scale, double base, double shift, double power);

  ExtendedReal extended(std::size_t j) const;
  double at(std::size_t j) const { return extended(j).to_double(); }
  void validate() const;
  bool operator==(const OffsetRule&) const = default;
};

/// Sequence of contractions f_1, f_2, ... with a common factor c and a declared envelope.
class MapSequence {
 public:
  MapSequence(Space space, double c, std::function<ContractionMap(std::size_t)> maps,
              Envelope envelope);
  /// f_j(x) = c x + (1-c) a_j on the real line.
  static MapSequence affine(double c, OffsetRule offsets, Envelope envelope);

  ContractionMap at(std::size_t j) const;
  double uniform_c() const { return c_; }
  const Space& space() const { return space_; }
  const Envelope& envelope() const { return envelope_; }
  const std::optional<OffsetRule>& affine_offsets() const { return offsets_; }

 private:
  Space space_;
  double c_;
  std::function<ContractionMap(std::size_t)> maps_;
  Envelope envelope_;
  std::optional<OffsetRule> offsets_;
};

/// f_first o f_{first+1} o ... o f_last(y), innermost map applied first; 1 <= first <= last.
Point compose_range(const MapSequence& seq, std::size_t first, std::size_t last, const Point& y);

/// Same composition for affine sequences, accumulated with extended exponents.
/// Falls back to compose_range when the sequence has no offset rule.
Point compose_range_stable(const MapSequence& seq, std::size_t first, std::size_t last,
                           const Point& y);

struct SummabilityCertificate {
  Envelope envelope;
  double c = 0.0;
  bool certified = false;              // false for empirical envelopes
  std::vector<double> terms;           // c^j (rho(x,z_j) + fixed-point error), j = 1..probe
  std::vector<double> partial_sums;
  std::optional<GeometricRate> verified_dominance;  // ExactTail dominance that passed the audit

  Point base_point() const { return envelope.base_point; }
  /// Certified bound on sum_{k >= n} c^k rho(x, z_k).
  double tail(std::size_t n) const;
  /// Same tail re-based at another point y.
  double tail_from(const Point& y, std::size_t n) const;
};

struct DivergenceReport {
  std::size_t first_violation = 0;
  double observed = 0.0;
  double allowed = 0.0;
  std::vector<double> terms;
  std::vector<double> partial_sums;
};

using SummabilityResult = std::variant<SummabilityCertificate, DivergenceReport>;

/// Audits the sequence's declared envelope on its probe window.
SummabilityResult check_summability(const MapSequence& seq);

/// Certified bound on rho(f_[m,m+n](y), x_m).
double rate_bound(const SummabilityCertificate& cert, std::size_t m, std::size_t n,
                  const Point& y);

struct CompatiblePoint {
  std::size_t index;    // m
  Point point;          // approximation of x_m
  std::size_t depth;    // n used in f_[m,m+n](y)
  double error_bound;
};

/// Approximates x_m for m in [m_first, m_last], each within tol.
std::vector<CompatiblePoint> compatible_sequence(const MapSequence& seq,
                                                 const SummabilityCertificate& cert,
                                                 std::size_t m_first, std::size_t m_last,
                                                 double tol, const Point& y = {0.0, 0.0},
                                                 std::size_t depth_cap = 0);

struct CompatibilityCheck {
  bool pass;
  double residual;  // rho(f_m(x_{m+1}), x_m)
};

/// Computes x_m and x_{m+1} at tol/3 and checks f_m(x_{m+1}) = x_m within tol.
CompatibilityCheck recursive_compatibility_check(const MapSequence& seq,
                                                 const SummabilityCertificate& cert, std::size_t m,
                                                 double tol, const Point& y = {0.0, 0.0});

/// Geometric constants (D', r) when the certificate implies exponential convergence.
std::optional<GeometricRate> exp_rate_certificate(const SummabilityCertificate& cert);

/// Depth cap for certified depth searches, honouring GIFS_DEPTH_CAP.
std::size_t default_depth_cap();

}  // namespace gifs
