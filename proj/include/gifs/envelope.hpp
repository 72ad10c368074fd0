#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gifs/metric.hpp"

namespace gifs {

enum class EnvelopeMode { Geometric, PowerLaw, ExactTail, Empirical };

std::string to_string(EnvelopeMode mode);

/// Bound of the form constant * rate^j on weighted terms.
struct GeometricRate {
  double constant;
  double rate;
};

/// Declared decay of the weighted terms c^j rho(x, z_j) relative to a base point x.
///
/// Geometric:  term_j <= constant * rate^j
/// PowerLaw:   term_j <= constant / j^(exponent+1)
/// ExactTail:  tail(n) supplied by the caller
/// Empirical:  nothing declared; only partial sums are reported
struct Envelope {
  EnvelopeMode mode = EnvelopeMode::Empirical;
  double constant = 1.0;
  double rate = 0.0;
  double exponent = 1.0;
  std::function<double(std::size_t)> exact_tail;
  std::optional<GeometricRate> dominance;  // ExactTail only
  Point base_point{0.0, 0.0};
  std::size_t probe_depth = 64;

  static Envelope geometric(double constant, double rate, Point base = {0.0, 0.0});
  static Envelope power_law(double constant, double exponent, Point base = {0.0, 0.0});
  static Envelope exact(std::function<double(std::size_t)> tail, Point base = {0.0, 0.0});
  static Envelope empirical(Point base = {0.0, 0.0});

  bool certifying() const { return mode != EnvelopeMode::Empirical; }
  /// Upper bound on the single term at index j >= 1.
  double term_bound(std::size_t j) const;
  /// Upper bound on sum_{k >= n} of the terms, n >= 1.
  double tail(std::size_t n) const;
  void validate() const;
};

/// Outcome of auditing weighted terms against an envelope on a probe window.
struct AuditOutcome {
  bool ok = true;
  std::size_t first_violation = 0;  // 1-based level, 0 when ok
  double observed = 0.0;
  double allowed = 0.0;
};

/// Terms are indexed from 1; terms[j-1] is the weighted term at level j.
AuditOutcome audit_terms(const Envelope& env, const std::vector<double>& terms);
AuditOutcome audit_dominance(const GeometricRate& dom, const std::vector<double>& terms);

}  // namespace gifs
