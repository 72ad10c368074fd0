#include "gifs/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gifs/error.hpp"

namespace gifs {

std::string to_string(EnvelopeMode mode) {
  switch (mode) {
    case EnvelopeMode::Geometric: return "geometric";
    case EnvelopeMode::PowerLaw: return "power_law";
    case EnvelopeMode::ExactTail: return "exact_tail";
    case EnvelopeMode::Empirical: return "empirical";
  }
  return "unknown";
}

Envelope Envelope::geometric(double constant, double rate, Point base) {
  Envelope e;
  e.mode = EnvelopeMode::Geometric;
  e.constant = constant;
  e.rate = rate;
  e.base_point = base;
  e.validate();
  return e;
}

Envelope Envelope::power_law(double constant, double exponent, Point base) {
  Envelope e;
  e.mode = EnvelopeMode::PowerLaw;
  e.constant = constant;
  e.exponent = exponent;
  e.base_point = base;
  e.validate();
  return e;
}

Envelope Envelope::exact(std::function<double(std::size_t)> tail, Point base) {
  Envelope e;
  e.mode = EnvelopeMode::ExactTail;
  e.exact_tail = std::move(tail);
  e.base_point = base;
  e.validate();
  return e;
}

Envelope Envelope::empirical(Point base) {
  Envelope e;
  e.mode = EnvelopeMode::Empirical;
  e.base_point = base;
  return e;
}

void Envelope::validate() const {
  if (probe_depth == 0) throw ArgumentError("probe depth must be positive");
  switch (mode) {
    case EnvelopeMode::Geometric:
      if (!(constant >= 0.0) || !std::isfinite(constant))
        throw ArgumentError("geometric envelope constant must be finite and >= 0");
      if (!(rate > 0.0 && rate < 1.0)) throw ArgumentError("geometric rate must lie in (0,1)");
      break;
    case EnvelopeMode::PowerLaw:
      if (!(constant >= 0.0) || !std::isfinite(constant))
        throw ArgumentError("power-law constant must be finite and >= 0");
      if (!(exponent > 0.0)) throw ArgumentError("power-law exponent must be positive");
      break;
    case EnvelopeMode::ExactTail:
      if (!exact_tail) throw ArgumentError("exact-tail envelope needs a tail function");
      if (dominance && !(dominance->rate > 0.0 && dominance->rate < 1.0))
        throw ArgumentError("dominance rate must lie in (0,1)");
      break;
    case EnvelopeMode::Empirical:
      break;
  }
}

double Envelope::term_bound(std::size_t j) const {
  switch (mode) {
    case EnvelopeMode::Geometric:
      return constant * std::pow(rate, static_cast<double>(j));
    case EnvelopeMode::PowerLaw:
      return constant / std::pow(static_cast<double>(std::max<std::size_t>(j, 1)), exponent + 1.0);
    case EnvelopeMode::ExactTail:
      return exact_tail(j) - exact_tail(j + 1);
    case EnvelopeMode::Empirical:
      return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

double Envelope::tail(std::size_t n) const {
  switch (mode) {
    case EnvelopeMode::Geometric:
      return constant * std::pow(rate, static_cast<double>(n)) / (1.0 - rate);
    case EnvelopeMode::PowerLaw: {
      // integral comparison: sum_{k>=n} k^-(l+1) <= (n-1)^-l / l
      auto from_two = [&](std::size_t k) {
        return constant / (std::min(exponent, 1.0) *
                           std::pow(static_cast<double>(k - 1), exponent));
      };
      if (n >= 2) return from_two(n);
      return constant + from_two(2);
    }
    case EnvelopeMode::ExactTail:
      return exact_tail(std::max<std::size_t>(n, 1));
    case EnvelopeMode::Empirical:
      return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

AuditOutcome audit_terms(const Envelope& env, const std::vector<double>& terms) {
  AuditOutcome out;
  if (!env.certifying()) return out;
  for (std::size_t j = 1; j <= terms.size(); ++j) {
    const double allowed = env.term_bound(j);
    double slack = allowed * kCertSlack;
    if (env.mode == EnvelopeMode::ExactTail) {
      slack += 4.0 * std::numeric_limits<double>::epsilon() * env.tail(j);
    }
    const double observed = terms[j - 1];
    if (!(observed <= allowed + slack)) {
      out.ok = false;
      out.first_violation = j;
      out.observed = observed;
      out.allowed = allowed;
      return out;
    }
  }
  return out;
}

AuditOutcome audit_dominance(const GeometricRate& dom, const std::vector<double>& terms) {
  AuditOutcome out;
  for (std::size_t j = 1; j <= terms.size(); ++j) {
    const double allowed = dom.constant * std::pow(dom.rate, static_cast<double>(j));
    if (!(terms[j - 1] <= inflate(allowed))) {
      out.ok = false;
      out.first_violation = j;
      out.observed = terms[j - 1];
      out.allowed = allowed;
      return out;
    }
  }
  return out;
}

}  // namespace gifs
