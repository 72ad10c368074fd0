#include "gifs/nonauto.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gifs/error.hpp"

namespace gifs {

ExtendedReal ExtendedReal::from(double v) {
  ExtendedReal r;
  if (v == 0.0) return r;
  int e = 0;
  r.mantissa = std::frexp(v, &e);
  r.exponent = e;
  return r;
}

ExtendedReal& ExtendedReal::operator*=(const ExtendedReal& o) {
  if (is_zero() || o.is_zero()) {
    *this = ExtendedReal{};
    return *this;
  }
  int e = 0;
  mantissa = std::frexp(mantissa * o.mantissa, &e);
  exponent += o.exponent + e;
  return *this;
}

ExtendedReal operator*(ExtendedReal a, const ExtendedReal& b) {
  a *= b;
  return a;
}

double ExtendedReal::to_double() const {
  if (is_zero()) return 0.0;
  const std::int64_t e = std::clamp<std::int64_t>(exponent, INT_MIN / 2, INT_MAX / 2);
  return std::ldexp(mantissa, static_cast<int>(e));
}

namespace {

ExtendedReal ext_pow(double base, std::uint64_t k) {
  ExtendedReal result = ExtendedReal::from(1.0);
  ExtendedReal sq = ExtendedReal::from(base);
  while (k > 0) {
    if (k & 1U) result *= sq;
    sq *= sq;
    k >>= 1U;
  }
  return result;
}

// Neumaier compensated summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

OffsetRule OffsetRule::list(std::vector<double> v) {
  OffsetRule r;
  r.kind = Kind::List;
  r.values = std::move(v);
  r.validate();
  return r;
}

OffsetRule OffsetRule::arithmetic(double start, double step) {
  OffsetRule r;
  r.kind = Kind::Arithmetic;
  r.start = start;
  r.step = step;
  r.validate();
  return r;
}

OffsetRule OffsetRule::geometric(double scale, double base, double shift, double power) {
  OffsetRule r;
  r.kind = Kind::Geometric;
  r.scale = scale;
  r.base = base;
  r.shift = shift;
  r.power = power;
  r.validate();
  return r;
}

void OffsetRule::validate() const {
  switch (kind) {
    case Kind::List:
      if (values.empty()) throw ArgumentError("offset list must not be empty");
      for (double v : values)
        if (!std::isfinite(v)) throw ArgumentError("offset list entries must be finite");
      break;
    case Kind::Arithmetic:
      if (!std::isfinite(start) || !std::isfinite(step))
        throw ArgumentError("arithmetic offsets need finite start and step");
      break;
    case Kind::Geometric:
      if (!(base > 0.0) || !std::isfinite(base)) throw ArgumentError("geometric base must be positive");
      if (!std::isfinite(scale) || !std::isfinite(shift) || !std::isfinite(power))
        throw ArgumentError("geometric offset parameters must be finite");
      break;
  }
}

ExtendedReal OffsetRule::extended(std::size_t j) const {
  switch (kind) {
    case Kind::List:
      return ExtendedReal::from(values[std::min(j == 0 ? 0 : j - 1, values.size() - 1)]);
    case Kind::Arithmetic:
      return ExtendedReal::from(start + step * static_cast<double>(j));
    case Kind::Geometric: {
      const double e = static_cast<double>(j) + shift;
      ExtendedReal p;
      if (e >= 0.0 && e == std::floor(e)) {
        p = ext_pow(base, static_cast<std::uint64_t>(e));
      } else {
        const double l = e * std::log2(base);
        const double whole = std::floor(l);
        p = ExtendedReal::from(std::exp2(l - whole));
        p.exponent += static_cast<std::int64_t>(whole);
      }
      const double denom = power == 0.0 ? 1.0 : std::pow(static_cast<double>(j), power);
      return p * ExtendedReal::from(scale / denom);
    }
  }
  return {};
}

MapSequence::MapSequence(Space space, double c, std::function<ContractionMap(std::size_t)> maps,
                         Envelope envelope)
    : space_(space), c_(c), maps_(std::move(maps)), envelope_(std::move(envelope)) {
  if (!(c_ > 0.0 && c_ < 1.0)) throw ArgumentError("contraction factor must lie in (0,1)");
  if (!maps_) throw ArgumentError("map sequence needs a generator");
  envelope_.validate();
}

MapSequence MapSequence::affine(double c, OffsetRule offsets, Envelope envelope) {
  offsets.validate();
  MapSequence seq(
      Space::real_line(), c,
      [c, offsets](std::size_t j) { return ContractionMap::affine1d(c, (1.0 - c) * offsets.at(j)); },
      std::move(envelope));
  seq.offsets_ = std::move(offsets);
  return seq;
}

ContractionMap MapSequence::at(std::size_t j) const { return maps_(j); }

namespace {
void check_range(std::size_t first, std::size_t last) {
  if (first == 0) throw ArgumentError("sequence indices start at 1");
  if (first > last) throw ArgumentError("composition range needs first <= last");
}
}  // namespace

Point compose_range(const MapSequence& seq, std::size_t first, std::size_t last, const Point& y) {
  check_range(first, last);
  Point p = y;
  for (std::size_t k = last + 1; k-- > first;) p = seq.at(k)(p);
  return p;
}

Point compose_range_stable(const MapSequence& seq, std::size_t first, std::size_t last,
                           const Point& y) {
  check_range(first, last);
  const auto& offsets = seq.affine_offsets();
  if (!offsets) return compose_range(seq, first, last, y);
  const std::size_t m = first;
  const std::size_t n = last - first;
  const double c = seq.uniform_c();
  const ExtendedReal step = ExtendedReal::from(c);
  ExtendedReal weight = ExtendedReal::from(1.0);
  CompensatedSum sum;
  for (std::size_t j = 0; j <= n; ++j) {
    sum.add((weight * offsets->extended(m + j)).to_double());
    weight *= step;
  }
  return {weight.to_double() * y[0] + (1.0 - c) * sum.value(), 0.0};
}

double SummabilityCertificate::tail(std::size_t n) const { return envelope.tail(n); }

double SummabilityCertificate::tail_from(const Point& y, std::size_t n) const {
  const double shift = euclidean(envelope.base_point, y);
  if (shift == 0.0) return tail(n);
  return tail(n) + shift * std::pow(c, static_cast<double>(n)) / (1.0 - c);
}

SummabilityResult check_summability(const MapSequence& seq) {
  const Envelope& env = seq.envelope();
  const double c = seq.uniform_c();
  const Point x = env.base_point;
  std::vector<double> terms;
  std::vector<double> partial;
  terms.reserve(env.probe_depth);
  double running = 0.0;
  for (std::size_t j = 1; j <= env.probe_depth; ++j) {
    const ContractionMap f = seq.at(j);
    if (f.lipschitz() > c) {
      throw ArgumentError("map " + std::to_string(j) + " has Lipschitz constant above c");
    }
    Point z;
    if (f.closed_form_fixed_point()) {
      z = *f.closed_form_fixed_point();
    } else {
      const double scale = std::max(1.0, euclidean(f(x), x) / (1.0 - c));
      z = fixed_point(f, c, 1e-12 * scale, x).point;
    }
    const double fixed_err = collage_bounds(f, c, z, z).distance_bound;
    const double term = std::pow(c, static_cast<double>(j)) * (euclidean(x, z) + fixed_err);
    terms.push_back(term);
    running += term;
    partial.push_back(running);
  }

  const AuditOutcome audit = audit_terms(env, terms);
  if (!audit.ok) {
    return DivergenceReport{audit.first_violation, audit.observed, audit.allowed, std::move(terms),
                            std::move(partial)};
  }
  SummabilityCertificate cert;
  cert.envelope = env;
  cert.c = c;
  cert.certified = env.certifying();
  if (env.mode == EnvelopeMode::ExactTail && env.dominance &&
      audit_dominance(*env.dominance, terms).ok) {
    cert.verified_dominance = env.dominance;
  }
  cert.terms = std::move(terms);
  cert.partial_sums = std::move(partial);
  return cert;
}

double rate_bound(const SummabilityCertificate& cert, std::size_t m, std::size_t n,
                  const Point& y) {
  const double c = cert.c;
  return inflate((1.0 + c) * std::pow(c, -static_cast<double>(m)) * cert.tail_from(y, m + n + 1));
}

std::size_t default_depth_cap() {
  if (const char* env = std::getenv("GIFS_DEPTH_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

std::vector<CompatiblePoint> compatible_sequence(const MapSequence& seq,
                                                 const SummabilityCertificate& cert,
                                                 std::size_t m_first, std::size_t m_last,
                                                 double tol, const Point& y,
                                                 std::size_t depth_cap) {
  if (!cert.certified) throw CertificationError("sequence has no certified envelope");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (m_first < 1 || m_last < m_first) throw ArgumentError("index range must satisfy 1 <= first <= last");
  if (depth_cap == 0) depth_cap = default_depth_cap();

  std::vector<CompatiblePoint> out;
  for (std::size_t m = m_first; m <= m_last; ++m) {
    auto bound = [&](std::size_t n) { return rate_bound(cert, m, n, y); };
    std::size_t n = 0;
    if (bound(0) > tol) {
      std::size_t hi = 1;
      while (bound(hi) > tol) {
        if (hi >= depth_cap) {
          throw CapExceededError("certified depth exceeds the depth cap", depth_cap,
                                 bound(depth_cap));
        }
        hi = std::min(hi * 2, depth_cap);
      }
      std::size_t lo = hi / 2;  // bound(lo) > tol
      while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (bound(mid) <= tol) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      n = hi;
    }
    out.push_back({m, compose_range_stable(seq, m, m + n, y), n, bound(n)});
  }
  return out;
}

CompatibilityCheck recursive_compatibility_check(const MapSequence& seq,
                                                 const SummabilityCertificate& cert, std::size_t m,
                                                 double tol, const Point& y) {
  const auto xs = compatible_sequence(seq, cert, m, m + 1, tol / 3.0, y);
  const double residual = euclidean(seq.at(m)(xs[1].point), xs[0].point);
  return {residual <= tol, residual};
}

std::optional<GeometricRate> exp_rate_certificate(const SummabilityCertificate& cert) {
  if (!cert.certified) return std::nullopt;
  if (cert.envelope.mode == EnvelopeMode::Geometric) {
    return GeometricRate{cert.envelope.constant, cert.envelope.rate};
  }
  return cert.verified_dominance;
}

}  // namespace gifs
