#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gifs/envelope.hpp"
#include "gifs/ifs.hpp"
#include "gifs/metric.hpp"
#include "gifs/nonauto.hpp"
#include "gifs/tree.hpp"

namespace gifs::spec {

struct MapEntry {
  Symbol symbol = 0;
  std::string kind;                 // affine1d | affine2d | moebius-digit
  double slope = 0.0;               // affine1d
  double offset = 0.0;
  std::array<double, 4> matrix{};   // affine2d, row-major
  Point shift{};
  long long digit = 0;              // moebius-digit
  bool operator==(const MapEntry&) const = default;
};

/// Either an explicit table or a generator covering every positive symbol.
struct FamilySpec {
  std::string kind = "table";       // table | moebius-digit | affine-sequence
  std::vector<MapEntry> entries;    // table
  std::optional<OffsetRule> offsets;  // affine-sequence
  bool operator==(const FamilySpec&) const = default;
};

struct TreeSpec {
  std::string kind = "full";        // full | product | sum-bounded | table
  std::vector<Symbol> alphabet;
  std::vector<std::vector<Symbol>> levels;
  std::size_t period = 1;
  bool indexed = false;
  std::string alpha;
  std::vector<std::pair<Word, std::vector<Symbol>>> rows;
  std::size_t depth = 0;
  std::vector<Symbol> fallback;
  bool operator==(const TreeSpec&) const = default;
};

struct CertificateSpec {
  std::string mode = "geometric";   // geometric | power_law | empirical
  double constant = 1.0;
  double rate = 0.5;
  double exponent = 1.0;
  Point base_point{};
  std::size_t probe_depth = 64;
  bool operator==(const CertificateSpec&) const = default;
};

struct IFSSpec {
  std::string name;
  Space space;
  double uniform_c = 0.5;
  FamilySpec maps;
  TreeSpec tree;
  CertificateSpec certificate;
  std::vector<Point> seeds;         // empty means {base_point}
  bool operator==(const IFSSpec&) const = default;
};

/// Validates a JSON document; throws SpecError with the JSON pointer of the first problem.
IFSSpec parse_spec(const std::string& text);
std::string serialize(const IFSSpec& spec);

struct Built {
  GeneralIFS ifs;
  Envelope envelope;
  std::vector<Point> seeds;
  std::optional<MapSequence> sequence;  // affine-sequence families over an indexed path
};

Built build(const IFSSpec& spec);

/// Names accepted by preset().
std::vector<std::string> preset_names();
/// Embedded spec text; contfrac takes alpha (decimal), polyfastconvexample takes l.
std::string preset(const std::string& name, const std::string& parameter = "");

}  // namespace gifs::spec
