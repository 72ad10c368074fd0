#include <string>
#include <vector>

#include "gifs/error.hpp"
#include "gifs/spec.hpp"

namespace gifs::spec {

namespace {

const char* kCantor = R"({
  "name": "cantor",
  "space": {"kind": "real-interval", "lo": 0, "hi": 1},
  "uniform_c": 0.3333333333333333,
  "maps": [
    {"symbol": 0, "kind": "affine1d", "slope": 0.3333333333333333, "offset": 0},
    {"symbol": 1, "kind": "affine1d", "slope": 0.3333333333333333, "offset": 0.6666666666666666}
  ],
  "tree": {"kind": "full", "alphabet": [0, 1]},
  "certificate": {"mode": "geometric", "constant": 1, "rate": 0.3333333333333333,
                  "base_point": [0], "probe_depth": 64}
})";

const char* kContfrac = R"({
  "name": "contfrac",
  "space": {"kind": "complex-disk"},
  "uniform_c": 0.8,
  "maps": {"kind": "moebius-digit"},
  "tree": {"kind": "sum-bounded", "alpha": "@ALPHA@"},
  "certificate": {"mode": "geometric", "constant": 0.5, "rate": 0.8,
                  "base_point": [0.5, 0], "probe_depth": 64}
})";

const char* kOneDim = R"({
  "name": "1dimex",
  "space": {"kind": "real-line"},
  "uniform_c": 0.5,
  "maps": {"kind": "affine-sequence",
           "offsets": {"rule": "geometric", "scale": 1, "base": 2, "shift": 1, "power": 0}},
  "tree": {"kind": "product", "indexed": true},
  "certificate": {"mode": "geometric", "constant": 1, "rate": 0.75,
                  "base_point": [0], "probe_depth": 64}
})";

const char* kPolyFast = R"({
  "name": "polyfastconvexample",
  "space": {"kind": "real-line"},
  "uniform_c": 0.5,
  "maps": {"kind": "affine-sequence",
           "offsets": {"rule": "geometric", "scale": 1, "base": 2, "shift": 0, "power": @POWER@}},
  "tree": {"kind": "product", "indexed": true},
  "certificate": {"mode": "power_law", "constant": 1, "exponent": @EXPONENT@,
                  "base_point": [0], "probe_depth": 64}
})";

const char* kUnbounded = R"({
  "name": "unboundedex",
  "space": {"kind": "real-line"},
  "uniform_c": 0.5,
  "maps": {"kind": "affine-sequence", "offsets": {"rule": "arithmetic", "start": 0, "step": 1}},
  "tree": {"kind": "product", "indexed": true},
  "certificate": {"mode": "geometric", "constant": 1, "rate": 0.75,
                  "base_point": [0], "probe_depth": 64}
})";

std::string replaced(std::string text, const std::string& key, const std::string& value) {
  for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
  return text;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"cantor", "contfrac", "1dimex", "polyfastconvexample", "unboundedex"};
}

std::string preset(const std::string& name, const std::string& parameter) {
  if (name == "cantor") return kCantor;
  if (name == "contfrac") {
    const std::string alpha = parameter.empty() ? "2.5" : parameter;
    Rational::parse(alpha);  // reject malformed values early
    return replaced(kContfrac, "@ALPHA@", alpha);
  }
  if (name == "1dimex") return kOneDim;
  if (name == "polyfastconvexample") {
    const std::string l = parameter.empty() ? "1" : parameter;
    double exponent = 0.0;
    try {
      exponent = std::stod(l);
    } catch (const std::exception&) {
      throw ArgumentError("polyfastconvexample parameter must be a number");
    }
    if (!(exponent > 0.0)) throw ArgumentError("polyfastconvexample parameter must be positive");
    return replaced(replaced(kPolyFast, "@EXPONENT@", l), "@POWER@", std::to_string(exponent + 1.0));
  }
  if (name == "unboundedex") return kUnbounded;
  throw ArgumentError("unknown preset '" + name + "'");
}

}  // namespace gifs::spec
