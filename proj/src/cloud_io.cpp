#include "gifs/cloud_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "gifs/error.hpp"
#include "json.hpp"

namespace gifs::io {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string label_text(const Word& w) { return format_word(w, '.'); }

bool parse_number(const std::string& field, double& out) {
  const char* b = field.data();
  const char* e = b + field.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\r')) --e;
  if (b == e) return false;
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

Word parse_label(const std::string& text) {
  Word w;
  if (text.empty()) return w;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '.')) {
    Symbol s = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), s);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
      throw ArgumentError("malformed word label '" + text + "'");
    }
    w.push_back(s);
  }
  return w;
}

}  // namespace

void write_csv(std::ostream& out, const PointCloud& cloud) {
  out << (cloud.dimension == 2 ? "x,y" : "x") << (cloud.labels.empty() ? "" : ",word") << '\n';
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const auto& p = cloud.points[i];
    out << format_double(p[0]);
    if (cloud.dimension == 2) out << ',' << format_double(p[1]);
    if (!cloud.labels.empty()) out << ',' << label_text(cloud.labels[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const PointCloud& cloud, double error_bound, std::size_t depth,
                const Word& root) {
  json pts = json::array();
  for (const auto& p : cloud.points) {
    pts.push_back(cloud.dimension == 2 ? json::array({p[0], p[1]}) : json::array({p[0]}));
  }
  json doc;
  doc["points"] = pts;
  if (!cloud.labels.empty()) {
    json labels = json::array();
    for (const auto& w : cloud.labels) labels.push_back(w);
    doc["labels"] = labels;
  }
  doc["error_bound"] = error_bound;
  doc["depth"] = depth;
  doc["root"] = root;
  out << doc.dump() << '\n';
}

PointCloud read_cloud(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ArgumentError("cloud file is empty");
  PointCloud cloud;
  if (text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ArgumentError(std::string("invalid cloud JSON: ") + e.what());
    }
    if (!doc.contains("points") || !doc["points"].is_array()) throw ArgumentError("cloud JSON needs a points array");
    for (const auto& p : doc["points"]) {
      if (p.is_number()) {
        cloud.points.push_back({p.get<double>(), 0.0});
      } else if (p.is_array() && (p.size() == 1 || p.size() == 2) && p[0].is_number() &&
                 (p.size() == 1 || p[1].is_number())) {
        cloud.points.push_back({p[0].get<double>(), p.size() == 2 ? p[1].get<double>() : 0.0});
        if (p.size() == 2) cloud.dimension = 2;
      } else {
        throw ArgumentError("cloud points must be numbers or arrays of one or two numbers");
      }
    }
    if (doc.contains("labels")) {
      for (const auto& w : doc["labels"]) cloud.labels.push_back(w.get<Word>());
      if (cloud.labels.size() != cloud.points.size()) throw ArgumentError("labels and points differ in length");
    }
  } else {
    std::stringstream lines(text);
    std::string line;
    std::size_t lineno = 0;
    bool any_label = false;
    std::size_t coords = 0;  // from the header; 0 means infer per line
    bool labelled = false;
    bool first = true;
    while (std::getline(lines, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string f;
      while (std::getline(ss, f, ',')) fields.push_back(f);
      if (!line.empty() && line.back() == ',') fields.emplace_back();
      double probe = 0.0;
      if (first && !parse_number(fields[0], probe)) {
        first = false;
        for (const auto& name : fields) {
          if (name == "x" || name == "y") {
            ++coords;
          } else if (name == "word") {
            labelled = true;
          } else {
            throw ArgumentError("unknown CSV column '" + name + "'");
          }
        }
        if (coords == 0 || coords > 2) throw ArgumentError("CSV header needs x or x,y");
        continue;
      }
      first = false;
      const std::size_t expect_coords = coords ? coords : std::min<std::size_t>(fields.size(), 2);
      const bool has_label = coords ? labelled : fields.size() == 3;
      if (fields.size() != expect_coords + (has_label ? 1 : 0)) {
        throw ArgumentError("line " + std::to_string(lineno) + ": wrong number of fields");
      }
      Point p{0.0, 0.0};
      for (std::size_t k = 0; k < expect_coords; ++k) {
        if (!parse_number(fields[k], p[k])) {
          throw ArgumentError("line " + std::to_string(lineno) + ": expected a number");
        }
      }
      if (expect_coords == 2) cloud.dimension = 2;
      cloud.points.push_back(p);
      if (has_label) {
        cloud.labels.push_back(parse_label(fields[expect_coords]));
        any_label = true;
      } else {
        cloud.labels.emplace_back();
      }
    }
    if (!any_label) cloud.labels.clear();
  }
  if (cloud.points.empty()) throw ArgumentError("cloud has no points");
  for (const auto& p : cloud.points) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw ArgumentError("cloud coordinates must be finite");
  }
  return cloud;
}

PointCloud read_cloud_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open cloud file '" + path + "'");
  return read_cloud(in);
}

Viewport fit_viewport(const PointCloud& cloud) {
  Viewport v{cloud.points.front()[0], cloud.points.front()[0], cloud.points.front()[1],
             cloud.points.front()[1]};
  for (const auto& p : cloud.points) {
    v.x_min = std::min(v.x_min, p[0]);
    v.x_max = std::max(v.x_max, p[0]);
    v.y_min = std::min(v.y_min, p[1]);
    v.y_max = std::max(v.y_max, p[1]);
  }
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    if (span <= 0.0) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      lo -= 0.05 * span;
      hi += 0.05 * span;
    }
  };
  pad(v.x_min, v.x_max);
  pad(v.y_min, v.y_max);
  return v;
}

void write_pgm(std::ostream& out, const PointCloud& cloud, int px, const Viewport& view) {
  if (px <= 0) throw ArgumentError("raster size must be positive");
  if (!(view.x_max > view.x_min) || !(view.y_max > view.y_min)) throw ArgumentError("viewport must have positive extent");
  std::vector<unsigned char> raster(static_cast<std::size_t>(px) * px, 0);
  for (const auto& p : cloud.points) {
    const double u = (p[0] - view.x_min) / (view.x_max - view.x_min);
    const double v = (view.y_max - p[1]) / (view.y_max - view.y_min);
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) continue;
    const int col = std::min(px - 1, static_cast<int>(u * px));
    const int row = std::min(px - 1, static_cast<int>(v * px));
    raster[static_cast<std::size_t>(row) * px + col] = 255;
  }
  out << "P5\n" << px << ' ' << px << "\n255\n";
  out.write(reinterpret_cast<const char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
}

}  // namespace gifs::io
