#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "gifs/limitset.hpp"

namespace gifs::io {

/// Shortest text that reads back to the same double.
std::string format_double(double v);

/// Header line, then one point per line: coordinates and the word label (symbols joined by '.').
void write_csv(std::ostream& out, const PointCloud& cloud);
/// {"points": [...], "labels": [...], "error_bound": e, "depth": n, "root": [...]}.
void write_json(std::ostream& out, const PointCloud& cloud, double error_bound, std::size_t depth,
                const Word& root);
/// Reads CSV or JSON (chosen by the first non-blank character).
/// Headerless CSV lines hold one or two coordinates, or x,y,word.
PointCloud read_cloud(std::istream& in);
PointCloud read_cloud_file(const std::string& path);

struct Viewport {
  double x_min, x_max, y_min, y_max;
};

/// Bounding box padded by 5%; degenerate axes get a unit window.
Viewport fit_viewport(const PointCloud& cloud);
/// Binary P5 raster, px by px, white where at least one point lands.
void write_pgm(std::ostream& out, const PointCloud& cloud, int px, const Viewport& view);

}  // namespace gifs::io
