#pragma once

#include <string>
#include <vector>

#include "system.hpp"

namespace mcf {

struct FigureOptions {
  int depth = 1;
  int digit_cap = 2;    // per-level cap for unbounded digit alphabets
  double frame = 4.0;   // clip frame for dual-domain figures
  int size_px = 480;
  bool dual = false;
  bool labels = true;
};

struct FigureCell {
  std::string label;
  std::vector<Point> polygon;  // counter-clockwise, planar
  bool tail = false;           // unbounded-digit remainder region
};

// Planar (n = 2) partition cells at the requested depth, with exact vertex
// coordinates from the cylinder maps (or halfplane clipping for Markov
// first-level cells and dual-domain wedges).
std::vector<FigureCell> figure_cells(const FibredSystem& s,
                                     const FigureOptions& opt);

std::string figure_svg(const FibredSystem& s, const FigureOptions& opt);

double polygon_area(const std::vector<Point>& poly);

}  // namespace mcf
