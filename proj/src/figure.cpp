#include "figure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mcf {

namespace {

struct Halfplane {
  double a, b, c;  // keep a*x + b*y <= c
};

std::vector<Point> clip(const std::vector<Point>& poly, const Halfplane& h) {
  std::vector<Point> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const double dp = h.a * p[0] + h.b * p[1] - h.c;
    const double dq = h.a * q[0] + h.b * q[1] - h.c;
    if (dp <= 1e-12) out.push_back(p);
    if ((dp < -1e-12 && dq > 1e-12) || (dp > 1e-12 && dq < -1e-12)) {
      const double t = dp / (dp - dq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

std::vector<Point> clip_all(std::vector<Point> poly,
                            const std::vector<Halfplane>& planes) {
  for (const auto& h : planes) {
    poly = clip(poly, h);
    if (poly.size() < 3) return {};
  }
  return poly;
}

std::string join_label(const DigitString& digits) {
  bool compact = true;
  for (const Digit& d : digits)
    if (d.kind == Digit::Kind::pair ||
        (d.kind == Digit::Kind::integer && d.value > 9))
      compact = false;
  std::string out;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (i && !compact) out += ",";
    out += digits[i].str();
  }
  return out;
}

// Cells of a full system: exact vertex images of the domain simplex under
// each cylinder map.
void full_system_cells(const FibredSystem& s, const std::vector<Digit>& level,
                       int depth, DigitString& prefix,
                       std::vector<FigureCell>& out) {
  if (static_cast<int>(prefix.size()) == depth) {
    CylinderSpec cyl = cylinder(s, prefix);
    out.push_back({join_label(prefix), cylinder_vertices(s, cyl), false});
    return;
  }
  for (const Digit& d : level) {
    prefix.push_back(d);
    full_system_cells(s, level, depth, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Point> domain_triangle() {
  return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};
}

std::vector<FigureCell> primal_cells(const FibredSystem& s,
                                     const FigureOptions& opt) {
  const std::string& nm = s.name();
  std::vector<FigureCell> out;

  if (nm == "selmer") {
    // Ambient first-level cells (the unrestricted partition of the simplex).
    const auto tri = domain_triangle();
    std::vector<FigureCell> level1 = {
        {"0", clip_all(tri, {{1, 1, 1}}), false},
        {"1", clip_all(tri, {{-1, -1, -1}, {0, 1, 0.5}}), false},
        {"2", clip_all(tri, {{0, -1, -0.5}}), false},
    };
    if (opt.depth == 1) return level1;
    // Deeper cells exist over the restricted alphabet only; keep the 0 cell.
    out.push_back(level1[0]);
    DigitString prefix;
    full_system_cells(s, {Digit::integer(1), Digit::integer(2)}, opt.depth,
                      prefix, out);
    return out;
  }
  if (nm == "brun") {
    if (opt.depth != 1)
      fail(ErrorCode::invalid_argument,
           "brun cells beyond depth 1 need the Markov structure");
    const auto tri = domain_triangle();
    return {
        {"0", clip_all(tri, {{1, 0, 0.5}}), false},
        {"1", clip_all(tri, {{-1, 0, -0.5}, {1, 1, 1}}), false},
        {"2", clip_all(tri, {{-1, -1, -1}}), false},
    };
  }

  std::vector<Digit> level;
  if (nm == "gs" || nm == "jump(flipflop)") {
    level = s.probe_digits(opt.digit_cap);
  } else if (nm == "brun-mult") {
    level = s.probe_digits(opt.digit_cap);
  } else if (nm == "poincare" || nm == "flipflop") {
    level = s.probe_digits(0);
  } else {
    fail(ErrorCode::invalid_argument, nm + ": no planar cell layout");
  }
  DigitString prefix;
  full_system_cells(s, level, opt.depth, prefix, out);

  if (opt.depth == 1 && (nm == "gs" || nm == "jump(flipflop)")) {
    const double k = opt.digit_cap + 1.0;
    const double t = 1.0 / (k + 1.0);
    out.push_back({"...", {{0.0, 0.0}, {1.0, 0.0}, {t, t}}, true});
  }
  if (opt.depth == 1 && nm == "brun-mult") {
    const double t = 1.0 / (opt.digit_cap + 1.0);
    out.push_back({"...", {{0.0, 0.0}, {t, 0.0}, {t, t}}, true});
  }
  return out;
}

std::vector<FigureCell> dual_cells(const FibredSystem& s,
                                   const FigureOptions& opt) {
  if (opt.depth != 1)
    fail(ErrorCode::invalid_argument, "dual figures draw the 1-time partition");
  const std::string& nm = s.name();
  const double f = opt.frame;
  auto rect = [&](double w, double h) -> std::vector<Point> {
    return {{0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}};
  };
  std::vector<FigureCell> out;
  if (nm == "gs") {
    const auto frame = rect(f, 1.0);
    for (int k = 0; k <= opt.digit_cap; ++k) {
      auto poly = clip_all(
          frame, {{-1.0, static_cast<double>(k), 0.0},
                  {1.0, -static_cast<double>(k + 1), 0.0}});
      if (!poly.empty()) out.push_back({std::to_string(k), poly, false});
    }
    auto tail = clip_all(frame, {{-1.0, opt.digit_cap + 1.0, 0.0}});
    if (!tail.empty()) out.push_back({"...", tail, true});
    return out;
  }
  if (nm == "selmer") {
    const auto frame = rect(f, f);
    out.push_back({"1", clip_all(frame, {{1, -1, 0}}), false});
    out.push_back({"2", clip_all(frame, {{-1, 1, 0}}), false});
    return out;
  }
  if (nm == "brun") {
    const auto frame = rect(f, 1.0);
    out.push_back({"0", clip_all(frame, {{-1, 0, -1}}), false});
    out.push_back({"1", clip_all(frame, {{1, 0, 1}, {-1, 1, 0}}), false});
    out.push_back({"2", clip_all(frame, {{1, 0, 1}, {1, -1, 0}}), false});
    return out;
  }
  if (nm == "flipflop") {
    const auto frame = rect(f, f);
    out.push_back({"0", clip_all(frame, {{0, -1, -1}}), false});
    out.push_back({"1", clip_all(frame, {{0, 1, 1}}), false});
    return out;
  }
  if (nm == "poincare") {
    const auto frame = rect(f, f);
    // v = (1, y1, y2) read in sigma-increasing order.
    for (const Digit& d : s.probe_digits(0)) {
      const Permutation& sig = d.perm;
      std::vector<Halfplane> planes;
      auto coeff = [](int idx) -> Point {
        // value v_idx as (a, b, const): v1 = 1, v2 = y1, v3 = y2
        if (idx == 1) return {0.0, 0.0};
        if (idx == 2) return {1.0, 0.0};
        return {0.0, 1.0};
      };
      for (int i = 1; i < 3; ++i) {
        const Point lo = coeff(sig(i));
        const Point hi = coeff(sig(i + 1));
        const double lo_c = sig(i) == 1 ? 1.0 : 0.0;
        const double hi_c = sig(i + 1) == 1 ? 1.0 : 0.0;
        // v_{sig(i)} <= v_{sig(i+1)}
        planes.push_back(
            {lo[0] - hi[0], lo[1] - hi[1], hi_c - lo_c});
      }
      auto poly = clip_all(frame, planes);
      if (!poly.empty()) out.push_back({sig.cycle_string(), poly, false});
    }
    return out;
  }
  fail(ErrorCode::invalid_argument, nm + ": no dual partition to draw");
}

}  // namespace

double polygon_area(const std::vector<Point>& poly) {
  double a = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return std::abs(a) / 2.0;
}

std::vector<FigureCell> figure_cells(const FibredSystem& s,
                                     const FigureOptions& opt) {
  if (s.n() != 2)
    fail(ErrorCode::unsupported_dimension, "figures are planar (n = 2 only)");
  if (opt.depth < 1 || opt.depth > 3)
    fail(ErrorCode::invalid_argument, "figure depth must be 1..3");
  return opt.dual ? dual_cells(s, opt) : primal_cells(s, opt);
}

std::string figure_svg(const FibredSystem& s, const FigureOptions& opt) {
  const auto cells = figure_cells(s, opt);
  double xmax = 0, ymax = 0;
  for (const auto& c : cells)
    for (const auto& p : c.polygon) {
      xmax = std::max(xmax, p[0]);
      ymax = std::max(ymax, p[1]);
    }
  if (xmax <= 0) xmax = 1;
  if (ymax <= 0) ymax = 1;
  const double world = std::max(xmax, ymax);
  const double margin = 0.06 * opt.size_px;
  const double scale = (opt.size_px - 2 * margin) / world;
  auto px = [&](double x) { return margin + x * scale; };
  auto py = [&](double y) { return opt.size_px - margin - y * scale; };

  static const char* palette[] = {"#e8eef7", "#f7ece8", "#eef7e8",
                                  "#f7f3e2", "#efe8f7", "#e8f7f2"};
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << opt.size_px << "\" height=\"" << opt.size_px << "\">\n";
  svg << "<!-- " << s.name() << " n=2 depth=" << opt.depth
      << (opt.dual ? " dual" : "") << " -->\n";
  int color = 0;
  for (const auto& c : cells) {
    svg << "<polygon points=\"";
    for (size_t i = 0; i < c.polygon.size(); ++i) {
      if (i) svg << " ";
      svg << px(c.polygon[i][0]) << "," << py(c.polygon[i][1]);
    }
    svg << "\" fill=\"" << (c.tail ? "#f2f2f2" : palette[color++ % 6])
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  }
  if (opt.labels) {
    for (const auto& c : cells) {
      double cx = 0, cy = 0;
      for (const auto& p : c.polygon) {
        cx += p[0];
        cy += p[1];
      }
      cx /= c.polygon.size();
      cy /= c.polygon.size();
      const int font = std::max(8, 16 - 3 * (opt.depth - 1));
      svg << "<text x=\"" << px(cx) << "\" y=\"" << py(cy) + font * 0.35
          << "\" font-size=\"" << font
          << "\" font-family=\"sans-serif\" text-anchor=\"middle\">" << c.label
          << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mcf
