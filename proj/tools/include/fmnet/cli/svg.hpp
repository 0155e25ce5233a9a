#pragma once

#include <span>
#include <string>

#include "fmnet/charges.hpp"
#include "fmnet/quadtree.hpp"
#include "fmnet/spatial_graph.hpp"

namespace fmnet::cli {

/// Minimal SVG builder in domain coordinates (y up), mapped onto a square
/// canvas. Numbers are printed with fixed precision so output is stable.
class SvgCanvas {
 public:
  explicit SvgCanvas(const Box& domain, double pixels = 640.0);

  void frame();
  void line(Vec2 a, Vec2 b, const std::string& cls, const std::string& stroke, double width);
  void circle(Vec2 c, double radius_px, const std::string& cls, const std::string& fill, double opacity = 1.0);
  void rect(const Box& box, const std::string& cls, const std::string& stroke);

  std::string finish() const;

 private:
  double px(double x) const;
  double py(double y) const;

  Box domain_;
  double pixels_;
  double margin_ = 10.0;
  std::string body_;
};

/// Charges (goal blue, obstacle red, opacity by relative magnitude) and a
/// short arrow per robot along its direction of motion.
std::string render_field(const Box& domain, std::span<const PointCharge> charges, std::span<const Vec2> robots,
                         std::span<const FieldSample> field);

/// Leaf outlines of the tree plus its points.
std::string render_tree(const QuadTree& tree);

/// Edges coloured by label, vertices coloured by betweenness.
std::string render_graph(const Box& domain, const SpatialGraph& g, std::span<const double> betweenness);

/// Hex colour for t in [0, 1] on a dark-blue to yellow ramp.
std::string ramp_color(double t);

}  // namespace fmnet::cli
