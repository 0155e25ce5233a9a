#include "fmnet/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace fmnet::cli {

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

const char* label_color(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::intra_leaf: return "#1f3fff";
    case EdgeLabel::adjacent_leaf: return "#00c8e0";
    case EdgeLabel::isolation_patch: return "#e01010";
    case EdgeLabel::component_patch: return "#ff9900";
    case EdgeLabel::plain: return "#404040";
  }
  return "#404040";
}

}  // namespace

SvgCanvas::SvgCanvas(const Box& domain, double pixels) : domain_(domain), pixels_(pixels) {}

double SvgCanvas::px(double x) const { return margin_ + (x - domain_.x0()) / domain_.side() * pixels_; }
double SvgCanvas::py(double y) const { return margin_ + (domain_.y1() - y) / domain_.side() * pixels_; }

void SvgCanvas::frame() { rect(domain_, "frame", "#000000"); }

void SvgCanvas::line(Vec2 a, Vec2 b, const std::string& cls, const std::string& stroke, double width) {
  body_ += fmt("<line class=\"%s\" x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
               cls.c_str(), px(a.x), py(a.y), px(b.x), py(b.y), stroke.c_str(), width);
}

void SvgCanvas::circle(Vec2 c, double radius_px, const std::string& cls, const std::string& fill, double opacity) {
  body_ += fmt("<circle class=\"%s\" cx=\"%.3f\" cy=\"%.3f\" r=\"%.2f\" fill=\"%s\" fill-opacity=\"%.3f\"/>\n",
               cls.c_str(), px(c.x), py(c.y), radius_px, fill.c_str(), opacity);
}

void SvgCanvas::rect(const Box& box, const std::string& cls, const std::string& stroke) {
  const double w = box.side() / domain_.side() * pixels_;
  body_ += fmt("<rect class=\"%s\" x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"none\" stroke=\"%s\" stroke-width=\"1\"/>\n",
               cls.c_str(), px(box.x0()), py(box.y1()), w, w, stroke.c_str());
}

std::string SvgCanvas::finish() const {
  const double size = pixels_ + 2 * margin_;
  return fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
             size, size, size, size) +
         body_ + "</svg>\n";
}

std::string ramp_color(double t) {
  // A few stops of a viridis-like ramp, linearly interpolated.
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(i);
  std::array<int, 3> rgb{};
  for (int k = 0; k < 3; ++k) rgb[k] = static_cast<int>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
  return fmt("#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
}

std::string render_field(const Box& domain, std::span<const PointCharge> charges, std::span<const Vec2> robots,
                         std::span<const FieldSample> field) {
  SvgCanvas svg(domain);
  svg.frame();
  const double arrow = 0.04 * domain.half_width;
  for (std::size_t i = 0; i < robots.size(); ++i) {
    svg.circle(robots[i], 1.2, "robot", "#000000");
    if (i >= field.size()) continue;
    const double len = norm(field[i].gradient);
    if (len < 1e-12) continue;
    svg.line(robots[i], robots[i] - (arrow / len) * field[i].gradient, "vector", "#000000", 0.8);
  }
  double biggest = 0.0;
  for (const auto& q : charges) biggest = std::max(biggest, std::abs(q.strength));
  for (const auto& q : charges) {
    const char* color = q.kind == ChargeKind::goal ? "#1f3fff" : q.kind == ChargeKind::obstacle ? "#e01010" : "#808080";
    const double opacity = biggest > 0.0 ? std::abs(q.strength) / biggest : 1.0;
    svg.circle(q.position, 7.0, std::string("charge ") + to_string(q.kind).data(), color, opacity);
  }
  return svg.finish();
}

std::string render_tree(const QuadTree& tree) {
  SvgCanvas svg(tree.root_box());
  svg.frame();
  if (tree.size() == 0) return svg.finish();
  for (auto leaf : tree.leaves()) svg.rect(tree.node(leaf).box, "leaf", "#1f3fff");
  for (const auto& p : tree.points()) svg.circle(p, 1.5, "robot", "#000000");
  return svg.finish();
}

std::string render_graph(const Box& domain, const SpatialGraph& g, std::span<const double> betweenness) {
  SvgCanvas svg(domain);
  svg.frame();
  const auto pos = g.positions();
  for (const auto& e : g.edges()) svg.line(pos[e.u], pos[e.v], "edge", label_color(e.label), 0.8);
  double top = 0.0;
  for (double b : betweenness) top = std::max(top, b);
  for (std::size_t v = 0; v < pos.size(); ++v) {
    const double t = v < betweenness.size() && top > 0.0 ? betweenness[v] / top : 0.0;
    svg.circle(pos[v], 2.5, "vertex", ramp_color(t));
  }
  return svg.finish();
}

}  // namespace fmnet::cli
