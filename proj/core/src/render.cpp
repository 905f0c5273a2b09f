#include "quadland/render.hpp"

#include <fmt/core.h>

#include <cmath>

namespace quadland {

namespace {

constexpr double kArmHalfLength = 0.07;  // m, drawn size only
constexpr double kThrustTick = 0.05;

class Canvas {
 public:
  Canvas(const ArenaBounds& arena, double scale)
      : arena_(arena), scale_(scale) {}

  double px(double x) const { return kMargin + (x - arena_.x_min) * scale_; }
  double py(double z) const { return kMargin + (arena_.z_max - z) * scale_; }
  double width() const { return 2 * kMargin + (arena_.x_max - arena_.x_min) * scale_; }
  double height() const { return 2 * kMargin + (arena_.z_max - arena_.z_min) * scale_; }

 private:
  static constexpr double kMargin = 20.0;
  ArenaBounds arena_;
  double scale_;
};

// Vehicle drawn as its rotor arm (body x-axis) with a tick along body z.
std::string pose_glyph(const Canvas& c, double x, double z, double pitch,
                       const char* color) {
  const double ax = std::cos(pitch) * kArmHalfLength;
  const double az = -std::sin(pitch) * kArmHalfLength;
  const double tx = std::sin(pitch) * kThrustTick;
  const double tz = std::cos(pitch) * kThrustTick;
  return fmt::format(
      "  <g class=\"pose\" stroke=\"{0}\" stroke-width=\"2\">"
      "<line x1=\"{1:.2f}\" y1=\"{2:.2f}\" x2=\"{3:.2f}\" y2=\"{4:.2f}\"/>"
      "<line x1=\"{5:.2f}\" y1=\"{6:.2f}\" x2=\"{7:.2f}\" y2=\"{8:.2f}\"/></g>\n",
      color, c.px(x - ax), c.py(z - az), c.px(x + ax), c.py(z + az), c.px(x),
      c.py(z), c.px(x + tx), c.py(z + tz));
}

}  // namespace

std::string render_svg(const RenderScene& scene) {
  const Canvas c(scene.arena, scene.pixels_per_meter);
  const ArenaBounds& a = scene.arena;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      c.width(), c.height(), c.width(), c.height());
  svg += fmt::format(
      "  <rect class=\"arena\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
      "height=\"{:.2f}\" fill=\"white\" stroke=\"gray\"/>\n",
      c.px(a.x_min), c.py(a.z_max), c.px(a.x_max) - c.px(a.x_min),
      c.py(a.z_min) - c.py(a.z_max));

  if (scene.platform) {
    std::string points;
    for (const Point2& v : scene.platform->vertices()) {
      points += fmt::format("{:.2f},{:.2f} ", c.px(v.x()), c.py(v.y()));
    }
    points.pop_back();
    svg += fmt::format(
        "  <polygon class=\"platform\" points=\"{}\" fill=\"#bbbbbb\" "
        "stroke=\"black\"/>\n",
        points);
  }

  const Point2& g = scene.goal;
  const Point2& h = scene.goal_halfwidth;
  svg += fmt::format(
      "  <rect class=\"goal-box\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
      "height=\"{:.2f}\" fill=\"none\" stroke=\"green\" "
      "stroke-dasharray=\"4 2\"/>\n",
      c.px(g.x() - h.x()), c.py(g.y() + h.y()),
      c.px(g.x() + h.x()) - c.px(g.x() - h.x()),
      c.py(g.y() - h.y()) - c.py(g.y() + h.y()));
  svg += pose_glyph(c, g.x(), g.y(), scene.goal_pitch, "black");

  const auto& traj = scene.trajectory;
  if (!traj.empty()) {
    std::string points;
    for (const TrajectoryRow& r : traj) {
      points += fmt::format("{:.2f},{:.2f} ", c.px(r.position.x()),
                            c.py(r.position.z()));
    }
    points.pop_back();
    svg += fmt::format(
        "  <polyline class=\"path\" points=\"{}\" fill=\"none\" "
        "stroke=\"#d04040\" stroke-width=\"1\" stroke-opacity=\"0.6\"/>\n",
        points);
    const std::size_t stride =
        static_cast<std::size_t>(std::max(1, scene.glyph_stride));
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (i % stride == 0 || i + 1 == traj.size()) {
        svg += pose_glyph(c, traj[i].position.x(), traj[i].position.z(),
                          traj[i].pitch, "#d04040");
      }
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace quadland
