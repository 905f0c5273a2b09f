#ifndef QUADLAND_RENDER_HPP_
#define QUADLAND_RENDER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "quadland/geometry.hpp"
#include "quadland/trajectory.hpp"

namespace quadland {

struct RenderScene {
  ArenaBounds arena;
  std::optional<Polygon> platform;
  Point2 goal{0.0, 1.25};
  double goal_pitch = 0.0;
  Point2 goal_halfwidth{0.10, 0.10};
  std::vector<TrajectoryRow> trajectory;
  int glyph_stride = 5;        // draw every n-th pose plus the last one
  double pixels_per_meter = 150.0;
};

// Static xz-plane overlay: arena outline, platform polygon, goal box and
// goal pose, trajectory path and vehicle pose glyphs.
std::string render_svg(const RenderScene& scene);

}  // namespace quadland

#endif  // QUADLAND_RENDER_HPP_
