#ifndef QUADLAND_GEOMETRY_HPP_
#define QUADLAND_GEOMETRY_HPP_

#include <Eigen/Core>

#include <span>
#include <vector>

namespace quadland {

using Point2 = Eigen::Vector2d;

// Axis-aligned flight volume, meters. Defaults match the physical arena.
struct ArenaBounds {
  double x_min = -3.4, x_max = 3.4;
  double y_min = -1.4, y_max = 1.4;
  double z_min = 0.0, z_max = 2.4;

  // Throws std::invalid_argument for empty or non-finite ranges.
  void validate() const;
};

// Polygon in the xz-plane; vertices in order, implicitly closed.
class Polygon {
 public:
  Polygon() = default;
  // Throws std::invalid_argument for fewer than three vertices.
  explicit Polygon(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  Point2 centroid() const;

  // Even-odd interior test. Points on an edge count as outside.
  bool contains(const Point2& p) const;
  bool on_boundary(const Point2& p, double tol = 1e-12) const;
  bool is_simple() const;

 private:
  std::vector<Point2> vertices_;
};

}  // namespace quadland

#endif  // QUADLAND_GEOMETRY_HPP_
