#include "quadland/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace quadland {

void ArenaBounds::validate() const {
  auto check = [](double lo, double hi, const char* axis) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw std::invalid_argument(std::string("arena ") + axis +
                                  " range must satisfy min < max");
    }
  };
  check(x_min, x_max, "x");
  check(y_min, y_max, "y");
  check(z_min, z_max, "z");
}

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw std::invalid_argument("polygon needs at least three vertices");
  }
}

Point2 Polygon::centroid() const {
  // Area-weighted (shoelace) centroid.
  double area2 = 0.0;
  Point2 acc = Point2::Zero();
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % n];
    const double cross = a.x() * b.y() - b.x() * a.y();
    area2 += cross;
    acc += (a + b) * cross;
  }
  return acc / (3.0 * area2);
}

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b, double tol) {
  const double len = (b - a).norm();
  if (std::abs(cross(a, b, p)) > tol * std::max(1.0, len)) return false;
  return p.x() >= std::min(a.x(), b.x()) - tol &&
         p.x() <= std::max(a.x(), b.x()) + tol &&
         p.y() >= std::min(a.y(), b.y()) - tol &&
         p.y() <= std::max(a.y(), b.y()) + tol;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c,
                        const Point2& d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return on_segment(a, c, d, 0.0) || on_segment(b, c, d, 0.0) ||
         on_segment(c, a, b, 0.0) || on_segment(d, a, b, 0.0);
}

}  // namespace

bool Polygon::on_boundary(const Point2& p, double tol) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (on_segment(p, vertices_[i], vertices_[(i + 1) % n], tol)) return true;
  }
  return false;
}

bool Polygon::contains(const Point2& p) const {
  if (on_boundary(p)) return false;
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x_cross =
          a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool Polygon::is_simple() const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(vertices_[i], vertices_[(i + 1) % n],
                             vertices_[j], vertices_[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace quadland
