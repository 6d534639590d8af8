#include "crenrich/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace crenrich
{

namespace
{

double cross2(const Eigen::Vector2d& u, const Eigen::Vector2d& w)
{
  return u.x() * w.y() - u.y() * w.x();
}

} // namespace

//------------------------------------------------------------------------------
TriangleGeom::TriangleGeom(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                           const Eigen::Vector2d& c)
    : v_{a, b, c}
{
  const double signed_area = 0.5 * cross2(b - a, c - a);
  const double scale = std::max({(b - a).norm(), (c - a).norm(), (c - b).norm()});
  if (!std::isfinite(signed_area) ||
      std::abs(signed_area) <= 1e-14 * scale * scale) {
    throw NumericalError("TriangleGeom: degenerate triangle");
  }
  area_ = std::abs(signed_area);
  orientation_ = signed_area > 0.0 ? 1 : -1;

  Eigen::Matrix2d jac;
  jac.col(0) = b - a;
  jac.col(1) = c - a;
  inv_map_ = jac.inverse();
}

//------------------------------------------------------------------------------
Eigen::Vector3d TriangleGeom::barycentric(const Eigen::Vector2d& x) const
{
  const Eigen::Vector2d lc = inv_map_ * (x - v_[0]);
  return {1.0 - lc.x() - lc.y(), lc.x(), lc.y()};
}

//------------------------------------------------------------------------------
Eigen::Vector2d TriangleGeom::point(const Eigen::Vector3d& lambda) const
{
  return lambda[0] * v_[0] + lambda[1] * v_[1] + lambda[2] * v_[2];
}

//------------------------------------------------------------------------------
Eigen::Vector2d TriangleGeom::edge_point(int j, double t) const
{
  return t * v_[(j + 1) % 3] + (1.0 - t) * v_[(j + 2) % 3];
}

//------------------------------------------------------------------------------
double TriangleGeom::edge_length(int j) const
{
  return (v_[(j + 1) % 3] - v_[(j + 2) % 3]).norm();
}

//------------------------------------------------------------------------------
double TriangleGeom::min_angle() const
{
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector2d u = v_[(i + 1) % 3] - v_[i];
    const Eigen::Vector2d w = v_[(i + 2) % 3] - v_[i];
    best = std::min(best, std::atan2(std::abs(cross2(u, w)), u.dot(w)));
  }
  return best;
}

//------------------------------------------------------------------------------
TriangleGeom Mesh::triangle(int i) const
{
  const auto& t = triangles.at(static_cast<std::size_t>(i));
  return {vertices[static_cast<std::size_t>(t[0])],
          vertices[static_cast<std::size_t>(t[1])],
          vertices[static_cast<std::size_t>(t[2])]};
}

//------------------------------------------------------------------------------
double Mesh::max_edge_length() const
{
  double h = 0.0;
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) {
      h = std::max(h, (vertices[static_cast<std::size_t>(t[e])] -
                       vertices[static_cast<std::size_t>(t[(e + 1) % 3])])
                          .norm());
    }
  }
  return h;
}

//------------------------------------------------------------------------------
double Mesh::min_angle() const
{
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(triangles.size()); ++i) {
    best = std::min(best, triangle(i).min_angle());
  }
  return best;
}

//------------------------------------------------------------------------------
double Mesh::total_area() const
{
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(triangles.size()); ++i) {
    sum += triangle(i).area();
  }
  return sum;
}

//------------------------------------------------------------------------------
void Mesh::validate() const
{
  const int nv = static_cast<int>(vertices.size());
  for (const auto& v : vertices) {
    if (!v.allFinite()) {
      throw NumericalError("Mesh: non-finite vertex coordinates");
    }
  }
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) {
      if (t[e] < 0 || t[e] >= nv) {
        throw std::out_of_range("Mesh: triangle vertex index out of range");
      }
    }
    const TriangleGeom geom(vertices[static_cast<std::size_t>(t[0])],
                            vertices[static_cast<std::size_t>(t[1])],
                            vertices[static_cast<std::size_t>(t[2])]);
    if (geom.orientation() != 1) {
      throw NumericalError("Mesh: clockwise triangle");
    }
  }
}

//------------------------------------------------------------------------------
Mesh uniform_mesh(const Eigen::AlignedBox2d& box, int n)
{
  if (n < 1) {
    throw std::invalid_argument("uniform_mesh: need n >= 1 cells per side");
  }
  if (box.isEmpty()) {
    throw std::invalid_argument("uniform_mesh: empty domain box");
  }

  Mesh mesh;
  mesh.domain = box;
  const Eigen::Vector2d lo = box.min();
  const Eigen::Vector2d size = box.sizes();

  mesh.vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.vertices.emplace_back(lo.x() + size.x() * i / n,
                                 lo.y() + size.y() * j / n);
    }
  }

  mesh.triangles.reserve(static_cast<std::size_t>(2 * n * n));
  const auto idx = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int bl = idx(i, j), br = idx(i + 1, j);
      const int tl = idx(i, j + 1), tr = idx(i + 1, j + 1);
      mesh.triangles.push_back({bl, br, tr});
      mesh.triangles.push_back({bl, tr, tl});
    }
  }
  return mesh;
}

namespace
{

// Incremental Bowyer-Watson state.  Circumcircles are kept in long double to
// make the in-circle test reliable for near-degenerate configurations.
struct DelaunayTri
{
  int a, b, c;
  long double cx, cy, r2;
  bool alive;
};

DelaunayTri make_delaunay_tri(const std::vector<Eigen::Vector2d>& pts, int a,
                              int b, int c)
{
  const long double ax = pts[static_cast<std::size_t>(a)].x();
  const long double ay = pts[static_cast<std::size_t>(a)].y();
  const long double bx = pts[static_cast<std::size_t>(b)].x() - ax;
  const long double by = pts[static_cast<std::size_t>(b)].y() - ay;
  const long double cx = pts[static_cast<std::size_t>(c)].x() - ax;
  const long double cy = pts[static_cast<std::size_t>(c)].y() - ay;
  const long double d = 2.0L * (bx * cy - by * cx);
  const long double b2 = bx * bx + by * by;
  const long double c2 = cx * cx + cy * cy;
  const long double ux = (cy * b2 - by * c2) / d;
  const long double uy = (bx * c2 - cx * b2) / d;
  return {a, b, c, ax + ux, ay + uy, ux * ux + uy * uy, true};
}

// [0,1) double from the raw engine output; avoids the unspecified behavior of
// std::uniform_real_distribution so meshes are identical across platforms.
double unit_double(std::mt19937_64& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

//------------------------------------------------------------------------------
Mesh jittered_delaunay_mesh(const Eigen::AlignedBox2d& box, int target_n,
                            std::uint64_t seed)
{
  if (target_n < 2) {
    throw std::invalid_argument("jittered_delaunay_mesh: need target_n >= 2");
  }
  if (box.isEmpty()) {
    throw std::invalid_argument("jittered_delaunay_mesh: empty domain box");
  }

  const int m = std::max(1, static_cast<int>(std::lround(
                                std::sqrt(static_cast<double>(target_n) / 2.0))));
  const Eigen::Vector2d lo = box.min();
  const Eigen::Vector2d size = box.sizes();
  const double hx = size.x() / m;
  const double hy = size.y() / m;

  // Jittered grid: corners pinned, boundary points jittered along their edge
  // only, interior points jittered in both directions.
  std::mt19937_64 rng(seed);
  constexpr double amp = 0.2;
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<std::size_t>((m + 1) * (m + 1)));
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) {
      const double jx = amp * hx * (2.0 * unit_double(rng) - 1.0);
      const double jy = amp * hy * (2.0 * unit_double(rng) - 1.0);
      double x = lo.x() + size.x() * i / m;
      double y = lo.y() + size.y() * j / m;
      const bool on_vertical = (i == 0 || i == m);
      const bool on_horizontal = (j == 0 || j == m);
      if (!on_vertical) {
        x += jx;
      }
      if (!on_horizontal) {
        y += jy;
      }
      pts.emplace_back(x, y);
    }
  }

  // Super-triangle enclosing everything by a wide margin.
  const Eigen::Vector2d center = box.center();
  const double span = 8.0 * std::max(size.x(), size.y());
  std::vector<Eigen::Vector2d> work;
  work.reserve(pts.size() + 3);
  work.emplace_back(center.x() - 2.0 * span, center.y() - span);
  work.emplace_back(center.x() + 2.0 * span, center.y() - span);
  work.emplace_back(center.x(), center.y() + 2.0 * span);
  work.insert(work.end(), pts.begin(), pts.end());

  std::vector<DelaunayTri> tris;
  tris.push_back(make_delaunay_tri(work, 0, 1, 2));
  std::size_t dead = 0;

  for (int p = 3; p < static_cast<int>(work.size()); ++p) {
    const long double px = work[static_cast<std::size_t>(p)].x();
    const long double py = work[static_cast<std::size_t>(p)].y();

    // Cavity = triangles whose circumcircle contains p.  Boundary edges of the
    // cavity appear exactly once among the cavity triangles' edges.
    std::map<std::pair<int, int>, int> edge_count;
    std::vector<std::array<int, 2>> cavity_edges;
    for (auto& t : tris) {
      if (!t.alive) {
        continue;
      }
      const long double dx = px - t.cx;
      const long double dy = py - t.cy;
      if (dx * dx + dy * dy >= t.r2) {
        continue;
      }
      t.alive = false;
      ++dead;
      const std::array<std::array<int, 2>, 3> edges = {
          {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}};
      for (const auto& e : edges) {
        ++edge_count[std::minmax(e[0], e[1])];
        cavity_edges.push_back(e);
      }
    }
    for (const auto& e : cavity_edges) {
      if (edge_count[std::minmax(e[0], e[1])] != 1) {
        continue;
      }
      // Cavity edges inherited the dead triangles' counterclockwise
      // orientation, so (e0, e1, p) is counterclockwise as well.
      tris.push_back(make_delaunay_tri(work, e[0], e[1], p));
    }

    if (dead > tris.size() / 2) {
      std::erase_if(tris, [](const DelaunayTri& t) { return !t.alive; });
      dead = 0;
    }
  }

  // Drop everything attached to the super-triangle and renumber.
  Mesh mesh;
  mesh.domain = box;
  mesh.vertices = std::move(pts);
  for (const auto& t : tris) {
    if (!t.alive || t.a < 3 || t.b < 3 || t.c < 3) {
      continue;
    }
    mesh.triangles.push_back({t.a - 3, t.b - 3, t.c - 3});
  }

  mesh.validate();
  if (std::abs(mesh.total_area() - size.x() * size.y()) >
      1e-9 * size.x() * size.y()) {
    throw NumericalError("jittered_delaunay_mesh: triangulation does not cover "
                         "the domain");
  }
  return mesh;
}

//------------------------------------------------------------------------------
Mesh read_mesh(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError(path + ": cannot open mesh file");
  }

  const auto fail = [&path](int line, const std::string& msg) -> void {
    throw IoError(path + ":" + std::to_string(line) + ": " + msg);
  };
  const auto next_line = [&in](std::string& buf, int& line) -> bool {
    while (std::getline(in, buf)) {
      ++line;
      if (buf.find_first_not_of(" \t\r\n") != std::string::npos) {
        return true;
      }
    }
    return false;
  };

  int line = 0;
  std::string buf;
  if (!next_line(buf, line)) {
    fail(line + 1, "missing header (expected '<n_vertices> <n_triangles>')");
  }
  long nv = 0, nt = 0;
  {
    std::istringstream ss(buf);
    std::string extra;
    if (!(ss >> nv >> nt) || (ss >> extra) || nv < 3 || nt < 1) {
      fail(line, "malformed header (expected '<n_vertices> <n_triangles>')");
    }
  }

  Mesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!next_line(buf, line)) {
      fail(line + 1, "unexpected end of file while reading vertices");
    }
    std::istringstream ss(buf);
    double x = 0.0, y = 0.0;
    std::string extra;
    if (!(ss >> x >> y) || (ss >> extra) || !std::isfinite(x) ||
        !std::isfinite(y)) {
      fail(line, "malformed vertex (expected '<x> <y>')");
    }
    mesh.vertices.emplace_back(x, y);
  }

  mesh.triangles.reserve(static_cast<std::size_t>(nt));
  for (long i = 0; i < nt; ++i) {
    if (!next_line(buf, line)) {
      fail(line + 1, "unexpected end of file while reading triangles");
    }
    std::istringstream ss(buf);
    long a = 0, b = 0, c = 0;
    std::string extra;
    if (!(ss >> a >> b >> c) || (ss >> extra)) {
      fail(line, "malformed triangle (expected three vertex indices)");
    }
    if (a < 0 || a >= nv || b < 0 || b >= nv || c < 0 || c >= nv) {
      fail(line, "triangle vertex index out of range");
    }
    std::array<int, 3> t = {static_cast<int>(a), static_cast<int>(b),
                            static_cast<int>(c)};
    try {
      // Normalize to counterclockwise; only truly degenerate input is fatal.
      const TriangleGeom geom(mesh.vertices[static_cast<std::size_t>(t[0])],
                              mesh.vertices[static_cast<std::size_t>(t[1])],
                              mesh.vertices[static_cast<std::size_t>(t[2])]);
      if (geom.orientation() != 1) {
        std::swap(t[1], t[2]);
      }
    } catch (const NumericalError&) {
      fail(line, "degenerate triangle");
    }
    mesh.triangles.push_back(t);
  }

  if (std::string extra; in >> extra) {
    fail(line + 1, "trailing content after the last triangle");
  }

  mesh.domain.setEmpty();
  for (const auto& v : mesh.vertices) {
    mesh.domain.extend(v);
  }
  mesh.validate();
  return mesh;
}

//------------------------------------------------------------------------------
void write_mesh(const std::string& path, const Mesh& mesh)
{
  std::ofstream out(path);
  if (!out) {
    throw IoError(path + ": cannot open for writing");
  }
  out << mesh.vertices.size() << ' ' << mesh.triangles.size() << '\n';
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.x(), v.y());
    out << buf;
  }
  for (const auto& t : mesh.triangles) {
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  if (!out) {
    throw IoError(path + ": write failed");
  }
}

} // namespace crenrich
