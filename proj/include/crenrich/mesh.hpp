#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace crenrich
{

/// I/O failure (missing/unreadable/malformed file).  Mesh parse errors carry
/// "path:line:" prefixes.
struct IoError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Numerical failure (tolerance breach, non-finite value, degenerate input).
struct NumericalError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// A physical triangle with the affine maps needed for barycentric
/// coordinates.  Vertices keep their construction order; `orientation` records
/// the sign of the signed area (+1 = counterclockwise).  Edge j (0-based) is
/// the edge opposite vertex j, parametrized as
///   edge_point(j, t) = t * v[j+1] + (1 - t) * v[j+2]   (indices mod 3),
/// so the barycentric coordinates along it are (lambda_j, lambda_j+1,
/// lambda_j+2) = (0, t, 1-t).
class TriangleGeom
{
public:
  TriangleGeom(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
               const Eigen::Vector2d& c);

  const Eigen::Vector2d& vertex(int i) const { return v_[i]; }
  double area() const { return area_; }
  int orientation() const { return orientation_; }

  /// Barycentric coordinates of x, summing to 1 (affine, defined everywhere).
  Eigen::Vector3d barycentric(const Eigen::Vector2d& x) const;

  /// Physical point with the given barycentric coordinates.
  Eigen::Vector2d point(const Eigen::Vector3d& lambda) const;

  Eigen::Vector2d edge_point(int j, double t) const;
  double edge_length(int j) const;

  /// Smallest interior angle, in radians.
  double min_angle() const;

private:
  std::array<Eigen::Vector2d, 3> v_;
  double area_;
  int orientation_;
  Eigen::Matrix2d inv_map_; // inverse of [v1 - v0 | v2 - v0]
};

/// Triangulation of a rectangular domain.  Triangles store 0-based vertex
/// indices in counterclockwise order.
struct Mesh
{
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> triangles;
  Eigen::AlignedBox2d domain;

  TriangleGeom triangle(int i) const;

  /// Longest edge over all triangles (the mesh size h).
  double max_edge_length() const;
  double min_angle() const;
  double total_area() const;

  /// Throws NumericalError / std::out_of_range on inconsistent data
  /// (bad indices, non-finite vertices, non-positive or clockwise triangles).
  void validate() const;
};

/// Structured mesh: n x n cells, each split along the same diagonal into two
/// triangles (2*n^2 total).
Mesh uniform_mesh(const Eigen::AlignedBox2d& box, int n);

/// Unstructured mesh: Delaunay triangulation (Bowyer-Watson) of a jittered
/// point grid.  Boundary points are jittered only along their edge and the
/// corners are pinned, so the domain is covered exactly.  The triangle count
/// is 2*m^2 with m = round(sqrt(target_n / 2)), within 15% of target_n for
/// target_n >= 8.  Deterministic for a fixed seed.
Mesh jittered_delaunay_mesh(const Eigen::AlignedBox2d& box, int target_n,
                            std::uint64_t seed);

/// Plain-text mesh format:
///   line 1:            <n_vertices> <n_triangles>
///   next n_vertices:   <x> <y>
///   next n_triangles:  <i0> <i1> <i2>      (0-based)
/// Coordinates are written with 17 significant digits.
Mesh read_mesh(const std::string& path);
void write_mesh(const std::string& path, const Mesh& mesh);

} // namespace crenrich
