#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crenrich/elements.hpp"
#include "crenrich/mesh.hpp"

namespace crenrich
{

/// Benchmark integrands.  Canonical domains: f1-f5 live on [0,1]^2, f6 (the
/// Franke-style blend of Gaussians) on [-1,1]^2.  A custom domain may be
/// supplied; f5 (a sphere cap) rejects domains where its radicand goes
/// negative.
struct TestFunction
{
  int id;
  std::string name; ///< "f1".."f6"
  Eigen::AlignedBox2d domain;
  PlaneFn fn;
};

TestFunction test_function(int id);
TestFunction test_function(int id, const Eigen::AlignedBox2d& domain);

struct HarnessOptions
{
  int edge_nodes = 24;  ///< nodes per 1-D DOF rule
  int area_degree = 8;  ///< triangle-rule degree for the area DOF
  int error_degree = 6; ///< triangle-rule degree for |f - p| (on 4 subtriangles)
  int threads = 0;      ///< 0 = auto; always capped by env CRENRICH_THREADS
};

/// integral over the mesh of |f - projection(f)| (unnormalized L1 distance).
/// The per-triangle error integral uses a fixed rule on the 4 midpoint
/// subtriangles of each element.  Deterministic: per-triangle contributions
/// are accumulated in index order regardless of the thread count.
double l1_error(const Mesh& mesh, ElementKind kind, const ElementParams& params,
                const PlaneFn& f, const HarnessOptions& opts = {});

struct ConvergenceSeries
{
  ElementKind kind;
  std::vector<double> errors; ///< one per mesh, same order as the mesh lists
  double slope;               ///< least-squares fit of log(err) vs log(h); NaN if < 2 meshes
};

struct ConvergenceReport
{
  int f_id = 0;
  std::string f_name;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<int> mesh_sizes; ///< triangle counts
  std::vector<double> mesh_h;  ///< max edge lengths
  std::vector<ConvergenceSeries> series;
};

double fit_slope(const std::vector<double>& h, const std::vector<double>& err);

ConvergenceReport run_convergence(const TestFunction& f,
                                  const std::vector<ElementKind>& kinds,
                                  const ElementParams& params,
                                  const std::vector<Mesh>& meshes,
                                  const HarnessOptions& opts = {});

/// CSV with header f_id,kind,alpha,beta,N,h,l1_error; one row per
/// (kind, mesh), kinds outer; 17 significant digits, LF line endings.
void emit_csv(std::ostream& out, const ConvergenceReport& report);
void emit_csv(const std::string& path, const ConvergenceReport& report);

/// Self-contained log-log SVG chart of the error curves.
void emit_svg_loglog(const std::string& path, const ConvergenceReport& report);

} // namespace crenrich
