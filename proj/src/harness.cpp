#include "crenrich/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace crenrich
{

namespace
{

Eigen::AlignedBox2d unit_box()
{
  return {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 1.0)};
}

Eigen::AlignedBox2d wide_box()
{
  return {Eigen::Vector2d(-1.0, -1.0), Eigen::Vector2d(1.0, 1.0)};
}

double franke_blend(const Eigen::Vector2d& p)
{
  // Gaussian blend on [-1,1]^2 (note the first-power y-term in the second
  // exponent).
  const double x = 9.0 * (p.x() + 1.0) / 2.0;
  const double y = 9.0 * (p.y() + 1.0) / 2.0;
  const auto sq = [](double v) { return v * v; };
  return 0.75 * std::exp(-sq(x - 2.0) / 4.0 - sq(y - 2.0) / 4.0) +
         0.75 * std::exp(-sq(x + 1.0) / 49.0 - (y + 1.0) / 10.0) +
         0.5 * std::exp(-sq(x - 7.0) / 4.0 - sq(y - 3.0) / 4.0) -
         0.2 * std::exp(-sq(x - 4.0) - sq(y - 7.0));
}

TestFunction make_test_function(int id)
{
  const auto sq = [](double v) { return v * v; };
  switch (id) {
  case 1:
    return {1, "f1", unit_box(), [](const Eigen::Vector2d& p) {
              return 1.0 / (p.squaredNorm() + 8.0);
            }};
  case 2:
    return {2, "f2", unit_box(), [](const Eigen::Vector2d& p) {
              return std::exp(p.x() + p.y());
            }};
  case 3:
    return {3, "f3", unit_box(), [](const Eigen::Vector2d& p) {
              return std::cos(2.0 * p.x() + p.y());
            }};
  case 4:
    return {4, "f4", unit_box(), [](const Eigen::Vector2d& p) {
              return std::sqrt(p.squaredNorm() + 1.0);
            }};
  case 5:
    return {5, "f5", unit_box(), [sq](const Eigen::Vector2d& p) {
              const double r2 = sq(p.x() - 0.5) + sq(p.y() - 0.5);
              return std::sqrt(64.0 - 81.0 * r2) / 9.0 - 0.5;
            }};
  case 6:
    return {6, "f6", wide_box(), franke_blend};
  default:
    throw std::invalid_argument("test_function: id must be 1..6");
  }
}

} // namespace

//------------------------------------------------------------------------------
TestFunction test_function(int id)
{
  return make_test_function(id);
}

//------------------------------------------------------------------------------
TestFunction test_function(int id, const Eigen::AlignedBox2d& domain)
{
  if (domain.isEmpty()) {
    throw std::invalid_argument("test_function: empty domain box");
  }
  TestFunction f = make_test_function(id);
  if (id == 5) {
    // The cap function needs 81 * |p - center|^2 <= 64 everywhere; the
    // farthest point of a box from the center is one of its corners.
    double worst = 0.0;
    for (int c = 0; c < 4; ++c) {
      const Eigen::Vector2d corner = domain.corner(
          static_cast<Eigen::AlignedBox2d::CornerType>(c));
      worst = std::max(worst,
                       (corner - Eigen::Vector2d(0.5, 0.5)).squaredNorm());
    }
    if (81.0 * worst > 64.0) {
      throw std::domain_error("test_function: f5 is undefined on parts of the "
                              "requested domain");
    }
  }
  f.domain = domain;
  return f;
}

namespace
{

int resolve_threads(int requested, int n_items)
{
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) {
      n = 1;
    }
  }
  if (const char* env = std::getenv("CRENRICH_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) {
      throw std::invalid_argument(
          "CRENRICH_THREADS must be a positive integer");
    }
    n = std::min(n, static_cast<int>(cap));
  }
  return std::max(1, std::min(n, n_items));
}

// Midpoint refinement of one triangle into 4 congruent children.
std::array<TriangleGeom, 4> split4(const TriangleGeom& tri)
{
  const Eigen::Vector2d& a = tri.vertex(0);
  const Eigen::Vector2d& b = tri.vertex(1);
  const Eigen::Vector2d& c = tri.vertex(2);
  const Eigen::Vector2d ab = 0.5 * (a + b);
  const Eigen::Vector2d bc = 0.5 * (b + c);
  const Eigen::Vector2d ca = 0.5 * (c + a);
  return {TriangleGeom(a, ab, ca), TriangleGeom(ab, b, bc),
          TriangleGeom(ca, bc, c), TriangleGeom(ab, bc, ca)};
}

} // namespace

//------------------------------------------------------------------------------
double l1_error(const Mesh& mesh, ElementKind kind, const ElementParams& params,
                const PlaneFn& f, const HarnessOptions& opts)
{
  const int nt = static_cast<int>(mesh.triangles.size());
  if (nt == 0) {
    throw std::invalid_argument("l1_error: empty mesh");
  }

  const auto quad = std::make_shared<const ElementQuadrature>(
      params, opts.edge_nodes, opts.area_degree);
  const QuadRule2D err_rule = triangle_rule(opts.error_degree);

  std::vector<double> per_triangle(static_cast<std::size_t>(nt), 0.0);
  const auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const TriangleGeom tri = mesh.triangle(i);
      const EnrichedElement element(tri, params, kind, quad);
      const BarycentricPoly p = element.project(f);
      const PlaneFn residual = [&](const Eigen::Vector2d& x) {
        return std::abs(f(x) - p.eval(tri.barycentric(x)));
      };
      double err = 0.0;
      for (const TriangleGeom& sub : split4(tri)) {
        err += integrate_triangle(err_rule, sub, residual);
      }
      per_triangle[static_cast<std::size_t>(i)] = err;
    }
  };

  const int n_threads = resolve_threads(opts.threads, nt);
  if (n_threads == 1) {
    worker(0, nt);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int k = 0; k < n_threads; ++k) {
      const int begin = static_cast<int>(static_cast<long>(nt) * k / n_threads);
      const int end =
          static_cast<int>(static_cast<long>(nt) * (k + 1) / n_threads);
      pool.emplace_back(worker, begin, end);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  // Compensated sum in triangle-index order: the result is independent of the
  // thread partition.
  double sum = 0.0, comp = 0.0;
  for (const double e : per_triangle) {
    const double y = e - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (!std::isfinite(sum)) {
    throw NumericalError("l1_error: non-finite error integral");
  }
  return sum;
}

//------------------------------------------------------------------------------
double fit_slope(const std::vector<double>& h, const std::vector<double>& err)
{
  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.size() && i < err.size(); ++i) {
    if (h[i] > 0.0 && err[i] > 0.0) {
      x.push_back(std::log(h[i]));
      y.push_back(std::log(err[i]));
    }
  }
  if (x.size() < 2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

//------------------------------------------------------------------------------
ConvergenceReport run_convergence(const TestFunction& f,
                                  const std::vector<ElementKind>& kinds,
                                  const ElementParams& params,
                                  const std::vector<Mesh>& meshes,
                                  const HarnessOptions& opts)
{
  if (meshes.empty()) {
    throw std::invalid_argument("run_convergence: no meshes");
  }
  if (kinds.empty()) {
    throw std::invalid_argument("run_convergence: no element kinds");
  }

  ConvergenceReport rep;
  rep.f_id = f.id;
  rep.f_name = f.name;
  rep.alpha = params.alpha;
  rep.beta = params.beta;
  for (const Mesh& mesh : meshes) {
    rep.mesh_sizes.push_back(static_cast<int>(mesh.triangles.size()));
    rep.mesh_h.push_back(mesh.max_edge_length());
  }
  for (const ElementKind kind : kinds) {
    ConvergenceSeries series;
    series.kind = kind;
    for (const Mesh& mesh : meshes) {
      series.errors.push_back(l1_error(mesh, kind, params, f.fn, opts));
    }
    series.slope = fit_slope(rep.mesh_h, series.errors);
    rep.series.push_back(std::move(series));
  }
  return rep;
}

namespace
{

std::string fmt17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

//------------------------------------------------------------------------------
void emit_csv(std::ostream& out, const ConvergenceReport& report)
{
  out << "f_id,kind,alpha,beta,N,h,l1_error\n";
  for (const auto& series : report.series) {
    for (std::size_t m = 0; m < report.mesh_sizes.size(); ++m) {
      out << report.f_id << ',' << kind_tag(series.kind) << ','
          << fmt17(report.alpha) << ',' << fmt17(report.beta) << ','
          << report.mesh_sizes[m] << ',' << fmt17(report.mesh_h[m]) << ','
          << fmt17(series.errors[m]) << '\n';
    }
  }
}

//------------------------------------------------------------------------------
void emit_csv(const std::string& path, const ConvergenceReport& report)
{
  std::ofstream out(path, std::ios::binary); // binary keeps LF endings
  if (!out) {
    throw IoError(path + ": cannot open for writing");
  }
  emit_csv(out, report);
  if (!out) {
    throw IoError(path + ": write failed");
  }
}

namespace
{

struct AxisMap
{
  double lo, hi;    // data range, log10
  double px0, px1;  // pixel range
  double to_px(double v) const
  {
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

std::string svg_color(ElementKind kind)
{
  switch (kind) {
  case ElementKind::CR:
    return "#0072bd";
  case ElementKind::C2:
    return "#bf00bf";
  case ElementKind::S3:
    return "#000000";
  }
  return "#808080";
}

std::string fmt_px(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string pow10_label(int e)
{
  char buf[16];
  std::snprintf(buf, sizeof(buf), "1e%d", e);
  return buf;
}

} // namespace

//------------------------------------------------------------------------------
void emit_svg_loglog(const std::string& path, const ConvergenceReport& report)
{
  const double width = 760.0, height = 540.0;
  const double ml = 80.0, mr = 180.0, mt = 50.0, mb = 70.0;

  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (std::size_t m = 0; m < report.mesh_h.size(); ++m) {
    if (report.mesh_h[m] > 0.0) {
      xlo = std::min(xlo, std::log10(report.mesh_h[m]));
      xhi = std::max(xhi, std::log10(report.mesh_h[m]));
    }
  }
  for (const auto& s : report.series) {
    for (const double e : s.errors) {
      if (e > 0.0) {
        ylo = std::min(ylo, std::log10(e));
        yhi = std::max(yhi, std::log10(e));
      }
    }
  }
  if (!std::isfinite(xlo) || !std::isfinite(ylo)) {
    throw NumericalError("emit_svg_loglog: no positive data to plot");
  }
  const auto pad = [](double& lo, double& hi) {
    const double d = (hi - lo < 1e-12) ? 0.5 : 0.04 * (hi - lo);
    lo -= d;
    hi += d;
  };
  pad(xlo, xhi);
  pad(ylo, yhi);

  const AxisMap X{xlo, xhi, ml, width - mr};
  const AxisMap Y{ylo, yhi, height - mb, mt}; // inverted: larger = higher

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n"
      << "  <desc>Unnormalized L1 projection error vs mesh size h, "
         "log-log axes.</desc>\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  svg << "  <text x=\"" << fmt_px(width / 2.0)
      << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">"
      << report.f_name << ": L1 error vs h (alpha=" << report.alpha
      << ", beta=" << report.beta << ")</text>\n";

  // Gridlines and tick labels at integer decades.
  svg << "  <g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int e = static_cast<int>(std::ceil(xlo)); e <= std::floor(xhi); ++e) {
    const double px = X.to_px(e);
    svg << "    <line x1=\"" << fmt_px(px) << "\" y1=\"" << fmt_px(mt)
        << "\" x2=\"" << fmt_px(px) << "\" y2=\"" << fmt_px(height - mb)
        << "\"/>\n";
  }
  for (int e = static_cast<int>(std::ceil(ylo)); e <= std::floor(yhi); ++e) {
    const double py = Y.to_px(e);
    svg << "    <line x1=\"" << fmt_px(ml) << "\" y1=\"" << fmt_px(py)
        << "\" x2=\"" << fmt_px(width - mr) << "\" y2=\"" << fmt_px(py)
        << "\"/>\n";
  }
  svg << "  </g>\n";

  svg << "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (int e = static_cast<int>(std::ceil(xlo)); e <= std::floor(xhi); ++e) {
    svg << "    <text x=\"" << fmt_px(X.to_px(e)) << "\" y=\""
        << fmt_px(height - mb + 18.0) << "\" text-anchor=\"middle\">"
        << pow10_label(e) << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ylo)); e <= std::floor(yhi); ++e) {
    svg << "    <text x=\"" << fmt_px(ml - 8.0) << "\" y=\""
        << fmt_px(Y.to_px(e) + 4.0) << "\" text-anchor=\"end\">"
        << pow10_label(e) << "</text>\n";
  }
  svg << "    <text x=\"" << fmt_px((ml + width - mr) / 2.0) << "\" y=\""
      << fmt_px(height - 16.0) << "\" text-anchor=\"middle\">h (max edge "
      << "length)</text>\n";
  svg << "    <text x=\"20\" y=\"" << fmt_px((mt + height - mb) / 2.0)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << fmt_px((mt + height - mb) / 2.0) << ")\">L1 error</text>\n";
  svg << "  </g>\n";

  svg << "  <rect x=\"" << fmt_px(ml) << "\" y=\"" << fmt_px(mt) << "\" width=\""
      << fmt_px(width - ml - mr) << "\" height=\"" << fmt_px(height - mt - mb)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  double legend_y = mt + 20.0;
  for (const auto& s : report.series) {
    const std::string color = svg_color(s.kind);
    std::ostringstream pts;
    for (std::size_t m = 0; m < report.mesh_h.size(); ++m) {
      if (report.mesh_h[m] > 0.0 && s.errors[m] > 0.0) {
        if (pts.tellp() > 0) {
          pts << ' ';
        }
        pts << fmt_px(X.to_px(std::log10(report.mesh_h[m]))) << ','
            << fmt_px(Y.to_px(std::log10(s.errors[m])));
      }
    }
    svg << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
    for (std::size_t m = 0; m < report.mesh_h.size(); ++m) {
      if (report.mesh_h[m] > 0.0 && s.errors[m] > 0.0) {
        svg << "  <circle cx=\""
            << fmt_px(X.to_px(std::log10(report.mesh_h[m]))) << "\" cy=\""
            << fmt_px(Y.to_px(std::log10(s.errors[m]))) << "\" r=\"3.5\" fill=\""
            << color << "\"/>\n";
      }
    }

    char slope_buf[64];
    if (std::isnan(s.slope)) {
      std::snprintf(slope_buf, sizeof(slope_buf), "%s", kind_tag(s.kind).c_str());
    } else {
      std::snprintf(slope_buf, sizeof(slope_buf), "%s (slope %.3f)",
                    kind_tag(s.kind).c_str(), s.slope);
    }
    const double lx = width - mr + 16.0;
    svg << "  <line x1=\"" << fmt_px(lx) << "\" y1=\"" << fmt_px(legend_y)
        << "\" x2=\"" << fmt_px(lx + 26.0) << "\" y2=\"" << fmt_px(legend_y)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "  <text x=\"" << fmt_px(lx + 32.0) << "\" y=\""
        << fmt_px(legend_y + 4.0)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << slope_buf
        << "</text>\n";
    legend_y += 22.0;
  }

  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(path + ": cannot open for writing");
  }
  out << svg.str();
  if (!out) {
    throw IoError(path + ": write failed");
  }
}

} // namespace crenrich
