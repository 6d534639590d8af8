#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crenrich/harness.hpp"

namespace
{

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

struct ConvergeConfig
{
  int f_id = 0;
  std::string kinds = "cr,c2,s3";
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<int> uniform;
  std::vector<int> delaunay;
  std::uint64_t seed = 1;
  std::vector<std::string> mesh_files;
  std::vector<double> box;
  std::string out_csv;
  std::string out_svg;
  std::string out_json;
  crenrich::HarnessOptions harness;
};

struct VerifyConfig
{
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<double> triangle;
  int edge_nodes = 24;
  double tol = 1e-9;
  std::string out_json;
};

struct MeshConfig
{
  int uniform = 0;
  int delaunay = 0;
  std::uint64_t seed = 1;
  std::vector<double> box;
  std::string out;
};

std::vector<crenrich::ElementKind> parse_kinds(const std::string& csv)
{
  std::vector<crenrich::ElementKind> kinds;
  std::stringstream ss(csv);
  std::string tag;
  while (std::getline(ss, tag, ',')) {
    if (!tag.empty()) {
      kinds.push_back(crenrich::parse_kind(tag));
    }
  }
  if (kinds.empty()) {
    throw std::invalid_argument("--kinds: no element kinds given");
  }
  return kinds;
}

Eigen::AlignedBox2d parse_box(const std::vector<double>& vals)
{
  const Eigen::AlignedBox2d box(Eigen::Vector2d(vals[0], vals[1]),
                                Eigen::Vector2d(vals[2], vals[3]));
  if (box.isEmpty() || box.sizes().minCoeff() <= 0.0) {
    throw std::invalid_argument(
        "--box: expected xmin,ymin,xmax,ymax with xmin < xmax, ymin < ymax");
  }
  return box;
}

json report_to_json(const crenrich::ConvergenceReport& rep)
{
  json j;
  j["f"] = rep.f_id;
  j["name"] = rep.f_name;
  j["alpha"] = rep.alpha;
  j["beta"] = rep.beta;
  j["norm"] = "L1, unnormalized (integral of |f - projection| over the mesh)";
  j["meshes"] = json::array();
  for (std::size_t m = 0; m < rep.mesh_sizes.size(); ++m) {
    j["meshes"].push_back({{"N", rep.mesh_sizes[m]}, {"h", rep.mesh_h[m]}});
  }
  j["series"] = json::array();
  for (const auto& s : rep.series) {
    json entry;
    entry["kind"] = crenrich::kind_tag(s.kind);
    entry["errors"] = s.errors;
    if (std::isnan(s.slope)) {
      entry["slope"] = nullptr;
    } else {
      entry["slope"] = s.slope;
    }
    j["series"].push_back(entry);
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw crenrich::IoError(path + ": cannot open for writing");
  }
  out << content;
  if (!out) {
    throw crenrich::IoError(path + ": write failed");
  }
}

int run_converge(const ConvergeConfig& cfg)
{
  const auto kinds = parse_kinds(cfg.kinds);
  const crenrich::ElementParams params(cfg.alpha, cfg.beta);

  int sources = 0;
  sources += cfg.uniform.empty() ? 0 : 1;
  sources += cfg.delaunay.empty() ? 0 : 1;
  sources += cfg.mesh_files.empty() ? 0 : 1;
  if (sources > 1) {
    throw std::invalid_argument(
        "choose one mesh source: --uniform, --delaunay or --mesh-file");
  }
  if (!cfg.box.empty() && !cfg.mesh_files.empty()) {
    throw std::invalid_argument("--box does not apply to --mesh-file input");
  }

  crenrich::TestFunction f =
      cfg.box.empty() ? crenrich::test_function(cfg.f_id)
                      : crenrich::test_function(cfg.f_id, parse_box(cfg.box));

  std::vector<crenrich::Mesh> meshes;
  if (!cfg.mesh_files.empty()) {
    for (const auto& path : cfg.mesh_files) {
      crenrich::Mesh mesh = crenrich::read_mesh(path);
      // Re-validate the function on the mesh's own bounding box (f5 has a
      // restricted natural domain).
      crenrich::test_function(cfg.f_id, mesh.domain);
      meshes.push_back(std::move(mesh));
    }
  } else if (!cfg.delaunay.empty()) {
    for (const int target : cfg.delaunay) {
      meshes.push_back(
          crenrich::jittered_delaunay_mesh(f.domain, target, cfg.seed));
    }
  } else {
    std::vector<int> ns = cfg.uniform;
    if (ns.empty()) {
      ns = {4, 8, 16, 32};
    }
    for (const int n : ns) {
      meshes.push_back(crenrich::uniform_mesh(f.domain, n));
    }
  }

  const crenrich::ConvergenceReport rep =
      crenrich::run_convergence(f, kinds, params, meshes, cfg.harness);

  // Slope table on stdout.
  std::printf("%s  alpha=%g beta=%g  (unnormalized L1 errors)\n",
              rep.f_name.c_str(), rep.alpha, rep.beta);
  std::printf("%10s %12s", "N", "h");
  for (const auto& s : rep.series) {
    std::printf(" %14s", crenrich::kind_tag(s.kind).c_str());
  }
  std::printf("\n");
  for (std::size_t m = 0; m < rep.mesh_sizes.size(); ++m) {
    std::printf("%10d %12.6g", rep.mesh_sizes[m], rep.mesh_h[m]);
    for (const auto& s : rep.series) {
      std::printf(" %14.6e", s.errors[m]);
    }
    std::printf("\n");
  }
  std::printf("%10s %12s", "slope", "");
  for (const auto& s : rep.series) {
    std::printf(" %14.3f", s.slope);
  }
  std::printf("\n");

  if (!cfg.out_csv.empty()) {
    crenrich::emit_csv(cfg.out_csv, rep);
  } else {
    crenrich::emit_csv(std::cout, rep);
  }
  if (!cfg.out_svg.empty()) {
    crenrich::emit_svg_loglog(cfg.out_svg, rep);
  }
  if (!cfg.out_json.empty()) {
    write_text_file(cfg.out_json, report_to_json(rep).dump(2) + "\n");
  }
  return kExitOk;
}

int run_verify(const VerifyConfig& cfg)
{
  const crenrich::ElementParams params(cfg.alpha, cfg.beta);

  crenrich::TriangleGeom tri(Eigen::Vector2d(0.0, 0.0),
                             Eigen::Vector2d(1.0, 0.0),
                             Eigen::Vector2d(0.0, 1.0));
  if (!cfg.triangle.empty()) {
    tri = crenrich::TriangleGeom(
        Eigen::Vector2d(cfg.triangle[0], cfg.triangle[1]),
        Eigen::Vector2d(cfg.triangle[2], cfg.triangle[3]),
        Eigen::Vector2d(cfg.triangle[4], cfg.triangle[5]));
  }

  std::printf("alpha = %.17g\nbeta  = %.17g\n", params.alpha, params.beta);
  std::printf("K     = %.17g\nG     = %.17g\n\n", params.K, params.G);

  const auto quad = std::make_shared<const crenrich::ElementQuadrature>(
      params, cfg.edge_nodes);
  const Eigen::IOFormat fmt(12, 0, "  ", "\n", "    [", "]");

  double max_dev = 0.0;
  json jkinds = json::array();
  for (const auto kind : {crenrich::ElementKind::CR, crenrich::ElementKind::C2,
                          crenrich::ElementKind::S3}) {
    const crenrich::EnrichedElement element(tri, params, kind, quad);
    const crenrich::UnisolvenceReport rep = unisolvence_report(element);
    const char* label = kind == crenrich::ElementKind::CR
                            ? "edge-mean matrix, expected (ones - eye)/2"
                        : kind == crenrich::ElementKind::C2
                            ? "quadratic-moment matrix, expected K*(ones - eye)"
                            : "cubic-moment matrix, expected G*eye";
    std::cout << crenrich::kind_tag(kind) << " (" << label << "):\n"
              << rep.matrix.format(fmt) << "\n";
    std::printf("    det = %.12g (expected %.12g), max deviation = %.3g\n\n",
                rep.determinant, rep.expected_determinant, rep.max_deviation);
    max_dev = std::max(max_dev, rep.max_deviation);
    jkinds.push_back({{"kind", crenrich::kind_tag(kind)},
                      {"determinant", rep.determinant},
                      {"expected_determinant", rep.expected_determinant},
                      {"max_deviation", rep.max_deviation}});
  }

  // Node-doubling consistency of the kernel quadrature on a non-polynomial.
  const auto smooth = [](const Eigen::Vector2d& x) {
    return std::exp(x.x() + x.y());
  };
  double max_doubling = 0.0;
  for (int j = 0; j < 3; ++j) {
    const auto trace = [&](double t) { return smooth(tri.edge_point(j, t)); };
    for (const auto kernel :
         {crenrich::EdgeKernel::Quadratic, crenrich::EdgeKernel::Cubic}) {
      const auto checked = crenrich::weighted_edge_integral_checked(
          params, kernel, trace, cfg.edge_nodes);
      max_doubling = std::max(max_doubling, checked.error_estimate);
    }
  }
  std::printf("doubling check (%d vs %d nodes) on exp(x+y) edge traces: "
              "max |delta| = %.3g\n",
              cfg.edge_nodes, 2 * cfg.edge_nodes, max_doubling);

  const bool pass = std::isfinite(max_dev) && std::isfinite(max_doubling) &&
                    max_dev <= cfg.tol && max_doubling <= cfg.tol;
  std::printf("%s: max deviation %.3g, doubling %.3g, tol %.3g\n",
              pass ? "PASS" : "FAIL", max_dev, max_doubling, cfg.tol);

  if (!cfg.out_json.empty()) {
    json j;
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["K"] = params.K;
    j["G"] = params.G;
    j["kinds"] = jkinds;
    j["doubling_delta"] = max_doubling;
    j["tol"] = cfg.tol;
    j["pass"] = pass;
    write_text_file(cfg.out_json, j.dump(2) + "\n");
  }
  return pass ? kExitOk : kExitNumerical;
}

int run_mesh(const MeshConfig& cfg)
{
  if ((cfg.uniform > 0) == (cfg.delaunay > 0)) {
    throw std::invalid_argument("choose exactly one of --uniform or --delaunay");
  }
  const Eigen::AlignedBox2d box =
      cfg.box.empty()
          ? Eigen::AlignedBox2d(Eigen::Vector2d(0.0, 0.0),
                                Eigen::Vector2d(1.0, 1.0))
          : parse_box(cfg.box);

  const crenrich::Mesh mesh =
      cfg.uniform > 0 ? crenrich::uniform_mesh(box, cfg.uniform)
                      : crenrich::jittered_delaunay_mesh(box, cfg.delaunay,
                                                         cfg.seed);
  crenrich::write_mesh(cfg.out, mesh);
  std::printf("wrote %s: %zu vertices, %zu triangles\n", cfg.out.c_str(),
              mesh.vertices.size(), mesh.triangles.size());
  std::printf("h = %.6g, min angle = %.3g deg, total area = %.12g\n",
              mesh.max_edge_length(), mesh.min_angle() * 180.0 / M_PI,
              mesh.total_area());
  return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Nonconforming triangle elements with weighted edge-moment "
               "enrichments: projection experiments and self-checks"};
  app.require_subcommand(1);

  ConvergeConfig cc;
  CLI::App* converge = app.add_subcommand(
      "converge", "Run an L1 convergence experiment and emit CSV/SVG/JSON");
  converge->add_option("--f", cc.f_id, "Test function id (1..6)")
      ->required()
      ->check(CLI::Range(1, 6));
  converge->add_option("--kinds", cc.kinds,
                       "Comma-separated element kinds (cr,c2,s3)");
  converge->add_option("--alpha", cc.alpha, "Weight exponent alpha (> -1/2)");
  converge->add_option("--beta", cc.beta, "Weight exponent beta (> -1/2)");
  converge->add_option("--uniform", cc.uniform,
                       "Uniform meshes: cells per side, e.g. 4,8,16,32")
      ->delimiter(',');
  converge->add_option("--delaunay", cc.delaunay,
                       "Jittered Delaunay meshes: target triangle counts")
      ->delimiter(',');
  converge->add_option("--seed", cc.seed, "Seed for jittered meshes");
  converge->add_option("--mesh-file", cc.mesh_files,
                       "Read meshes from files (repeatable)");
  converge->add_option("--box", cc.box,
                       "Domain override: xmin,ymin,xmax,ymax")
      ->delimiter(',')
      ->expected(4);
  converge->add_option("--out", cc.out_csv,
                       "CSV output path (default: stdout)");
  converge->add_option("--svg", cc.out_svg, "Also write a log-log SVG chart");
  converge->add_option("--json", cc.out_json, "Also write a JSON report");
  converge->add_option("--edge-nodes", cc.harness.edge_nodes,
                       "Quadrature nodes per edge DOF rule")
      ->check(CLI::Range(2, 256));
  converge->add_option("--area-degree", cc.harness.area_degree,
                       "Triangle-rule degree for the area DOF")
      ->check(CLI::Range(1, 20));
  converge->add_option("--error-degree", cc.harness.error_degree,
                       "Triangle-rule degree for the error integral")
      ->check(CLI::Range(1, 20));
  converge->add_option("--threads", cc.harness.threads,
                       "Worker threads (0 = auto; env CRENRICH_THREADS caps)");

  VerifyConfig vc;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check the element constants and quadrature to tolerance");
  verify->add_option("--alpha", vc.alpha, "Weight exponent alpha (> -1/2)");
  verify->add_option("--beta", vc.beta, "Weight exponent beta (> -1/2)");
  verify->add_option("--triangle", vc.triangle,
                     "Vertices x1,y1,x2,y2,x3,y3 (default: unit right triangle)")
      ->delimiter(',')
      ->expected(6);
  verify->add_option("--edge-nodes", vc.edge_nodes, "Nodes per edge DOF rule")
      ->check(CLI::Range(2, 256));
  verify->add_option("--tol", vc.tol, "Pass/fail tolerance");
  verify->add_option("--json", vc.out_json, "Also write a JSON report");

  MeshConfig mc;
  CLI::App* mesh = app.add_subcommand("mesh", "Generate a mesh file");
  mesh->add_option("--uniform", mc.uniform, "Cells per side")
      ->check(CLI::Range(1, 4096));
  mesh->add_option("--delaunay", mc.delaunay, "Target triangle count")
      ->check(CLI::Range(2, 10000000));
  mesh->add_option("--seed", mc.seed, "Seed for jittered meshes");
  mesh->add_option("--box", mc.box, "Domain: xmin,ymin,xmax,ymax")
      ->delimiter(',')
      ->expected(4);
  mesh->add_option("--out", mc.out, "Output path")->required();

  try {
    app.parse(argc, argv);
    if (converge->parsed()) {
      return run_converge(cc);
    }
    if (verify->parsed()) {
      return run_verify(vc);
    }
    return run_mesh(mc);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const crenrich::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const crenrich::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
