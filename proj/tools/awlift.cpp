#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "awlift/extension.hpp"
#include "awlift/mesh.hpp"

using namespace awlift;

namespace {

constexpr int kExitError = 1;
constexpr int kExitNehariOnly = 2;
constexpr int kExitConditionFailed = 3;
constexpr int kExitCheckFailed = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write to " + path);
  out << content;
}

struct CommonOpts {
  std::string map;
  GridParams grid;
  int samples = 500;
  unsigned long long seed = 1;
  std::string out;
  std::string format = "obj";
  std::string report;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_out = false) {
  cmd->add_option("--map", o.map, "map spec: JSON file path or inline JSON object")->required();
  cmd->add_option("--n-radial", o.grid.n_radial, "radial grid resolution");
  cmd->add_option("--n-angular", o.grid.n_angular, "angular grid resolution");
  cmd->add_option("--r-max", o.grid.r_max, "outer radius of the interior grid");
  cmd->add_option("--exterior-r-max", o.grid.exterior_r_max, "outer radius of the exterior grid");
  cmd->add_option("--samples", o.samples, "sample count (qc points / convexity geodesics)");
  cmd->add_option("--seed", o.seed, "RNG seed for sampled commands");
  auto* out = cmd->add_option("--out", o.out, "output path (mesh / CSV)");
  if (needs_out) out->required();
  cmd->add_option("--format", o.format, "mesh format: obj or ply")
      ->check(CLI::IsMember({"obj", "ply"}));
  cmd->add_option("--report", o.report, "JSON report path");
}

int cmd_check(const CommonOpts& o) {
  const MapSpec spec = MapSpec::load(o.map);
  const ConditionReport rep = condition_report(spec, o.grid);
  if (!o.out.empty()) write_file(o.out, rep.to_csv());
  if (!o.report.empty()) write_file(o.report, rep.summary_json(spec.label()) + "\n");
  std::cout << "sup_t=" << format_double(rep.sup_t)
            << " at z=" << format_complex(rep.worst_point)
            << " C_estimate=" << format_double(rep.c_estimate)
            << " nehari=" << (rep.nehari_ok ? "yes" : "no")
            << " aw=" << (rep.aw_ok ? "yes" : "no") << "\n";
  if (rep.aw_ok) return 0;
  if (rep.nehari_ok) return kExitNehariOnly;
  return kExitConditionFailed;
}

void write_mesh(const MeshOutput& mesh, const CommonOpts& o) {
  write_file(o.out, o.format == "ply" ? mesh.to_ply() : mesh.to_obj());
  write_file(o.out + ".attrs.csv", mesh.attrs_csv());
}

int cmd_mesh(const CommonOpts& o) {
  const MapSpec spec = MapSpec::load(o.map);
  const MeshOutput mesh = surface_mesh(spec, o.grid);
  write_mesh(mesh, o);
  std::cout << "vertices=" << mesh.vertices.size() << " faces=" << mesh.faces.size()
            << " dropped=" << mesh.dropped_vertices << "\n";
  return 0;
}

int cmd_extend(const CommonOpts& o) {
  const MapSpec spec = MapSpec::load(o.map);
  const ExtensionMap ext(spec, o.grid);
  const MeshOutput mesh = extension_mesh(ext, o.grid);
  write_mesh(mesh, o);
  std::cout << "vertices=" << mesh.vertices.size() << " faces=" << mesh.faces.size()
            << " dropped=" << mesh.dropped_vertices
            << " seam_gap=" << format_double(mesh.seam_gap) << "\n";
  return 0;
}

int cmd_qc(const CommonOpts& o) {
  const MapSpec spec = MapSpec::load(o.map);
  const ExtensionMap ext(spec, o.grid);
  const QcReport rep = qc_report(ext, o.samples, o.seed, o.grid.exterior_r_max);
  const std::string json = rep.to_json(spec.label()) + "\n";
  if (!o.report.empty()) write_file(o.report, json);
  std::cout << "t=" << format_double(rep.t) << " C=" << format_double(rep.c)
            << " bound=" << format_double(rep.bound)
            << " max_ratio=" << format_double(rep.max_ratio)
            << " at z=" << format_complex(rep.argmax_z)
            << (rep.within_bound() ? " PASS" : " FAIL") << "\n";
  return rep.within_bound() ? 0 : kExitCheckFailed;
}

int cmd_convexity(const CommonOpts& o) {
  const MapSpec spec = MapSpec::load(o.map);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

  std::string csv = "geodesic,a_re,a_im,b_re,b_im,s,second_diff\n";
  double min_dd = std::numeric_limits<double>::infinity();
  const int n_samples = 100;
  const double step = 0.05;
  for (int g = 0; g < o.samples; ++g) {
    Cplx a, b;
    do {
      a = std::polar(1.0, angle(rng));
      b = std::polar(1.0, angle(rng));
    } while (std::abs(a - b) < 1e-3);
    const std::vector<double> dd = convexity_profile(spec, a, b, n_samples, step);
    const double s0 = -0.5 * (n_samples - 1) * step;
    for (std::size_t k = 0; k < dd.size(); ++k) {
      min_dd = std::min(min_dd, dd[k]);
      csv += std::to_string(g) + ',' + format_double(a.real()) + ',' + format_double(a.imag()) +
             ',' + format_double(b.real()) + ',' + format_double(b.imag()) + ',' +
             format_double(s0 + (static_cast<double>(k) + 1.0) * step) + ',' +
             format_double(dd[k]) + '\n';
    }
  }
  if (!o.out.empty()) write_file(o.out, csv);
  std::cout << "geodesics=" << o.samples << " min_second_diff=" << format_double(min_dd)
            << (min_dd >= -1e-7 ? " PASS" : " FAIL") << "\n";
  return min_dd >= -1e-7 ? 0 : kExitCheckFailed;
}

int cmd_compare_classical(const CommonOpts& o) {
  const MapSpec spec = MapSpec::load(o.map);
  if (!spec.analytic())
    throw UsageError("compare-classical requires an analytic spec (no g, no q)");
  const ExtensionMap ext(spec, o.grid);

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> radius(1.05, o.grid.exterior_r_max);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

  std::string csv = "z_re,z_im,deviation,mu_abs\n";
  double max_dev = 0.0;
  for (int i = 0; i < o.samples; ++i) {
    const double r = radius(rng), th = angle(rng);
    const Cplx z(r * std::cos(th), r * std::sin(th));
    const auto classical = classical_aw(spec, z);
    const Point3OrInf pipeline = extend_eval(ext, z);
    if (!classical || !pipeline.finite_point()) continue;
    const double dev = std::abs(Cplx(pipeline.p.x(), pipeline.p.y()) - *classical) +
                       std::abs(pipeline.p.z());
    const double mu = std::abs(beltrami_classical(spec, 1.0 / std::conj(z)));
    max_dev = std::max(max_dev, dev);
    csv += format_double(z.real()) + ',' + format_double(z.imag()) + ',' + format_double(dev) +
           ',' + format_double(mu) + '\n';
  }
  if (!o.out.empty()) write_file(o.out, csv);
  std::cout << "samples=" << o.samples << " max_deviation=" << format_double(max_dev)
            << (max_dev < 1e-7 ? " PASS" : " FAIL") << "\n";
  return max_dev < 1e-7 ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "awlift: analyzes locally injective harmonic maps of the disk, lifts them to minimal\n"
      "surfaces, reflects across the boundary through the orthogonal circle family, and\n"
      "certifies injectivity conditions and quasiconformal dilatation bounds.\n"
      "Set AWLIFT_THREADS to cap sweep parallelism."};
  app.require_subcommand(1);

  CommonOpts check_o, mesh_o, extend_o, qc_o, conv_o, cmp_o;
  conv_o.samples = 20;
  cmp_o.samples = 200;

  add_common(app.add_subcommand("check", "evaluate the injectivity/extension conditions on a grid"),
             check_o);
  add_common(app.add_subcommand("mesh", "export the lifted minimal surface as OBJ/PLY"), mesh_o,
             true);
  add_common(app.add_subcommand("extend", "export surface plus reflected exterior as OBJ/PLY"),
             extend_o, true);
  add_common(app.add_subcommand("qc", "sample the extension's dilatation against the bound"), qc_o);
  add_common(app.add_subcommand("convexity", "second differences of u along random geodesics"),
             conv_o);
  add_common(app.add_subcommand("compare-classical",
                                "compare the pipeline against the classical Ahlfors-Weill formula"),
             cmp_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("check")) return cmd_check(check_o);
    if (app.got_subcommand("mesh")) return cmd_mesh(mesh_o);
    if (app.got_subcommand("extend")) return cmd_extend(extend_o);
    if (app.got_subcommand("qc")) return cmd_qc(qc_o);
    if (app.got_subcommand("convexity")) return cmd_convexity(conv_o);
    if (app.got_subcommand("compare-classical")) return cmd_compare_classical(cmp_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
