#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "windvox/bench.hpp"
#include "windvox/errors.hpp"
#include "windvox/field_io.hpp"
#include "windvox/mesh_io.hpp"
#include "windvox/metrics.hpp"
#include "windvox/morph.hpp"
#include "windvox/openmesh.hpp"
#include "windvox/recon.hpp"
#include "windvox/winding.hpp"

namespace {

using namespace windvox;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_numbers(text)) {
    if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw UsageError("expected positive integers, got '" + text + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

struct VoxelizeArgs {
  std::string input;
  std::string resolution = "128";
  std::string bounds = "auto";
  std::string mode = "exact";
  bool flip_duplicate = false;
  double epsilon = 0.01;
  std::size_t chunk = 2000;
  bool f32 = false;
  std::string out;
};

int run_voxelize(const VoxelizeArgs& a) {
  auto res = parse_sizes(a.resolution);
  if (res.size() == 1) res = {res[0], res[0], res[0]};
  if (res.size() != 3) throw UsageError("--resolution takes R or Rx,Ry,Rz");
  if (a.chunk == 0) throw UsageError("--chunk must be positive");
  if (!(a.epsilon > 0.0)) throw UsageError("--epsilon must be positive");

  GridSpec spec;
  spec.resolution = {res[0], res[1], res[2]};
  bool normalize = false;
  if (a.bounds == "auto") {
    normalize = true;
  } else {
    const auto b = parse_numbers(a.bounds);
    if (b.size() == 2) {
      spec.bounds_min = {b[0], b[0], b[0]};
      spec.bounds_max = {b[1], b[1], b[1]};
    } else if (b.size() == 6) {
      spec.bounds_min = {b[0], b[1], b[2]};
      spec.bounds_max = {b[3], b[4], b[5]};
    } else {
      throw UsageError("--bounds takes auto, lo,hi or x0,y0,z0,x1,y1,z1");
    }
    if (!(spec.bounds_min.x < spec.bounds_max.x && spec.bounds_min.y < spec.bounds_max.y &&
          spec.bounds_min.z < spec.bounds_max.z)) {
      throw UsageError("--bounds must have min < max on every axis");
    }
  }
  const WindingMode mode = a.mode == "soft" ? WindingMode::soft : WindingMode::exact;

  TriangleMesh mesh = load_mesh(a.input);
  if (normalize) mesh = normalize_to_unit_cube(mesh).mesh;
  if (a.flip_duplicate) mesh = flipped_duplication(mesh, a.epsilon).mesh;

  QueryBatchConfig batch;
  batch.chunk_size = a.chunk;
  batch.precision = a.f32 ? Precision::f32 : Precision::f64;
  const ScalarField field = voxelize(mesh, spec, mode, batch);
  save_field(field, a.out, a.f32 ? FieldDType::f32 : FieldDType::f64);
  return 0;
}

struct ReconstructArgs {
  std::string input;
  std::string output;
  double iso = 0.5;
  double lambda = 0.15;
  int iterations = 10;
};

int run_reconstruct(const ReconstructArgs& a) {
  if (a.iterations < 0) throw UsageError("--smooth-iters must be >= 0");
  const ScalarField field = load_field(a.input);
  const TriangleMesh surface = marching_cubes(field, a.iso);
  save_mesh(laplacian_smooth(surface, a.lambda, a.iterations), a.output);
  return 0;
}

struct MetricsArgs {
  std::string original;
  std::string reconstructed;
  std::size_t samples = 20000;
  int repeats = 3;
  std::uint64_t seed = 0;
  std::string out;
};

int run_metrics(const MetricsArgs& a) {
  if (a.samples == 0) throw UsageError("--samples must be positive");
  if (a.repeats < 1) throw UsageError("--repeats must be >= 1");
  const TriangleMesh orig = load_mesh(a.original);
  const TriangleMesh recon = load_mesh(a.reconstructed);
  const auto r = evaluate_reconstruction(orig, recon, a.samples, a.repeats, a.seed);

  std::ostringstream json;
  json.precision(17);
  json << "{\n  \"samples\": " << a.samples << ",\n  \"repeats\": " << a.repeats
       << ",\n  \"seed\": " << a.seed << ",\n  \"chamfer_mean\": " << r.chamfer_mean
       << ",\n  \"chamfer_std\": " << r.chamfer_std << ",\n  \"hausdorff_mean\": " << r.hausdorff_mean
       << ",\n  \"hausdorff_std\": " << r.hausdorff_std << ",\n  \"chamfer\": [";
  for (std::size_t i = 0; i < r.chamfer.size(); ++i) json << (i ? ", " : "") << r.chamfer[i];
  json << "],\n  \"hausdorff\": [";
  for (std::size_t i = 0; i < r.hausdorff.size(); ++i) json << (i ? ", " : "") << r.hausdorff[i];
  json << "]\n}\n";

  if (a.out.empty()) {
    std::cout << json.str();
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!(f << json.str())) throw IoError("cannot write " + a.out);
  }
  return 0;
}

struct MorphArgs {
  std::string templ;
  std::string target;
  MorphConfig cfg;
  std::string out;
  std::string report;
};

int run_morph(MorphArgs a) {
  try {
    a.cfg.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const TriangleMesh templ = load_mesh(a.templ);
  const ScalarField target = load_field(a.target);
  auto result = morph(templ, target, a.cfg);
  save_mesh(result.mesh, a.out);
  result.report.final_mesh_path = a.out;
  if (!a.report.empty()) {
    std::ofstream f(a.report, std::ios::binary);
    write_morph_report(result.report, f);
    if (!f) throw IoError("cannot write " + a.report);
  }
  return 0;
}

struct BenchArgs {
  std::string corpus;
  std::string resolutions = "32,64,128,256";
  std::string out;
  std::string table;
  std::size_t samples = 20000;
  int repeats = 3;
  std::uint64_t seed = 0;
  bool no_timing = false;
};

int run_bench(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.resolutions = parse_sizes(a.resolutions);
  for (auto r : cfg.resolutions) {
    if (r < 2) throw UsageError("--resolutions entries must be >= 2");
  }
  if (a.samples == 0) throw UsageError("--samples must be positive");
  if (a.repeats < 1) throw UsageError("--repeats must be >= 1");
  cfg.samples = a.samples;
  cfg.repeats = a.repeats;
  cfg.seed = a.seed;
  if (!std::filesystem::is_directory(a.corpus)) throw IoError("not a directory: " + a.corpus);

  const BenchReport report = run_benchmark(a.corpus, cfg);
  {
    std::ofstream f(a.out, std::ios::binary);
    write_bench_json(report, f, !a.no_timing);
    if (!f) throw IoError("cannot write " + a.out);
  }
  if (!a.table.empty()) {
    std::ofstream f(a.table, std::ios::binary);
    write_bench_table(report, f);
    if (!f) throw IoError("cannot write " + a.table);
  }
  write_bench_table(report, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized winding number voxelizer"};
  app.require_subcommand(1);

  VoxelizeArgs vox;
  auto* cmd_vox = app.add_subcommand("voxelize", "Sample the winding number of a mesh on a grid");
  cmd_vox->add_option("mesh", vox.input, "Input OBJ or STL")->required()->check(CLI::ExistingFile);
  cmd_vox->add_option("--resolution", vox.resolution, "R or Rx,Ry,Rz")->capture_default_str();
  cmd_vox->add_option("--bounds", vox.bounds, "auto (normalize to [-1,1]) or lo,hi or x0,y0,z0,x1,y1,z1")
      ->capture_default_str();
  cmd_vox->add_option("--mode", vox.mode, "exact or soft")
      ->check(CLI::IsMember({"exact", "soft"}))
      ->capture_default_str();
  cmd_vox->add_flag("--flip-duplicate", vox.flip_duplicate, "Close an open mesh by flipped duplication");
  cmd_vox->add_option("--epsilon", vox.epsilon, "Offset for --flip-duplicate")->capture_default_str();
  cmd_vox->add_option("--chunk", vox.chunk, "Query points per batch")->capture_default_str();
  cmd_vox->add_flag("--f32", vox.f32, "32-bit arithmetic and storage");
  cmd_vox->add_option("--out", vox.out, "Output WVOX1 file")->required();

  ReconstructArgs rec;
  auto* cmd_rec = app.add_subcommand("reconstruct", "Marching cubes plus Laplacian smoothing");
  cmd_rec->add_option("field", rec.input, "Input WVOX1 file")->required()->check(CLI::ExistingFile);
  cmd_rec->add_option("out", rec.output, "Output OBJ or STL")->required();
  cmd_rec->add_option("--iso", rec.iso)->capture_default_str();
  cmd_rec->add_option("--smooth-lambda", rec.lambda)->capture_default_str();
  cmd_rec->add_option("--smooth-iters", rec.iterations)->capture_default_str();

  MetricsArgs met;
  auto* cmd_met = app.add_subcommand("metrics", "Chamfer and Hausdorff distances between two meshes");
  cmd_met->add_option("original", met.original)->required()->check(CLI::ExistingFile);
  cmd_met->add_option("reconstructed", met.reconstructed)->required()->check(CLI::ExistingFile);
  cmd_met->add_option("--samples", met.samples)->capture_default_str();
  cmd_met->add_option("--repeats", met.repeats)->capture_default_str();
  cmd_met->add_option("--seed", met.seed)->capture_default_str();
  cmd_met->add_option("--out", met.out, "Write the JSON report here instead of stdout");

  MorphArgs mor;
  auto* cmd_mor = app.add_subcommand("morph", "Fit a template mesh to a target occupancy field");
  cmd_mor->add_option("template", mor.templ)->required()->check(CLI::ExistingFile);
  cmd_mor->add_option("target", mor.target)->required()->check(CLI::ExistingFile);
  cmd_mor->add_option("--iters", mor.cfg.iterations)->capture_default_str();
  cmd_mor->add_option("--step", mor.cfg.step_size)->capture_default_str();
  cmd_mor->add_option("--momentum", mor.cfg.momentum)->capture_default_str();
  cmd_mor->add_option("--smooth", mor.cfg.smooth_weight)->capture_default_str();
  cmd_mor->add_option("--log-every", mor.cfg.log_every)->capture_default_str();
  cmd_mor->add_option("--out", mor.out, "Output mesh")->required();
  cmd_mor->add_option("--report", mor.report, "JSON trace");

  BenchArgs ben;
  auto* cmd_ben = app.add_subcommand("bench", "Reconstruction benchmark over a mesh corpus");
  cmd_ben->add_option("--corpus", ben.corpus, "Directory of OBJ/STL meshes")->required();
  cmd_ben->add_option("--resolutions", ben.resolutions)->capture_default_str();
  cmd_ben->add_option("--out", ben.out, "JSON report")->required();
  cmd_ben->add_option("--table", ben.table, "Also write the text table here");
  cmd_ben->add_option("--samples", ben.samples)->capture_default_str();
  cmd_ben->add_option("--repeats", ben.repeats)->capture_default_str();
  cmd_ben->add_option("--seed", ben.seed)->capture_default_str();
  cmd_ben->add_flag("--no-timing", ben.no_timing, "Omit wall-clock fields from the JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_vox) return run_voxelize(vox);
    if (*cmd_rec) return run_reconstruct(rec);
    if (*cmd_met) return run_metrics(met);
    if (*cmd_mor) return run_morph(mor);
    if (*cmd_ben) return run_bench(ben);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
