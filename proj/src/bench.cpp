#include "windvox/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>

#include "windvox/mesh_io.hpp"
#include "windvox/parallel.hpp"
#include "windvox/recon.hpp"
#include "windvox/winding.hpp"

namespace windvox {

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& corpus_dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
    if (entry.is_regular_file() && format_from_extension(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return files;
}

BenchRow run_benchmark_case(const std::filesystem::path& mesh_path, std::size_t resolution,
                            const BenchConfig& cfg) {
  BenchRow row;
  row.mesh = mesh_path.stem().string();
  row.resolution = resolution;
  try {
    Stopwatch clock;
    const TriangleMesh input = load_mesh(mesh_path);
    row.input_faces = input.faces.size();
    row.seconds.load = clock.lap();

    const TriangleMesh mesh = normalize_to_unit_cube(input).mesh;
    row.seconds.normalize = clock.lap();

    QueryBatchConfig batch;
    batch.chunk_size = cfg.chunk_size;
    const ScalarField field =
        voxelize(mesh, GridSpec::cube(-1.0, 1.0, resolution), WindingMode::exact, batch);
    row.seconds.voxelize = clock.lap();

    const TriangleMesh surface = marching_cubes(field, 0.5);
    row.seconds.marching_cubes = clock.lap();

    const TriangleMesh smooth = laplacian_smooth(surface, cfg.smooth_lambda, cfg.smooth_iterations);
    row.output_vertices = smooth.vertices.size();
    row.output_faces = smooth.faces.size();
    row.seconds.smooth = clock.lap();

    row.quality = evaluate_reconstruction(mesh, smooth, cfg.samples, cfg.repeats, cfg.seed);
    row.seconds.metrics = clock.lap();
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

BenchReport run_benchmark(const std::filesystem::path& corpus_dir, const BenchConfig& cfg) {
  BenchReport report;
  report.threads = default_thread_count();
  report.config = cfg;
  for (const auto& path : corpus_files(corpus_dir)) {
    for (auto r : cfg.resolutions) report.rows.push_back(run_benchmark_case(path, r, cfg));
  }
  return report;
}

void write_bench_json(const BenchReport& report, std::ostream& out, bool with_timing) {
  nlohmann::ordered_json j;
  if (with_timing) j["threads"] = report.threads;
  j["config"] = {{"resolutions", report.config.resolutions},
                 {"samples", report.config.samples},
                 {"repeats", report.config.repeats},
                 {"seed", report.config.seed},
                 {"chunk_size", report.config.chunk_size},
                 {"smooth_lambda", report.config.smooth_lambda},
                 {"smooth_iterations", report.config.smooth_iterations}};
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["mesh"] = r.mesh;
    row["resolution"] = r.resolution;
    row["input_faces"] = r.input_faces;
    row["ok"] = r.ok;
    if (!r.ok) {
      row["error"] = r.error;
    } else {
      row["output_vertices"] = r.output_vertices;
      row["output_faces"] = r.output_faces;
      row["chamfer_mean"] = r.quality.chamfer_mean;
      row["chamfer_std"] = r.quality.chamfer_std;
      row["hausdorff_mean"] = r.quality.hausdorff_mean;
      row["hausdorff_std"] = r.quality.hausdorff_std;
      row["chamfer"] = r.quality.chamfer;
      row["hausdorff"] = r.quality.hausdorff;
    }
    if (with_timing) {
      row["seconds"] = {{"load", r.seconds.load},
                        {"normalize", r.seconds.normalize},
                        {"voxelize", r.seconds.voxelize},
                        {"marching_cubes", r.seconds.marching_cubes},
                        {"smooth", r.seconds.smooth},
                        {"metrics", r.seconds.metrics}};
    }
    rows.push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

void write_bench_table(const BenchReport& report, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %5s %8s %10s %10s %10s %10s %10s %10s\n", "mesh", "R",
                "faces", "chamfer", "+-", "hausdorff", "+-", "voxelize_s", "total_s");
  out << line;
  for (const auto& r : report.rows) {
    if (!r.ok) {
      std::snprintf(line, sizeof line, "%-16s %5zu %8zu  FAILED: ", r.mesh.c_str(), r.resolution,
                    r.input_faces);
      out << line << r.error << '\n';
      continue;
    }
    const auto& t = r.seconds;
    const double total = t.load + t.normalize + t.voxelize + t.marching_cubes + t.smooth + t.metrics;
    std::snprintf(line, sizeof line, "%-16s %5zu %8zu %10.5f %10.5f %10.5f %10.5f %10.3f %10.3f\n",
                  r.mesh.c_str(), r.resolution, r.input_faces, r.quality.chamfer_mean,
                  r.quality.chamfer_std, r.quality.hausdorff_mean, r.quality.hausdorff_std,
                  t.voxelize, total);
    out << line;
  }
}

}  // namespace windvox
