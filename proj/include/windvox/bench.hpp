#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "windvox/metrics.hpp"

namespace windvox {

struct BenchConfig {
  std::vector<std::size_t> resolutions{32, 64, 128, 256};
  std::size_t samples = 20000;
  int repeats = 3;
  std::uint64_t seed = 0;
  std::size_t chunk_size = 2000;
  double smooth_lambda = 0.15;
  int smooth_iterations = 10;
};

/// Wall-clock seconds per pipeline stage.
struct StageTimes {
  double load = 0.0;
  double normalize = 0.0;
  double voxelize = 0.0;
  double marching_cubes = 0.0;
  double smooth = 0.0;
  double metrics = 0.0;
};

struct BenchRow {
  std::string mesh;
  std::size_t resolution = 0;
  std::size_t input_faces = 0;
  bool ok = false;
  std::string error;  // set when !ok
  std::size_t output_vertices = 0;
  std::size_t output_faces = 0;
  ReconstructionReport quality;
  StageTimes seconds;
};

struct BenchReport {
  unsigned threads = 0;
  BenchConfig config;
  std::vector<BenchRow> rows;
};

/// Every OBJ/STL file directly inside `corpus_dir`, sorted by file name.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& corpus_dir);

/// For every mesh and resolution: normalize to [-1,1]^3, voxelize (exact) on
/// the [-1,1]^3 grid, marching cubes at 0.5, Laplacian smoothing, then
/// Chamfer/Hausdorff against the normalized input. A mesh that fails to load
/// or process is recorded with its error and the run continues.
BenchReport run_benchmark(const std::filesystem::path& corpus_dir, const BenchConfig& cfg);
BenchRow run_benchmark_case(const std::filesystem::path& mesh_path, std::size_t resolution,
                            const BenchConfig& cfg);

/// JSON report; `with_timing` false drops the wall-clock fields so reruns
/// compare byte for byte.
void write_bench_json(const BenchReport& report, std::ostream& out, bool with_timing = true);
void write_bench_table(const BenchReport& report, std::ostream& out);

}  // namespace windvox
