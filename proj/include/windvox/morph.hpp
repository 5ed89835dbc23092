#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "windvox/errors.hpp"
#include "windvox/grad.hpp"
#include "windvox/mesh.hpp"
#include "windvox/winding.hpp"

namespace windvox {

class DivergedError : public Error {
 public:
  using Error::Error;
};

struct MorphConfig {
  double step_size = 0.05;
  double momentum = 0.9;
  int iterations = 300;
  double smooth_weight = 1e-3;
  int log_every = 1;
  /// Give up on an iteration after this many step halvings without decrease.
  int max_halvings = 30;
  QueryBatchConfig batch{};

  /// Throws InvalidArgument for out-of-range values.
  void validate() const;
};

struct MorphLogEntry {
  int iter = 0;
  double loss = 0.0;
  double grad_inf_norm = 0.0;
  double step = 0.0;
};

struct MorphReport {
  std::vector<MorphLogEntry> trace;
  int accepted_steps = 0;
  int halvings = 0;
  bool stalled = false;  // stopped early: no decrease even at the smallest step
  std::string final_mesh_path;
  /// Objective gradient at the returned mesh.
  VertexGradients final_gradients;
};

struct MorphResult {
  TriangleMesh mesh;
  MorphReport report;
};

/// Total objective minimised by morph(): occupancy loss on the target grid plus
/// smooth_weight * sum_v |v - mean(1-ring)|^2.
struct MorphObjective {
  double loss = 0.0;
  VertexGradients grads;
};
MorphObjective morph_objective(const TriangleMesh& mesh, const ScalarField& target,
                               double smooth_weight, const QueryBatchConfig& batch = {});

/// Deforms `templ` (connectivity fixed) so its soft occupancy matches
/// `target`, by gradient descent with heavy-ball momentum. A step that would
/// increase the loss is retried with half the step size and the momentum
/// reset, so the logged loss never increases. Throws DivergedError if the
/// loss becomes non-finite.
MorphResult morph(const TriangleMesh& templ, const ScalarField& target, const MorphConfig& cfg);

void write_morph_report(const MorphReport& report, std::ostream& out);

}  // namespace windvox
