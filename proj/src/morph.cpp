#include "windvox/morph.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>

#include "windvox/errors.hpp"

namespace windvox {

void MorphConfig::validate() const {
  if (!(step_size >= 0.0)) throw InvalidArgument("step_size must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw InvalidArgument("momentum must be in [0, 1)");
  if (iterations < 0) throw InvalidArgument("iterations must be >= 0");
  if (!(smooth_weight >= 0.0)) throw InvalidArgument("smooth_weight must be >= 0");
  if (log_every < 1) throw InvalidArgument("log_every must be >= 1");
  if (max_halvings < 0) throw InvalidArgument("max_halvings must be >= 0");
}

namespace {

// E = sum_v |v - mean(ring(v))|^2 and its gradient.
double laplacian_energy(const std::vector<Vec3>& x, const std::vector<std::vector<std::uint32_t>>& rings,
                        VertexGradients& grad, double weight) {
  std::vector<Vec3> lap(x.size());
  double energy = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (rings[v].empty()) continue;
    Vec3 mean;
    for (auto u : rings[v]) mean += x[u];
    lap[v] = x[v] - mean / static_cast<double>(rings[v].size());
    energy += squared_norm(lap[v]);
  }
  if (weight == 0.0) return 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (rings[v].empty()) continue;
    grad[v] += lap[v] * (2.0 * weight);
    const double share = 2.0 * weight / static_cast<double>(rings[v].size());
    for (auto u : rings[v]) grad[u] -= lap[v] * share;
  }
  return weight * energy;
}

double inf_norm(const VertexGradients& g) {
  double m = 0.0;
  for (const auto& v : g) m = std::max({m, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
  return m;
}

bool contains(const GridSpec& spec, const BoundingBox& box) {
  for (int a = 0; a < 3; ++a) {
    if (box.min[a] < spec.bounds_min[a] || box.max[a] > spec.bounds_max[a]) return false;
  }
  return true;
}

}  // namespace

MorphObjective morph_objective(const TriangleMesh& mesh, const ScalarField& target,
                               double smooth_weight, const QueryBatchConfig& batch) {
  auto occ = occupancy_loss_grad(mesh, target, std::nullopt, batch);
  MorphObjective obj{occ.loss, std::move(occ.grads)};
  if (smooth_weight > 0.0) {
    obj.loss += laplacian_energy(mesh.vertices, vertex_neighbors(mesh), obj.grads, smooth_weight);
  }
  return obj;
}

MorphResult morph(const TriangleMesh& templ, const ScalarField& target, const MorphConfig& cfg) {
  cfg.validate();
  if (templ.faces.empty()) throw InvalidArgument("morph needs a non-empty template mesh");
  templ.validate();
  if (!contains(target.spec, bounding_box(templ))) {
    throw InvalidArgument("target grid bounds must contain the template bounding box");
  }

  const auto rings = vertex_neighbors(templ);
  auto evaluate = [&](const TriangleMesh& m) {
    auto occ = occupancy_loss_grad(m, target, std::nullopt, cfg.batch);
    MorphObjective obj{occ.loss, std::move(occ.grads)};
    if (cfg.smooth_weight > 0.0) obj.loss += laplacian_energy(m.vertices, rings, obj.grads, cfg.smooth_weight);
    return obj;
  };

  MorphResult result{templ, {}};
  TriangleMesh& x = result.mesh;
  MorphReport& rep = result.report;
  MorphObjective cur = evaluate(x);
  if (!std::isfinite(cur.loss)) throw DivergedError("initial morph loss is not finite");
  rep.trace.push_back({0, cur.loss, inf_norm(cur.grads), cfg.step_size});

  std::vector<Vec3> velocity(x.vertices.size());
  double step = cfg.step_size;
  TriangleMesh trial = x;
  std::vector<Vec3> trial_velocity(x.vertices.size());
  for (int it = 1; it <= cfg.iterations; ++it) {
    bool accepted = false;
    for (int h = 0; h <= cfg.max_halvings; ++h) {
      for (std::size_t v = 0; v < x.vertices.size(); ++v) {
        trial_velocity[v] = velocity[v] * cfg.momentum - cur.grads[v] * step;
        trial.vertices[v] = x.vertices[v] + trial_velocity[v];
      }
      MorphObjective next = evaluate(trial);
      if (std::isfinite(next.loss) && next.loss <= cur.loss) {
        std::swap(x.vertices, trial.vertices);
        std::swap(velocity, trial_velocity);
        cur = std::move(next);
        accepted = true;
        ++rep.accepted_steps;
        break;
      }
      step *= 0.5;
      std::fill(velocity.begin(), velocity.end(), Vec3{});
      ++rep.halvings;
    }
    if (!accepted) {
      rep.stalled = true;
      if (rep.trace.back().iter != it - 1) rep.trace.push_back({it - 1, cur.loss, inf_norm(cur.grads), step});
      break;
    }
    if (it % cfg.log_every == 0 || it == cfg.iterations) {
      rep.trace.push_back({it, cur.loss, inf_norm(cur.grads), step});
    }
  }
  rep.final_gradients = cur.grads;
  return result;
}

void write_morph_report(const MorphReport& report, std::ostream& out) {
  nlohmann::ordered_json j;
  auto& trace = j["trace"] = nlohmann::ordered_json::array();
  for (const auto& e : report.trace) {
    trace.push_back({{"iter", e.iter}, {"loss", e.loss}, {"grad_inf_norm", e.grad_inf_norm}, {"step", e.step}});
  }
  j["accepted_steps"] = report.accepted_steps;
  j["halvings"] = report.halvings;
  j["stalled"] = report.stalled;
  j["final_mesh"] = report.final_mesh_path;
  auto& grads = j["final_gradients"] = nlohmann::ordered_json::array();
  for (const auto& g : report.final_gradients) grads.push_back({g.x, g.y, g.z});
  out << j.dump(2) << '\n';
}

}  // namespace windvox
