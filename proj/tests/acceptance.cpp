// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: windvox_acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "windvox/bench.hpp"
#include "windvox/grad.hpp"
#include "windvox/metrics.hpp"
#include "windvox/morph.hpp"
#include "windvox/openmesh.hpp"
#include "windvox/shapes.hpp"
#include "windvox/winding.hpp"

using namespace windvox;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * gen_.uniform(); }
  Vec3 in_box(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
  Vec3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * kPi);
    const double r = std::sqrt(1.0 - z * z);
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

 private:
  SplitMix64 gen_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<Vec3> fd_gradient(const TriangleMesh& mesh, const std::function<double(const TriangleMesh&)>& f,
                              double h = 1e-6) {
  std::vector<Vec3> g(mesh.vertices.size());
  TriangleMesh m = mesh;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    for (int k = 0; k < 3; ++k) {
      const double x = m.vertices[v][k];
      m.vertices[v][k] = x + h;
      const double up = f(m);
      m.vertices[v][k] = x - h;
      const double down = f(m);
      m.vertices[v][k] = x;
      g[v][k] = (up - down) / (2 * h);
    }
  }
  return g;
}

double max_abs(const std::vector<Vec3>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max({m, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
  return m;
}

double max_abs_diff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(a[i][k] - b[i][k]));
  }
  return m;
}

// Distance from p to the surface of the box [-h, h]^3.
double box_surface_distance(const Vec3& p, double h) {
  const double dx = std::abs(p.x) - h, dy = std::abs(p.y) - h, dz = std::abs(p.z) - h;
  const double ox = std::max(dx, 0.0), oy = std::max(dy, 0.0), oz = std::max(dz, 0.0);
  const double out = std::sqrt(ox * ox + oy * oy + oz * oz);
  return out > 0.0 ? out : -std::max({dx, dy, dz});
}

// ---------------------------------------------------------------------------

Outcome exactness() {
  Outcome o;
  Rng rng(1);
  const double octant = solid_angle_triangle({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}).value;
  o.require(std::abs(octant - kPi / 2) < 1e-9, fmt("octant %.17g", octant));

  double worst = 0.0;
  auto probe = [&](const TriangleMesh& m, const Vec3& q, double expect) {
    worst = std::max(worst, std::abs(winding_number_exact(m, q) - expect));
  };

  const auto cube = shapes::cube(-1, 1);
  for (int i = 0; i < 1000; ++i) probe(cube, rng.in_box(-0.999, 0.999), 1.0);
  for (int i = 0; i < 1000; ++i) {
    Vec3 q = rng.in_box(-3, 3);
    if (std::max({std::abs(q.x), std::abs(q.y), std::abs(q.z)}) <= 1.001) q = q * (1.5 / std::max({std::abs(q.x), std::abs(q.y), std::abs(q.z)}));
    probe(cube, q, 0.0);
  }

  // Icosahedron: interior probes inside the inscribed sphere, exterior outside
  // the circumscribed one.
  const auto ico = shapes::icosahedron(1.0);
  const double inradius = 0.7946544722917661;
  for (int i = 0; i < 1000; ++i) probe(ico, rng.unit_vector() * (0.999 * inradius * std::cbrt(rng.uniform())), 1.0);
  for (int i = 0; i < 1000; ++i) probe(ico, rng.unit_vector() * rng.uniform(1.001, 4.0), 0.0);

  // Torus: probes by distance to the core circle, with margins that cover the
  // polygonal approximation.
  const double big = 0.6, small = 0.25;
  const auto torus = shapes::torus(big, small, 32, 16);
  auto torus_probe = [&](double lo, double hi) {
    const double phi = rng.uniform(0, 2 * kPi), theta = rng.uniform(0, 2 * kPi);
    const double r = small * rng.uniform(lo, hi);
    return Vec3{(big + r * std::cos(theta)) * std::cos(phi), (big + r * std::cos(theta)) * std::sin(phi), r * std::sin(theta)};
  };
  for (int i = 0; i < 1000; ++i) probe(torus, torus_probe(0.0, 0.9), 1.0);
  for (int i = 0; i < 1000; ++i) probe(torus, torus_probe(1.1, 3.0), 0.0);
  o.require(worst < 1e-9, fmt("max probe error %.3g", worst));
  o.note(fmt("max probe error %.3g", worst));

  const auto nested = shapes::merge(shapes::cube(-1, 1), shapes::cube(-0.5, 0.5));
  const double w2 = winding_number_exact(nested, {0, 0, 0});
  o.require(std::abs(w2 - 2.0) < 1e-9, fmt("nested %.17g", w2));

  std::size_t mismatched = 0;
  for (const auto* m : {&cube, &ico, &torus}) {
    const auto flipped = flipped_orientation(*m);
    for (int i = 0; i < 300; ++i) {
      const Vec3 q = rng.in_box(-2, 2);
      if (winding_number_exact(flipped, q) != -winding_number_exact(*m, q)) ++mismatched;
    }
  }
  o.require(mismatched == 0, fmt("flip mismatches %.0f", double(mismatched)));
  return o;
}

Outcome tufted_covers() {
  Outcome o;
  const double half = 0.5;
  const auto cube = shapes::cube(-half, half);
  const auto spec = GridSpec::cube(-1, 1, 64);
  const double h = spec.spacing().x;
  double frac[2] = {0, 0};
  int b = 0;
  for (auto branch : {detail::AngleBranch::atan2, detail::AngleBranch::plain_arctan}) {
    const auto f = detail::voxelize_with_branch(cube, spec, {}, branch);
    std::size_t total = 0, fuzzy = 0;
    for (std::size_t n = 0; n < f.values.size(); ++n) {
      if (box_surface_distance(spec.node(n), half) <= h) continue;
      ++total;
      fuzzy += f.values[n] > 0.1 && f.values[n] < 0.9;
    }
    frac[b++] = double(fuzzy) / double(total);
  }
  o.require(frac[0] < 1e-3, "atan2 fraction too high");
  o.require(frac[1] > frac[0], "arctan path not worse");
  o.note(fmt("atan2 %.3g, arctan %.3g", frac[0], frac[1]));
  return o;
}

Outcome gradients() {
  Outcome o;
  Rng rng(3);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    TriangleMesh m;
    if (t % 2 == 0) {
      m = shapes::icosphere(1, rng.uniform(0.4, 0.9));  // 42 vertices
      for (auto& v : m.vertices) v += rng.in_box(-0.05, 0.05);
    } else {
      const int nf = 1 + t % 16;  // soup, up to 48 vertices
      for (int f = 0; f < nf; ++f) {
        const Vec3 c = rng.in_box(-0.7, 0.7);
        for (int k = 0; k < 3; ++k) m.vertices.push_back(c + rng.in_box(-0.3, 0.3));
        const auto b = static_cast<std::uint32_t>(3 * f);
        m.faces.push_back({b, b + 1, b + 2});
      }
    }
    // Off-surface: keep q away from every face centroid.
    Vec3 q;
    for (bool ok = false; !ok;) {
      q = rng.in_box(-1.2, 1.2);
      ok = true;
      for (const auto& f : m.faces) {
        const Vec3 c = (m.vertices[f[0]] + m.vertices[f[1]] + m.vertices[f[2]]) / 3.0;
        ok = ok && norm(c - q) > 0.05;
      }
    }
    const auto g = soft_winding_vertex_jacobian(m, q);
    const auto fd = fd_gradient(m, [&](const TriangleMesh& mm) { return winding_number_soft(mm, q); });
    worst = std::max(worst, max_abs_diff(g, fd) / std::max(max_abs(fd), 1e-300));
  }
  o.require(worst < 1e-4, "soft gradient mismatch");
  o.note(fmt("worst relative error %.3g", worst));

  double exact_grad = 0.0;
  const std::vector<std::pair<TriangleMesh, Vec3>> interior{
      {shapes::cube(-1, 1), {0, 0, 0}},
      {shapes::cube(-1, 1), {0.3, -0.5, 0.7}},
      {shapes::icosphere(2, 1.0), {0.1, 0.2, -0.3}},
      {shapes::torus(0.6, 0.25, 24, 12), {0.6, 0.0, 0.05}},
  };
  for (const auto& [m, q] : interior) {
    const auto fd = fd_gradient(m, [&](const TriangleMesh& mm) { return winding_number_exact(mm, q); });
    exact_grad = std::max(exact_grad, max_abs(fd));
  }
  o.require(exact_grad < 1e-8, "exact interior gradient not vanishing");
  o.note(fmt("exact interior |grad|inf %.3g", exact_grad));
  return o;
}

Outcome open_mesh() {
  Outcome o;
  const auto cap = shapes::upper_hemisphere(4);
  const double eps = 0.01;
  const auto shell = flipped_duplication(cap, eps).mesh;
  Rng rng(4);
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < 200; ++i) {
    Vec3 dir = rng.unit_vector();
    dir.z = std::abs(dir.z) + 0.2;  // away from the open rim
    const double w = winding_number_exact(shell, normalized(dir) * (1.0 - eps / 2));
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  const double origin = winding_number_exact(shell, {0, 0, 0});
  o.require(lo >= 0.9 && hi <= 1.1, "between-layer probes out of range");
  o.require(std::abs(origin) < 0.1, "origin not near 0");
  o.note(fmt("between-layer [%.4f, %.4f]", lo, hi) + fmt(", origin %.4f", origin));
  return o;
}

Outcome paper_numbers() {
  Outcome o;
  const BenchConfig cfg;
  struct Case {
    const char* file;
    std::size_t r;
    double chamfer;
    double hausdorff;  // 0 when not gated
  };
  for (const Case c : {Case{"suzanne.obj", 256, 0.01947, 0.08047}, Case{"suzanne.obj", 64, 0.03614, 0.0},
                       Case{"bunny.obj", 128, 0.02668, 0.0}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto row = run_benchmark_case(fs::path(WINDVOX_DATA_DIR) / c.file, c.r, cfg);
    const std::string tag = std::string(c.file) + "@" + std::to_string(c.r);
    if (!row.ok) {
      o.require(false, tag + " failed: " + row.error);
      continue;
    }
    const double ch = row.quality.chamfer_mean, hd = row.quality.hausdorff_mean;
    o.require(std::abs(ch - c.chamfer) <= 0.25 * c.chamfer, tag + fmt(" chamfer %.5f vs %.5f", ch, c.chamfer));
    if (c.hausdorff > 0) {
      o.require(std::abs(hd - c.hausdorff) <= 0.25 * c.hausdorff, tag + fmt(" hausdorff %.5f vs %.5f", hd, c.hausdorff));
    }
    o.note(tag + fmt(" chamfer %.5f hausdorff %.5f", ch, hd) + fmt(" (%.0f s)", seconds_since(t0)));
  }
  return o;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= double(x.size());
  my /= double(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

double time_voxelize(const TriangleMesh& m, std::size_t r) {
  const auto spec = GridSpec::cube(-1, 1, r);
  double best = INFINITY;
  // Best of two to damp scheduler noise.
  for (int k = 0; k < 2; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto f = voxelize(m, spec, WindingMode::exact);
    best = std::min(best, seconds_since(t0));
    if (f.values.empty()) std::abort();
  }
  return best;
}

Outcome scaling() {
  Outcome o;
  std::vector<double> faces, tf;
  for (std::size_t seg : {32, 64, 128}) {
    const auto m = shapes::torus(0.6, 0.25, seg, seg / 2);
    faces.push_back(double(m.faces.size()));
    tf.push_back(time_voxelize(m, 64));
  }
  const auto fixed = shapes::torus(0.6, 0.25, 32, 16);
  std::vector<double> res, tr;
  for (std::size_t r : {32, 64, 128}) {
    res.push_back(double(r));
    tr.push_back(time_voxelize(fixed, r));
  }
  const double sf = slope(faces, tf), sr = slope(res, tr);
  o.require(sf >= 0.8 && sf <= 1.2, "face slope out of range");
  o.require(sr >= 2.5 && sr <= 3.5, "resolution slope out of range");
  o.note(fmt("faces slope %.3f, resolution slope %.3f", sf, sr));
  return o;
}

std::string bench_json(const fs::path& corpus) {
  BenchConfig cfg;
  cfg.resolutions = {32};
  cfg.samples = 5000;
  cfg.repeats = 2;
  std::ostringstream s;
  write_bench_json(run_benchmark(corpus, cfg), s, false);
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const auto mesh = shapes::torus(0.6, 0.25, 24, 12);
  const auto spec = GridSpec::cube(-1, 1, 32);
  auto templ = shapes::icosphere(1, 0.5);
  const auto target = voxelize(shapes::cube(-0.6, 0.6), GridSpec::cube(-1, 1, 12), WindingMode::exact);

  const fs::path corpus = fs::temp_directory_path() / "windvox_acceptance_corpus";
  fs::remove_all(corpus);
  fs::create_directories(corpus);
  fs::copy_file(fs::path(WINDVOX_DATA_DIR) / "suzanne.obj", corpus / "suzanne.obj");
  fs::copy_file(fs::path(WINDVOX_DATA_DIR) / "bunny.obj", corpus / "bunny.obj");

  struct Snapshot {
    std::vector<double> field;
    std::vector<double> soft_field;
    double loss = 0;
    std::vector<Vec3> grads;
    std::vector<Vec3> morphed;
    std::string morph_report;
    std::string bench;
    bool operator==(const Snapshot&) const = default;
  };
  auto snapshot = [&](unsigned threads) {
    Snapshot s;
    QueryBatchConfig batch;
    batch.thread_count = threads;
    s.field = voxelize(mesh, spec, WindingMode::exact, batch).values;
    s.soft_field = voxelize(mesh, spec, WindingMode::soft, batch).values;
    const auto g = occupancy_loss_grad(templ, target, std::nullopt, batch);
    s.loss = g.loss;
    s.grads = g.grads;
    MorphConfig cfg;
    cfg.iterations = 20;
    cfg.batch = batch;
    const auto r = morph(templ, target, cfg);
    s.morphed = r.mesh.vertices;
    std::ostringstream rep;
    write_morph_report(r.report, rep);
    s.morph_report = rep.str();
    setenv("WINDVOX_THREADS", std::to_string(threads).c_str(), 1);
    s.bench = bench_json(corpus);
    unsetenv("WINDVOX_THREADS");
    return s;
  };
  const Snapshot ref = snapshot(1);
  int differing = 0;
  std::string which;
  for (unsigned t : {1u, 4u, 16u}) {
    for (int run = 0; run < 2; ++run) {
      if (t == 1 && run == 0) continue;  // that is the reference
      const Snapshot s = snapshot(t);
      if (!(s == ref)) {
        ++differing;
        which += " t" + std::to_string(t) + "r" + std::to_string(run);
      }
    }
  }
  fs::remove_all(corpus);
  o.require(differing == 0, "outputs differ:" + which);
  o.note("5 reruns compared against threads=1");
  return o;
}

Outcome morph_demo() {
  Outcome o;
  const auto templ = shapes::icosphere(2, 0.5);
  const auto cube = shapes::cube(-0.6, 0.6);
  const auto target = voxelize(cube, GridSpec::cube(-1, 1, 32), WindingMode::exact);
  MorphConfig cfg;
  cfg.iterations = 300;
  // The loss is a mean over 32^3 nodes, so gradients are small; the 0.05
  // default only gets about a third of the way in 300 iterations.
  cfg.step_size = 2.0;
  const auto r = morph(templ, target, cfg);
  const double before = evaluate_reconstruction(cube, templ).chamfer_mean;
  const double after = evaluate_reconstruction(cube, r.mesh).chamfer_mean;
  bool monotone = true;
  for (std::size_t i = 1; i < r.report.trace.size(); ++i) monotone = monotone && r.report.trace[i].loss <= r.report.trace[i - 1].loss;
  o.require(after <= 0.5 * before, "chamfer not halved");
  o.require(monotone, "loss trace increased");
  o.note(fmt("chamfer %.5f -> %.5f", before, after) +
         fmt(", loss %.4g -> %.4g", r.report.trace.front().loss, r.report.trace.back().loss) +
         ", " + std::to_string(r.report.accepted_steps) + " accepted steps");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = not time-gated
    Outcome (*run)();
  };
  const std::vector<Criterion> all{
      {1, "exactness", 10, exactness},
      {2, "tufted covers", 30, tufted_covers},
      {3, "gradients", 60, gradients},
      {4, "open mesh", 30, open_mesh},
      {5, "paper numbers", 0, paper_numbers},
      {6, "scaling", 0, scaling},
      {7, "determinism", 0, determinism},
      {8, "morph", 300, morph_demo},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    if (c.limit_s > 0) o.require(dt < c.limit_s, fmt("runtime %.1f s over %.0f s", dt, c.limit_s));
    std::printf("%s %d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, dt, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
