#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "windvox/errors.hpp"
#include "windvox/mesh_io.hpp"
#include "windvox/shapes.hpp"

using namespace windvox;

namespace {
TriangleMesh obj(const std::string& text) {
  std::istringstream in(text);
  return read_obj(in);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("windvox_test_" + name);
}
}  // namespace

TEST_CASE("obj: single triangle") {
  const auto m = obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  REQUIRE(m.vertices.size() == 3);
  REQUIRE(m.faces.size() == 1);
  CHECK(m.faces[0] == Face{0, 1, 2});
  CHECK(m.vertices[1] == Vec3{1, 0, 0});
}

TEST_CASE("obj: quad is fan-triangulated") {
  const auto m = obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  REQUIRE(m.faces.size() == 2);
  CHECK(m.faces[0] == Face{0, 1, 2});
  CHECK(m.faces[1] == Face{0, 2, 3});
}

TEST_CASE("obj: negative indices, slash forms, comments and other records") {
  const auto m = obj(
      "# comment\n"
      "o thing\n"
      "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
      "vt 0 0\nvn 0 0 1\n"
      "s off\n"
      "f -3/1/1 -2//1 -1/1\n"
      "v 0 0 1\n"
      "f 1 2 -1\n");
  REQUIRE(m.faces.size() == 2);
  CHECK(m.faces[0] == Face{0, 1, 2});
  CHECK(m.faces[1] == Face{0, 1, 3});
}

TEST_CASE("obj: errors") {
  CHECK_THROWS_AS(obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n"), IndexError);
  CHECK_THROWS_AS(obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 -4\n"), IndexError);
  CHECK_THROWS_AS(obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 0\n"), IndexError);
  CHECK_THROWS_AS(obj("v 0 zero 0\n"), ParseError);
  CHECK_THROWS_AS(obj("v 0 0\n"), ParseError);
  CHECK_THROWS_AS(obj("v 0 0 0\nv 1 0 0\nf 1 2\n"), ParseError);
  CHECK_THROWS_AS(obj("v 0 0 0\nf 1 a 1\n"), ParseError);
}

TEST_CASE("obj round trip keeps faces exactly and coordinates to 17 digits") {
  testing::Rng rng(3);
  TriangleMesh m = shapes::icosphere(1);
  for (auto& v : m.vertices) v += rng.in_box(-1e-3, 1e-3);
  std::stringstream s;
  write_obj(m, s);
  const auto back = read_obj(s);
  CHECK(back.faces == m.faces);
  CHECK(back.vertices == m.vertices);
}

TEST_CASE("stl round trip welds shared corners") {
  const auto cube = shapes::cube(-0.5, 0.5);
  std::stringstream s;
  write_stl(cube, s);
  CHECK(s.str().size() == 84 + 50 * cube.faces.size());
  const auto back = read_stl(s);
  CHECK(back.vertices.size() == 8);
  REQUIRE(back.faces.size() == cube.faces.size());
  for (std::size_t f = 0; f < cube.faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) CHECK(back.vertices[back.faces[f][k]] == cube.vertices[cube.faces[f][k]]);
  }
}

TEST_CASE("stl: truncated file") {
  const auto cube = shapes::cube(-0.5, 0.5);
  std::stringstream s;
  write_stl(cube, s);
  std::string bytes = s.str();
  bytes.resize(bytes.size() - 10);
  std::istringstream in(bytes);
  CHECK_THROWS_AS(read_stl(in), ParseError);
}

TEST_CASE("file round trip by extension") {
  const auto m = shapes::torus(1.0, 0.3, 8, 6);
  for (const char* name : {"rt.obj", "rt.STL"}) {
    const auto p = temp_path(name);
    save_mesh(m, p);
    const auto back = load_mesh(p);
    CHECK(back.faces.size() == m.faces.size());
    CHECK(back.vertices.size() == m.vertices.size());
    std::filesystem::remove(p);
  }
  CHECK_THROWS_AS(load_mesh(temp_path("missing.obj")), IoError);
  CHECK_THROWS_AS(load_mesh(temp_path("x.ply")), Error);
}

TEST_CASE("bundled Suzanne has 968 faces") {
  const auto m = load_mesh(std::filesystem::path(WINDVOX_DATA_DIR) / "suzanne.obj");
  CHECK(m.faces.size() == 968);
  CHECK(m.vertices.size() == 507);
}
