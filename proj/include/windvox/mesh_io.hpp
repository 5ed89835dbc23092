#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "windvox/mesh.hpp"

namespace windvox {

enum class MeshFormat { obj, stl };

/// Guesses the format from the file extension (case-insensitive).
std::optional<MeshFormat> format_from_extension(const std::filesystem::path& path);

/// OBJ: `v` and `f` records only, 1-based or negative (relative) indices,
/// `f a/b/c` forms accepted, polygons fan-triangulated from their first corner.
/// STL: binary only; coincident corners are welded in first-seen order.
TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
TriangleMesh load_mesh(const std::filesystem::path& path);

TriangleMesh read_obj(std::istream& in);
TriangleMesh read_stl(std::istream& in);

/// OBJ coordinates are written with 17 significant digits.
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path, MeshFormat format);
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path);

void write_obj(const TriangleMesh& mesh, std::ostream& out);
void write_stl(const TriangleMesh& mesh, std::ostream& out);

}  // namespace windvox
