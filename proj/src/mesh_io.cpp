#include "windvox/mesh_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "windvox/errors.hpp"

namespace windvox {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary STL and WVOX1 I/O assume a little-endian host");

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view next_token(std::string_view& s) {
  s = trim(s);
  std::size_t end = 0;
  while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
  auto tok = s.substr(0, end);
  s.remove_prefix(end);
  return tok;
}

double parse_double(std::string_view tok, std::size_t line_no) {
  // std::from_chars for double is not universally available; strtod needs a
  // terminated buffer.
  std::string buf(tok);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + buf + "'");
  }
  return v;
}

std::uint32_t resolve_index(std::string_view tok, std::size_t num_vertices, std::size_t line_no) {
  // Only the position index matters: "7", "7/1", "7//3", "7/1/3".
  const auto slash = tok.find('/');
  if (slash != std::string_view::npos) tok = tok.substr(0, slash);
  long long raw = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), raw);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad face index '" +
                     std::string(tok) + "'");
  }
  const long long n = static_cast<long long>(num_vertices);
  const long long idx = raw > 0 ? raw - 1 : n + raw;
  if (idx < 0 || idx >= n) {
    throw IndexError("line " + std::to_string(line_no) + ": face index " + std::to_string(raw) +
                     " out of range for " + std::to_string(n) + " vertices");
  }
  return static_cast<std::uint32_t>(idx);
}

}  // namespace

std::optional<MeshFormat> format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".obj") return MeshFormat::obj;
  if (ext == ".stl") return MeshFormat::stl;
  return std::nullopt;
}

TriangleMesh read_obj(std::istream& in) {
  TriangleMesh mesh;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::uint32_t> poly;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    const auto tag = next_token(rest);
    if (tag == "v") {
      Vec3 p;
      for (int k = 0; k < 3; ++k) {
        const auto tok = next_token(rest);
        if (tok.empty()) throw ParseError("line " + std::to_string(line_no) + ": vertex needs 3 coordinates");
        p[k] = parse_double(tok, line_no);
      }
      mesh.vertices.push_back(p);
    } else if (tag == "f") {
      poly.clear();
      for (auto tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
        poly.push_back(resolve_index(tok, mesh.vertices.size(), line_no));
      }
      if (poly.size() < 3) {
        throw ParseError("line " + std::to_string(line_no) + ": face needs at least 3 vertices");
      }
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        mesh.faces.push_back({poly[0], poly[k], poly[k + 1]});
      }
    }
    // Everything else (vt, vn, g, o, usemtl, ...) is ignored.
  }
  if (in.bad()) throw IoError("read error while parsing OBJ");
  return mesh;
}

TriangleMesh read_stl(std::istream& in) {
  char header[80];
  if (!in.read(header, sizeof header)) throw ParseError("STL: truncated header");
  std::uint32_t count = 0;
  if (!in.read(reinterpret_cast<char*>(&count), sizeof count)) {
    throw ParseError("STL: missing triangle count");
  }

  TriangleMesh mesh;
  mesh.faces.reserve(count);
  std::map<std::array<float, 3>, std::uint32_t> welded;
  for (std::uint32_t t = 0; t < count; ++t) {
    float rec[12];
    std::uint16_t attr = 0;
    if (!in.read(reinterpret_cast<char*>(rec), sizeof rec) ||
        !in.read(reinterpret_cast<char*>(&attr), sizeof attr)) {
      throw ParseError("STL: truncated at triangle " + std::to_string(t) + " of " +
                       std::to_string(count));
    }
    Face face{};
    for (int c = 0; c < 3; ++c) {
      // rec[0..2] is the stored normal, ignored.
      const std::array<float, 3> key{rec[3 + 3 * c], rec[4 + 3 * c], rec[5 + 3 * c]};
      auto [it, inserted] = welded.try_emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
      if (inserted) mesh.vertices.push_back({key[0], key[1], key[2]});
      face[c] = it->second;
    }
    mesh.faces.push_back(face);
  }
  return mesh;
}

TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return format == MeshFormat::obj ? read_obj(in) : read_stl(in);
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
  const auto fmt = format_from_extension(path);
  if (!fmt) throw ParseError("unknown mesh extension: " + path.string());
  return load_mesh(path, *fmt);
}

void write_obj(const TriangleMesh& mesh, std::ostream& out) {
  char buf[96];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void write_stl(const TriangleMesh& mesh, std::ostream& out) {
  char header[80] = {};
  std::strncpy(header, "binary STL written by windvox", sizeof header - 1);
  out.write(header, sizeof header);
  const auto count = static_cast<std::uint32_t>(mesh.faces.size());
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    float rec[12];
    const Vec3 n = normalized(face_normal(mesh, f));
    rec[0] = static_cast<float>(n.x);
    rec[1] = static_cast<float>(n.y);
    rec[2] = static_cast<float>(n.z);
    for (int c = 0; c < 3; ++c) {
      const Vec3& p = mesh.vertices[mesh.faces[f][c]];
      rec[3 + 3 * c] = static_cast<float>(p.x);
      rec[4 + 3 * c] = static_cast<float>(p.y);
      rec[5 + 3 * c] = static_cast<float>(p.z);
    }
    const std::uint16_t attr = 0;
    out.write(reinterpret_cast<const char*>(rec), sizeof rec);
    out.write(reinterpret_cast<const char*>(&attr), sizeof attr);
  }
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path, MeshFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == MeshFormat::obj) {
    write_obj(mesh, out);
  } else {
    write_stl(mesh, out);
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path) {
  const auto fmt = format_from_extension(path);
  if (!fmt) throw IoError("unknown mesh extension: " + path.string());
  save_mesh(mesh, path, *fmt);
}

}  // namespace windvox
