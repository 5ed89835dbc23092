#include "windvox/field_io.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "windvox/errors.hpp"

namespace windvox {

static_assert(std::endian::native == std::endian::little,
              "WVOX1 stores little-endian values and is written with native stores");

namespace {
constexpr const char* kMagic = "WVOX1";
constexpr const char* kOrder = "zyx-fastest-z";
}  // namespace

void write_field(const ScalarField& field, std::ostream& out, FieldDType dtype) {
  const auto& s = field.spec;
  if (field.values.size() != s.num_nodes()) {
    throw InvalidArgument("field has " + std::to_string(field.values.size()) +
                          " values but its grid has " + std::to_string(s.num_nodes()) + " nodes");
  }
  nlohmann::ordered_json header;
  header["magic"] = kMagic;
  header["resolution"] = {s.resolution[0], s.resolution[1], s.resolution[2]};
  header["bounds_min"] = {s.bounds_min.x, s.bounds_min.y, s.bounds_min.z};
  header["bounds_max"] = {s.bounds_max.x, s.bounds_max.y, s.bounds_max.z};
  header["dtype"] = dtype == FieldDType::f64 ? "f64" : "f32";
  header["order"] = kOrder;
  out << header.dump() << '\n';

  if (dtype == FieldDType::f64) {
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  } else {
    std::vector<float> narrow(field.values.begin(), field.values.end());
    out.write(reinterpret_cast<const char*>(narrow.data()),
              static_cast<std::streamsize>(narrow.size() * sizeof(float)));
  }
}

ScalarField read_field(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("WVOX1: missing header line");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("WVOX1: bad header: ") + e.what());
  }

  ScalarField field;
  std::string dtype;
  try {
    if (header.at("magic").get<std::string>() != kMagic) throw ParseError("WVOX1: bad magic");
    if (header.at("order").get<std::string>() != kOrder) throw ParseError("WVOX1: unsupported order");
    dtype = header.at("dtype").get<std::string>();
    const auto res = header.at("resolution").get<std::vector<std::size_t>>();
    const auto lo = header.at("bounds_min").get<std::vector<double>>();
    const auto hi = header.at("bounds_max").get<std::vector<double>>();
    if (res.size() != 3 || lo.size() != 3 || hi.size() != 3) {
      throw ParseError("WVOX1: resolution and bounds need 3 components");
    }
    field.spec = GridSpec{{lo[0], lo[1], lo[2]}, {hi[0], hi[1], hi[2]}, {res[0], res[1], res[2]}};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("WVOX1: bad header: ") + e.what());
  }
  try {
    field.spec.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("WVOX1: ") + e.what());
  }

  const std::size_t n = field.spec.num_nodes();
  field.values.resize(n);
  if (dtype == "f64") {
    in.read(reinterpret_cast<char*>(field.values.data()), static_cast<std::streamsize>(n * sizeof(double)));
  } else if (dtype == "f32") {
    std::vector<float> narrow(n);
    in.read(reinterpret_cast<char*>(narrow.data()), static_cast<std::streamsize>(n * sizeof(float)));
    std::copy(narrow.begin(), narrow.end(), field.values.begin());
  } else {
    throw ParseError("WVOX1: unknown dtype '" + dtype + "'");
  }
  if (!in) throw ParseError("WVOX1: truncated payload");
  return field;
}

void save_field(const ScalarField& field, const std::filesystem::path& path, FieldDType dtype) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_field(field, out, dtype);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

ScalarField load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_field(in);
}

}  // namespace windvox
