#pragma once

#include <filesystem>
#include <iosfwd>

#include "windvox/winding.hpp"

namespace windvox {

enum class FieldDType { f64, f32 };

/// WVOX1 layout: one JSON header line
///   {"magic":"WVOX1","resolution":[Rx,Ry,Rz],"bounds_min":[x,y,z],
///    "bounds_max":[x,y,z],"dtype":"f64"|"f32","order":"zyx-fastest-z"}
/// terminated by '\n', followed by Rx*Ry*Rz little-endian values in
/// GridSpec::flat_index order.
void write_field(const ScalarField& field, std::ostream& out, FieldDType dtype = FieldDType::f64);
ScalarField read_field(std::istream& in);

void save_field(const ScalarField& field, const std::filesystem::path& path,
                FieldDType dtype = FieldDType::f64);
ScalarField load_field(const std::filesystem::path& path);

}  // namespace windvox
