#pragma once

#include <string>

#include "advstab/field.hpp"

namespace advstab {

/// Flat binary container: header (dim, n_per_axis as int64, L as float64,
/// all little-endian) followed by row-major float64 cell values.
void write_field(const ScalarField& f, const std::string& path);
ScalarField read_field(const std::string& path);

/// Vector fields are stored as one scalar-field container per component,
/// at path + ".0" / ".1".
void write_vector_field(const VectorField& u, const std::string& path);
VectorField read_vector_field(const std::string& path, int dim);

/// CSV export (index, coordinates, value) for inspection.
void write_field_csv(const ScalarField& f, const std::string& path);

/// Write a whole file atomically (write to temp in the same directory, then
/// rename over the destination).
void atomic_write_text(const std::string& path, const std::string& content);

} // namespace advstab
