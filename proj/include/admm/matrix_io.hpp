#pragma once

#include <filesystem>

#include "admm/types.hpp"

namespace admm {

/// Text format: first line "rows,cols", then one comma-separated line per
/// row.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_csv(const std::filesystem::path& path);

/// Binary format, little-endian: magic "BMAT", u32 rows, u32 cols, then
/// rows*cols f64 values in row-major order.
void write_matrix_binary(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_binary(const std::filesystem::path& path);

/// Dispatch on extension: ".csv" text, anything else binary.
Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m);

/// Binary PGM (P5, maxval <= 255); returns intensities scaled to [0, 1].
Matrix load_pgm(const std::filesystem::path& path);

}  // namespace admm
