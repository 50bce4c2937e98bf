#include "admm/matrix_io.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace admm {

static_assert(std::endian::native == std::endian::little,
              "binary matrix format is little-endian");

namespace {

constexpr char kMagic[4] = {'B', 'M', 'A', 'T'};

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw ConfigError(path.string() + ": " + what);
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) fail(path, "cannot open for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) fail(path, "cannot open for writing");
  return out;
}

}  // namespace

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out = open_out(path, std::ios::out);
  out.precision(17);
  out << m.rows() << ',' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  if (!out) fail(path, "write failed");
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path, std::ios::in);
  std::string line;
  if (!std::getline(in, line)) fail(path, "missing header line");
  Index rows = 0, cols = 0;
  {
    std::istringstream header(line);
    char sep = 0;
    if (!(header >> rows >> sep >> cols) || sep != ',' || rows < 1 || cols < 1) {
      fail(path, "bad header, expected \"rows,cols\"");
    }
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) fail(path, "truncated at row " + std::to_string(i));
    std::istringstream row(line);
    std::string cell;
    for (Index j = 0; j < cols; ++j) {
      if (!std::getline(row, cell, ',')) {
        fail(path, "row " + std::to_string(i) + " has too few values");
      }
      try {
        m(i, j) = std::stod(cell);
      } catch (const std::exception&) {
        fail(path, "bad value at row " + std::to_string(i));
      }
    }
  }
  return m;
}

void write_matrix_binary(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out = open_out(path, std::ios::binary);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t rows = static_cast<std::uint32_t>(m.rows());
  const std::uint32_t cols = static_cast<std::uint32_t>(m.cols());
  out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
  out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
  if (!out) fail(path, "write failed");
}

Matrix read_matrix_binary(const std::filesystem::path& path) {
  std::ifstream in = open_in(path, std::ios::binary);
  char magic[4];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, 4) != 0) {
    fail(path, "bad magic, expected BMAT");
  }
  std::uint32_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&rows), sizeof(rows));
  in.read(reinterpret_cast<char*>(&cols), sizeof(cols));
  if (!in || rows == 0 || cols == 0) fail(path, "bad dimensions");
  Matrix m(rows, cols);
  for (std::uint32_t i = 0; i < rows; ++i) {
    for (std::uint32_t j = 0; j < cols; ++j) {
      double v;
      if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) fail(path, "truncated data");
      m(i, j) = v;
    }
  }
  return m;
}

Matrix load_matrix(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? read_matrix_csv(path) : read_matrix_binary(path);
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  if (path.extension() == ".csv") {
    write_matrix_csv(path, m);
  } else {
    write_matrix_binary(path, m);
  }
}

namespace {

// PGM header token reader: skips whitespace and # comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {}
      continue;
    }
    if (!std::isspace(ch)) {
      tok.push_back(static_cast<char>(ch));
      while ((ch = in.get()) != EOF && !std::isspace(static_cast<unsigned char>(ch))) {
        tok.push_back(static_cast<char>(ch));
      }
      break;
    }
  }
  return tok;
}

}  // namespace

Matrix load_pgm(const std::filesystem::path& path) {
  std::ifstream in = open_in(path, std::ios::binary);
  if (pgm_token(in) != "P5") fail(path, "not a binary PGM (P5) file");
  long width = 0, height = 0, maxval = 0;
  try {
    width = std::stol(pgm_token(in));
    height = std::stol(pgm_token(in));
    maxval = std::stol(pgm_token(in));
  } catch (const std::exception&) {
    fail(path, "bad PGM header");
  }
  if (width < 1 || height < 1 || maxval < 1 || maxval > 255) {
    fail(path, "unsupported PGM header (need maxval <= 255)");
  }
  std::vector<unsigned char> raw(static_cast<std::size_t>(width) *
                                 static_cast<std::size_t>(height));
  if (!in.read(reinterpret_cast<char*>(raw.data()),
               static_cast<std::streamsize>(raw.size()))) {
    fail(path, "truncated pixel data");
  }
  Matrix img(height, width);
  const double scale = 1.0 / static_cast<double>(maxval);
  for (long i = 0; i < height; ++i) {
    for (long j = 0; j < width; ++j) {
      img(i, j) = scale * raw[static_cast<std::size_t>(i * width + j)];
    }
  }
  return img;
}

}  // namespace admm
