#include "dnls/harness/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "dnls/errors.hpp"
#include "dnls/harness/config.hpp"

namespace dnls::harness {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("table row width does not match its header");
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return std::get<std::string>(c);
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += '\n';
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Table field_table(const Field& f) {
  Table t{{"x", "re", "im"}, {}};
  for (std::size_t j = 0; j < f.size(); ++j) {
    t.add({f.grid().node(j), f[j].real(), f[j].imag()});
  }
  return t;
}

Field read_field_csv(const std::filesystem::path& path, const Grid& grid, Frame frame) {
  std::stringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty field file '" + path.string() + "'");
  if (line != "x,re,im") throw ConfigError("field file header must be x,re,im");
  std::vector<cplx> samples;
  samples.reserve(grid.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream cells(line);
    std::string x, re, im;
    if (!std::getline(cells, x, ',') || !std::getline(cells, re, ',') || !std::getline(cells, im)) {
      throw ConfigError("field file row " + std::to_string(row + 1) + " needs three columns");
    }
    if (row >= grid.size()) throw ConfigError("field file has more rows than the grid has nodes");
    const double xv = parse_real(x);
    if (std::abs(xv - grid.node(row)) > 1e-9 * grid.half_length()) {
      throw ConfigError("field file node " + std::to_string(row) + " does not match the grid");
    }
    samples.emplace_back(parse_real(re), parse_real(im));
    ++row;
  }
  if (samples.size() != grid.size()) {
    throw ConfigError("field file has " + std::to_string(samples.size()) + " rows, grid has " +
                      std::to_string(grid.size()) + " nodes");
  }
  return Field(grid, std::move(samples), frame);
}

}  // namespace dnls::harness
