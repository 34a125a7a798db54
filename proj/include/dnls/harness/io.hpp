#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "dnls/field.hpp"

namespace dnls::harness {

using Cell = std::variant<double, long, std::string>;

/// An in-memory table rendered as CSV with doubles at 17 significant digits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::string to_csv() const;
};

std::string format_cell(const Cell& c);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Samples as an x,re,im table.
Table field_table(const Field& f);
/// Reads an x,re,im CSV onto `grid`. Row count and nodes must match the grid.
Field read_field_csv(const std::filesystem::path& path, const Grid& grid, Frame frame);

}  // namespace dnls::harness
