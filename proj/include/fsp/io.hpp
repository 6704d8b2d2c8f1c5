// Text persistence: lossless field files and small formatting helpers.
//
// Field file layout: a fixed header naming the lattice and the column,
// then one value per line in row-major order, 17 significant digits.

#pragma once

#include <string>
#include <vector>

#include "fsp/grid.hpp"

namespace fsp {

// Shortest 17-significant-digit decimal; round-trips doubles exactly.
std::string format_g17(double x);

std::uint64_t fnv1a(const std::string& s);
std::string fnv1a_hex(const std::string& s);

void save_field(const std::string& path, const Field& u, const std::string& column,
                const std::string& cfg_hash);
Field load_field(const std::string& path);

// Minimal CSV writer: fixed header, rows of g17-formatted numbers, and a
// leading comment line carrying the config hash.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void save_csv(const std::string& path, const CsvTable& table, const std::string& cfg_hash);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace fsp
