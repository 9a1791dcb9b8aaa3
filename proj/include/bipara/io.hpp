#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "bipara/construction.hpp"
#include "bipara/grid.hpp"
#include "bipara/haar.hpp"

namespace bipara {

// File and parse problems carry their own type so the CLI can map them to
// a distinct exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// 17 significant digits: enough for doubles to round-trip exactly.
std::string format_double(double v);

// Grid CSV: "# bipara-grid v1 n=<n>" then 2^n rows of 2^n comma-separated
// values; row i is the slice at first coordinate index i. Doubles are
// printed with 17 significant digits so write/read/write is byte-stable.
std::string grid_to_csv(const GridFunction& f);
GridFunction grid_from_csv(const std::string& text);

// Mask CSV: same layout with "# bipara-mask v1 n=<n>" and 0/1 entries.
std::string mask_to_csv(const OpenSetMask& m);
OpenSetMask mask_from_csv(const std::string& text);

// Field JSON: header keys plus one {jx,kx,jy,ky,c} object per coefficient
// in canonical rectangle order.
nlohmann::ordered_json field_to_json(const HaarField& g);
HaarField field_from_json(const nlohmann::json& j);

nlohmann::ordered_json trace_to_json(const DecompositionTrace& trace);

}  // namespace bipara
