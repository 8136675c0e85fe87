#pragma once

#include "phasepom/common.hpp"
#include "phasepom/grid.hpp"

#include "json.hpp"

#include <string>

namespace phasepom {

// Shared matrix format: {"dim": n, "entries": [[re, im], ...]} row-major;
// rectangular matrices carry "rows"/"cols" instead of "dim".
void write_matrix_json(const std::string& path, const CMat& m);
CMat read_matrix_json(const std::string& path);

// "q,p,re,im" header, one node per row, row-major over the grid.
void write_field_csv(const std::string& path, const PhaseGrid& grid, const CVec& values);

struct CsvField {
    RVec q, p;
    CVec values;
};

CsvField read_field_csv(const std::string& path);

// All numbers in reports and CSV carry 17 significant digits so equal runs
// produce byte-identical files.
std::string format_double(double x);

// nlohmann's writer emits shortest-round-trip doubles; this one re-serializes
// the tree with format_double. Indent 2, key order preserved (ordered_json).
std::string dump_json(const nlohmann::ordered_json& j);

void write_json_file(const std::string& path, const nlohmann::ordered_json& j);
nlohmann::ordered_json read_json_file(const std::string& path);

std::string timestamp_utc();

}  // namespace phasepom
