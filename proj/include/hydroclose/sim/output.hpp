#pragma once

#include "hydroclose/sim/fluid.hpp"
#include "hydroclose/sim/grid.hpp"
#include "hydroclose/sim/state.hpp"
#include "hydroclose/sim/streams.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace hydroclose::sim {

inline constexpr int kSnapshotFormatVersion = 1;

// Shortest round-trip text for a double ("%.17g").
std::string format_double(double x);

// Column names of diagnostics.csv for a closure with nvars normal variables:
// t,H,C_mass,C_psi,C_1..C_{nvars},momentum,field_energy.
std::vector<std::string> diagnostics_columns(std::size_t nvars);
std::string diagnostics_row(const DiagnosticRecord& r);

std::vector<std::string> stream_columns();
std::string stream_row(const StreamRecord& r);

// Appends rows to a CSV file as records arrive.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    void row(const std::string& line);

private:
    std::ofstream out_;
};

// Text snapshot with header line
//   # hydroclose snapshot version=1 nx=<nx> N=<N> t=<t>
// then a column header and one row per grid point.
void write_snapshot(std::ostream& os, const Grid& grid, const FieldState& s, const std::vector<std::string>& names);
void write_snapshot(std::ostream& os, const Grid& grid, const StreamState& s);

// Writes <dir>/snap_<index, six digits>.txt.
std::filesystem::path snapshot_path(const std::filesystem::path& dir, std::size_t index);

}  // namespace hydroclose::sim
