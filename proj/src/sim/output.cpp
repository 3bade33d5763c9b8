#include "hydroclose/sim/output.hpp"

#include <cstdio>
#include <stdexcept>

namespace hydroclose::sim {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> diagnostics_columns(std::size_t nvars) {
    std::vector<std::string> cols{"t", "H", "C_mass", "C_psi"};
    for (std::size_t k = 1; k <= nvars; ++k) cols.push_back("C_" + std::to_string(k));
    cols.push_back("momentum");
    cols.push_back("field_energy");
    return cols;
}

namespace {

std::string join(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_double(values[i]);
    }
    return line;
}

}  // namespace

std::string diagnostics_row(const DiagnosticRecord& r) {
    std::vector<double> v{r.t, r.H, r.C_mass, r.C_psi};
    v.insert(v.end(), r.C.begin(), r.C.end());
    v.push_back(r.momentum);
    v.push_back(r.field_energy);
    return join(v);
}

std::vector<std::string> stream_columns() { return {"t", "H", "mass", "momentum", "field_energy", "min_dv"}; }

std::string stream_row(const StreamRecord& r) {
    return join({r.t, r.H, r.mass, r.momentum, r.field_energy, r.min_dv});
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::string& line) {
    out_ << line << '\n';
    out_.flush();
}

void write_snapshot(std::ostream& os, const Grid& grid, const FieldState& s, const std::vector<std::string>& names) {
    os << "# hydroclose snapshot version=" << kSnapshotFormatVersion << " nx=" << s.nx() << " N=" << s.nvars() + 2
       << " t=" << format_double(s.t) << '\n';
    os << "x,rho,u";
    for (std::size_t k = 0; k < s.nvars(); ++k) os << ',' << (k < names.size() ? names[k] : "nu" + std::to_string(k + 1));
    os << '\n';
    for (std::size_t j = 0; j < s.nx(); ++j) {
        std::vector<double> row{grid.x(j), s.rho[j], s.u[j]};
        for (const auto& nu : s.nu) row.push_back(nu[j]);
        os << join(row) << '\n';
    }
}

void write_snapshot(std::ostream& os, const Grid& grid, const StreamState& s) {
    os << "# hydroclose snapshot version=" << kSnapshotFormatVersion << " nx=" << s.nx() << " M=" << s.streams()
       << " t=" << format_double(s.t) << '\n';
    os << 'x';
    for (std::size_t k = 1; k <= s.streams(); ++k) os << ",a" << k << ",v" << k;
    os << '\n';
    for (std::size_t j = 0; j < s.nx(); ++j) {
        std::vector<double> row{grid.x(j)};
        for (std::size_t k = 0; k < s.streams(); ++k) {
            row.push_back(s.a[k][j]);
            row.push_back(s.v[k][j]);
        }
        os << join(row) << '\n';
    }
}

std::filesystem::path snapshot_path(const std::filesystem::path& dir, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06zu.txt", index);
    return dir / buf;
}

}  // namespace hydroclose::sim
