#include "qfluid/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace qfluid {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_diagnostics_csv(std::ostream& out, const RunRecord& record) {
    out << "step,t,mean,var,mass,max_abs_V,center_energy,status\n";
    for (const auto& r : record.steps) {
        out << r.step << ',' << format_number(r.t) << ',' << format_number(r.mean) << ','
            << format_number(r.var) << ',' << format_number(r.mass) << ','
            << format_number(r.max_abs_V) << ',' << format_number(r.center_energy) << ','
            << to_string(r.status) << '\n';
    }
}

void write_snapshot_csv(std::ostream& out, const Snapshot& snap, const SpatialGrid& grid) {
    out << "j,x,rho,V\n";
    for (std::size_t j = 0; j < snap.rho.size(); ++j) {
        out << j << ',' << format_number(grid.position(j)) << ',' << format_number(snap.rho[j])
            << ',' << format_number(snap.V[j]) << '\n';
    }
}

void write_run(const std::filesystem::path& dir, const RunRecord& record, const SpatialGrid& grid) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "diagnostics.csv");
        if (!f) throw InvalidArgument("cannot write to " + dir.string());
        write_diagnostics_csv(f, record);
    }
    for (const auto& s : record.snapshots) {
        char name[40];
        std::snprintf(name, sizeof name, "snapshot_%05zu.csv", s.step);
        std::ofstream f(dir / name);
        write_snapshot_csv(f, s, grid);
    }
}

}  // namespace qfluid
