#pragma once

#include <filesystem>
#include <iosfwd>

#include "qfluid/core.hpp"
#include "qfluid/diagnostics.hpp"

namespace qfluid {

/// step,t,mean,var,mass,max_abs_V,center_energy,status
void write_diagnostics_csv(std::ostream& out, const RunRecord& record);

/// j,x,rho,V
void write_snapshot_csv(std::ostream& out, const Snapshot& snap, const SpatialGrid& grid);

/// diagnostics.csv plus snapshot_<step>.csv per snapshot under `dir`.
void write_run(const std::filesystem::path& dir, const RunRecord& record, const SpatialGrid& grid);

/// %.17g, so that files round-trip and repeat byte for byte.
std::string format_number(double v);

}  // namespace qfluid
