#pragma once

#include <string>
#include <vector>

#include "coinvest/scenario.hpp"

namespace coinvest {

/// One row per scenario point; fixed header for a given horizon, numbers
/// serialized with six significant digits, deterministic row order.
std::string results_csv(const std::vector<RunRecord>& records, int horizon);

/// Implemented design decisions: scenario,year,stage,edge,build,upgrade.
std::string schedule_csv(const std::vector<RunRecord>& records);

/// Heterogeneous-suite summary: one row per scenario with the ROC spread.
std::string hetero_csv(const std::vector<HeteroRow>& rows);

/// Minimal scatter of (CIR, delta F^co); points with an accepted year are
/// filled.
std::string summary_svg(const std::vector<RunRecord>& records);

}  // namespace coinvest
