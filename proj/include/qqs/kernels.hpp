#pragma once

// Batch kernels over independent items. serial:: is the reference; parallel::
// distributes the same per-item work with OpenMP. Both produce identical
// results because each item draws only from its own derived seed.

#include <cstdint>
#include <functional>
#include <vector>

#include "qqs/states.hpp"

namespace qqs {

struct ScanConfig;
struct ScanRow;
struct SessionConfig;
struct SessionRecord;
struct EveConfig;

namespace serial {

std::vector<ScanRow> scan_rows(const ScanConfig& cfg, const std::vector<double>& angles, double n_eff);
std::vector<SessionRecord> session_rounds(const SessionConfig& cfg, const EveConfig* eve);
// Noiseless 16-setting tomography of each state with `pairs` pairs per setting;
// returns Tr(rho_rec |psi><psi|) per state.
std::vector<double> roundtrip_fidelities(const std::vector<QuquartState>& states, double pairs);

}  // namespace serial

namespace parallel {

std::vector<ScanRow> scan_rows(const ScanConfig& cfg, const std::vector<double>& angles, double n_eff);
std::vector<SessionRecord> session_rounds(const SessionConfig& cfg, const EveConfig* eve);
std::vector<double> roundtrip_fidelities(const std::vector<QuquartState>& states, double pairs);

int max_threads();

}  // namespace parallel

}  // namespace qqs
