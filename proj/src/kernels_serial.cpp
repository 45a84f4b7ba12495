#include "qqs/kernels.hpp"

#include "qqs/qkd.hpp"
#include "qqs/scan.hpp"
#include "qqs/tomography.hpp"

namespace qqs {

namespace serial {

std::vector<ScanRow> scan_rows(const ScanConfig& cfg, const std::vector<double>& angles, double n_eff) {
  std::vector<ScanRow> rows;
  rows.reserve(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) rows.push_back(scan_row(cfg, angles[i], n_eff, i));
  return rows;
}

std::vector<SessionRecord> session_rounds(const SessionConfig& cfg, const EveConfig* eve) {
  std::vector<SessionRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.rounds));
  for (std::int64_t i = 0; i < cfg.rounds; ++i) records.push_back(simulate_round(cfg, eve, i));
  return records;
}

std::vector<double> roundtrip_fidelities(const std::vector<QuquartState>& states, double pairs) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(roundtrip_fidelity(s, pairs));
  return out;
}

}  // namespace serial
}  // namespace qqs
