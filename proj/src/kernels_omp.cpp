#include <omp.h>

#include <exception>

#include "qqs/kernels.hpp"
#include "qqs/qkd.hpp"
#include "qqs/scan.hpp"
#include "qqs/tomography.hpp"

namespace qqs {

namespace parallel {
namespace {

// Runs body(i) for i in [0, n) across threads; the first exception thrown by
// any iteration is rethrown on the calling thread.
template <typename Body>
void for_each_index(std::int64_t n, Body&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(qqs_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

std::vector<ScanRow> scan_rows(const ScanConfig& cfg, const std::vector<double>& angles, double n_eff) {
  std::vector<ScanRow> rows(angles.size());
  for_each_index(static_cast<std::int64_t>(angles.size()), [&](std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    rows[k] = scan_row(cfg, angles[k], n_eff, k);
  });
  return rows;
}

std::vector<SessionRecord> session_rounds(const SessionConfig& cfg, const EveConfig* eve) {
  std::vector<SessionRecord> records(static_cast<std::size_t>(cfg.rounds));
  for_each_index(cfg.rounds, [&](std::int64_t i) { records[static_cast<std::size_t>(i)] = simulate_round(cfg, eve, i); });
  return records;
}

std::vector<double> roundtrip_fidelities(const std::vector<QuquartState>& states, double pairs) {
  std::vector<double> out(states.size());
  for_each_index(static_cast<std::int64_t>(states.size()),
                 [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = roundtrip_fidelity(states[static_cast<std::size_t>(i)], pairs); });
  return out;
}

}  // namespace parallel
}  // namespace qqs
