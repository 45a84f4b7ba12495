#pragma once

// Simulated prepare-and-measure key exchange over the product bases I-III.
// Alice prepares from |V1 V2> with plates, Bob rotates and reads the
// four-detector receiver; matched-basis rounds are sifted.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qqs/detection.hpp"
#include "qqs/optics.hpp"
#include "qqs/scan.hpp"
#include "qqs/states.hpp"

namespace qqs {

struct SessionConfig {
  std::int64_t rounds = 10000;
  std::vector<Basis> bases_in_use{Basis::I, Basis::II, Basis::III};
  NoiseModel noise;
  std::uint64_t seed = 1;
  FrequencyModePair modes;

  // rounds > 0; bases non-empty, distinct, within I..III. Throws
  // std::invalid_argument for rounds/empty sets and DomainError for IV/V.
  void validate() const;
};

// Eve intercepts every round, measures in a uniformly drawn basis from
// `bases` and resends the basis state she observed.
struct EveConfig {
  std::vector<Basis> bases{Basis::I, Basis::II, Basis::III};

  void validate() const;
};

struct SessionRecord {
  std::int64_t round = 0;
  Basis alice_basis = Basis::I;
  int alice_state = 0;
  Basis bob_basis = Basis::I;
  bool detected = true;
  DetectorPair detector_pair{DetectorId::D4, DetectorId::D2};
  bool sifted = false;
  std::optional<int> alice_symbol;  // only when sifted
  std::optional<int> bob_symbol;
  std::optional<Basis> eve_basis;
  std::optional<int> eve_outcome;

  bool operator==(const SessionRecord&) const = default;
};

struct BasisQber {
  Basis basis = Basis::I;
  std::int64_t sifted = 0;
  std::int64_t errors = 0;
  double qber = 0.0;
};

struct SessionSummary {
  std::int64_t rounds = 0;
  std::int64_t detected = 0;
  std::int64_t sifted = 0;
  std::int64_t errors = 0;
  double sift_ratio = 0.0;
  double qber = 0.0;  // symbol error rate over sifted rounds
  std::int64_t raw_key_bits = 0;
  std::vector<BasisQber> per_basis;
};

struct SessionResult {
  std::vector<SessionRecord> records;
  SessionSummary summary;
};

struct PreparedState {
  QuquartState state;
  PlateRecipe recipe;
};

// Target basis state plus the plate sequence that produces it from |V1 V2>:
// a dichroic selection plate inside basis I, then a half-wave at 22.5 deg
// (basis II) or quarter-wave at 45 deg (basis III). Only I..III.
PreparedState alice_prepare(Basis b, int s, const FrequencyModePair& modes = {});
// Same, but rejects bases outside cfg.bases_in_use with std::invalid_argument.
PreparedState alice_prepare(const SessionConfig& cfg, Basis b, int s);

// Fixed symbol map: state index s -> two bits "00", "01", "10", "11".
std::string symbol_bits(int s);

// Round `index`, drawn from stream `index` of cfg.seed.
SessionRecord simulate_round(const SessionConfig& cfg, const EveConfig* eve, std::int64_t index);

SessionSummary summarize(const SessionConfig& cfg, std::span<const SessionRecord> records);

SessionResult run_session(const SessionConfig& cfg, Execution exec = Execution::Parallel);

SessionResult run_intercept_resend(const SessionConfig& cfg, const EveConfig& eve,
                                   Execution exec = Execution::Parallel);
SessionSummary intercept_resend(const SessionConfig& cfg, const EveConfig& eve);

}  // namespace qqs
