#include "qqs/qkd.hpp"

#include <algorithm>
#include <stdexcept>

#include "qqs/error.hpp"
#include "qqs/kernels.hpp"
#include "qqs/random.hpp"

namespace qqs {
namespace {

void check_product_bases(const std::vector<Basis>& bases, const char* who) {
  if (bases.empty()) throw std::invalid_argument(std::string(who) + ": basis set is empty");
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i] == Basis::IV || bases[i] == Basis::V)
      throw DomainError(std::string(who) + ": entangled basis " + std::string(to_string(bases[i])) +
                        " cannot be decoded by the four-detector receiver");
    for (std::size_t j = 0; j < i; ++j)
      if (bases[j] == bases[i]) throw std::invalid_argument(std::string(who) + ": duplicate basis");
  }
}

PlateRecipe selection_recipe(int s) {
  switch (s) {
    case 0: return {dichroic_step(kPi / 2.0, kPi / 2.0, 45.0)};
    case 1: return {dichroic_step(kPi / 2.0, kPi, 45.0)};
    case 2: return {dichroic_step(kPi, kPi / 2.0, 45.0)};
    case 3: return {};
  }
  throw std::out_of_range("state index must be in 0..3");
}

}  // namespace

void SessionConfig::validate() const {
  if (rounds <= 0) throw std::invalid_argument("rounds must be positive");
  check_product_bases(bases_in_use, "session");
  noise.validate();
  modes.validate();
}

void EveConfig::validate() const { check_product_bases(bases, "eve"); }

PreparedState alice_prepare(Basis b, int s, const FrequencyModePair& modes) {
  PlateRecipe recipe = selection_recipe(s);
  switch (b) {
    case Basis::I: break;
    case Basis::II: recipe.push_back(half_wave_step(22.5)); break;
    case Basis::III: recipe.push_back(quarter_wave_step(45.0)); break;
    case Basis::IV:
    case Basis::V:
      throw DomainError("basis " + std::string(to_string(b)) + " cannot be prepared with local plates");
  }
  const QuquartState source = basis_state(Basis::I, 3, modes);
  return {source.transformed(recipe_unitary(recipe)), std::move(recipe)};
}

PreparedState alice_prepare(const SessionConfig& cfg, Basis b, int s) {
  if (std::find(cfg.bases_in_use.begin(), cfg.bases_in_use.end(), b) == cfg.bases_in_use.end())
    throw std::invalid_argument("basis " + std::string(to_string(b)) + " is not in the configured set");
  return alice_prepare(b, s, cfg.modes);
}

std::string symbol_bits(int s) {
  if (s < 0 || s > 3) throw std::out_of_range("symbol must be in 0..3");
  return {static_cast<char>('0' + (s >> 1)), static_cast<char>('0' + (s & 1))};
}

SessionRecord simulate_round(const SessionConfig& cfg, const EveConfig* eve, std::int64_t index) {
  Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(index)));
  const auto n_bases = static_cast<std::uint64_t>(cfg.bases_in_use.size());

  SessionRecord rec;
  rec.round = index;
  rec.alice_basis = cfg.bases_in_use[rng.index(n_bases)];
  rec.alice_state = static_cast<int>(rng.index(4));
  rec.bob_basis = cfg.bases_in_use[rng.index(n_bases)];

  QuquartState in_flight = alice_prepare(rec.alice_basis, rec.alice_state, cfg.modes).state;
  if (eve != nullptr) {
    const Basis e = eve->bases[rng.index(eve->bases.size())];
    const int k = sample_outcome(outcome_probabilities(in_flight, e), rng.uniform());
    rec.eve_basis = e;
    rec.eve_outcome = k;
    in_flight = alice_prepare(e, k, cfg.modes).state;
  }

  const std::array<double, 4> probs = cfg.noise.depolarization > 0.0
                                          ? outcome_probabilities(
                                                pure_density(in_flight).depolarized(cfg.noise.depolarization),
                                                rec.bob_basis)
                                          : outcome_probabilities(in_flight, rec.bob_basis);
  const int outcome = sample_outcome(probs, rng.uniform());
  rec.detector_pair = detector_pair_for_outcome(outcome);
  rec.detected = rng.uniform() < cfg.noise.efficiency(rec.detector_pair);
  rec.sifted = rec.detected && rec.alice_basis == rec.bob_basis;
  if (rec.sifted) {
    rec.alice_symbol = rec.alice_state;
    rec.bob_symbol = outcome;
  }
  return rec;
}

SessionSummary summarize(const SessionConfig& cfg, std::span<const SessionRecord> records) {
  SessionSummary s;
  s.rounds = static_cast<std::int64_t>(records.size());
  for (const Basis b : cfg.bases_in_use) s.per_basis.push_back({b, 0, 0, 0.0});
  for (const auto& r : records) {
    if (r.detected) ++s.detected;
    if (!r.sifted) continue;
    ++s.sifted;
    const bool error = r.alice_symbol != r.bob_symbol;
    if (error) ++s.errors;
    for (auto& pb : s.per_basis)
      if (pb.basis == r.alice_basis) {
        ++pb.sifted;
        if (error) ++pb.errors;
      }
  }
  s.sift_ratio = s.rounds > 0 ? static_cast<double>(s.sifted) / static_cast<double>(s.rounds) : 0.0;
  s.qber = s.sifted > 0 ? static_cast<double>(s.errors) / static_cast<double>(s.sifted) : 0.0;
  s.raw_key_bits = 2 * s.sifted;
  for (auto& pb : s.per_basis)
    pb.qber = pb.sifted > 0 ? static_cast<double>(pb.errors) / static_cast<double>(pb.sifted) : 0.0;
  return s;
}

SessionResult run_session(const SessionConfig& cfg, Execution exec) {
  cfg.validate();
  SessionResult out;
  out.records = exec == Execution::Serial ? serial::session_rounds(cfg, nullptr) : parallel::session_rounds(cfg, nullptr);
  out.summary = summarize(cfg, out.records);
  return out;
}

SessionResult run_intercept_resend(const SessionConfig& cfg, const EveConfig& eve, Execution exec) {
  cfg.validate();
  eve.validate();
  SessionResult out;
  out.records = exec == Execution::Serial ? serial::session_rounds(cfg, &eve) : parallel::session_rounds(cfg, &eve);
  out.summary = summarize(cfg, out.records);
  return out;
}

SessionSummary intercept_resend(const SessionConfig& cfg, const EveConfig& eve) {
  return run_intercept_resend(cfg, eve).summary;
}

}  // namespace qqs
