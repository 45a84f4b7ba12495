#pragma once

// Sixteen-setting product-projector tomography: {H, V, D, R} on each arm,
// linear inversion, then positivization. Optional maximum-likelihood pass.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qqs/detection.hpp"
#include "qqs/states.hpp"

namespace qqs {

struct CoincidenceRecord {
  int setting_id = 0;
  double expected_rate = 0.0;  // normalized coincidence probability
  std::int64_t counts = 0;
  double acquisition_time_s = 30.0;

  bool operator==(const CoincidenceRecord&) const = default;
};

inline constexpr int kTomographySettings = 16;

// Setting k projects photon 1 on {H,V,D,R}[k / 4] and photon 2 on
// {H,V,D,R}[k % 4].
const std::vector<ProjectorSetting>& tomography_settings();

// T(k, j) = Tr(P_k (s_a (x) s_b)) / 4 with j = 4a + b over the Pauli set
// {I, X, Y, Z}; row-major 16x16. Probabilities satisfy p = T r where
// rho = sum_j r_j (s_a (x) s_b) / 4.
std::array<double, 256> transfer_matrix();

enum class CountModel {
  Expected,  // counts = round(expected mean), the noiseless channel
  Poisson,
};

// One record per setting; the state is depolarized by noise.depolarization
// first. Setting k uses stream k of seed.
std::vector<CoincidenceRecord> simulate_tomography(const DensityMatrix& rho, const NoiseModel& noise, double time_s,
                                                   std::uint64_t seed, CountModel model = CountModel::Poisson);

// Unconstrained linear-inversion estimate, Hermitian with unit trace but not
// necessarily positive. Throws DomainError on missing/duplicate settings or
// zero total counts.
Matrix4 linear_inversion(std::span<const CoincidenceRecord> records);

// Clips negative eigenvalues to zero and renormalizes the trace.
DensityMatrix positivize(const Matrix4& m);

struct ReconstructOptions {
  bool maximum_likelihood = false;
  int ml_max_iterations = 5000;
  double ml_tolerance = 1e-11;
};

DensityMatrix reconstruct(std::span<const CoincidenceRecord> records, const ReconstructOptions& options = {});

// Poisson log-likelihood with the pair number profiled out.
double log_likelihood(const DensityMatrix& rho, std::span<const CoincidenceRecord> records);

// Noiseless round trip: expected counts with `pairs` pairs per setting, then
// reconstruct; returns Tr(rho_rec |psi><psi|).
double roundtrip_fidelity(const QuquartState& state, double pairs);

// rho_ii = n_i / sum(n) for counts registered on the four outcome pairs of a
// correctly guessed basis, ordered (D4D2, D4D1, D3D2, D3D1).
std::array<double, 4> diagonal_estimate(const std::array<std::int64_t, 4>& counts);

// sum_i rho_ii |b_i><b_i| in the lab (H/V) frame for basis b.
DensityMatrix diagonal_density(const std::array<std::int64_t, 4>& counts, Basis b);

}  // namespace qqs
