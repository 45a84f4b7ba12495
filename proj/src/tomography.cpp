#include "qqs/tomography.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "qqs/error.hpp"
#include "qqs/random.hpp"

namespace qqs {
namespace {

const std::array<Matrix2, 4>& paulis() {
  static const std::array<Matrix2, 4> p{
      Matrix2::identity(),
      Matrix2{0.0, 1.0, 1.0, 0.0},
      Matrix2{0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0},
      Matrix2{1.0, 0.0, 0.0, -1.0},
  };
  return p;
}

Matrix4 pauli_product(std::size_t j) { return kron(paulis()[j / 4], paulis()[j % 4]); }

// Per-setting count rates (counts / s), indexed by setting id.
std::array<double, kTomographySettings> rates_by_setting(std::span<const CoincidenceRecord> records) {
  if (records.size() != static_cast<std::size_t>(kTomographySettings))
    throw DomainError("tomography needs exactly 16 records, got " + std::to_string(records.size()));
  std::array<double, kTomographySettings> rates{};
  std::array<bool, kTomographySettings> seen{};
  double total = 0.0;
  for (const auto& r : records) {
    if (r.setting_id < 0 || r.setting_id >= kTomographySettings)
      throw DomainError("setting id out of range: " + std::to_string(r.setting_id));
    const auto k = static_cast<std::size_t>(r.setting_id);
    if (seen[k]) throw DomainError("duplicate record for setting " + std::to_string(r.setting_id));
    if (r.counts < 0) throw DomainError("negative counts");
    if (!(r.acquisition_time_s > 0.0)) throw DomainError("acquisition time must be positive");
    seen[k] = true;
    rates[k] = static_cast<double>(r.counts) / r.acquisition_time_s;
    total += static_cast<double>(r.counts);
  }
  if (total <= 0.0) throw DomainError("tomography records contain zero total counts");
  return rates;
}

const Eigen::Matrix<double, 16, 16>& transfer_eigen() {
  static const Eigen::Matrix<double, 16, 16> t = [] {
    Eigen::Matrix<double, 16, 16> m;
    const auto flat = transfer_matrix();
    for (int r = 0; r < 16; ++r)
      for (int c = 0; c < 16; ++c) m(r, c) = flat[static_cast<std::size_t>(16 * r + c)];
    return m;
  }();
  return t;
}

Matrix4 hermitize(const Matrix4& m) { return (m + m.adjoint()) * 0.5; }

struct LikelihoodTerms {
  double value = 0.0;
  Matrix4 gradient;  // sum n_k P_k / p_k - (N / sum t_k p_k) sum t_k P_k, divided by N
};

LikelihoodTerms likelihood_terms(const Matrix4& rho, std::span<const CoincidenceRecord> records) {
  const auto& settings = tomography_settings();
  double n_total = 0.0, weighted_p = 0.0, log_sum = 0.0;
  Matrix4 data_term, norm_term;
  for (const auto& r : records) {
    const Matrix4 proj = projector(settings[static_cast<std::size_t>(r.setting_id)]);
    const double p = std::max((proj * rho).trace().real(), 1e-300);
    const double n = static_cast<double>(r.counts);
    n_total += n;
    weighted_p += r.acquisition_time_s * p;
    if (n > 0.0) {
      log_sum += n * std::log(r.acquisition_time_s * p);
      data_term = data_term + proj * (n / p);
    }
    norm_term = norm_term + proj * r.acquisition_time_s;
  }
  LikelihoodTerms out;
  out.value = log_sum - n_total * std::log(weighted_p);
  out.gradient = (data_term - norm_term * (n_total / weighted_p)) * (1.0 / n_total);
  return out;
}

Matrix4 diluted_step(const Matrix4& rho, const Matrix4& gradient, double eps) {
  const Matrix4 a = Matrix4::identity() + gradient * eps;
  Matrix4 next = hermitize(a * rho * a.adjoint());
  return next * (1.0 / next.trace().real());
}

DensityMatrix maximum_likelihood(const DensityMatrix& start, std::span<const CoincidenceRecord> records,
                                 const ReconstructOptions& options) {
  // Start slightly inside the state space so no p_k vanishes.
  Matrix4 rho = start.matrix() * 0.999 + Matrix4::identity() * (0.001 / 4.0);
  LikelihoodTerms current = likelihood_terms(rho, records);
  double eps = 0.5;
  for (int it = 0; it < options.ml_max_iterations; ++it) {
    const Matrix4 candidate = diluted_step(rho, current.gradient, eps);
    const LikelihoodTerms next = likelihood_terms(candidate, records);
    if (!(next.value >= current.value)) {
      eps *= 0.5;
      if (eps < 1e-12) break;
      continue;
    }
    const double gain = next.value - current.value;
    rho = candidate;
    current = next;
    eps = std::min(eps * 1.5, 4.0);
    if (gain < options.ml_tolerance) break;
  }
  return positivize(rho);
}

}  // namespace

const std::vector<ProjectorSetting>& tomography_settings() {
  static const std::vector<ProjectorSetting> settings = [] {
    struct Named {
      char name;
      ArmSetting arm;
    };
    constexpr std::array<Named, 4> single{{
        {'H', {0.0, 0.0}},
        {'V', {0.0, 45.0}},
        {'D', {45.0, 22.5}},
        {'R', {135.0, 0.0}},
    }};
    std::vector<ProjectorSetting> out;
    for (const auto& a : single)
      for (const auto& b : single) out.push_back({std::string{a.name, b.name}, a.arm, b.arm});
    return out;
  }();
  return settings;
}

std::array<double, 256> transfer_matrix() {
  std::array<double, 256> t{};
  const auto& settings = tomography_settings();
  for (std::size_t k = 0; k < 16; ++k) {
    const Matrix4 proj = projector(settings[k]);
    for (std::size_t j = 0; j < 16; ++j) t[16 * k + j] = (proj * pauli_product(j)).trace().real() / 4.0;
  }
  return t;
}

std::vector<CoincidenceRecord> simulate_tomography(const DensityMatrix& rho, const NoiseModel& noise, double time_s,
                                                   std::uint64_t seed, CountModel model) {
  noise.validate();
  const DensityMatrix measured = rho.depolarized(noise.depolarization);
  const auto& settings = tomography_settings();
  std::vector<CoincidenceRecord> records;
  records.reserve(settings.size());
  for (std::size_t k = 0; k < settings.size(); ++k) {
    CoincidenceRecord r;
    r.setting_id = static_cast<int>(k);
    r.expected_rate = coincidence_probability(measured, settings[k]);
    r.acquisition_time_s = time_s;
    r.counts = model == CountModel::Expected
                   ? std::llround(expected_counts(r.expected_rate, noise, time_s))
                   : simulate_counts(r.expected_rate, noise, time_s, derive_seed(seed, k));
    records.push_back(r);
  }
  return records;
}

Matrix4 linear_inversion(std::span<const CoincidenceRecord> records) {
  const auto rates = rates_by_setting(records);
  Eigen::Matrix<double, 16, 1> n;
  for (int k = 0; k < 16; ++k) n(k) = rates[static_cast<std::size_t>(k)];
  const Eigen::FullPivLU<Eigen::Matrix<double, 16, 16>> lu(transfer_eigen());
  if (!lu.isInvertible()) throw DomainError("tomography transfer matrix is singular");
  const Eigen::Matrix<double, 16, 1> x = lu.solve(n);
  if (!(x(0) > 0.0)) throw DomainError("linear inversion produced a non-positive trace");
  Matrix4 rho;
  for (std::size_t j = 0; j < 16; ++j) rho = rho + pauli_product(j) * (x(static_cast<int>(j)) / (4.0 * x(0)));
  return hermitize(rho);
}

DensityMatrix positivize(const Matrix4& m) {
  const HermitianEigen eig = hermitian_eigen(m);
  double total = 0.0;
  for (const double v : eig.values) total += std::max(v, 0.0);
  if (!(total > 0.0)) throw DomainError("matrix has no positive spectrum to keep");
  Matrix4 out;
  for (std::size_t k = 0; k < 4; ++k) {
    const double w = std::max(eig.values[k], 0.0) / total;
    if (w == 0.0) continue;
    Vector4 v;
    for (std::size_t r = 0; r < 4; ++r) v[r] = eig.vectors(r, k);
    out = out + outer(v, v) * w;
  }
  return DensityMatrix(hermitize(out));
}

DensityMatrix reconstruct(std::span<const CoincidenceRecord> records, const ReconstructOptions& options) {
  const DensityMatrix linear = positivize(linear_inversion(records));
  if (!options.maximum_likelihood) return linear;
  return maximum_likelihood(linear, records, options);
}

double log_likelihood(const DensityMatrix& rho, std::span<const CoincidenceRecord> records) {
  rates_by_setting(records);
  return likelihood_terms(rho.matrix(), records).value;
}

double roundtrip_fidelity(const QuquartState& state, double pairs) {
  NoiseModel noise;
  noise.mean_pair_rate = pairs;  // one-second acquisitions
  const DensityMatrix target = pure_density(state);
  const auto records = simulate_tomography(target, noise, 1.0, 0, CountModel::Expected);
  return fidelity(reconstruct(records), target);
}

std::array<double, 4> diagonal_estimate(const std::array<std::int64_t, 4>& counts) {
  std::int64_t total = 0;
  for (const auto c : counts) {
    if (c < 0) throw DomainError("negative counts");
    total += c;
  }
  if (total == 0) throw DomainError("zero total counts");
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return out;
}

DensityMatrix diagonal_density(const std::array<std::int64_t, 4>& counts, Basis b) {
  const auto diag = diagonal_estimate(counts);
  Matrix4 rho;
  for (int s = 0; s < 4; ++s) {
    const Vector4 v = basis_state(b, s).amplitudes();
    rho = rho + outer(v, v) * diag[static_cast<std::size_t>(s)];
  }
  return DensityMatrix(hermitize(rho));
}

}  // namespace qqs
