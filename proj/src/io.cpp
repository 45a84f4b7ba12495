#include "qqs/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qqs/error.hpp"

namespace qqs {
namespace {

Json detector_pair_json(const DetectorPair& p) {
  return Json::array({std::string(to_string(p.first)), std::string(to_string(p.second))});
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
  return buf;
}

double round_sig(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

Json to_json(const QuquartState& s) {
  Json j;
  j["modes"] = {{"lambda1", s.modes().lambda1_nm}, {"lambda2", s.modes().lambda2_nm}};
  Json re = Json::array(), im = Json::array();
  for (const auto& c : s.amplitudes()) {
    re.push_back(c.real() == 0.0 ? 0.0 : c.real());
    im.push_back(c.imag() == 0.0 ? 0.0 : c.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

QuquartState state_from_json(const Json& j) {
  try {
    FrequencyModePair modes;
    if (j.contains("modes")) {
      modes.lambda1_nm = j.at("modes").at("lambda1").get<double>();
      modes.lambda2_nm = j.at("modes").at("lambda2").get<double>();
    }
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != 4 || im.size() != 4) throw DomainError("state JSON needs 4 re and 4 im entries");
    Vector4 v;
    for (std::size_t i = 0; i < 4; ++i) v[i] = Complex{re.at(i).get<double>(), im.at(i).get<double>()};
    if (std::abs(v.norm() - 1.0) > 1e-9) throw DomainError("state JSON is not normalized");
    return QuquartState::normalized(v, modes);
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed state JSON: ") + e.what());
  }
}

Json to_json(const DensityMatrix& rho) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t r = 0; r < 4; ++r) {
    Json rr = Json::array(), ii = Json::array();
    for (std::size_t c = 0; c < 4; ++c) {
      rr.push_back(round_sig(rho(r, c).real()));
      ii.push_back(round_sig(rho(r, c).imag()));
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

DensityMatrix density_from_json(const Json& j) {
  try {
    Matrix4 m;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        m(r, c) = Complex{j.at("re").at(r).at(c).get<double>(), j.at("im").at(r).at(c).get<double>()};
    return DensityMatrix((m + m.adjoint()) * 0.5);
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed density JSON: ") + e.what());
  }
}

Json to_json(const CoincidenceRecord& r) {
  return {{"setting_id", r.setting_id},
          {"setting", tomography_settings().at(static_cast<std::size_t>(r.setting_id)).label},
          {"expected_rate", round_sig(r.expected_rate)},
          {"counts", r.counts},
          {"acquisition_time_s", round_sig(r.acquisition_time_s)}};
}

CoincidenceRecord record_from_json(const Json& j) {
  try {
    CoincidenceRecord r;
    r.setting_id = j.at("setting_id").get<int>();
    r.expected_rate = j.value("expected_rate", 0.0);
    r.counts = j.at("counts").get<std::int64_t>();
    r.acquisition_time_s = j.value("acquisition_time_s", 30.0);
    return r;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed coincidence record: ") + e.what());
  }
}

Json to_json(const PlateStep& step) {
  return {{"element", step.label},
          {"delta1_rad", round_sig(step.delta1)},
          {"delta2_rad", round_sig(step.delta2)},
          {"alpha_deg", round_sig(step.alpha_deg)}};
}

Json to_json(const SessionRecord& r) {
  Json j;
  j["round"] = r.round;
  j["alice_basis"] = std::string(to_string(r.alice_basis));
  j["alice_state"] = r.alice_state;
  j["bob_basis"] = std::string(to_string(r.bob_basis));
  j["detected"] = r.detected;
  j["detector_pair"] = r.detected ? detector_pair_json(r.detector_pair) : Json(nullptr);
  j["sifted"] = r.sifted;
  j["alice_symbol"] = r.alice_symbol ? Json(symbol_bits(*r.alice_symbol)) : Json(nullptr);
  j["bob_symbol"] = r.bob_symbol ? Json(symbol_bits(*r.bob_symbol)) : Json(nullptr);
  if (r.eve_basis) {
    j["eve_basis"] = std::string(to_string(*r.eve_basis));
    j["eve_outcome"] = optional_json(r.eve_outcome);
  }
  return j;
}

Json to_json(const SessionSummary& s) {
  Json per_basis = Json::array();
  for (const auto& b : s.per_basis)
    per_basis.push_back({{"basis", std::string(to_string(b.basis))},
                         {"sifted", b.sifted},
                         {"errors", b.errors},
                         {"qber", round_sig(b.qber)}});
  return {{"rounds", s.rounds},
          {"detected", s.detected},
          {"sifted", s.sifted},
          {"errors", s.errors},
          {"sift_ratio", round_sig(s.sift_ratio)},
          {"qber", round_sig(s.qber)},
          {"raw_key_bits", s.raw_key_bits},
          {"per_basis", per_basis}};
}

}  // namespace qqs
