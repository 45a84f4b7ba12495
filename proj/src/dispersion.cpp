#include "qqs/dispersion.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "qqs/error.hpp"

#ifndef QQS_DEFAULT_DATA_DIR
#define QQS_DEFAULT_DATA_DIR "data"
#endif

namespace qqs {
namespace {

constexpr int kSupportedFormatVersion = 1;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_number(const std::string& text, std::string_view key, std::string_view source) {
  std::istringstream in(text);
  double v = 0.0;
  if (!(in >> v)) throw DomainError(std::string(source) + ": '" + std::string(key) + "' is not a number");
  return v;
}

SellmeierTerms to_terms(const std::string& text, std::string_view key, std::string_view source) {
  std::istringstream in(text);
  std::vector<double> values;
  for (double v; in >> v;) values.push_back(v);
  if (!in.eof() || values.empty() || values.size() % 2 == 0)
    throw DomainError(std::string(source) + ": '" + std::string(key) +
                      "' needs A followed by (B, C) pairs");
  SellmeierTerms t;
  t.a = values[0];
  for (std::size_t i = 1; i + 1 < values.size(); i += 2) t.poles.emplace_back(values[i], values[i + 1]);
  return t;
}

}  // namespace

double SellmeierTerms::index(double lambda_nm) const {
  const double l2 = (lambda_nm * 1e-3) * (lambda_nm * 1e-3);
  double n2 = a;
  for (const auto& [b, c] : poles) n2 += b * l2 / (l2 - c);
  return std::sqrt(n2);
}

DispersionModel DispersionModel::sellmeier(std::string name, SellmeierTerms ordinary, SellmeierTerms extraordinary,
                                           double valid_min_nm, double valid_max_nm) {
  DispersionModel m;
  m.name_ = std::move(name);
  m.kind_ = Kind::Sellmeier;
  m.ordinary_ = std::move(ordinary);
  m.extraordinary_ = std::move(extraordinary);
  m.min_nm_ = valid_min_nm;
  m.max_nm_ = valid_max_nm;
  for (double l = valid_min_nm; l <= valid_max_nm; l += 10.0) {
    const double no = m.ordinary_.index(l), ne = m.extraordinary_.index(l);
    if (!(no > 1.0) || !(ne > 1.0))
      throw DomainError("dispersion model '" + m.name_ + "' has index <= 1 inside its validity window");
  }
  return m;
}

DispersionModel DispersionModel::constant(std::string name, double n_o, double n_e, double valid_min_nm,
                                          double valid_max_nm) {
  if (!(n_o > 1.0) || !(n_e > 1.0)) throw DomainError("refractive indices must exceed 1");
  DispersionModel m;
  m.name_ = std::move(name);
  m.kind_ = Kind::Constant;
  m.const_o_ = n_o;
  m.const_e_ = n_e;
  m.min_nm_ = valid_min_nm;
  m.max_nm_ = valid_max_nm;
  return m;
}

DispersionModel DispersionModel::parse(std::istream& in, std::string_view source) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError(std::string(source) + ": expected 'key = value': " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  const auto need = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw DomainError(std::string(source) + ": missing key '" + key + "'");
    return it->second;
  };

  const int version = static_cast<int>(to_number(need("format_version"), "format_version", source));
  if (version != kSupportedFormatVersion)
    throw DomainError(std::string(source) + ": unsupported format_version " + std::to_string(version));

  const std::string& name = need("material");
  const double lo = to_number(need("valid_min_nm"), "valid_min_nm", source);
  const double hi = to_number(need("valid_max_nm"), "valid_max_nm", source);
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError(std::string(source) + ": bad validity window");

  const std::string& model = need("model");
  if (model == "constant")
    return constant(name, to_number(need("n_o"), "n_o", source), to_number(need("n_e"), "n_e", source), lo, hi);
  if (model == "sellmeier") {
    if (const auto it = kv.find("wavelength_unit"); it != kv.end() && it->second != "um")
      throw DomainError(std::string(source) + ": sellmeier coefficients must use wavelength_unit = um");
    return sellmeier(name, to_terms(need("ordinary"), "ordinary", source),
                     to_terms(need("extraordinary"), "extraordinary", source), lo, hi);
  }
  throw DomainError(std::string(source) + ": unknown model '" + model + "'");
}

DispersionModel DispersionModel::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open dispersion file " + path.string());
  return parse(in, path.string());
}

void DispersionModel::check_range(double lambda_nm) const {
  if (!in_range(lambda_nm)) {
    std::ostringstream msg;
    msg << "wavelength " << lambda_nm << " nm outside validity window [" << min_nm_ << ", " << max_nm_
        << "] of '" << name_ << "'";
    throw DomainError(msg.str());
  }
}

double DispersionModel::n_o(double lambda_nm) const {
  check_range(lambda_nm);
  return kind_ == Kind::Constant ? const_o_ : ordinary_.index(lambda_nm);
}

double DispersionModel::n_e(double lambda_nm) const {
  check_range(lambda_nm);
  return kind_ == Kind::Constant ? const_e_ : extraordinary_.index(lambda_nm);
}

double DispersionModel::birefringence(double lambda_nm) const { return n_o(lambda_nm) - n_e(lambda_nm); }

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("QQS_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return QQS_DEFAULT_DATA_DIR;
}

DispersionModel load_material(std::string_view material) {
  const auto path = data_dir() / "dispersion" / (std::string(material) + ".kv");
  if (!std::filesystem::exists(path)) throw DomainError("unknown material '" + std::string(material) + "'");
  return DispersionModel::from_file(path);
}

}  // namespace qqs
