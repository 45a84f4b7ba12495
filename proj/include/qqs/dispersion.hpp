#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qqs {

// n^2 = a + sum_i b_i lambda^2 / (lambda^2 - c_i), lambda in micrometres.
struct SellmeierTerms {
  double a = 1.0;
  std::vector<std::pair<double, double>> poles;  // (b_i, c_i)

  double index(double lambda_nm) const;
};

// Ordinary/extraordinary refractive indices of a uniaxial material over a
// validity window. Immutable once built.
class DispersionModel {
 public:
  static DispersionModel sellmeier(std::string name, SellmeierTerms ordinary, SellmeierTerms extraordinary,
                                   double valid_min_nm = 400.0, double valid_max_nm = 800.0);
  static DispersionModel constant(std::string name, double n_o, double n_e, double valid_min_nm = 400.0,
                                  double valid_max_nm = 800.0);

  // Key-value text ("key = value", '#' comments). Throws DomainError on
  // malformed content or an unsupported format_version.
  static DispersionModel parse(std::istream& in, std::string_view source = "<stream>");
  static DispersionModel from_file(const std::filesystem::path& path);

  const std::string& name() const { return name_; }
  double valid_min_nm() const { return min_nm_; }
  double valid_max_nm() const { return max_nm_; }
  bool in_range(double lambda_nm) const { return lambda_nm >= min_nm_ && lambda_nm <= max_nm_; }

  // Throw DomainError outside [valid_min_nm, valid_max_nm].
  double n_o(double lambda_nm) const;
  double n_e(double lambda_nm) const;
  // Signed: n_o - n_e (negative for a positive uniaxial crystal such as quartz).
  double birefringence(double lambda_nm) const;

 private:
  enum class Kind { Constant, Sellmeier };

  void check_range(double lambda_nm) const;

  std::string name_;
  Kind kind_ = Kind::Constant;
  double const_o_ = 1.0;
  double const_e_ = 1.0;
  SellmeierTerms ordinary_;
  SellmeierTerms extraordinary_;
  double min_nm_ = 400.0;
  double max_nm_ = 800.0;
};

// $QQS_DATA_DIR if set, else the directory configured at build time.
std::filesystem::path data_dir();

// Loads <data_dir>/dispersion/<material>.kv
DispersionModel load_material(std::string_view material);

}  // namespace qqs
