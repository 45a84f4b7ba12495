#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qqs/linalg.hpp"

namespace testing_support {

inline oracle::V4 to_oracle(const qqs::Vector4& v) { return {v[0], v[1], v[2], v[3]}; }

inline qqs::Vector4 from_oracle(const oracle::V4& v) { return {v[0], v[1], v[2], v[3]}; }

inline qqs::Matrix4 from_oracle(const oracle::M4& m) {
  qqs::Matrix4 out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = m[r][c];
  return out;
}

inline double max_diff(const qqs::Matrix4& a, const oracle::M4& b) {
  double d = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) d = std::max(d, std::abs(a(r, c) - b[r][c]));
  return d;
}

inline double max_diff(const qqs::Vector4& a, const oracle::V4& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// |<a|b>| for unit vectors; 1 means equal up to a global phase.
inline double phase_free_overlap(const qqs::Vector4& a, const oracle::V4& b) {
  return std::abs(oracle::dot(to_oracle(a), b));
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("qqs-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_support
