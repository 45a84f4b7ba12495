#include "qqs/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace qqs {

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Vector4 kron(const Vector2& a, const Vector2& b) {
  return Vector4{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

Matrix2 partial_trace_second(const Matrix4& m) {
  Matrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

Matrix2 partial_trace_first(const Matrix4& m) {
  Matrix2 out;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) out(k, l) = m(k, l) + m(2 + k, 2 + l);
  return out;
}

HermitianEigen hermitian_eigen(const Matrix4& m) {
  Eigen::Matrix4cd e;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) e(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(e);
  HermitianEigen out;
  for (int k = 0; k < 4; ++k) {
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    for (int r = 0; r < 4; ++r) out.vectors(r, k) = solver.eigenvectors()(r, k);
  }
  return out;
}

}  // namespace qqs
