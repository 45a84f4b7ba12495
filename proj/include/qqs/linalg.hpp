#pragma once

// Fixed-size complex linear algebra over the 2-dim single-photon space and the
// 4-dim biphoton space. Row-major storage, value semantics throughout.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace qqs {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultTolerance = 1e-12;

template <std::size_t N>
class Vector {
 public:
  constexpr Vector() = default;
  constexpr Vector(std::initializer_list<Complex> values) {
    std::size_t i = 0;
    for (const auto& v : values) {
      if (i == N) break;
      data_[i++] = v;
    }
  }

  static constexpr std::size_t size() { return N; }

  constexpr Complex& operator[](std::size_t i) { return data_[i]; }
  constexpr const Complex& operator[](std::size_t i) const { return data_[i]; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  double norm() const {
    double s = 0.0;
    for (const auto& c : data_) s += std::norm(c);
    return std::sqrt(s);
  }

  Vector operator*(Complex k) const {
    Vector out;
    for (std::size_t i = 0; i < N; ++i) out[i] = data_[i] * k;
    return out;
  }
  Vector operator+(const Vector& o) const {
    Vector out;
    for (std::size_t i = 0; i < N; ++i) out[i] = data_[i] + o[i];
    return out;
  }
  Vector operator-(const Vector& o) const {
    Vector out;
    for (std::size_t i = 0; i < N; ++i) out[i] = data_[i] - o[i];
    return out;
  }

  bool operator==(const Vector&) const = default;

 private:
  std::array<Complex, N> data_{};
};

template <std::size_t N>
class Matrix {
 public:
  constexpr Matrix() = default;
  // Row-major list of entries.
  constexpr Matrix(std::initializer_list<Complex> values) {
    std::size_t i = 0;
    for (const auto& v : values) {
      if (i == N * N) break;
      data_[i++] = v;
    }
  }

  static constexpr std::size_t dim() { return N; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  constexpr Complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  Matrix adjoint() const {
    Matrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex a = (*this)(r, k);
        if (a == Complex{}) continue;
        for (std::size_t c = 0; c < N; ++c) out(r, c) += a * o(k, c);
      }
    return out;
  }
  Matrix operator*(Complex k) const {
    Matrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = data_[i] * k;
    return out;
  }
  Matrix operator+(const Matrix& o) const {
    Matrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = data_[i] + o.data_[i];
    return out;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = data_[i] - o.data_[i];
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::array<Complex, N * N> data_{};
};

using Vector2 = Vector<2>;
using Vector4 = Vector<4>;
using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

template <std::size_t N>
Vector<N> apply(const Matrix<N>& m, const Vector<N>& v) {
  Vector<N> out;
  for (std::size_t r = 0; r < N; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < N; ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

// <a|b>, antilinear in the first argument.
template <std::size_t N>
Complex inner(const Vector<N>& a, const Vector<N>& b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

// |a><b|
template <std::size_t N>
Matrix<N> outer(const Vector<N>& a, const Vector<N>& b) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = a[r] * std::conj(b[c]);
  return out;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double m = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

template <std::size_t N>
double max_abs_diff(const Vector<N>& a, const Vector<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ||M^dagger M - I||_max
template <std::size_t N>
double unitarity_error(const Matrix<N>& m) {
  return max_abs_diff(m.adjoint() * m, Matrix<N>::identity());
}

template <std::size_t N>
bool is_unitary(const Matrix<N>& m, double tol = kDefaultTolerance) {
  return unitarity_error(m) <= tol;
}

template <std::size_t N>
double hermiticity_error(const Matrix<N>& m) {
  return max_abs_diff(m, m.adjoint());
}

// |Tr(A^dagger B)| / N; equals 1 exactly when A and B are the same unitary up
// to a global phase.
template <std::size_t N>
double phase_insensitive_overlap(const Matrix<N>& a, const Matrix<N>& b) {
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(N);
}

template <std::size_t N>
bool equal_up_to_phase(const Matrix<N>& a, const Matrix<N>& b, double tol = 1e-9) {
  return std::abs(phase_insensitive_overlap(a, b) - 1.0) <= tol;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b);
Vector4 kron(const Vector2& a, const Vector2& b);

// Partial traces of a 4x4 operator over photon 2 (keeps photon 1) or photon 1.
Matrix2 partial_trace_second(const Matrix4& m);
Matrix2 partial_trace_first(const Matrix4& m);

struct HermitianEigen {
  std::array<double, 4> values{};  // ascending
  Matrix4 vectors;                 // column k is the eigenvector of values[k]
};

// Eigendecomposition of the Hermitian part (M + M^dagger)/2.
HermitianEigen hermitian_eigen(const Matrix4& m);

}  // namespace qqs
