#pragma once

// Hand-rolled generators for property tests. Each case draws from its own
// substream so a failure can be replayed from (seed, case index).

#include <cmath>
#include <cstdint>
#include <vector>

#include "renyimono/linalg.hpp"
#include "renyimono/rng.hpp"

namespace renyimono::testkit {

inline constexpr std::uint64_t kPropertySeed = 20261015;

inline Rng case_rng(std::uint64_t property, std::uint64_t index) {
  return Rng(derive_seed(kPropertySeed ^ property, index));
}

inline ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    e[i * dim + i] = rng.gaussian();
    for (std::size_t j = i + 1; j < dim; ++j) {
      const Complex z = rng.complex_gaussian();
      e[i * dim + j] = z;
      e[j * dim + i] = std::conj(z);
    }
  }
  return ComplexMatrix(dim, std::move(e));
}

inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  // Gram-Schmidt on Gaussian columns; Haar distributed.
  std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
  for (auto& c : cols)
    for (auto& z : c) z = rng.complex_gaussian();
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex dot = 0;
      for (std::size_t i = 0; i < dim; ++i) dot += std::conj(cols[j][i]) * cols[k][i];
      for (std::size_t i = 0; i < dim; ++i) cols[k][i] -= dot * cols[j][i];
    }
    double n = 0;
    for (const auto& z : cols[k]) n += std::norm(z);
    n = std::sqrt(n);
    for (auto& z : cols[k]) z /= n;
  }
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) e[i * dim + k] = cols[k][i];
  return ComplexMatrix(dim, std::move(e));
}

// Uniform on [lo, hi).
inline double draw(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

}  // namespace renyimono::testkit
