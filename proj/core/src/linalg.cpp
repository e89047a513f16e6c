#include "renyimono/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "renyimono/errors.hpp"

namespace renyimono {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kEigHermitianTolerance = 1e-8;

bool is_power_of_two_dim(std::size_t dim, std::size_t num_qubits) {
  return num_qubits < 8 * sizeof(std::size_t) && dim == (std::size_t{1} << num_qubits);
}

// Scatters the bits of `kept_index` (over the kept qubits, in keep order) and
// `traced_index` (over the remaining qubits, ascending) into a full
// big-endian basis index.
struct IndexMap {
  std::size_t num_qubits;
  std::vector<std::size_t> keep;
  std::vector<std::size_t> traced;

  std::size_t compose(std::size_t kept_index, std::size_t traced_index) const {
    std::size_t full = 0;
    const std::size_t k = keep.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t bit = (kept_index >> (k - 1 - i)) & 1U;
      full |= bit << (num_qubits - 1 - keep[i]);
    }
    const std::size_t t = traced.size();
    for (std::size_t i = 0; i < t; ++i) {
      const std::size_t bit = (traced_index >> (t - 1 - i)) & 1U;
      full |= bit << (num_qubits - 1 - traced[i]);
    }
    return full;
  }
};

IndexMap make_index_map(std::size_t num_qubits, std::span<const std::size_t> keep) {
  if (keep.empty()) throw DomainError("partial trace: keep set is empty");
  std::vector<bool> seen(num_qubits, false);
  for (std::size_t q : keep) {
    if (q >= num_qubits) {
      throw DomainError("partial trace: qubit index " + std::to_string(q) + " out of range");
    }
    if (seen[q]) throw DomainError("partial trace: duplicate qubit index " + std::to_string(q));
    seen[q] = true;
  }
  IndexMap map{num_qubits, {keep.begin(), keep.end()}, {}};
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if (!seen[q]) map.traced.push_back(q);
  }
  return map;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) throw DomainError("ComplexMatrix: dim must be >= 1");
  if (entries_.size() != dim_ * dim_) {
    throw DomainError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                      std::to_string(entries_.size()));
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t dim) {
  return ComplexMatrix(dim, std::vector<Complex>(dim * dim));
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return ComplexMatrix(dim, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return ComplexMatrix(n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return ComplexMatrix(n, std::move(e));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
  if (v.size() != w.size()) throw DomainError("outer: length mismatch");
  const std::size_t n = v.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = v[i] * std::conj(w[j]);
  }
  return ComplexMatrix(n, std::move(e));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  std::vector<Complex> e(entries_.size());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) e[j * dim_ + i] = std::conj(entries_[i * dim_ + j]);
  }
  return ComplexMatrix(dim_, std::move(e));
}

ComplexMatrix ComplexMatrix::conjugate() const {
  std::vector<Complex> e(entries_.size());
  std::transform(entries_.begin(), entries_.end(), e.begin(),
                 [](const Complex& z) { return std::conj(z); });
  return ComplexMatrix(dim_, std::move(e));
}

ComplexMatrix ComplexMatrix::transpose() const {
  std::vector<Complex> e(entries_.size());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) e[j * dim_ + i] = entries_[i * dim_ + j];
  }
  return ComplexMatrix(dim_, std::move(e));
}

Complex ComplexMatrix::trace() const noexcept {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
  return t;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const Complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      worst = std::max(worst, std::abs(entries_[i * dim_ + j] - std::conj(entries_[j * dim_ + i])));
    }
  }
  return worst;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DomainError("matrix sum: dim mismatch");
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] + b.entries_[i];
  return ComplexMatrix(a.dim_, std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DomainError("matrix difference: dim mismatch");
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] - b.entries_[i];
  return ComplexMatrix(a.dim_, std::move(e));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DomainError("matrix product: dim mismatch");
  const std::size_t n = a.dim_;
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a.entries_[i * n + k];
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) e[i * n + j] += aik * b.entries_[k * n + j];
    }
  }
  return ComplexMatrix(n, std::move(e));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = s * a.entries_[i];
  return ComplexMatrix(a.dim_, std::move(e));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("max_abs_diff: dim mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// PureState / DensityMatrix

PureState::PureState(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits_ == 0) throw DomainError("PureState: need at least one qubit");
  if (!is_power_of_two_dim(amplitudes_.size(), num_qubits_)) {
    throw DomainError("PureState: amplitude count must be 2^num_qubits");
  }
  double norm2 = 0.0;
  for (const Complex& a : amplitudes_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw DomainError("PureState: amplitudes not normalized (sum |a|^2 = " + std::to_string(norm2) +
                      ")");
  }
}

PureState PureState::normalized(std::size_t num_qubits, std::vector<Complex> amplitudes) {
  double norm2 = 0.0;
  for (const Complex& a : amplitudes) norm2 += std::norm(a);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw DomainError("PureState::normalized: zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (Complex& a : amplitudes) a *= inv;
  return PureState(num_qubits, std::move(amplitudes));
}

DensityMatrix PureState::density() const {
  return DensityMatrix(num_qubits_, ComplexMatrix::outer(amplitudes_, amplitudes_),
                       DensityMatrix::Unchecked{});
}

DensityMatrix::DensityMatrix(std::size_t num_qubits, ComplexMatrix matrix)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
  if (num_qubits_ == 0) throw DomainError("DensityMatrix: need at least one qubit");
  if (!is_power_of_two_dim(matrix_.dim(), num_qubits_)) {
    throw DomainError("DensityMatrix: dim must be 2^num_qubits");
  }
  if (matrix_.hermiticity_defect() > kDensityTolerance) {
    throw DomainError("DensityMatrix: not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kDensityTolerance) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  const auto values = hermitian_eigenvalues(matrix_);
  if (values.front() < -kDensityTolerance) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(values.front()));
  }
}

DensityMatrix::DensityMatrix(std::size_t num_qubits, ComplexMatrix matrix, Unchecked) noexcept
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {}

double DensityMatrix::purity() const noexcept {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const Complex& z : matrix_.entries()) s += std::norm(z);
  return s;
}

// ---------------------------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  const std::size_t n = na * nb;
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) e[(i * nb + k) * n + (j * nb + l)] = aij * b(k, l);
      }
    }
  }
  return ComplexMatrix(n, std::move(e));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const IndexMap map = make_index_map(rho.num_qubits(), keep);
  const std::size_t out_dim = std::size_t{1} << map.keep.size();
  const std::size_t traced_dim = std::size_t{1} << map.traced.size();
  std::vector<Complex> e(out_dim * out_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    for (std::size_t c = 0; c < out_dim; ++c) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) s += rho(map.compose(r, t), map.compose(c, t));
      e[r * out_dim + c] = s;
    }
  }
  return DensityMatrix(map.keep.size(), ComplexMatrix(out_dim, std::move(e)),
                       DensityMatrix::Unchecked{});
}

DensityMatrix reduced_density(const PureState& psi, std::span<const std::size_t> keep) {
  const IndexMap map = make_index_map(psi.num_qubits(), keep);
  const std::size_t out_dim = std::size_t{1} << map.keep.size();
  const std::size_t traced_dim = std::size_t{1} << map.traced.size();
  // Reshape psi into an out_dim x traced_dim matrix M; the reduced state is M M^dagger.
  std::vector<Complex> m(out_dim * traced_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    for (std::size_t t = 0; t < traced_dim; ++t) m[r * traced_dim + t] = psi[map.compose(r, t)];
  }
  std::vector<Complex> e(out_dim * out_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    for (std::size_t c = r; c < out_dim; ++c) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) {
        s += m[r * traced_dim + t] * std::conj(m[c * traced_dim + t]);
      }
      e[r * out_dim + c] = s;
      e[c * out_dim + r] = std::conj(s);
    }
    e[r * out_dim + r] = e[r * out_dim + r].real();
  }
  return DensityMatrix(map.keep.size(), ComplexMatrix(out_dim, std::move(e)),
                       DensityMatrix::Unchecked{});
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi for complex Hermitian matrices.
//
// Each (p, q) step first rotates the phase of a_pq onto the real axis with
// diag(1, e^{-i phi}) and then applies the real symmetric Jacobi rotation, so
// the combined unitary G acting on columns p, q is
//
//   G = | c                s             |
//       | -s e^{-i phi}    c e^{-i phi}  |
//
// and the update is A <- G^dagger A G, V <- V G.

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  const std::size_t n = h.dim();
  const double scale = h.frobenius_norm();
  if (h.hermiticity_defect() > kEigHermitianTolerance * std::max(1.0, scale)) {
    throw DomainError("hermitian_eig: input is not Hermitian");
  }

  std::vector<Complex> a(h.entries().begin(), h.entries().end());
  std::vector<Complex> v(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
    a[i * n + i] = a[i * n + i].real();
  }
  // Symmetrize away sub-tolerance anti-Hermitian noise.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a[i * n + j] + std::conj(a[j * n + i]));
      a[i * n + j] = avg;
      a[j * n + i] = std::conj(avg);
    }
  }

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += std::norm(a[i * n + j]);
      }
    }
    return std::sqrt(s);
  };

  const double threshold = kJacobiTolerance * scale;
  bool converged = n == 1 || scale == 0.0;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    if (off_norm() <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;  // e^{i phi}
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        if (std::abs(theta) > 1e150) t = 0.5 / theta;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -s * std::conj(phase);
        const Complex g_qq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A G
          const Complex akp = a[k * n + p];
          const Complex akq = a[k * n + q];
          a[k * n + p] = akp * g_pp + akq * g_qp;
          a[k * n + q] = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // G^dagger (A G)
          const Complex apk = a[p * n + k];
          const Complex aqk = a[q * n + k];
          a[p * n + k] = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a[q * n + k] = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();

        for (std::size_t k = 0; k < n; ++k) {  // V G
          const Complex vkp = v[k * n + p];
          const Complex vkq = v[k * n + q];
          v[k * n + p] = vkp * g_pp + vkq * g_qp;
          v[k * n + q] = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }
  if (!converged && off_norm() <= threshold) converged = true;
  if (!converged) {
    throw ConvergenceError("hermitian_eig: no convergence within " +
                           std::to_string(kJacobiMaxSweeps) + " sweeps (n=" + std::to_string(n) +
                           ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i].real() < a[j * n + j].real();
  });
  std::vector<double> values(n);
  std::vector<Complex> vecs(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a[order[k] * n + order[k]].real();
    for (std::size_t i = 0; i < n; ++i) vecs[i * n + k] = v[i * n + order[k]];
  }
  return {std::move(values), ComplexMatrix(n, std::move(vecs))};
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  return hermitian_eig(h).values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
  const auto eig = hermitian_eig(rho);
  const std::size_t n = rho.dim();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    if (lambda < -kEigenClampWindow) {
      throw DomainError("psd_sqrt: eigenvalue " + std::to_string(lambda) + " is significantly negative");
    }
    roots[k] = std::sqrt(std::max(lambda, 0.0));
  }
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += eig.vectors(i, k) * roots[k] * std::conj(eig.vectors(j, k));
      }
      e[i * n + j] = s;
    }
  }
  return ComplexMatrix(n, std::move(e));
}

double trace_power(const DensityMatrix& rho, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("trace_power: alpha must be positive");
  const std::vector<double> values = hermitian_eigenvalues(rho.matrix());
  // Eigenvalues at roundoff level are zeros in disguise; for alpha < 1 their
  // powers would otherwise leak in (1e-17^0.5 ~ 3e-9).
  const double noise = static_cast<double>(values.size()) * std::numeric_limits<double>::epsilon() *
                       std::max(values.back(), 0.0);
  double s = 0.0;
  for (double lambda : values) {
    if (lambda <= noise) continue;  // also covers the clamped window [-1e-10, 0]
    s += std::pow(lambda, alpha);
  }
  return s;
}

}  // namespace renyimono
