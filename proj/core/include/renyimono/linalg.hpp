#pragma once

// Dense complex linear algebra for qubit registers.
//
// Qubit ordering is big-endian everywhere in this library: qubit 0 is the
// most significant bit of a computational-basis index, so for three qubits
// the basis index of |q0 q1 q2> is 4*q0 + 2*q1 + q2.
//
// All value types are immutable after construction; every operation returns
// a new value, so they can be shared freely between threads.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace renyimono {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  // Row-major entries; entries.size() must equal dim*dim and dim >= 1.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix zeros(std::size_t dim);
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  // |v><w|
  static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

  std::size_t dim() const noexcept { return dim_; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  Complex trace() const noexcept;
  double frobenius_norm() const noexcept;
  // Largest entrywise |a_ij - conj(a_ji)|.
  double hermiticity_defect() const noexcept;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

// Largest entrywise |a_ij - b_ij|; dims must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

class DensityMatrix;

class PureState {
 public:
  // Amplitudes must have length 2^num_qubits and unit norm within 1e-12.
  PureState(std::size_t num_qubits, std::vector<Complex> amplitudes);

  // Rescales a nonzero vector to unit norm.
  static PureState normalized(std::size_t num_qubits, std::vector<Complex> amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }

  DensityMatrix density() const;

 private:
  std::size_t num_qubits_;
  std::vector<Complex> amplitudes_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity (1e-10 entrywise), unit trace (1e-10) and
  // smallest eigenvalue >= -1e-10.
  DensityMatrix(std::size_t num_qubits, ComplexMatrix matrix);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return matrix_(row, col);
  }

  double purity() const noexcept;

 private:
  struct Unchecked {};
  DensityMatrix(std::size_t num_qubits, ComplexMatrix matrix, Unchecked) noexcept;

  friend DensityMatrix partial_trace(const DensityMatrix&, std::span<const std::size_t>);
  friend DensityMatrix reduced_density(const PureState&, std::span<const std::size_t>);
  friend class PureState;

  std::size_t num_qubits_;
  ComplexMatrix matrix_;
};

inline constexpr double kDensityTolerance = 1e-10;
inline constexpr double kEigenClampWindow = 1e-10;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Reduced state on the qubits in `keep`, in the order listed. Throws
// DomainError for out-of-range or duplicate indices or an empty keep set.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
// Same as partial_trace(psi.density(), keep) without forming the global
// density matrix.
DensityMatrix reduced_density(const PureState& psi, std::span<const std::size_t> keep);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

// Cyclic complex Jacobi. Input must be Hermitian within 1e-8 (DomainError);
// throws ConvergenceError if the off-diagonal norm does not drop below
// kJacobiTolerance * ||h||_F within kJacobiMaxSweeps sweeps.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

// PSD square root. Eigenvalues in [-1e-10, 0) are clamped to zero; anything
// more negative is a DomainError.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);

// tr(rho^alpha) over the clamped spectrum; alpha must be positive.
double trace_power(const DensityMatrix& rho, double alpha);

}  // namespace renyimono
