#include "renyimono/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "renyimono/errors.hpp"
#include "renyimono/rng.hpp"

namespace renyimono {

namespace {

constexpr double kCoefficientTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t dim_of(std::size_t n) {
  if (n == 0 || n > 20) throw DomainError("qubit count out of supported range");
  return std::size_t{1} << n;
}

}  // namespace

void validate(const StateFamily& f) {
  const std::size_t n = f.num_qubits;
  std::visit(Overloaded{
                 [&](const family::Ghz&) {
                   if (n < 2) throw DomainError("GHZ needs at least 2 qubits");
                 },
                 [&](const family::W&) {
                   if (n < 3) throw DomainError("W state needs at least 3 qubits");
                 },
                 [&](const family::GeneralizedW& g) {
                   if (n != 3) throw DomainError("generalized W state is defined on 3 qubits");
                   const double norm2 = std::norm(g.a) + std::norm(g.b) + std::norm(g.c);
                   if (std::abs(norm2 - 1.0) > kCoefficientTolerance) {
                     throw DomainError("generalized W coefficients must satisfy |a|^2+|b|^2+|c|^2 = 1");
                   }
                 },
                 [&](const family::Bell&) {
                   if (n != 2) throw DomainError("Bell state is defined on 2 qubits");
                 },
                 [&](const family::Werner& w) {
                   if (n != 2) throw DomainError("Werner state is defined on 2 qubits");
                   if (!(w.p >= 0.0 && w.p <= 1.0)) throw DomainError("Werner p must lie in [0,1]");
                 },
                 [&](const family::HaarPure&) { dim_of(n); },
                 [&](const family::GinibreMixed& g) {
                   const std::size_t d = dim_of(n);
                   if (g.rank < 1 || g.rank > d) throw DomainError("rank must lie in [1, 2^n]");
                 },
             },
             f.kind);
}

bool is_pure_family(const StateFamily& f) noexcept {
  return !std::holds_alternative<family::Werner>(f.kind) &&
         !std::holds_alternative<family::GinibreMixed>(f.kind);
}

bool is_random_family(const StateFamily& f) noexcept {
  return std::holds_alternative<family::HaarPure>(f.kind) ||
         std::holds_alternative<family::GinibreMixed>(f.kind);
}

std::string describe(const StateFamily& f) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const family::Ghz&) { os << "ghz" << f.num_qubits; },
                 [&](const family::W&) { os << "w" << f.num_qubits; },
                 [&](const family::GeneralizedW& g) {
                   os << "gw(" << g.a.real() << "," << g.b.real() << "," << g.c.real() << ")";
                 },
                 [&](const family::Bell&) { os << "bell"; },
                 [&](const family::Werner& w) { os << "werner(" << w.p << ")"; },
                 [&](const family::HaarPure&) { os << "haar" << f.num_qubits; },
                 [&](const family::GinibreMixed& g) {
                   os << "ginibre" << f.num_qubits << "r" << g.rank;
                 },
             },
             f.kind);
  return os.str();
}

PureState sample_pure(const StateFamily& f, std::uint64_t seed, std::uint64_t index) {
  validate(f);
  return std::visit(
      Overloaded{
          [&](const family::Ghz&) { return ghz(f.num_qubits); },
          [&](const family::W&) { return w_state(f.num_qubits); },
          [&](const family::GeneralizedW& g) { return generalized_w(g.a, g.b, g.c); },
          [&](const family::Bell&) { return bell_phi_plus(); },
          [&](const family::HaarPure&) {
            return haar_random_pure(f.num_qubits, derive_seed(seed, index));
          },
          [&](const auto&) -> PureState {
            throw DomainError("state family " + describe(f) + " is not a pure-state family");
          },
      },
      f.kind);
}

PureState basis_state(std::size_t num_qubits, std::size_t index) {
  const std::size_t d = dim_of(num_qubits);
  if (index >= d) throw DomainError("basis index out of range");
  std::vector<Complex> amps(d);
  amps[index] = 1.0;
  return PureState(num_qubits, std::move(amps));
}

PureState ghz(std::size_t n) {
  if (n < 2) throw DomainError("ghz: need at least 2 qubits");
  const std::size_t d = dim_of(n);
  std::vector<Complex> amps(d);
  amps.front() = std::numbers::sqrt2 / 2.0;
  amps.back() = std::numbers::sqrt2 / 2.0;
  return PureState(n, std::move(amps));
}

PureState w_state(std::size_t n) {
  if (n < 3) throw DomainError("w_state: need at least 3 qubits");
  const std::size_t d = dim_of(n);
  std::vector<Complex> amps(d);
  const double weight = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t q = 0; q < n; ++q) amps[std::size_t{1} << (n - 1 - q)] = weight;
  return PureState::normalized(n, std::move(amps));
}

PureState generalized_w(Complex a, Complex b, Complex c) {
  const double norm2 = std::norm(a) + std::norm(b) + std::norm(c);
  if (std::abs(norm2 - 1.0) > kCoefficientTolerance) {
    throw DomainError("generalized_w: |a|^2+|b|^2+|c|^2 must equal 1");
  }
  std::vector<Complex> amps(8);
  amps[0b100] = a;
  amps[0b010] = b;
  amps[0b001] = c;
  return PureState::normalized(3, std::move(amps));
}

PureState bell_phi_plus() { return ghz(2); }

PureState singlet() {
  const double h = std::numbers::sqrt2 / 2.0;
  return PureState(2, {0.0, h, -h, 0.0});
}

PureState haar_random_pure(std::size_t n, std::uint64_t seed) {
  const std::size_t d = dim_of(n);
  Rng rng(seed);
  std::vector<Complex> amps(d);
  for (Complex& a : amps) a = rng.complex_gaussian();
  return PureState::normalized(n, std::move(amps));
}

DensityMatrix random_density(std::size_t n, std::size_t rank, std::uint64_t seed) {
  const std::size_t d = dim_of(n);
  if (rank < 1 || rank > d) throw DomainError("random_density: rank must lie in [1, 2^n]");
  Rng rng(seed);
  std::vector<Complex> g(d * rank);  // row-major d x rank
  for (Complex& z : g) z = rng.complex_gaussian();
  std::vector<Complex> e(d * d);
  double tr = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < rank; ++k) s += g[i * rank + k] * std::conj(g[j * rank + k]);
      e[i * d + j] = s;
      e[j * d + i] = std::conj(s);
    }
    e[i * d + i] = e[i * d + i].real();
    tr += e[i * d + i].real();
  }
  for (Complex& z : e) z /= tr;
  return DensityMatrix(n, ComplexMatrix(d, std::move(e)));
}

DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("werner: p must lie in [0,1]");
  const PureState psi = singlet();
  const ComplexMatrix proj = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes());
  const ComplexMatrix mixed = (0.25 * (1.0 - p)) * ComplexMatrix::identity(4);
  return DensityMatrix(2, Complex{p} * proj + mixed);
}

}  // namespace renyimono
