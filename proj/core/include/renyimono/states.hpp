#pragma once

// Structured and random test states.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "renyimono/linalg.hpp"

namespace renyimono {

namespace family {
struct Ghz {};
struct W {};
struct GeneralizedW {
  Complex a, b, c;  // weights of |100>, |010>, |001>
};
struct Bell {};  // |Phi+>
struct Werner {
  double p;
};
struct HaarPure {};
struct GinibreMixed {
  std::size_t rank;
};
}  // namespace family

struct StateFamily {
  std::variant<family::Ghz, family::W, family::GeneralizedW, family::Bell, family::Werner,
               family::HaarPure, family::GinibreMixed>
      kind;
  std::size_t num_qubits;
};

// Throws DomainError if the family parameters are inconsistent
// (qubit counts, normalization, Werner weight, rank range).
void validate(const StateFamily& f);
bool is_pure_family(const StateFamily& f) noexcept;
// True for families whose members depend on the seed.
bool is_random_family(const StateFamily& f) noexcept;
std::string describe(const StateFamily& f);

// Member `index` of a pure family; random families draw from the
// (seed, index) substream, structured families ignore both.
PureState sample_pure(const StateFamily& f, std::uint64_t seed, std::uint64_t index);

PureState basis_state(std::size_t num_qubits, std::size_t index);
PureState ghz(std::size_t n);       // n >= 2
PureState w_state(std::size_t n);   // n >= 3
PureState generalized_w(Complex a, Complex b, Complex c);
PureState bell_phi_plus();
PureState singlet();                // (|01> - |10>)/sqrt(2)

// Normalized vector of independent standard complex Gaussians drawn from
// Rng(seed).
PureState haar_random_pure(std::size_t n, std::uint64_t seed);
// G G^dagger / tr(G G^dagger) with G a 2^n x rank complex Gaussian matrix.
DensityMatrix random_density(std::size_t n, std::size_t rank, std::uint64_t seed);
// p |Psi-><Psi-| + (1 - p) I/4
DensityMatrix werner(double p);

}  // namespace renyimono
