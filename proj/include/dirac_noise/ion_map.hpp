#pragma once

#include <array>
#include <optional>

#include "dirac_noise/dirac_model.hpp"
#include "dirac_noise/linalg.hpp"

namespace dirac_noise {

// Four-level trapped-ion parameters (hbar = 1). Internal levels a, b, c, d map
// onto the two-qubit basis |00>, |01>, |10>, |11>.
struct IonParams {
  double delta = 0.0;                     // detuning
  double eta_delta_omega = 0.5;           // Lamb-Dicke x width x Rabi frequency; c/2
  std::array<double, 3> omega1{};         // tensor-channel carrier frequencies
  std::array<double, 3> omega2{};         // pseudotensor-channel carrier frequencies

  friend bool operator==(const IonParams&, const IonParams&) = default;
};

void validate(const IonParams& ion);

enum class Level { a = 0, b = 1, c = 2, d = 3 };

// Pauli operators on a pair (j, k) of the four internal levels:
// X = |j><k| + |k><j|, Y = -i|j><k| + i|k><j|, Z = |j><j| - |k><k|.
namespace level_pauli {
ComplexMatrix x(Level j, Level k);
ComplexMatrix y(Level j, Level k);
ComplexMatrix z(Level j, Level k);
}  // namespace level_pauli

// Ionic realization of alpha_axis (without the 2 eta Delta Omega p prefactor).
ComplexMatrix ion_kinetic_operator(int axis);

IonParams dirac_to_ion(const DiracParams& params);

// Inverse map. Only the products kappa*E_j and mu*E_j are physical: kappa
// defaults to 1 (E carries the magnitude) unless pinned by the caller. Throws
// UnsupportedConfiguration when the carrier vectors are not parallel and in
// the xy-plane, or when 2*eta_delta_omega != 1.
DiracParams ion_to_dirac(const IonParams& ion, double p,
                         std::optional<double> kappa = std::nullopt);

// Sum of the ionic mass, x-kinetic, and carrier terms at momentum p along x.
ComplexMatrix assemble_ion_hamiltonian(const IonParams& ion, double p);

}  // namespace dirac_noise
