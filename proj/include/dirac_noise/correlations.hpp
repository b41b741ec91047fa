#pragma once

#include <array>

#include "dirac_noise/noise_channel.hpp"

namespace dirac_noise {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// rho = (1/4)[I + a1.sigma (x) I + I (x) a2.sigma + sum t_ij sigma_i (x) sigma_j]
struct FanoData {
  Vec3 a1{};
  Vec3 a2{};
  Mat3 T{};
};

FanoData fano_decompose(const DensityMatrix& rho);
ComplexMatrix fano_reconstruct(const FanoData& fano);

inline constexpr double kMeasureClampThreshold = 1e-12;

// ||rho^{T_subsystem}||_1 - 1; the two subsystems agree for two qubits.
double negativity(const DensityMatrix& rho, int subsystem = 1);

// (1/4)(|a_side|^2 + ||T||^2 - k_max), k_max the top eigenvalue of a a^T + T T^T.
double geometric_discord(const DensityMatrix& rho, int side);

double purity(const DensityMatrix& rho);

struct CorrelationSample {
  double t = 0.0;
  double negativity = 0.0;
  double discord_1 = 0.0;
  double discord_2 = 0.0;
  double purity = 1.0;
  double min_eigenvalue = 0.0;
  double trace_deviation = 0.0;
};

// All measures plus the PSD / trace diagnostics for one state.
CorrelationSample measure(const DensityMatrix& rho, double t);

}  // namespace dirac_noise
