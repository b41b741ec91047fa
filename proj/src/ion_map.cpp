#include "dirac_noise/ion_map.hpp"

#include <cmath>

#include "dirac_noise/errors.hpp"

namespace dirac_noise {

namespace {

constexpr Complex kI(0.0, 1.0);

ComplexMatrix outer(Level j, Level k) {
  ComplexMatrix m(4);
  m(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = 1.0;
  return m;
}

double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace

void validate(const IonParams& ion) {
  auto finite = [](double x) { return std::isfinite(x); };
  bool ok = finite(ion.delta) && finite(ion.eta_delta_omega);
  for (int j = 0; j < 3; ++j) ok = ok && finite(ion.omega1[j]) && finite(ion.omega2[j]);
  if (!ok) throw InvalidInput("ion parameters must be finite");
  if (ion.delta < 0.0) throw InvalidInput("detuning delta must be >= 0");
}

namespace level_pauli {
ComplexMatrix x(Level j, Level k) { return outer(j, k) + outer(k, j); }
ComplexMatrix y(Level j, Level k) { return -kI * outer(j, k) + kI * outer(k, j); }
ComplexMatrix z(Level j, Level k) { return outer(j, j) - outer(k, k); }
}  // namespace level_pauli

ComplexMatrix ion_kinetic_operator(int axis) {
  using enum Level;
  using namespace level_pauli;
  switch (axis) {
    case 0: return x(a, d) + x(b, c);
    case 1: return y(a, d) - y(b, c);
    case 2: return x(a, c) - x(b, d);
    default: throw InvalidInput("axis must be 0, 1 or 2");
  }
}

IonParams dirac_to_ion(const DiracParams& params) {
  validate(params);
  const double ex = params.E_field * std::cos(params.theta);
  const double ey = params.E_field * std::sin(params.theta);
  IonParams ion;
  ion.delta = params.m / 2.0;
  ion.eta_delta_omega = 0.5;
  ion.omega1 = {params.kappa * ex / 2.0, params.kappa * ey / 2.0, 0.0};
  ion.omega2 = {params.mu * ex / 2.0, params.mu * ey / 2.0, 0.0};
  return ion;
}

DiracParams ion_to_dirac(const IonParams& ion, double p, std::optional<double> kappa) {
  validate(ion);
  if (!std::isfinite(p) || p < 0.0) throw InvalidInput("momentum p must be finite and >= 0");
  if (std::abs(2.0 * ion.eta_delta_omega - 1.0) > 1e-12) {
    throw UnsupportedConfiguration("natural units require 2*eta*Delta*Omega = c = 1");
  }

  // kappa*E_vec and mu*E_vec.
  const std::array<double, 3> tensor = {2 * ion.omega1[0], 2 * ion.omega1[1], 2 * ion.omega1[2]};
  const std::array<double, 3> pseudo = {2 * ion.omega2[0], 2 * ion.omega2[1], 2 * ion.omega2[2]};
  const double tensor_norm = norm3(tensor);
  const double pseudo_norm = norm3(pseudo);
  const double scale = std::max(1.0, std::max(tensor_norm, pseudo_norm));

  if (std::abs(tensor[2]) > 1e-10 * scale || std::abs(pseudo[2]) > 1e-10 * scale) {
    throw UnsupportedConfiguration("carrier vectors must lie in the xy-plane");
  }
  const double cross = tensor[0] * pseudo[1] - tensor[1] * pseudo[0];
  if (std::abs(cross) > 1e-10 * std::max(1.0, tensor_norm * pseudo_norm)) {
    throw UnsupportedConfiguration("tensor and pseudotensor carrier vectors must be parallel");
  }

  DiracParams out;
  out.m = 2.0 * ion.delta;
  out.p = p;

  if (kappa.has_value()) {
    if (!std::isfinite(*kappa)) throw InvalidInput("kappa must be finite");
    out.kappa = *kappa;
    if (tensor_norm == 0.0) {
      out.E_field = 0.0;
      if (pseudo_norm != 0.0) {
        throw UnsupportedConfiguration("pinned kappa leaves no field to carry the pseudotensor term");
      }
      return out;
    }
    if (*kappa == 0.0) {
      throw UnsupportedConfiguration("kappa = 0 is incompatible with a nonzero tensor carrier");
    }
    out.E_field = tensor_norm / std::abs(*kappa);
    const double ux = tensor[0] / (*kappa * out.E_field);
    const double uy = tensor[1] / (*kappa * out.E_field);
    out.theta = std::atan2(uy, ux);
    out.mu = (pseudo[0] * ux + pseudo[1] * uy) / out.E_field;
    return out;
  }

  if (tensor_norm > 0.0) {
    out.kappa = 1.0;
    out.E_field = tensor_norm;
    out.theta = std::atan2(tensor[1], tensor[0]);
    out.mu = (pseudo[0] * tensor[0] + pseudo[1] * tensor[1]) / (tensor_norm * tensor_norm);
  } else if (pseudo_norm > 0.0) {
    out.kappa = 0.0;
    out.mu = 1.0;
    out.E_field = pseudo_norm;
    out.theta = std::atan2(pseudo[1], pseudo[0]);
  } else {
    out.kappa = 1.0;
    out.mu = 0.0;
    out.E_field = 0.0;
  }
  return out;
}

ComplexMatrix assemble_ion_hamiltonian(const IonParams& ion, double p) {
  validate(ion);
  if (!std::isfinite(p)) throw InvalidInput("momentum p must be finite");
  using enum Level;
  using namespace level_pauli;
  const auto& w1 = ion.omega1;
  const auto& w2 = ion.omega2;

  ComplexMatrix h = 2.0 * ion.delta * (z(a, d) + z(b, c));
  h += 2.0 * ion.eta_delta_omega * p * ion_kinetic_operator(0);
  h += 2.0 * w1[0] * (x(a, b) - x(c, d));
  h += 2.0 * w1[1] * (y(a, b) - y(c, d));
  h += 2.0 * w1[2] * (z(a, b) - z(c, d));
  h += 2.0 * w2[0] * (-1.0 * y(a, d) - y(b, c));
  // i beta alpha_y expands to X_ad - X_bc given beta = Z_ad + Z_bc and alpha_y = Y_ad - Y_bc.
  h += 2.0 * w2[1] * (x(a, d) - x(b, c));
  h += 2.0 * w2[2] * (y(b, d) - y(a, c));
  return h;
}

}  // namespace dirac_noise
