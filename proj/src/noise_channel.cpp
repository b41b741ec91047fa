#include "dirac_noise/noise_channel.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "dirac_noise/errors.hpp"

namespace dirac_noise {

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  return u * rho * u.adjoint();
}

}  // namespace

std::optional<std::pair<std::string, std::string>> StateDiagnostics::first_violation() const {
  if (!(hermiticity_defect <= kHermiticityTol)) {
    return std::pair{std::string("hermiticity"), "defect " + fmt_double(hermiticity_defect)};
  }
  if (!(std::abs(trace_deviation) <= kTraceTol)) {
    return std::pair{std::string("unit trace"), "|Tr rho - 1| = " + fmt_double(std::abs(trace_deviation))};
  }
  if (!(min_eigenvalue >= -kPositivityTol)) {
    return std::pair{std::string("positivity"), "min eigenvalue " + fmt_double(min_eigenvalue)};
  }
  if (!(purity >= 0.25 - kPurityTol && purity <= 1.0 + kPurityTol)) {
    return std::pair{std::string("purity range"), "Tr rho^2 = " + fmt_double(purity)};
  }
  return std::nullopt;
}

StateDiagnostics diagnose_state(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw InvalidInput("two-qubit state must be 4x4");
  StateDiagnostics d;
  d.hermiticity_defect = hermiticity_defect(rho);
  d.trace_deviation = rho.trace().real() - 1.0;
  d.purity = (rho * rho).trace().real();
  if (d.hermiticity_defect <= kHermiticityTol) {
    // Symmetrize away round-off before the eigensolver's strict Hermiticity check.
    const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
    d.min_eigenvalue = hermitian_eigenvalues(sym).front();
  } else {
    d.min_eigenvalue = std::nan("");
  }
  return d;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& rho) : rho_(rho) {
  if (const auto violation = diagnose_state(rho).first_violation()) {
    throw InvalidInput("invalid density matrix: " + violation->first + " (" +
                       violation->second + ")");
  }
}

DensityMatrix DensityMatrix::assume_valid(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw InvalidInput("two-qubit state must be 4x4");
  return DensityMatrix(rho, Unchecked{});
}

DensityMatrix DensityMatrix::pure(const std::array<Complex, 4>& psi) {
  double norm2 = 0.0;
  for (const Complex& z : psi) norm2 += std::norm(z);
  if (!(norm2 > 0.0)) throw InvalidInput("state vector must be nonzero");
  ComplexMatrix rho(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]) / norm2;
  return DensityMatrix(rho);
}

void validate(const NoiseParams& noise) {
  if (!std::isfinite(noise.gamma_rate) || noise.gamma_rate < 0.0) {
    throw InvalidInput("dephasing rate Gamma must be finite and >= 0");
  }
}

KrausSet build_kraus_set(const NoiseParams& noise, double t) {
  validate(noise);
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidInput("dephasing channel is defined for t >= 0 only");
  }
  const double decay = std::exp(-noise.gamma_rate * t);
  KrausSet ks;
  ks.gamma_factor = std::exp(-0.5 * noise.gamma_rate * t);
  ks.omega_factor = std::sqrt(1.0 - decay);
  const double g = ks.gamma_factor;
  const double w = ks.omega_factor;

  const ComplexMatrix id = pauli::I();
  const ComplexMatrix keep = ComplexMatrix::diagonal({1.0, g});
  const ComplexMatrix kick = ComplexMatrix::diagonal({0.0, w});
  const std::array<ComplexMatrix, 2> e = {tensor_product(keep, id), tensor_product(kick, id)};
  const std::array<ComplexMatrix, 2> f = {tensor_product(id, keep), tensor_product(id, kick)};
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) ks.operators[2 * mu + nu] = f[nu] * e[mu];
  return ks;
}

double completeness_defect(const KrausSet& ks) {
  ComplexMatrix sum(4);
  for (const ComplexMatrix& k : ks.operators) sum += k.adjoint() * k;
  return max_abs_diff(sum, ComplexMatrix::identity(4));
}

ComplexMatrix dephasing_coefficients(double gamma_factor) {
  const double g = gamma_factor;
  const double g2 = g * g;
  return ComplexMatrix(4, {1.0, g, g, g2,
                           g, 1.0, g2, g,
                           g, g2, 1.0, g,
                           g2, g, g, 1.0});
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& ks) {
  const double defect = completeness_defect(ks);
  if (!(defect <= 1e-12)) {
    throw InvalidInput("Kraus set is not trace preserving (defect " + fmt_double(defect) + ")");
  }
  ComplexMatrix out(4);
  for (const ComplexMatrix& k : ks.operators) out += conjugate(k, rho.matrix());
  return DensityMatrix::assume_valid(out);
}

DensityMatrix evolve_unitary(const DensityMatrix& rho0, const ComplexMatrix& h, double t) {
  return DensityMatrix::assume_valid(conjugate(evolution_operator(h, t), rho0.matrix()));
}

DensityMatrix evolve_projector_sum(const DensityMatrix& rho0, const SpectralData& spectral,
                                   double t) {
  if (!std::isfinite(t)) throw InvalidInput("time must be finite");
  std::array<ComplexMatrix, 4> right{ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4),
                                     ComplexMatrix(4)};
  for (int k = 0; k < 4; ++k) right[k] = rho0.matrix() * spectral.projectors[k];
  ComplexMatrix out(4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Complex phase = std::polar(1.0, -(spectral.lambdas[a] - spectral.lambdas[b]) * t);
      out += phase * (spectral.projectors[a] * right[b]);
    }
  }
  return DensityMatrix::assume_valid(out);
}

DensityMatrix evolve_noiseless(const DensityMatrix& rho0, const DiracParams& params, double t) {
  try {
    return evolve_projector_sum(rho0, eigenprojectors(params), t);
  } catch (const DegenerateSpectrum&) {
    return evolve_unitary(rho0, build_dirac_hamiltonian(params), t);
  }
}

Propagator::Propagator(const DiracParams& params)
    : hamiltonian_(build_dirac_hamiltonian(params)), eigen_(hermitian_eigensystem(hamiltonian_)) {}

ComplexMatrix Propagator::unitary(double t) const { return evolution_operator(eigen_, t); }

DensityMatrix evolve_noisy(const DensityMatrix& rho0, const Propagator& propagator,
                           const NoiseParams& noise, double t) {
  const DensityMatrix dephased = apply_channel(rho0, build_kraus_set(noise, t));
  return DensityMatrix::assume_valid(conjugate(propagator.unitary(t), dephased.matrix()));
}

DensityMatrix evolve_noisy(const DensityMatrix& rho0, const DiracParams& params,
                           const NoiseParams& noise, double t) {
  return evolve_noisy(rho0, Propagator(params), noise, t);
}

}  // namespace dirac_noise
