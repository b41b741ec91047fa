#include "dirac_noise/dirac_model.hpp"

#include <cmath>
#include <string>

#include "dirac_noise/errors.hpp"

namespace dirac_noise {

namespace {

constexpr Complex kI(0.0, 1.0);

ComplexMatrix pauli_axis(int axis) {
  switch (axis) {
    case 0: return pauli::X();
    case 1: return pauli::Y();
    case 2: return pauli::Z();
    default: throw InvalidInput("axis must be 0, 1 or 2");
  }
}

double field_x(const DiracParams& p) { return p.E_field * std::cos(p.theta); }
double field_y(const DiracParams& p) { return p.E_field * std::sin(p.theta); }
// z component of p x E for p along x and E in the xy-plane.
double cross_z(const DiracParams& p) { return p.p * p.E_field * std::sin(p.theta); }

ComplexMatrix squared_traceless(const ComplexMatrix& h) {
  const ComplexMatrix h2 = h * h;
  return h2 - (0.25 * h2.trace()) * ComplexMatrix::identity(4);
}

}  // namespace

void validate(const DiracParams& params) {
  const double fields[] = {params.m, params.p, params.kappa,
                           params.mu, params.E_field, params.theta};
  for (double f : fields) {
    if (!std::isfinite(f)) throw InvalidInput("Dirac parameters must be finite");
  }
  if (params.m < 0.0) throw InvalidInput("mass m must be >= 0");
  if (params.p < 0.0) throw InvalidInput("momentum p must be >= 0");
  if (params.E_field < 0.0) throw InvalidInput("field magnitude E must be >= 0");
}

bool is_closed_form_configuration(const DiracParams& params) {
  return std::abs(params.theta - std::numbers::pi / 4) <= 1e-12;
}

namespace dirac_matrices {
ComplexMatrix beta() { return tensor_product(pauli::Z(), pauli::I()); }
ComplexMatrix alpha(int axis) { return tensor_product(pauli::X(), pauli_axis(axis)); }
ComplexMatrix sigma(int axis) { return tensor_product(pauli::I(), pauli_axis(axis)); }
}  // namespace dirac_matrices

ComplexMatrix build_dirac_hamiltonian(const DiracParams& params) {
  validate(params);
  using namespace dirac_matrices;
  const ComplexMatrix b = beta();
  const double ex = field_x(params);
  const double ey = field_y(params);

  ComplexMatrix h = params.m * b;
  h += params.p * alpha(0);
  h += b * (params.kappa * ex * sigma(0) + params.kappa * ey * sigma(1));
  h += kI * (b * (params.mu * ex * alpha(0) + params.mu * ey * alpha(1)));
  return h;
}

ComplexMatrix build_invariant_operator(const DiracParams& params) {
  validate(params);
  using namespace dirac_matrices;
  const ComplexMatrix b = beta();
  const double ex = field_x(params);
  const double ey = field_y(params);
  const double cz = cross_z(params);

  ComplexMatrix o = params.m * params.kappa * (ex * sigma(0) + ey * sigma(1));
  o += params.mu * cz * (b * sigma(2));
  o -= kI * params.kappa * cz * (b * alpha(2));
  return o;
}

double compute_g2(const DiracParams& params) {
  const ComplexMatrix k = squared_traceless(build_dirac_hamiltonian(params));
  return (k * k).trace().real() / 16.0;
}

double eigenvalue_closed_form(const DiracParams& params, int n, int s) {
  validate(params);
  if ((n != 0 && n != 1) || (s != 0 && s != 1)) {
    throw InvalidInput("eigenvalue indices n, s must be 0 or 1");
  }
  if (!is_closed_form_configuration(params)) {
    throw UnsupportedConfiguration(
        "closed-form spectrum requires theta = pi/4; use the numeric diagonalization path");
  }
  const double m = params.m, p = params.p, k = params.kappa, mu = params.mu, e = params.E_field;
  const double coupling = m * m * k * k + 0.5 * (mu * mu + k * k) * p * p;
  const double sign_s = s == 0 ? 1.0 : -1.0;
  const double radicand =
      p * p + m * m + (k * k + mu * mu) * e * e + 2.0 * sign_s * e * std::sqrt(coupling);
  if (radicand < 0.0) {
    if (radicand > -1e-12 * std::max(1.0, p * p + m * m + (k * k + mu * mu) * e * e)) {
      return 0.0;
    }
    throw NumericDomainError("negative radicand in closed-form eigenvalue");
  }
  return (n == 0 ? 1.0 : -1.0) * std::sqrt(radicand);
}

SpectralData eigenprojectors(const DiracParams& params) {
  const ComplexMatrix h = build_dirac_hamiltonian(params);
  const ComplexMatrix o = build_invariant_operator(params);
  const ComplexMatrix id = ComplexMatrix::identity(4);

  SpectralData data;
  data.g2 = compute_g2(params);
  if (data.g2 <= kDegeneracyThreshold) {
    throw DegenerateSpectrum("g2 = " + std::to_string(data.g2) +
                             " is degenerate; use the numeric-diagonalization evolution path");
  }
  // H^2 = Tr[H^2]/4 + 2 O and O has eigenvalues +-sqrt(g2).
  const double quarter_trace = 0.25 * (h * h).trace().real();
  const double root_g2 = std::sqrt(data.g2);
  for (int n = 0; n < 2; ++n) {
    for (int s = 0; s < 2; ++s) {
      const double sign_n = n == 0 ? 1.0 : -1.0;
      const double sign_s = s == 0 ? 1.0 : -1.0;
      const double squared = quarter_trace + 2.0 * sign_s * root_g2;
      const double magnitude = std::sqrt(std::max(0.0, squared));
      if (magnitude <= kDegeneracyThreshold) {
        throw DegenerateSpectrum("|lambda_{" + std::to_string(n) + "," + std::to_string(s) +
                                 "}| vanishes; use the numeric-diagonalization evolution path");
      }
      data.lambdas[2 * n + s] = sign_n * magnitude;
      data.projectors[2 * n + s] =
          0.25 * ((id + (sign_n / magnitude) * h) * (id + (sign_s / root_g2) * o));
    }
  }
  return data;
}

}  // namespace dirac_noise
