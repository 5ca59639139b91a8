#include "magdyn/extract.hpp"

#include <cmath>

#include "magdyn/ghzx.hpp"
#include "magdyn/stabset.hpp"

namespace magdyn {

namespace {

ExtractionResult from_endpoints(double p0, double pn, cplx c) {
  ExtractionResult res;
  res.success_probability = p0 + pn;
  res.decoded = Matrix(2, 2);
  res.decoded << p0, c, std::conj(c), pn;
  res.decoded /= res.success_probability;
  res.bloch = bloch_vector(res.decoded);
  res.corrected_coordinate = std::abs(res.bloch.x()) + std::abs(res.bloch.z());
  res.flags.outside_octahedron = res.bloch.lpNorm<1>() > 1.0 + 1e-12;
  return res;
}

}  // namespace

ExtractionResult parity_extract(int n, double alpha, double gamma) {
  const GhzXPoint pt = ghzx_point(n, alpha, gamma);
  return from_endpoints(pt.p0(), pt.pn(), pt.coherence);
}

LosslessCheck lossless_identity_check(int n, double alpha, double gamma) {
  const GhzXPoint pt = ghzx_point(n, alpha, gamma);
  const ExtractionResult ex = from_endpoints(pt.p0(), pt.pn(), pt.coherence);
  return {ex.success_probability * (single_qubit_rom(ex.bloch) - 1.0), rom_closed(pt) - 1.0};
}

ExtractionResult twirl_and_classify(ExtractionResult result) {
  if (result.bloch.z() < 0.0) {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    result.decoded = x * result.decoded * x;
    result.bloch = bloch_vector(result.decoded);
  }
  const double l1 = std::abs(result.bloch.x()) + std::abs(result.bloch.z());
  result.corrected_coordinate = l1;
  result.h_polarization = l1 / std::sqrt(2.0);
  result.t_polarization = l1 / std::sqrt(3.0);
  result.flags.h_distillable = l1 > kHDistillThreshold;
  result.flags.t_distillable = l1 > kTDistillThreshold;
  return result;
}

double large_n_coordinate(double u) {
  if (!(u >= 1.0)) throw DomainError("u must be >= 1");
  return (2.0 * u + u * u - 1.0) / (1.0 + u * u);
}

CatInjection cat_injection(int n) {
  if (n < 2) throw DomainError("n must be >= 2");
  const double a = std::sqrt(2.0) - 1.0;
  CatInjection out;
  out.gamma_star = 1.0 - std::pow(a, 2.0 / n);
  out.epsilon = std::pow(out.gamma_star, n);
  const GhzXPoint pt = ghzx_point(n, 1.0 / std::sqrt(2.0), out.gamma_star);
  out.decoded = Matrix(2, 2);
  out.decoded << pt.p0(), pt.coherence, std::conj(pt.coherence), pt.pn();
  out.decoded /= pt.p0() + pt.pn();
  out.success_probability = 2.0 - std::sqrt(2.0) + 0.5 * out.epsilon;
  const double pi = std::acos(-1.0);
  Vector h(2);
  h << std::cos(pi / 8), std::sin(pi / 8);
  out.fidelity_with_h = h.dot(out.decoded * h).real();
  return out;
}

}  // namespace magdyn
