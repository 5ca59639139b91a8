// Parity-syndrome extraction of a single qubit from a damped GHZ state,
// Clifford twirling and distillation-window flags, cat-state injection.
#pragma once

#include <Eigen/Dense>

#include "magdyn/qcore.hpp"

namespace magdyn {

// sqrt(2)(1 - 2*0.141) and 3/sqrt(7).
inline constexpr double kHDistillThreshold = 1.0154053378;
inline constexpr double kTDistillThreshold = 1.1338934190;

struct ExtractionFlags {
  bool outside_octahedron = false;
  bool h_distillable = false;
  bool t_distillable = false;
};

struct ExtractionResult {
  double success_probability = 0.0;
  Matrix decoded;  // 2x2
  Eigen::Vector3d bloch = Eigen::Vector3d::Zero();
  double corrected_coordinate = 0.0;  // |x| + |z|
  double h_polarization = 0.0;
  double t_polarization = 0.0;
  ExtractionFlags flags;
};

ExtractionResult parity_extract(int n, double alpha, double gamma);

struct LosslessCheck {
  double lhs;
  double rhs;
};
LosslessCheck lossless_identity_check(int n, double alpha, double gamma);

ExtractionResult twirl_and_classify(ExtractionResult result);

double large_n_coordinate(double u);

struct CatInjection {
  double gamma_star = 0.0;
  Matrix decoded;
  double fidelity_with_h = 0.0;
  double success_probability = 0.0;
  double epsilon = 0.0;
};
CatInjection cat_injection(int n);

}  // namespace magdyn
