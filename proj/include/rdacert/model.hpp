#pragma once

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace rdacert {

/// Parameters of the Gray-Scott reaction with advection:
///   dC1/dt = -C1 C2^2 + a (1 - C1) + d C1_xx + v1 C1_x
///   dC2/dt =  C1 C2^2 - (a + b) C2 +   C2_xx + v2 C2_x
struct GrayScottParams {
  double a = 0.06;
  double b = 0.04;
  double d = 6.0;
  double v1 = 0.0;
  double v2 = 0.0;

  /// Discriminant w = 1 - 4 (a + b)^2 / a; the nontrivial equilibrium is
  /// real iff w >= 0.
  double discriminant() const { return 1.0 - 4.0 * (a + b) * (a + b) / a; }
  /// Throws InvalidSpec on sign violations.
  void validate() const;
};

struct Equilibrium {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Linearized reaction-diffusion-advection system dc/dt = A c + D c_xx + V c_x
/// with diagonal D (diffusion) and V (advection).
struct SystemSpec {
  Eigen::MatrixXd A;
  Eigen::VectorXd D;
  Eigen::VectorXd V;
  std::optional<GrayScottParams> gray_scott;  // set when built from the model

  int n() const { return static_cast<int>(A.rows()); }
  /// Throws InvalidSpec unless A is square and finite, d_i > 0, v_i >= 0.
  void validate() const;

  static SystemSpec generic(Eigen::MatrixXd A, Eigen::VectorXd D,
                            Eigen::VectorXd V);
};

/// Nontrivial equilibrium C1 = (1 - sqrt(w)) / 2,
/// C2 = a / (2 (a + b)) (1 + sqrt(w)). Throws NoRealEquilibrium when w < 0.
Equilibrium gray_scott_equilibrium(const GrayScottParams& p);

/// Pointwise reaction terms (f1, f2) of the Gray-Scott model.
Eigen::Vector2d gray_scott_reaction(const GrayScottParams& p, double c1,
                                    double c2);

/// Analytic Jacobian at the nontrivial equilibrium, D = diag(d, 1),
/// V = diag(v1, v2).
SystemSpec gray_scott_jacobian(const GrayScottParams& p);

using ReactionFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Central-difference Jacobian of f at c. A non-positive step selects the
/// default h = 1e-6 * (1 + |c|_inf).
Eigen::MatrixXd numeric_jacobian(const ReactionFn& f, const Eigen::VectorXd& c,
                                 double h = 0.0);

}  // namespace rdacert
