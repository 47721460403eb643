#pragma once

#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "rdacert/interval.hpp"
#include "rdacert/poly.hpp"
#include "rdacert/sdp.hpp"
#include "rdacert/tolerances.hpp"

namespace rdacert {

/// Gram-form proof of nonnegativity.
///  - global:         target(z)  = z^T G z,             z = (1, zeta, ..)
///  - finite [lo,hi]: delta(x)   = z^T K z + (1 - x^2) z^T L z, x in [-1, 1],
///                    delta(x)   = target(((hi - lo) x + hi + lo) / 2)
///  - semi-infinite:  delta(x)   = z^T K z + x z^T L z, x >= 0,
///                    delta(x)   = target(x + lo)
struct SosCertificate {
  Interval domain;
  Eigen::MatrixXd G;
  Eigen::MatrixXd K;
  Eigen::MatrixXd L;
  double min_eig = 0.0;
  double coeff_residual = 0.0;
};

enum class Feasibility { kFeasible, kInfeasible, kMarginal };
std::string to_string(Feasibility f);

struct FeasibilityVerdict {
  Feasibility status = Feasibility::kMarginal;
  std::optional<SosCertificate> certificate;  // present iff feasible
  /// Best smallest-eigenvalue margin of the scaled problem; negative values
  /// measure infeasibility.
  double margin = 0.0;
  int iterations = 0;
  std::string note;
};

struct SosOptions {
  Tolerances tol;
  std::shared_ptr<const SdpBackend> backend;  // null: default backend
  bool scale_variable = true;
};

/// Gram matrix placing even coefficients on the diagonal and splitting odd
/// ones over the adjacent off-diagonal pair; size ceil(deg/2) + 1.
Eigen::MatrixXd canonical_gram(const RealPoly& target);

/// Polynomial z^T G z in the monomial basis.
RealPoly gram_polynomial(const Eigen::MatrixXd& G);

/// Basis length ceil(deg / 2) + 1 used for global Gram problems.
int gram_basis_length(const RealPoly& target);

/// Global nonnegativity: find G >= 0 with antidiagonal sums equal to the
/// coefficients of delta (G = M + N, each antidiagonal of N summing to 0).
FeasibilityVerdict prop1_feasibility(const RealPoly& delta, const SosOptions& opts = {});

/// Nonnegativity on [lo, hi] via the mapped identity on [-1, 1].
/// Throws BadInterval unless lo < hi.
FeasibilityVerdict prop2_finite(const RealPoly& delta, double lo, double hi,
                                const SosOptions& opts = {});

/// Nonnegativity on [lo, inf) via the shifted identity on [0, inf).
FeasibilityVerdict prop2_semi_infinite(const RealPoly& delta, double lo,
                                       const SosOptions& opts = {});

/// Dispatches on interval.kind.
FeasibilityVerdict certify_nonnegative(const RealPoly& delta, const Interval& interval,
                                       const SosOptions& opts = {});

/// The polynomial whose coefficients the certificate must reproduce
/// (target itself, or the mapped delta for interval kinds).
RealPoly certified_polynomial(const RealPoly& target, const Interval& domain);

struct VerifyReport {
  bool pass = false;
  double min_eig = 0.0;
  double coeff_residual = 0.0;
  double residual_bound = 0.0;
  std::string reason;
};

/// Solver-independent check: recomputes the polynomial implied by the Gram
/// forms and the smallest eigenvalue of each Gram matrix. Throws
/// ShapeMismatch if the matrix sizes do not fit the target.
VerifyReport verify_certificate(const SosCertificate& cert, const RealPoly& target,
                                const Tolerances& tol = {});

}  // namespace rdacert
