#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rdacert {

/// One linear equality sum_b <A_b, X_b> = rhs over the blocks of a
/// block-diagonal symmetric variable. Coefficient blocks must be symmetric
/// and sized like the corresponding variable block.
struct SdpConstraint {
  std::vector<Eigen::MatrixXd> blocks;
  double rhs = 0.0;
};

/// Feasibility problem: find symmetric X_b >= 0 (PSD) satisfying every
/// equality constraint.
struct SdpProblem {
  std::vector<int> block_sizes;
  std::vector<SdpConstraint> constraints;
};

enum class SdpStatus { kFeasible, kInfeasible, kFailure };

struct SdpResult {
  SdpStatus status = SdpStatus::kFailure;
  /// Best point found. It satisfies the equalities to rounding error
  /// whenever the equalities are consistent.
  std::vector<Eigen::MatrixXd> point;
  /// Smallest eigenvalue of `point` over all blocks; for the interior-point
  /// backend this is the maximum achievable over the affine set.
  double margin = 0.0;
  /// For kInfeasible: PSD blocks W with trace 1, orthogonal to every
  /// direction of the affine set, and <X, W> = dual_value < 0 for any X
  /// satisfying the equalities.
  std::vector<Eigen::MatrixXd> dual;
  double dual_value = 0.0;
  double equality_residual = 0.0;
  int iterations = 0;
  std::string message;
};

/// Abstract semidefinite feasibility backend. Verdicts produced downstream
/// never trust the backend: certificates are re-verified independently.
class SdpBackend {
 public:
  virtual ~SdpBackend() = default;
  virtual SdpResult solve(const SdpProblem& problem) const = 0;
  virtual std::string name() const = 0;
};

/// Primal-dual path-following interior-point method (HKM direction with
/// Mehrotra predictor-corrector) applied to
///   maximize t  subject to  X0 + sum_k y_k E_k - t I >= 0,
/// where X0 + span{E_k} is the affine solution set of the equalities.
class InteriorPointBackend : public SdpBackend {
 public:
  struct Options {
    int max_iterations = 200;
    double tolerance = 1e-11;
  };

  InteriorPointBackend() = default;
  explicit InteriorPointBackend(Options opts) : opts_(opts) {}

  SdpResult solve(const SdpProblem& problem) const override;
  std::string name() const override { return "interior-point (HKM)"; }

 private:
  Options opts_;
};

std::shared_ptr<const SdpBackend> default_sdp_backend();

/// Smallest eigenvalue of a symmetric matrix (+inf for an empty matrix).
double min_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace rdacert
