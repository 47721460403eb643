#include "rdacert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace rdacert {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Upper-triangle coordinates of a block-diagonal symmetric matrix.
struct Layout {
  std::vector<int> sizes;
  std::vector<int> offsets;  // row/col offset of each block in the dense form
  int dim = 0;               // dense dimension
  struct Coord {
    int block, i, j;
  };
  std::vector<Coord> coords;

  explicit Layout(const std::vector<int>& block_sizes) : sizes(block_sizes) {
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      offsets.push_back(dim);
      dim += sizes[b];
      for (int i = 0; i < sizes[b]; ++i) {
        for (int j = i; j < sizes[b]; ++j) {
          coords.push_back({static_cast<int>(b), i, j});
        }
      }
    }
  }

  MatrixXd dense(const VectorXd& u) const {
    MatrixXd m = MatrixXd::Zero(dim, dim);
    for (std::size_t c = 0; c < coords.size(); ++c) {
      const int r = offsets[coords[c].block] + coords[c].i;
      const int s = offsets[coords[c].block] + coords[c].j;
      m(r, s) = u(c);
      m(s, r) = u(c);
    }
    return m;
  }

  std::vector<MatrixXd> split(const MatrixXd& m) const {
    std::vector<MatrixXd> out;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      out.push_back(m.block(offsets[b], offsets[b], sizes[b], sizes[b]));
    }
    return out;
  }
};

double inner(const MatrixXd& a, const MatrixXd& b) { return a.cwiseProduct(b).sum(); }

// In place; the plain expression would alias the transpose.
void symmetrize(MatrixXd& m) { m = (0.5 * (m + m.transpose())).eval(); }

// Largest alpha in (0, inf] with X + alpha dX >= 0, for X > 0.
double max_step(const MatrixXd& X, const MatrixXd& dX) {
  Eigen::LLT<MatrixXd> llt(X);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd Linv = llt.matrixL().solve(MatrixXd::Identity(X.rows(), X.cols()));
  MatrixXd W = Linv * dX * Linv.transpose();
  symmetrize(W);
  const double lmin = min_eigenvalue(W);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

struct Ipm {
  const MatrixXd& C;               // X0
  const std::vector<MatrixXd>& A;  // -E_k ..., I
  int m() const { return static_cast<int>(A.size()); }

  VectorXd op(const MatrixXd& X) const {
    VectorXd v(m());
    for (int i = 0; i < m(); ++i) v(i) = inner(A[i], X);
    return v;
  }
  MatrixXd adj(const VectorXd& y) const {
    MatrixXd out = MatrixXd::Zero(C.rows(), C.cols());
    for (int i = 0; i < m(); ++i) out += y(i) * A[i];
    return out;
  }
};

}  // namespace

double min_eigenvalue(const MatrixXd& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

SdpResult InteriorPointBackend::solve(const SdpProblem& problem) const {
  SdpResult res;
  const Layout layout(problem.block_sizes);
  const int nv = static_cast<int>(layout.coords.size());
  const int nc = static_cast<int>(problem.constraints.size());

  // Equalities in upper-triangle coordinates.
  MatrixXd E(nc, nv);
  VectorXd rhs(nc);
  for (int r = 0; r < nc; ++r) {
    const SdpConstraint& con = problem.constraints[r];
    rhs(r) = con.rhs;
    for (int c = 0; c < nv; ++c) {
      const auto& co = layout.coords[c];
      const MatrixXd& blk = con.blocks.at(co.block);
      E(r, c) = co.i == co.j ? blk(co.i, co.j) : blk(co.i, co.j) + blk(co.j, co.i);
    }
  }

  VectorXd u0 = VectorXd::Zero(nv);
  MatrixXd null_basis(nv, 0);
  if (nc > 0 && nv > 0) {
    Eigen::JacobiSVD<MatrixXd> svd(E, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const VectorXd& sv = svd.singularValues();
    const double tol = 1e-12 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > tol) ++rank;
    VectorXd urhs = svd.matrixU().transpose() * rhs;
    for (int k = 0; k < rank; ++k) u0 += svd.matrixV().col(k) * (urhs(k) / sv(k));
    null_basis = svd.matrixV().rightCols(nv - rank);
  } else if (nv > 0) {
    null_basis = MatrixXd::Identity(nv, nv);
  }
  res.equality_residual = nc ? (E * u0 - rhs).lpNorm<Eigen::Infinity>() : 0.0;
  if (res.equality_residual > 1e-9 * (1.0 + rhs.lpNorm<Eigen::Infinity>())) {
    res.status = SdpStatus::kInfeasible;
    res.margin = -std::numeric_limits<double>::infinity();
    res.dual_value = -std::numeric_limits<double>::infinity();
    res.point = layout.split(layout.dense(u0));
    res.message = "equality constraints are inconsistent";
    return res;
  }

  const MatrixXd X0 = layout.dense(u0);
  const int N = layout.dim;
  const int k = static_cast<int>(null_basis.cols());

  auto finish = [&](const VectorXd& y, const MatrixXd& W, int iters, bool ok) {
    MatrixXd G = X0;
    for (int i = 0; i < k; ++i) G += y(i) * layout.dense(null_basis.col(i));
    res.point = layout.split(G);
    res.margin = std::numeric_limits<double>::infinity();
    for (const auto& blk : res.point) res.margin = std::min(res.margin, min_eigenvalue(blk));
    res.dual = layout.split(W);
    res.dual_value = inner(X0, W);
    res.equality_residual = 0.0;
    for (int r = 0; r < nc; ++r) {
      double lhs = 0.0;
      for (std::size_t b = 0; b < res.point.size(); ++b) {
        lhs += inner(problem.constraints[r].blocks[b], res.point[b]);
      }
      res.equality_residual = std::max(res.equality_residual, std::abs(lhs - rhs(r)));
    }
    res.iterations = iters;
    if (!ok) {
      res.status = SdpStatus::kFailure;
    } else {
      res.status = res.margin >= 0.0 ? SdpStatus::kFeasible : SdpStatus::kInfeasible;
    }
    return res;
  };

  if (N == 0) {
    res.status = SdpStatus::kFeasible;
    res.margin = std::numeric_limits<double>::infinity();
    return res;
  }

  if (k == 0) {
    // Unique solution: the margin is its smallest eigenvalue and the
    // corresponding eigenvector spans the dual certificate.
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(X0);
    const VectorXd v = es.eigenvectors().col(0);
    return finish(VectorXd(), v * v.transpose(), 0, true);
  }

  std::vector<MatrixXd> A;
  for (int i = 0; i < k; ++i) A.push_back(-layout.dense(null_basis.col(i)));
  A.push_back(MatrixXd::Identity(N, N));
  const Ipm ipm{X0, A};
  const int m = ipm.m();
  VectorXd b = VectorXd::Zero(m);
  b(m - 1) = 1.0;

  MatrixXd X = MatrixXd::Identity(N, N) / N;
  VectorXd y = VectorXd::Zero(m);
  y(m - 1) = min_eigenvalue(X0) - 1.0;
  MatrixXd S = X0 - y(m - 1) * MatrixXd::Identity(N, N);
  const double cnorm = 1.0 + X0.norm();

  int iter = 0;
  bool converged = false;
  // Iterates can degrade once rounding dominates; keep the best one seen.
  MatrixXd best_X = X;
  VectorXd best_y = y;
  double best_err = std::numeric_limits<double>::infinity();
  for (; iter < opts_.max_iterations; ++iter) {
    const VectorXd rp = b - ipm.op(X);
    const MatrixXd Rd = X0 - S - ipm.adj(y);
    const double mu = inner(X, S) / N;
    const double pobj = inner(X0, X);
    const double dobj = y(m - 1);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double err = std::max({gap, rp.norm(), Rd.norm() / cnorm});
    if (err < best_err) {
      best_err = err;
      best_X = X;
      best_y = y;
    }
    if (err < opts_.tolerance) {
      converged = true;
      break;
    }

    Eigen::LLT<MatrixXd> sllt(S);
    if (sllt.info() != Eigen::Success) break;
    const MatrixXd Sinv = sllt.solve(MatrixXd::Identity(N, N));

    MatrixXd M(m, m);
    std::vector<MatrixXd> XAS(m);
    for (int j = 0; j < m; ++j) XAS[j] = X * A[j] * Sinv;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) M(i, j) = inner(A[i], XAS[j].transpose());
    }
    symmetrize(M);
    Eigen::LDLT<MatrixXd> schur(M);
    if (schur.info() != Eigen::Success) break;

    const MatrixXd XRdS = X * Rd * Sinv;
    auto direction = [&](const MatrixXd& Rc, MatrixXd& dX, VectorXd& dy, MatrixXd& dS) {
      dy = schur.solve(rp - ipm.op(Rc - XRdS));
      dS = Rd - ipm.adj(dy);
      dX = Rc - X * dS * Sinv;
      symmetrize(dX);
    };

    MatrixXd dXa, dSa;
    VectorXd dya;
    direction(-X, dXa, dya, dSa);
    const double ap = std::min(1.0, max_step(X, dXa));
    const double ad = std::min(1.0, max_step(S, dSa));
    const double mu_aff = inner(X + ap * dXa, S + ad * dSa) / N;
    const double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);

    MatrixXd dX, dS;
    VectorXd dy;
    direction(sigma * mu * Sinv - X - dXa * dSa * Sinv, dX, dy, dS);
    const double sp = std::min(1.0, 0.98 * max_step(X, dX));
    const double sd = std::min(1.0, 0.98 * max_step(S, dS));
    if (!(sp > 1e-14) && !(sd > 1e-14)) break;
    X += sp * dX;
    symmetrize(X);
    y += sd * dy;
    S += sd * dS;
    symmetrize(S);
    if (!X.allFinite() || !S.allFinite() || !y.allFinite()) break;
  }

  // Loose acceptance when the iteration stalls close to the optimum.
  if (!converged) {
    X = best_X;
    y = best_y;
    const double pobj = inner(X0, X);
    const double gap = std::abs(pobj - y(m - 1)) / (1.0 + std::abs(pobj) + std::abs(y(m - 1)));
    converged = gap < 1e-7 && (b - ipm.op(X)).norm() < 1e-7;
    if (!converged) res.message = "interior-point iteration did not converge";
  }
  // Trace-normalized PSD part of X is the infeasibility certificate.
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (X + X.transpose()));
  MatrixXd W = es.eigenvectors() *
               es.eigenvalues().cwiseMax(0.0).asDiagonal() *
               es.eigenvectors().transpose();
  if (W.trace() > 0.0) W /= W.trace();
  return finish(y.head(k), W, iter, converged);
}

std::shared_ptr<const SdpBackend> default_sdp_backend() {
  static const auto backend = std::make_shared<const InteriorPointBackend>();
  return backend;
}

}  // namespace rdacert
