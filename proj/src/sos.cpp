#include "rdacert/sos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdacert/errors.hpp"

namespace rdacert {
namespace {

using Eigen::MatrixXd;

struct Shape {
  int k = 0;      // size of G or K
  int l = 0;      // size of L (0 for global)
  int shift = 0;  // multiplier degree of the L term: 2 for (1 - x^2), 1 for x
};

Shape shape_for(Interval::Kind kind, int deg) {
  const int d = std::max(deg, 0);
  const int ell = (d + 1) / 2;
  switch (kind) {
    case Interval::Kind::kGlobal: return {ell + 1, 0, 0};
    case Interval::Kind::kFinite: return {ell + 1, ell, 2};
    case Interval::Kind::kSemiInfinite: return {d / 2 + 1, (d + 1) / 2, 1};
  }
  return {};
}

// Coefficients of z^T K z + m(x) z^T L z for the kind's multiplier m.
RealPoly reconstruct(Interval::Kind kind, const MatrixXd& K, const MatrixXd& L) {
  RealPoly out = gram_polynomial(K);
  if (L.size() == 0) return out;
  const RealPoly lp = gram_polynomial(L);
  if (kind == Interval::Kind::kFinite) return out + RealPoly{1.0, 0.0, -1.0} * lp;
  if (kind == Interval::Kind::kSemiInfinite) return out + RealPoly{0.0, 1.0} * lp;
  return out;
}

MatrixXd antidiagonal_selector(int size, int index) {
  MatrixXd a = MatrixXd::Zero(size, size);
  for (int j = 0; j < size; ++j) {
    const int k = index - j;
    if (k >= 0 && k < size) a(j, k) = 1.0;
  }
  return a;
}

SdpProblem build_problem(const Shape& shape, const RealPoly& target) {
  SdpProblem prob;
  prob.block_sizes.push_back(shape.k);
  if (shape.l > 0) prob.block_sizes.push_back(shape.l);
  const int max_deg = std::max(2 * (shape.k - 1), shape.l > 0 ? 2 * (shape.l - 1) + shape.shift : 0);
  for (int e = 0; e <= max_deg; ++e) {
    SdpConstraint c;
    c.rhs = target[e];
    c.blocks.push_back(antidiagonal_selector(shape.k, e));
    if (shape.l > 0) {
      MatrixXd lb = antidiagonal_selector(shape.l, e - shape.shift);
      // (1 - x^2) contributes +L at degree e and -L at degree e - 2.
      if (shape.shift == 2) lb = antidiagonal_selector(shape.l, e) - lb;
      c.blocks.push_back(lb);
    }
    prob.constraints.push_back(std::move(c));
  }
  return prob;
}

// Balances the end coefficients: |a_m| = |a_n| c^(n - m).
double variable_scale(const RealPoly& p) {
  const int n = p.degree();
  int m = 0;
  while (m < n && p[m] == 0.0) ++m;
  if (n <= 0 || m >= n) return 1.0;
  const double c = std::pow(std::abs(p[m]) / std::abs(p[n]), 1.0 / (n - m));
  return std::clamp(c, 1e-6, 1e6);
}

MatrixXd power_diag(int size, double c) {
  MatrixXd d = MatrixXd::Zero(size, size);
  for (int k = 0; k < size; ++k) d(k, k) = std::pow(c, -k);
  return d;
}

FeasibilityVerdict solve_kind(const RealPoly& delta, const Interval& domain,
                              const SosOptions& opts) {
  if (delta.is_zero()) throw InputError("nonnegativity certificate of the zero polynomial");
  const auto backend = opts.backend ? opts.backend : default_sdp_backend();
  const Tolerances& tol = opts.tol;

  const RealPoly mapped = certified_polynomial(delta, domain);
  const bool rescale_x = opts.scale_variable && domain.kind != Interval::Kind::kFinite;
  const double c = rescale_x ? variable_scale(mapped) : 1.0;
  RealPoly scaled = c == 1.0 ? mapped : mapped.compose_affine(c, 0.0);
  const double s = scaled.max_abs_coeff();
  scaled = (1.0 / s) * scaled;

  const Shape shape = shape_for(domain.kind, mapped.degree());
  const SdpResult r = backend->solve(build_problem(shape, scaled));

  FeasibilityVerdict v;
  v.margin = r.margin;
  v.iterations = r.iterations;
  if (r.status == SdpStatus::kFailure) {
    v.status = Feasibility::kMarginal;
    v.note = "solver failure: " + r.message;
    return v;
  }
  if (r.margin <= -tol.marginal) {
    v.status = Feasibility::kInfeasible;
    std::ostringstream os;
    os << "infeasible; dual certificate value " << r.dual_value;
    v.note = os.str();
    return v;
  }
  if (r.margin < -tol.eps_psd) {
    v.status = Feasibility::kMarginal;
    v.note = "margin inside the marginal band";
    return v;
  }

  SosCertificate cert;
  cert.domain = domain;
  const MatrixXd Dk = power_diag(shape.k, c);
  const MatrixXd K = s * Dk * r.point.at(0) * Dk;
  MatrixXd L(0, 0);
  if (shape.l > 0) {
    const MatrixXd Dl = power_diag(shape.l, c);
    L = (s / c) * Dl * r.point.at(1) * Dl;
  }
  if (domain.kind == Interval::Kind::kGlobal) {
    cert.G = K;
  } else {
    cert.K = K;
    cert.L = L;
  }
  const VerifyReport check = verify_certificate(cert, delta, tol);
  cert.min_eig = check.min_eig;
  cert.coeff_residual = check.coeff_residual;
  if (!check.pass) {
    v.status = Feasibility::kMarginal;
    v.note = "solver point failed independent verification: " + check.reason;
    return v;
  }
  v.status = Feasibility::kFeasible;
  v.certificate = std::move(cert);
  v.note = "non-strict certificate (proves >= 0)";
  return v;
}

}  // namespace

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible: return "feasible";
    case Feasibility::kInfeasible: return "infeasible";
    case Feasibility::kMarginal: return "numerically_marginal";
  }
  return "unknown";
}

MatrixXd canonical_gram(const RealPoly& target) {
  const int size = gram_basis_length(target);
  MatrixXd M = MatrixXd::Zero(size, size);
  for (int e = 0; e <= target.degree(); ++e) {
    const int m = e / 2;
    if (e % 2 == 0) {
      M(m, m) = target[e];
    } else {
      M(m, m + 1) = 0.5 * target[e];
      M(m + 1, m) = 0.5 * target[e];
    }
  }
  return M;
}

RealPoly gram_polynomial(const MatrixXd& G) {
  if (G.size() == 0) return {};
  std::vector<double> c(static_cast<std::size_t>(2 * (G.rows() - 1) + 1), 0.0);
  for (Eigen::Index j = 0; j < G.rows(); ++j) {
    for (Eigen::Index k = 0; k < G.cols(); ++k) c[j + k] += G(j, k);
  }
  return RealPoly(std::move(c));
}

int gram_basis_length(const RealPoly& target) {
  return (std::max(target.degree(), 0) + 1) / 2 + 1;
}

RealPoly certified_polynomial(const RealPoly& target, const Interval& domain) {
  switch (domain.kind) {
    case Interval::Kind::kGlobal: return target;
    case Interval::Kind::kFinite:
      return target.compose_affine(0.5 * (domain.hi - domain.lo), 0.5 * (domain.hi + domain.lo));
    case Interval::Kind::kSemiInfinite: return target.compose_affine(1.0, domain.lo);
  }
  return target;
}

FeasibilityVerdict prop1_feasibility(const RealPoly& delta, const SosOptions& opts) {
  return solve_kind(delta, Interval::global(), opts);
}

FeasibilityVerdict prop2_finite(const RealPoly& delta, double lo, double hi,
                                const SosOptions& opts) {
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "interval [" << lo << ", " << hi << "] requires lo < hi";
    throw BadInterval(os.str());
  }
  return solve_kind(delta, Interval::finite(lo, hi), opts);
}

FeasibilityVerdict prop2_semi_infinite(const RealPoly& delta, double lo,
                                       const SosOptions& opts) {
  if (!std::isfinite(lo)) throw BadInterval("semi-infinite interval needs a finite lower bound");
  return solve_kind(delta, Interval::semi_infinite(lo), opts);
}

FeasibilityVerdict certify_nonnegative(const RealPoly& delta, const Interval& interval,
                                       const SosOptions& opts) {
  switch (interval.kind) {
    case Interval::Kind::kGlobal: return prop1_feasibility(delta, opts);
    case Interval::Kind::kFinite: return prop2_finite(delta, interval.lo, interval.hi, opts);
    case Interval::Kind::kSemiInfinite: return prop2_semi_infinite(delta, interval.lo, opts);
  }
  throw InputError("unknown interval kind");
}

VerifyReport verify_certificate(const SosCertificate& cert, const RealPoly& target,
                                const Tolerances& tol) {
  const RealPoly mapped = certified_polynomial(target, cert.domain);
  const Shape shape = shape_for(cert.domain.kind, mapped.degree());
  const bool global = cert.domain.kind == Interval::Kind::kGlobal;
  const MatrixXd& K = global ? cert.G : cert.K;
  const MatrixXd empty(0, 0);
  const MatrixXd& L = global ? empty : cert.L;

  auto shape_ok = [](const MatrixXd& m, int n) {
    return m.rows() == n && m.cols() == n;
  };
  if (!shape_ok(K, shape.k) || !shape_ok(L, shape.l)) {
    std::ostringstream os;
    os << "certificate shape (" << K.rows() << "x" << K.cols() << ", " << L.rows() << "x"
       << L.cols() << ") does not match expected (" << shape.k << ", " << shape.l << ")";
    throw ShapeMismatch(os.str());
  }

  VerifyReport rep;
  auto sym_gap = [](const MatrixXd& m) {
    return m.size() ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
  };
  const double asym = std::max(sym_gap(K), sym_gap(L));
  rep.min_eig = std::min(min_eigenvalue(0.5 * (K + K.transpose())),
                         L.size() ? min_eigenvalue(0.5 * (L + L.transpose()))
                                  : std::numeric_limits<double>::infinity());
  const RealPoly recon = reconstruct(cert.domain.kind, K, L);
  const int top = std::max(recon.degree(), mapped.degree());
  for (int e = 0; e <= top; ++e) {
    rep.coeff_residual = std::max(rep.coeff_residual, std::abs(recon[e] - mapped[e]));
  }
  rep.residual_bound = tol.residual_bound(mapped.max_abs_coeff());

  std::ostringstream why;
  if (!K.allFinite() || !L.allFinite()) why << "non-finite entries; ";
  if (asym > rep.residual_bound) why << "matrix not symmetric (" << asym << "); ";
  if (rep.min_eig < -tol.eps_psd) why << "min eigenvalue " << rep.min_eig << " < -" << tol.eps_psd << "; ";
  if (!(rep.coeff_residual <= rep.residual_bound)) {
    why << "coefficient residual " << rep.coeff_residual << " > " << rep.residual_bound << "; ";
  }
  rep.reason = why.str();
  rep.pass = rep.reason.empty();
  return rep;
}

}  // namespace rdacert
