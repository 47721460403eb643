#include "rdacert/model.hpp"

#include <cmath>
#include <sstream>

#include "rdacert/errors.hpp"

namespace rdacert {

void GrayScottParams::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!(finite(a) && finite(b) && finite(d) && finite(v1) && finite(v2))) {
    throw InvalidSpec("gray-scott parameters must be finite");
  }
  if (!(a > 0.0)) throw InvalidSpec("gray-scott: a must be > 0");
  if (b < 0.0) throw InvalidSpec("gray-scott: b must be >= 0");
  if (!(d > 0.0)) throw InvalidSpec("gray-scott: d must be > 0");
  if (v1 < 0.0 || v2 < 0.0) {
    throw InvalidSpec("gray-scott: advection rates must be >= 0");
  }
}

void SystemSpec::validate() const {
  const auto n = A.rows();
  if (n == 0 || A.cols() != n) throw InvalidSpec("A must be a nonempty square matrix");
  if (D.size() != n || V.size() != n) {
    throw InvalidSpec("D and V must have one entry per species");
  }
  if (!A.allFinite() || !D.allFinite() || !V.allFinite()) {
    throw InvalidSpec("system matrices must be finite");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(D(i) > 0.0)) {
      std::ostringstream os;
      os << "diffusion d_" << i + 1 << " = " << D(i) << " must be > 0";
      throw InvalidSpec(os.str());
    }
    if (V(i) < 0.0) {
      std::ostringstream os;
      os << "advection v_" << i + 1 << " = " << V(i) << " must be >= 0";
      throw InvalidSpec(os.str());
    }
  }
}

SystemSpec SystemSpec::generic(Eigen::MatrixXd A, Eigen::VectorXd D,
                               Eigen::VectorXd V) {
  SystemSpec s{std::move(A), std::move(D), std::move(V), std::nullopt};
  s.validate();
  return s;
}

Equilibrium gray_scott_equilibrium(const GrayScottParams& p) {
  p.validate();
  const double w = p.discriminant();
  if (w < 0.0) {
    std::ostringstream os;
    os << "no real equilibrium: w = " << w << " < 0";
    throw NoRealEquilibrium(os.str());
  }
  const double sw = std::sqrt(w);
  return {0.5 * (1.0 - sw), p.a / (2.0 * (p.a + p.b)) * (1.0 + sw)};
}

Eigen::Vector2d gray_scott_reaction(const GrayScottParams& p, double c1,
                                    double c2) {
  const double r = c1 * c2 * c2;
  return {-r + p.a * (1.0 - c1), r - (p.a + p.b) * c2};
}

SystemSpec gray_scott_jacobian(const GrayScottParams& p) {
  const Equilibrium e = gray_scott_equilibrium(p);
  Eigen::Matrix2d A;
  A << -p.a - e.c2 * e.c2, -2.0 * e.c1 * e.c2,
      e.c2 * e.c2, -(p.a + p.b) + 2.0 * e.c1 * e.c2;
  SystemSpec s{A, Eigen::Vector2d(p.d, 1.0), Eigen::Vector2d(p.v1, p.v2), p};
  s.validate();
  return s;
}

Eigen::MatrixXd numeric_jacobian(const ReactionFn& f, const Eigen::VectorXd& c,
                                 double h) {
  if (h <= 0.0) h = 1e-6 * (1.0 + c.lpNorm<Eigen::Infinity>());
  const Eigen::VectorXd f0 = f(c);
  if (!f0.allFinite()) throw NonFiniteEvaluation("reaction returned non-finite values");
  Eigen::MatrixXd J(f0.size(), c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    Eigen::VectorXd cp = c, cm = c;
    cp(j) += h;
    cm(j) -= h;
    const Eigen::VectorXd fp = f(cp), fm = f(cm);
    if (!fp.allFinite() || !fm.allFinite()) {
      throw NonFiniteEvaluation("reaction returned non-finite values");
    }
    J.col(j) = (fp - fm) / (2.0 * h);
  }
  return J;
}

}  // namespace rdacert
