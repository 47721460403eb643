#pragma once

namespace rdacert {

/// Numerical thresholds shared by certification and analysis. Every report
/// echoes the values it was produced with.
struct Tolerances {
  double eps_psd = 1e-8;       // min eigenvalue floor for Gram matrices
  double eps_res_rel = 1e-7;   // coefficient residual, times (1 + max|coef|)
  double eps_res_abs = 0.0;    // if > 0, replaces the relative residual bound
  double marginal = 1e-6;      // SDP margin below which verdicts are marginal
  double dead_band = 1e-8;     // |minor value| treated as zero

  double residual_bound(double max_coeff) const {
    return eps_res_abs > 0.0 ? eps_res_abs : eps_res_rel * (1.0 + max_coeff);
  }
};

}  // namespace rdacert
