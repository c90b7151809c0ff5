// L_p quasi-norms, weak-L_p, the dyadic maximal function, H_p norms and the
// moduli of continuity in L_p and H_p.
#pragma once

#include <optional>

#include "walshkit/group.hpp"
#include "walshkit/transform.hpp"

namespace walshkit {

struct NormValue {
  double value = 0.0;
  double p = 1.0;
  // Present when the quantity is an exact dyadic rational (p = 1, exact mode).
  std::optional<DyadicRational> exact;
};

// (2^-N sum |f|^p)^(1/p); exact at p = 1 in exact mode. For p < 1 this is the
// quasi-norm value; callers needing subadditivity work with the p-th power.
NormValue lp_norm(const StepFunction& f, double p);

// sup over lambda of lambda^p mu(|f| > lambda); the sup is attained on the
// level sets of |f|, scanned as mu(|f| >= v) over the distinct values v.
NormValue weak_lp_sup(const StepFunction& f, double p);
// The weak quasi-norm itself, weak_lp_sup^(1/p).
NormValue weak_lp_norm(const StepFunction& f, double p);

// f*(x) = max over n = 0..N of |E_n f|(x); stays exact in exact mode.
StepFunction maximal_function(const StepFunction& f);

// ||f*||_p.
NormValue hp_norm(const StepFunction& f, double p);

// omega_p(2^-n, f) = sup over h in I_n of ||f(.+h) - f||_p, p >= 1.
NormValue modulus_lp(const StepFunction& f, int n, double p);

// omega_{H_p}(2^-n, F) = ||F - S_{2^n}F||_{H_p}.
NormValue modulus_hp(const StepFunction& f, int n, double p);

// The Watari sandwich around the best approximation E_{2^n}(f, L_p):
// (err/2, err) with err = ||f - S_{2^n}f||_p. The exact infimum is not computed.
struct ApproxBounds {
  double lower = 0.0;
  double upper = 0.0;
};
ApproxBounds best_approx_bounds(const StepFunction& f, int n, double p);

}  // namespace walshkit
