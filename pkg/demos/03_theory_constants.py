"""Closed-form constants behind the drift-estimation limit theorems.

Evaluates the drift correction alpha_n, its linear-growth rate, the limiting
second-chaos variance A(theta, H), the CLT variance sigma_H^2, and the
finite-horizon variance quadrature E(F_T^2), and verifies the identities
linking them.
"""

from fracou import theory
from fracou.fou import ModelParams, SamplingScheme

params = ModelParams(theta=1.0, hurst=0.6)

print(f"theta={params.theta}, H={params.hurst}")
print()

# --- alpha_n: closed form, quadrature, linear growth ---------------------------
rate = theory.alpha_limit_rate(params)
print("alpha(T): closed form vs quadrature vs rate * T")
print(f"{'T':>6} {'closed':>12} {'quadrature':>12} {'alpha/T':>10} {'rate':>10}")
for t_end in (1.0, 10.0, 100.0):
    closed = theory.alpha_n(params, t_end)
    quad = theory.alpha_n_quadrature(params, t_end)
    print(f"{t_end:>6.0f} {closed:>12.6f} {quad:>12.6f} {closed / t_end:>10.6f} {rate:>10.6f}")

# --- E(F_T^2) -> A(theta, H) ----------------------------------------------------
print()
a_val = theory.a_theta_h(params)
print(f"A(theta, H) = {a_val:.6f}; finite-horizon quadrature E(F_T^2):")
for t_end in (5.0, 10.0, 20.0, 40.0):
    ef2 = theory.ef2_quadrature(params, t_end)
    print(f"  T={t_end:>4.0f}: {ef2:.6f}  (gap {abs(ef2 - a_val) / a_val:6.1%})")

# --- the studentization identity ------------------------------------------------
print()
sig2 = theory.sigma_h2(params)
lam = theory.lambda_limit(params)
print(f"sigma_H^2 = {sig2:.6f}, lambda_inf = {lam:.6f}")
print(f"lambda_inf^2 * sigma_H^2 = {lam**2 * sig2:.12f}  (identity: exactly 1)")

# --- bound budget along a mesh schedule ------------------------------------------
print()
lo, hi = theory.gamma_window(params.hurst)
print(f"admissible gamma window for H={params.hurst}: ({lo:.4f}, {hi:.4f})")
print("seven-term bound budget (constant c = 1) along n with delta = n^(-0.75):")
for n in (500, 2000, 8000):
    scheme = SamplingScheme.from_gamma(n, 0.75)
    budget = theory.bound_budget(scheme, params, eta=0.1, dlt=0.1)
    terms = " ".join(f"{k}={v:.3g}" for k, v in budget.terms().items())
    print(f"  n={n:>5}: total={budget.total:8.3f}  {terms}")
