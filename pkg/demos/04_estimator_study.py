"""Least-squares drift estimation: where the plain estimator degenerates.

For H > 1/2 the quadratic variation of the driving noise vanishes at rate
delta^(2H-1), and the telescoping identity

    -sum x_{i-1} (x_i - x_{i-1}) = 1/2 sum (x_i - x_{i-1})^2 - (x_n^2 - x_0^2)/2

forces the plain ratio estimator toward 0 as the mesh shrinks: its numerator
never sees the drift correction alpha(T) that balances the Skorohod-integral
representation of the score.  Adding that correction back,

    theta_check = theta_hat + alpha(T) / (delta * sum x_{i-1}^2),

restores consistency and the Gaussian limit.  This script measures both
estimators on a replicated study.
"""

import math

import numpy as np

from fracou import lse, theory
from fracou.fbm import RngSeed
from fracou.fou import ModelParams, SamplingScheme, simulate_path
from fracou.montecarlo import ks_to_std_normal

params = ModelParams(theta=1.0, hurst=0.7)
GAMMA = 0.6
N_REP = 1000

print(f"theta={params.theta}, H={params.hurst}, delta=n^(-{GAMMA}), {N_REP} replications")
print()
print(
    f"{'n':>6} {'mean th^':>9} {'pred th^':>9} {'mean th~':>9} "
    f"{'var ratio':>10} {'KS(th~)':>8}"
)

for k, n in enumerate((500, 2000, 8000)):
    scheme = SamplingScheme.from_gamma(n, GAMMA, oversample=8)
    t_n = scheme.horizon
    alpha = theory.alpha_n(params, t_n)
    consts = theory.constants(params, scheme)
    sig2 = consts.sigma_h2

    plain = np.empty(N_REP)
    corrected = np.empty(N_REP)
    for r in range(N_REP):
        path = simulate_path(params, scheme, RngSeed(606, k * N_REP + r))
        est = lse.estimate(path)
        plain[r] = est.theta_hat
        corrected[r] = est.theta_hat + alpha / est.denominator

    # the degenerate limit of the plain ratio: numerator -> (n/2) delta^(2H),
    # denominator -> n delta E[X^2_stationary]
    stat = params.hurst * math.gamma(2 * params.hurst) * params.theta ** (
        -2 * params.hurst
    )
    predicted = scheme.delta ** (2 * params.hurst - 1) / (2 * stat)

    root_t_err = math.sqrt(t_n) * (corrected - params.theta)
    var_ratio = np.var(root_t_err, ddof=1) / sig2
    ks = ks_to_std_normal(consts.lambda_n * root_t_err)
    print(
        f"{n:>6} {plain.mean():>9.4f} {predicted:>9.4f} {corrected.mean():>9.4f} "
        f"{var_ratio:>10.3f} {ks:>8.3f}"
    )

print()
print("the plain estimator tracks its degenerate prediction delta^(2H-1)/(2 E[X^2]),")
print("while the alpha-corrected estimator approaches theta with the expected")
print("variance; its remaining bias decays like the slow (n delta)^(4H-3) term")
print("of the bound budget, so the Kolmogorov distance shrinks only gradually.")
