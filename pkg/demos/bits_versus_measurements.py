"""Trading quantizer levels against measurement count at a fixed bit budget.

With the saturated quantizer at resolution 5/L, theory predicts the error
scales like 1/(m L): doubling the number of levels while halving the number
of measurements should leave the error roughly unchanged, as long as L stays
moderate. Pushing L very high at a tiny m breaks the balance because too few
rows remain to pin down the support. Both effects show up in this table.
"""

import numpy as np

from quantcs import (
    Dither,
    Family,
    PgdConfig,
    SignalModel,
    Sparse,
    default_step_size,
    gen_signal,
    make_saturated,
    measure,
    pgd_recover,
    sample_instance,
)
from quantcs.rng import derive_seed
from quantcs.sensing import MatrixKind

n, k, trials = 500, 3, 30


def mean_error(L, m):
    delta = 5.0 / L
    spec = make_saturated(delta, L)
    ball = SignalModel(Sparse(k=k, n=n), alpha=0.0, beta=1.0)
    eta = default_step_size(Family.DITHERED_MULTI_BIT)
    errs = []
    for t in range(trials):
        x = gen_signal(ball, derive_seed(17, L, m, t, "signal"))
        inst = sample_instance(
            MatrixKind.RADEMACHER,
            Dither.uniform(delta / 2.0),
            m,
            n,
            seed=derive_seed(17, L, m, t, "instance"),
        )
        y = measure(inst, spec, x)
        res = pgd_recover(PgdConfig(eta=eta, iterations=100), ball, spec, inst, y)
        errs.append(np.linalg.norm(res.estimate - x))
    return float(np.mean(errs))


def main():
    print(f"{'L':>4} {'m':>6} {'m*L':>7} {'mean error':>12}")
    for L, m in [(2, 400), (4, 200), (8, 100), (16, 50), (32, 25)]:
        err = mean_error(L, m)
        print(f"{L:>4} {m:>6} {m * L:>7} {err:>12.4f}")


if __name__ == "__main__":
    main()
