"""Watch the boundary sum trace crawl toward its steady level.

Runs the renewal solver for the tent profile under constant unit forcing at
gain a = 1/e, prints the trace against the closed-form limit and the
square-root approach law, then cross-checks the limit with the final-value
estimator applied to the transfer function.

Usage: python3 demos/steady_state_demo.py
"""

import math

from pointfeedback import (
    ForcingSpec,
    InitialCondition,
    SDomainFunction,
    boundary_values,
    f0_transform,
    final_value,
    heat_kernel_transform,
    steady_state_deficit,
    steady_state_value,
)

A = 1.0 / math.e
T_END = 240.0


def main() -> None:
    ic = InitialCondition(kind="tent", claims_even=True,
                          claims_monotone_outside=True)
    forcing = ForcingSpec(kind="constant", level=1.0)
    trace = boundary_values(ic, forcing, A, T_END, 0.01)
    limit = steady_state_value(A, forcing.level)

    print(f"gain a = 1/e, constant forcing 1.0, limit = {limit:.6f} (= e)")
    print(f"{'t':>6} {'u(+1)+u(-1)':>12} {'deficit':>10} {'law':>10}")
    for t in (10.0, 30.0, 60.0, 120.0, 240.0):
        i = round(t / 0.01)
        u = trace.u_plus[i]
        print(f"{t:6.0f} {u:12.6f} {limit - u:10.6f} "
              f"{steady_state_deficit(A, t):10.6f}")

    transfer = SDomainFunction(
        lambda s: f0_transform(ic, forcing, s)
        / (1.0 + 2.0 * A * heat_kernel_transform(s, 1.0)),
        abscissa=0.0,
    )
    est = final_value(transfer)
    print(f"\nfinal-value estimator: {est:.6f} "
          f"(error {abs(est - limit):.2e})")


if __name__ == "__main__":
    main()
