"""Limiting trace moments: combinatorial sum vs closed form vs quadrature.

Run:  python3 demos/02_limit_moments.py
"""

import tensormp as t


def main():
    tau1 = t.TauModel.constant(1.0)
    print("Constant weights: the limit moments are the classical ones.")
    print(f"  {'p':>2} {'combinatorial':>14} {'closed form':>12} {'quadrature':>12}")
    for p in range(1, 7):
        lim = t.limiting_moment(p, 1.0, tau1)
        mp = t.mp_moment(p, 1.0)
        quad = t.quadrature_moment(p, 1.0)
        print(f"  {p:>2} {lim:>14.6f} {mp:>12.6f} {quad:>12.6f}")
    print()

    print("Same comparison across the ratio parameter c at p = 4:")
    for c in (0.1, 0.5, 1.0, 2.0, 4.0):
        print(
            f"  c={c:<4} combinatorial={t.limiting_moment(4, c, tau1):>10.5f}"
            f"  closed={t.mp_moment(4, c):>10.5f}"
        )
    print()

    print("Non-constant weights enter only through their moments:")
    by_coeffs = t.TauModel(coefficients=(1.0, 2.0))
    by_moments = t.TauModel(moments=t.tau_empirical_moments((1.0, 2.0), 6))
    for p in range(1, 5):
        a = t.limiting_moment(p, 1.0, by_coeffs)
        b = t.limiting_moment(p, 1.0, by_moments)
        print(f"  p={p}: from coefficients {a:.6f}, from declared moments {b:.6f}")
    print()

    print("Exact finite-size check at a size small enough to enumerate:")
    tau = t.TauModel(coefficients=(1.0, 1.0))
    for p in (1, 2, 3):
        em = t.exact_mean_trace_moment(2, 2, 2, p, tau, t.rademacher_rule())
        print(f"  n=2 k=2 m=2 rademacher, p={p}: mean trace moment = {em}")
    print()

    moments6 = [t.mp_moment(p, 1.0) for p in range(1, 7)]
    ok, _ = t.carleman_check(moments6, A=4.0)
    print(f"Growth check on the first six moments (determinacy bound): {ok}")


if __name__ == "__main__":
    main()
