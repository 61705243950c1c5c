"""Correlated mixtures beat independent ones on two channel copies.

Approximates two parallel copies of a phase rotation with mixtures of
identity and Z conjugation, three ways: correlating the two copies'
choices, optimizing each copy's mixture independently, and reusing the
single-copy optimum on both copies.  Correlation strictly helps.
"""

import numpy as np

from chanapprox import identity, multi_copy_approx, pauli_unitaries, unitary_qubit


def main() -> None:
    target = unitary_qubit(0.0, np.pi / 6, 0.0)
    members = [identity(2), pauli_unitaries()[3]]
    res = multi_copy_approx(target, members, 2, 1e-6)

    corr = res.correlated
    print("two copies of a pi/6 phase rotation, mixing identity and Z\n")
    print(f"single-copy optimum reused:   {res.tensored_value:.6f}")
    print(f"  per-copy weights (I, Z):    {tuple(round(float(w), 4) for w in res.single.weights)}")
    print(f"independent per-copy optima:  {res.product_value:.6f}")
    print(f"  copy 1 (I, Z):              {tuple(round(float(w), 4) for w in res.product_weights[0])}")
    print(f"  copy 2 (I, Z):              {tuple(round(float(w), 4) for w in res.product_weights[1])}")
    print(f"correlated mixture:           {corr.distance:.6f}")
    print(f"  weights (II, IZ, ZI, ZZ):   {tuple(round(float(w), 4) for w in corr.weights)}")
    gain = res.tensored_value - corr.distance
    print(f"\ncorrelation buys {gain:.4f} in diamond distance; note the optimal")
    print("correlated mixture never picks the ZZ combination.")


if __name__ == "__main__":
    main()
