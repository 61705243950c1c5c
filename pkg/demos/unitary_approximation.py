"""Approximate a qubit unitary by mixtures of simpler channels.

Computes the best Pauli mixture and the best covariant channel for a
sample rotation, and reports how well either family can imitate it in
the diamond norm (along with the induced discrimination probability).
"""

import numpy as np

from chanapprox import (
    covariance_distance,
    d_i_unitary,
    discrimination_probability,
    optimal_convex_approx,
    pauli_unitaries,
    unitary_qubit,
)


def main() -> None:
    alpha, beta, delta = np.pi / 5, np.pi / 7, np.pi / 3
    target = unitary_qubit(alpha, beta, delta)
    print(f"target: qubit unitary with angles ({alpha:.4f}, {beta:.4f}, {delta:.4f})")
    print(f"distance from the identity channel: {d_i_unitary(alpha, beta):.6f}\n")

    res = optimal_convex_approx(target, pauli_unitaries(), tol=1e-6)
    labels = ("I", "X", "Y", "Z")
    mixture = ", ".join(f"{l}: {w:.4f}" for l, w in zip(labels, res.weights))
    print("best Pauli mixture")
    print(f"  weights        {mixture}")
    print(f"  distance       {res.distance:.6f}")
    print(f"  certified in   [{res.witness.primal:.6f}, {res.witness.dual:.6f}]")
    print(f"  p(discriminate) {discrimination_probability(res.distance):.6f}\n")

    value, p_opt = covariance_distance(alpha, beta)
    print("best covariant channel")
    print(f"  mixing p       {p_opt:.6f}")
    print(f"  distance       {value:.6f}")
    print(f"  p(discriminate) {discrimination_probability(value):.6f}")


if __name__ == "__main__":
    main()
