#!/usr/bin/env python3
"""Parameter table for the orthogonality graphs on sign vectors.

For each n up to the cap, prints vertex and edge counts, bipartiteness,
the 1-homogeneity verdict, the closed-form value where it applies, and
an SDP cross-check at small orders.  The pattern to look for: odd n is
empty (value 1), n = 2 mod 4 is bipartite (value 2), and multiples of 4
hit value n.

    python scripts/omega_table.py [--max-n 6] [--sdp-cap 70]
"""

import argparse

from vecchrom import generate, is_bipartite
from vecchrom.params import one_homogeneous_check, spectral_vector_chromatic, theta_bar
from vecchrom.sdp import SolverConfig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--sdp-cap", type=int, default=70)
    args = parser.parse_args()

    cfg = SolverConfig(tol=1e-6, max_iter=150000)
    print(f"{'n':>2s} {'|V|':>5s} {'|E|':>6s} {'bip':>4s} {'1-hom':>6s} {'formula':>9s} {'sdp':>9s}")
    for n in range(1, args.max_n + 1):
        G = generate("omega", n, omega_cap=args.max_n)
        flag, _ = is_bipartite(G)
        onehom = one_homogeneous_check(G).is_one_homogeneous
        if G.edge_count == 0:
            formula = 1.0
        elif onehom:
            formula = spectral_vector_chromatic(G).value
        else:
            formula = float("nan")
        if G.n <= args.sdp_cap:
            sdp = theta_bar(G, cfg).value
            sdp_txt = f"{sdp:9.5f}"
        else:
            sdp_txt = "      n/a"
        print(
            f"{n:2d} {G.n:5d} {G.edge_count:6d} {'yes' if flag else 'no':>4s} "
            f"{'yes' if onehom else 'no':>6s} {formula:9.5f} {sdp_txt}"
        )


if __name__ == "__main__":
    main()
