"""Print the gamma representations and check the Clifford relations.

Shows the matrices used in each dimension, the anticommutator table for
d = 2, and the (exactly zero) deviation reported by the verifier.
"""

import numpy as np

from maxdirac1d.gamma_algebra import gamma_matrices, verify_clifford

np.set_printoptions(linewidth=100)

for d in (1, 2, 3):
    gs = gamma_matrices(d)
    rep = verify_clifford(gs)
    print(f"d = {d}: {len(gs.gammas)} matrices of size {gs.size}, "
          f"relations ok = {rep.ok}, max deviation = {rep.max_deviation}")

print()
print("d = 2 anticommutator table ({g^a, g^b} / 2)[0, 0] (should be the metric):")
gs = gamma_matrices(2)
n = len(gs.gammas)
table = np.zeros((n, n))
for a in range(n):
    for b in range(n):
        half = (gs.gammas[a] @ gs.gammas[b] + gs.gammas[b] @ gs.gammas[a]) / 2.0
        table[a, b] = half[0, 0].real
print(table)

print()
print("g^0 for d = 3 (block structure swaps the u and v pairs):")
print(gamma_matrices(3).gammas[0])

rep = verify_clifford(gamma_matrices(3))
print()
print(f"d = 3 verifier checked {len(rep.entries)} identities, failures: {rep.failures()}")
