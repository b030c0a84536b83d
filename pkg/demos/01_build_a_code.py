"""
Building a spatially coupled circulant code
===========================================

Walks through the full construction chain: a circulant block code, a
partition of its base matrix, the coupled protograph, and the lifted
parity-check matrix with its sliding window.
"""
import numpy as np

from scldpc import (SCCodeSpec, ab_code, count_lifted_cycles4,
                    partition_from_cutting_vector, sc_lift, sc_protograph,
                    window)

# Start from a gamma x kappa array of circulant permutation powers.  The
# multiplicative rule f[i, j] = i * j mod p keeps every 2 x 2 subarray of
# powers "spread", which is what rules out 4-cycles after lifting.
gamma, kappa, p = 3, 5, 7
block = ab_code(gamma, kappa, p)
print("base powers (gamma x kappa):")
print(block.powers)

# A cutting vector splits the kappa columns into m + 1 staircase segments.
# Row i keeps columns left of cut i in component 0 and moves the rest to
# component 1, so each row is cut at its own position.
zeta = [2, 3, 4]
part = partition_from_cutting_vector(zeta, gamma, kappa)
print("\ncomponent assignment for cutting vector", zeta)
print(part.assign)

# The component masks stack into the coupled chain: L copies of the
# components on a diagonal band, one band column per replica.
for comp in range(part.m + 1):
    print(f"\ncomponent {comp} mask:")
    print(part.component(comp))

L = 4
spec = SCCodeSpec(block, part, L)
proto = sc_protograph(spec)
print(f"\ncoupled protograph for L = {L}: shape {proto.shape}")
print(proto)

# Lifting replaces every unit entry by a p x p circulant shifted by the
# corresponding power, and every zero by a p x p zero block.
h = sc_lift(spec)
rate = 1 - np.linalg.matrix_rank(h.astype(float)) / h.shape[1]
print(f"\nlifted matrix: {h.shape[0]} x {h.shape[1]}, "
      f"{int(h.sum())} ones, design rate about {rate:.3f}")
print("lifted 4-cycles:", count_lifted_cycles4(spec))

# A decoding window covers m + 1 consecutive replica columns together with
# the rows they touch; sliding it by one replica gives the next window.
w1 = window(spec, 1, part.m + 1, lifted=True)
w2 = window(spec, 2, part.m + 1, lifted=True)
print(f"\nwindow over replicas 1..{part.m + 1}: shape {w1.shape}")
print("interior windows share one shape:", w1.shape == w2.shape)
