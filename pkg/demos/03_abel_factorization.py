"""Abel transform: dual evaluation routes and the Fourier factorization.

Runs the closed-form Abel transform against the cell-by-cell census route
(exact on rational inputs), inverts by back-substitution, and checks that
the integer Fourier transform of the Abel sequence reproduces the
spherical transform of the original kernel.
"""

from fractions import Fraction

import numpy as np

from treeharmonics.abel import abel_bruteforce, abel_forward, abel_inverse, horocycle_slice_sum
from treeharmonics.params import torus_grid, tree_params
from treeharmonics.spherical import ball_kernel, spherical_transform_at
from treeharmonics.tree import ball_geometry
from treeharmonics.zline import fourier_z

Q = 2
kernel = ball_kernel(Q, 2)
seq = abel_forward(kernel)
print("Abel sequence of the radius-2 ball indicator (j, a_j):")
for j in range(-seq.support_radius, seq.support_radius + 1):
    print(f"   {j:+d}  {seq.at(j).real:.12f}")
print("evenness defect:", seq.weyl_residual)

back = abel_inverse(seq)
print("inverse recovers the kernel:", np.abs(back.values - kernel.values).max())

# census route: exact rational agreement with the collapsed geometric series
ball = ball_geometry(Q, 9)
vals = [Fraction(1), Fraction(1), Fraction(1)]
for j in (-3, -1, 0, 2):
    S = horocycle_slice_sum(ball, vals, j)
    closed = abel_bruteforce(ball, kernel, j)
    print(f"slice sum at height {j:+d}: census {S} -> coefficient {closed.real:.12f}")

# factorization: Fourier transform of the Abel sequence = spherical transform
grid = torus_grid(tree_params(Q), 64)
lhs = fourier_z(seq.to_zkernel(), grid)
rhs = spherical_transform_at(kernel, grid)
print("factorization residual on a 64-point grid:", float(np.abs(lhs - rhs).max()))
