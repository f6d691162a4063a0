"""
The cosine basis and its relatives
==================================

Three orthonormal families on [0, 1], their Gram matrices, and the Laplacian
eigenvalues that order them by roughness.
"""

# %%
# Every basis is described by a family name and a degree. The design of a
# fit is just the basis evaluated on a grid.
import numpy as np

from csr import BasisSpec, QuadratureRule, eigenpairs, gram_matrix
from csr.basis import evaluate

for family in ("cosine", "sine", "fourier"):
    spec = BasisSpec(family, 8)
    print(f"{family:8s} degree 8 -> {spec.n_functions} functions, wavenumbers {spec.wavenumbers.tolist()}")

# %%
# Orthonormality: the Gram matrix under composite Simpson is the identity to
# machine precision.
rule = QuadratureRule("simpson", 4096)
for family in ("cosine", "sine", "fourier"):
    g = gram_matrix(BasisSpec(family, 32), rule)
    print(f"{family:8s} max |G - I| = {np.abs(g - np.eye(len(g))).max():.2e}")

# %%
# Each function solves psi'' + lambda psi = 0 with lambda = (w pi)^2, so the
# eigenvalue grows with the wavenumber w.
for pair in eigenpairs(BasisSpec("cosine", 4)):
    print(f"psi_{pair.index}: lambda = {pair.eigenvalue:8.3f}")

# %%
# The cosine functions have zero slope at both ends; that is why the even
# extension of a smooth signal stays continuous.
t = np.array([0.0, 1e-6, 1.0 - 1e-6, 1.0])
print(np.round(evaluate(BasisSpec("cosine", 3), t), 6))
