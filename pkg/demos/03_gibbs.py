"""
Boundary behaviour: cosine vs sine vs Fourier
=============================================

The sine series forces zeros at both ends and the period-1 Fourier series
forces f(0) = f(1). A linear ramp violates both; the cosine series does not
care, because the even extension of a ramp is continuous.
"""

# %%
from csr import gibbs_compare, uniform_grid

grid = uniform_grid(4096)
print(f"{'k':>3s} {'cosine':>10s} {'sine':>10s} {'fourier':>10s}   (max boundary error, delta = 0.05)")
for k in (10, 20, 40):
    rep = gibbs_compare(lambda t: t, k, grid, 0.05)
    print(f"{k:3d} " + " ".join(f"{rep[f].boundary_error:10.4f}" for f in ("cosine", "sine", "fourier")))

# %%
# Away from the ends all three converge; the interior error shows the rate.
for k in (10, 20, 40):
    rep = gibbs_compare(lambda t: t, k, grid, 0.05)
    print(f"{k:3d} " + " ".join(f"{rep[f].interior_error:10.2e}" for f in ("cosine", "sine", "fourier")))
