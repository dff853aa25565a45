"""
Stress and stretch in a grown rod
=================================

A rod of reference length 1 grows by a factor G(X) and is then clamped
back into an interval of length l0.  The stress is constant along the rod
and is fixed by the length constraint alone.
"""

# %%
import numpy as np

from morphogrow import ScalarField, make_log_quadratic, make_uniform_grid
from morphogrow.elasticity import elastic_response

grid = make_uniform_grid(1.0, 64)
model = make_log_quadratic(ScalarField.constant(grid, 1.0))

# %%
# Uniform growth with no constraint mismatch leaves the rod unstressed.
sol = elastic_response(model, ScalarField.constant(grid, 1.0), 1.0)
print(f"unstressed: S = {sol.S:.3e}")

# %%
# Pulling an ungrown rod to twice its length.  For this energy the stretch
# at stress S is s + sqrt(s^2 + 1) with s = S / 4, so p = 2 needs S = 3.
sol = elastic_response(model, ScalarField.constant(grid, 1.0), 2.0)
print(f"stretched to 2: S = {sol.S:.12f}, Fe in [{sol.Fe.min():.6f}, {sol.Fe.max():.6f}]")

# %%
# A bump of extra growth in the middle, clamped at the original length.
# The grown material is compressed (S < 0, Fe < 1) while y = Fe * G stays
# a bijection onto [0, 1].
G = ScalarField.from_function(grid, lambda x: 1.0 + 0.8 * np.exp(-40 * (x - 0.5) ** 2))
sol = elastic_response(model, G, 1.0)
print(f"bump: S = {sol.S:.6f}, y(1) - 1 = {sol.y.values[-1] - 1.0:.1e}")
for X in (0.0, 0.25, 0.5, 0.75, 1.0):
    i = int(round(X * 64))
    print(f"  X={X:4.2f}  G={G.values[i]:.4f}  Fe={sol.Fe.values[i]:.4f}  y={sol.y.values[i]:.4f}")
