"""Where is the coherence sum smallest?

Fix two bases at Bloch angle gamma and a purity. The sum of coherences
depends only on the angles alpha and beta between the state's Bloch
direction and the two basis axes. The minimum sits on the boundary
alpha + beta = gamma, which turns a 2D search into a 1D one. Here we look
at the 1D profile and confirm it against a brute-force 2D grid.
"""
# %%
import numpy as np

from qucoh.coherence import MeasureKind
from qucoh.tightsolver import bases_angle, make_objective, tight_bound_1d, tight_bound_2d_crosscheck

c, P = 0.8, 0.9
gamma = bases_angle(c)
print(f"c = {c}, P = {P}, gamma = {gamma:.4f} rad")

# %% Profile of the boundary objective for each measure.
alphas = np.linspace(gamma / 2, gamma, 9)
for m in MeasureKind:
    f = make_objective(m, P)
    profile = f.of_angle(alphas) + f.of_angle(gamma - alphas)
    print(f"{m.value:>3}: " + " ".join(f"{v:.4f}" for v in profile))

# %% 1D search versus the brute-force grid over the whole feasible region.
for m in MeasureKind:
    one = tight_bound_1d(m, c, P)
    two = tight_bound_2d_crosscheck(m, c, P, grid=2048)
    print(f"{m.value:>3}: 1d {one.value:.10f} at alpha = {one.argmin_alpha:.4f}   "
          f"2d {two:.10f}   diff {two - one.value:+.1e}")
