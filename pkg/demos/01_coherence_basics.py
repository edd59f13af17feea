"""How much coherence does a qubit carry, and in which basis?

Walks through the three coherence measures on a handful of states, then
compares the closed-form coherence of formation against a brute-force
search over ensemble decompositions.
"""
# %%
import numpy as np

from qucoh import coherence, numlin

Z = np.eye(2)
X = numlin.basis_from_bloch([1.0, 0.0, 0.0])

states = {
    "|0><0|": numlin.state_from_bloch([0, 0, 1]),
    "|+><+|": numlin.state_from_bloch([1, 0, 0]),
    "mixed along x (r=0.5)": numlin.state_from_bloch([0.5, 0, 0]),
    "tilted (r=(0.5,0,0.5))": numlin.state_from_bloch([0.5, 0, 0.5]),
    "I/2": np.eye(2) / 2,
}

# %% A state is incoherent in a basis exactly when it is diagonal there.
print(f"{'state':<24} {'basis':<5} {'C_RE':>8} {'C_l1':>8} {'C_CF':>8}")
for name, rho in states.items():
    for label, B in (("Z", Z), ("X", X)):
        print(f"{name:<24} {label:<5} "
              f"{coherence.coherence_relative_entropy(rho, B):8.4f} "
              f"{coherence.coherence_l1(rho, B):8.4f} "
              f"{coherence.coherence_formation_qubit(rho, B):8.4f}")

# %% Dephasing in Z kills the x and y Bloch components.
rho = states["tilted (r=(0.5,0,0.5))"]
print("\nBloch vector after Z dephasing:",
      np.round(numlin.bloch_from_state(coherence.dephase(rho, Z)), 12))

# %% Coherence of formation: closed form versus decomposition search.
# The closed form uses the l1 coherence squared under the square root; the
# unsquared variant overshoots the convex roof, which the search exposes.
rng = np.random.default_rng(1)
print(f"\n{'C_l1':>6} {'closed':>9} {'oracle':>9} {'unsquared':>10}")
for _ in range(5):
    r = rng.normal(size=3)
    r *= rng.uniform(0.3, 0.95) / np.linalg.norm(r)
    rho = numlin.state_from_bloch(r)
    l1 = coherence.coherence_l1(rho, Z)
    closed = coherence.coherence_formation_qubit(rho, Z)
    oracle = coherence.cf_oracle(rho, Z, ensembles=3, trials=20_000)
    unsquared = numlin.binary_entropy((1 + np.sqrt(1 - l1)) / 2)
    print(f"{l1:6.3f} {closed:9.5f} {oracle:9.5f} {unsquared:10.5f}")
