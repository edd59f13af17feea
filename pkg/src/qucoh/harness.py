"""Random states and bases, and Monte Carlo checks of the uncertainty relations.

Every check draws from its own Philox stream keyed by ``seed ^ check_id`` so
a report depends only on (seed, samples, dim), not on which other checks ran
or in which order. Samples are processed in fixed-size chunks to bound memory.
"""
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from . import bounds, coherence, numlin, tightsolver
from .bounds import BoundKind
from .coherence import MeasureKind
from .errors import DomainError

CHUNK = 100_000
U64_MASK = (1 << 64) - 1

# Stable ids for the per-check RNG streams; never renumber.
CHECK_IDS = {
    "lemma1": 1,
    "lemma1_probe": 2,
    "lemma2": 3,
    "lemma3": 4,
    "theorem1": 5,
    "purification": 6,
    "bound_validity": 7,
    "l1_saturation": 8,
    "entropy_sum": 9,
    "attainability": 10,
}


def make_rng(seed, stream=0):
    return np.random.Generator(np.random.Philox((int(seed) ^ int(stream)) & U64_MASK))


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    samples: int = 100_000
    dim: int = 2

    def __post_init__(self):
        if not 0 <= self.seed <= U64_MASK:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.samples < 1:
            raise DomainError("samples must be positive")
        if not 2 <= self.dim <= 8:
            raise DomainError("dim must lie in [2, 8]")

    def rng(self, check, dim_salt=0):
        stream = CHECK_IDS[check] | (dim_salt << 8)
        return make_rng(self.seed, stream)


@dataclass
class ViolationReport:
    check_name: str
    total: int
    violations: int
    worst_margin: float
    worst_case_payload: dict = field(default_factory=dict)
    # True for searches whose success is finding a counterexample
    expect_violations: bool = False

    @property
    def passed(self):
        return self.violations >= 1 if self.expect_violations else self.violations == 0

    def to_text(self):
        line = f"{self.check_name}\t{self.total}\t{self.violations}\t{self.worst_margin!r}"
        if not self.worst_case_payload:
            return line
        return line + "\n\t" + json.dumps(self.worst_case_payload, sort_keys=True)


class _Tally:
    """Accumulates slacks chunk by chunk; a sample violates when slack < -tol."""

    def __init__(self, name, tol, strict=False):
        self.name = name
        self.tol = tol
        self.strict = strict
        self.total = 0
        self.violations = 0
        self.worst = np.inf
        self.payload = {}

    def add(self, slack, payload_fn):
        slack = np.asarray(slack, dtype=float)
        if slack.size == 0:
            return
        bad = slack <= self.tol if self.strict else slack < -self.tol
        self.total += slack.size
        self.violations += int(np.count_nonzero(bad))
        i = int(np.argmin(slack))
        if slack[i] < self.worst:
            self.worst = float(slack[i]) + 0.0
            self.payload = payload_fn(i)

    def report(self, expect_violations=False):
        return ViolationReport(self.name, self.total, self.violations, self.worst,
                               self.payload, expect_violations)


def _chunks(n):
    while n > 0:
        m = min(CHUNK, n)
        yield m
        n -= m


def _floats(a):
    return [float(v) for v in np.ravel(a)]


def _complex_list(v):
    v = np.ravel(np.asarray(v, dtype=complex))
    return [[float(z.real), float(z.imag)] for z in v]


# --- sampling -------------------------------------------------------------

def random_pure_states(dim, n, rng):
    z = rng.normal(size=(n, dim)) + 1j * rng.normal(size=(n, dim))
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def random_pure_state(dim, rng):
    """Haar-random state vector: normalized complex Gaussian."""
    if dim < 2:
        raise DomainError("dim must be at least 2")
    return random_pure_states(dim, 1, rng)[0]


def random_unitaries(dim, n, rng):
    u = unitary_group.rvs(dim, size=n, random_state=rng)
    return np.asarray(u).reshape(n, dim, dim)


def random_directions(n, rng):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_density_matrices(dim, n, rng):
    """Hilbert-Schmidt random mixed states, G G^dag / Tr."""
    g = rng.normal(size=(n, dim, dim)) + 1j * rng.normal(size=(n, dim, dim))
    rho = g @ numlin.dagger(g)
    return rho / np.real(np.trace(rho, axis1=-2, axis2=-1))[:, None, None]


def random_qubit_states(n, rng):
    """Qubits with Bloch vectors uniform in the ball; one in ten is pure."""
    dirs = random_directions(n, rng)
    radius = rng.random(n) ** (1 / 3)
    radius[rng.random(n) < 0.1] = 1.0
    return numlin.state_from_bloch(dirs * radius[:, None])


def random_qubit_with(P, rng):
    """Qubit of purity P with a uniformly random eigenbasis."""
    p = bounds.purity_to_p(P)
    n = random_directions(1, rng)[0]
    return numlin.state_from_bloch((2 * p - 1) * n)


def _perpendicular(n, rng):
    u = random_directions(len(n), rng)
    u -= np.sum(u * n, axis=-1, keepdims=True) * n
    bad = np.linalg.norm(u, axis=-1) < 1e-8
    while np.any(bad):
        w = random_directions(int(bad.sum()), rng)
        w -= np.sum(w * n[bad], axis=-1, keepdims=True) * n[bad]
        u[bad] = w
        bad = np.linalg.norm(u, axis=-1) < 1e-8
    return u / np.linalg.norm(u, axis=-1, keepdims=True)


def basis_pair_directions(c, n, rng):
    """Bloch directions (n1, n2) of uniformly oriented basis pairs with c_max = c."""
    gamma = tightsolver.bases_angle(c) if np.ndim(c) == 0 else np.arccos(2 * np.asarray(c) - 1)
    gamma = np.broadcast_to(gamma, (n,))[:, None]
    n1 = random_directions(n, rng)
    u = _perpendicular(n1, rng)
    return n1, np.cos(gamma) * n1 + np.sin(gamma) * u


def random_basis_pair_with(c, rng):
    """Two qubit bases whose Bloch axes are arccos(2c - 1) apart."""
    n1, n2 = basis_pair_directions(c, 1, rng)
    return numlin.basis_from_bloch(n1[0]), numlin.basis_from_bloch(n2[0])


def _random_bases_with_cmin(dim, n, rng, c_min_floor):
    X = random_unitaries(dim, n, rng)
    Z = random_unitaries(dim, n, rng)
    _, c_min = numlin.basis_pair_geometry(X, Z)
    bad = c_min < c_min_floor
    while np.any(bad):
        k = int(bad.sum())
        X[bad] = random_unitaries(dim, k, rng)
        Z[bad] = random_unitaries(dim, k, rng)
        _, c_min = numlin.basis_pair_geometry(X, Z)
        bad = c_min < c_min_floor
    return X, Z


def _states_above_purity(dim, n, rng, floor):
    rho = random_density_matrices(dim, n, rng)
    bad = numlin.purity(rho) < floor
    while np.any(bad):
        rho[bad] = random_density_matrices(dim, int(bad.sum()), rng)
        bad = numlin.purity(rho) < floor
    return rho


# --- checks ---------------------------------------------------------------

def check_lemma1(dim, config):
    """Overlap inequalities for three random unit vectors in C^dim.

    a + b <= 1 + sqrt(c) and |a - b| <= sqrt(1 - c) always; a + b >= 1 - sqrt(c)
    is only asserted for dim = 2.
    """
    rng = config.rng("lemma1", dim)
    tally = _Tally(f"lemma1_d{dim}", 1e-12)
    for m in _chunks(config.samples):
        x, z, r = (random_pure_states(dim, m, rng) for _ in range(3))
        a, b, c = numlin.overlap(r, x), numlin.overlap(r, z), numlin.overlap(x, z)
        slacks = [1 + np.sqrt(c) - (a + b), np.sqrt(1 - c) - np.abs(a - b)]
        if dim == 2:
            slacks.append(a + b - (1 - np.sqrt(c)))
        slacks = np.stack(slacks)
        which = np.argmin(slacks, axis=0)
        tally.add(slacks.min(axis=0), lambda i: {
            "inequality": ["upper_sum", "difference", "lower_sum"][which[i]],
            "a": float(a[i]), "b": float(b[i]), "c": float(c[i])})
    return tally.report()


def probe_lemma1_lower(dim, config):
    """Search for a + b < 1 - sqrt(c) in dim >= 3, where it need not hold.

    Directed samples put r orthogonal to both x and z (a = b = 0). Passes
    when at least one counterexample is found.
    """
    if dim < 3:
        raise DomainError("the lower-sum inequality holds for qubits; probe needs dim >= 3")
    rng = config.rng("lemma1_probe", dim)
    tally = _Tally(f"lemma1_lower_probe_d{dim}", 1e-12)
    for m in _chunks(config.samples):
        x, z, r = (random_pure_states(dim, m, rng) for _ in range(3))
        xz = np.stack([x, z], axis=-1)
        q, _ = np.linalg.qr(xz)
        r = r - np.einsum("nij,nj->ni", q, np.einsum("nji,nj->ni", np.conj(q), r))
        r /= np.linalg.norm(r, axis=-1, keepdims=True)
        a, b, c = numlin.overlap(r, x), numlin.overlap(r, z), numlin.overlap(x, z)
        tally.add(a + b - (1 - np.sqrt(c)), lambda i: {
            "a": float(a[i]), "b": float(b[i]), "c": float(c[i]),
            "x": _complex_list(x[i]), "z": _complex_list(z[i]), "r": _complex_list(r[i])})
    return tally.report(expect_violations=True)


def check_lemma2(config):
    """sin(alpha) + sin(beta) >= sin(gamma) for the pairwise angles of three 3-vectors."""
    rng = config.rng("lemma2")
    tally = _Tally("lemma2", 1e-12)
    for m in _chunks(config.samples):
        va, vb, vc = (rng.normal(size=(m, 3)) for _ in range(3))
        for v in (va, vb, vc):
            tiny = np.linalg.norm(v, axis=-1) < 1e-9
            while np.any(tiny):
                v[tiny] = rng.normal(size=(int(tiny.sum()), 3))
                tiny = np.linalg.norm(v, axis=-1) < 1e-9
        alpha = numlin.angle_between(va, vb)
        beta = numlin.angle_between(vb, vc)
        gamma = numlin.angle_between(vc, va)
        tally.add(np.sin(alpha) + np.sin(beta) - np.sin(gamma), lambda i: {
            "a": _floats(va[i]), "b": _floats(vb[i]), "c": _floats(vc[i])})
    return tally.report()


def check_lemma3(config):
    """|<x|z>|^2 = cos^2(angle between Bloch vectors / 2) for random pure qubits."""
    rng = config.rng("lemma3")
    tally = _Tally("lemma3", 1e-10)
    for m in _chunks(config.samples):
        x, z = random_pure_states(2, m, rng), random_pure_states(2, m, rng)
        bx = numlin.bloch_from_state(x[:, :, None] * np.conj(x[:, None, :]))
        bz = numlin.bloch_from_state(z[:, :, None] * np.conj(z[:, None, :]))
        diff = numlin.overlap(x, z) - numlin.bloch_angle_overlap(numlin.angle_between(bx, bz))
        tally.add(-np.abs(diff), lambda i: {"x": _complex_list(x[i]), "z": _complex_list(z[i])})
    return tally.report()


def check_theorem1(dim, config, purity_margin=0.01, c_min_floor=1e-3):
    """C_RE^X + C_RE^Z > 0 for states that are not maximally mixed and c_min > 0."""
    if not 2 <= dim <= 6:
        raise DomainError("theorem1 check supports dim in [2, 6]")
    rng = config.rng("theorem1", dim)
    tally = _Tally(f"theorem1_d{dim}", 1e-12, strict=True)
    for m in _chunks(config.samples):
        rho = _states_above_purity(dim, m, rng, 1 / dim + purity_margin)
        X, Z = _random_bases_with_cmin(dim, m, rng, c_min_floor)
        total = (coherence.coherence_relative_entropy(rho, X, check=False)
                 + coherence.coherence_relative_entropy(rho, Z, check=False))
        tally.add(total, lambda i: {"purity": float(numlin.purity(rho[i])),
                                    "c_min": float(numlin.basis_pair_geometry(X[i], Z[i])[1])})
    return tally.report()


def conditional_entropy_after_measurement(rho, basis):
    """H(X|B) for X measured on a purification of ``rho`` held jointly with B.

    Builds |psi> = sum_i sqrt(lam_i) |v_i>|i>, dephases system A in ``basis``
    and returns H(rho_XB) - H(rho_B).
    """
    rho = np.asarray(rho, dtype=complex)
    basis = np.asarray(basis, dtype=complex)
    d = rho.shape[-1]
    lam, vecs = numlin.hermitian_eigen(rho)
    lam = np.clip(lam, 0.0, None)
    # psi[a, b] = sum_i sqrt(lam_i) v_i[a] delta_{i b}
    psi = (vecs * np.sqrt(lam)[..., None, :]).reshape(*rho.shape[:-2], d * d)
    rho_ab = psi[..., :, None] * np.conj(psi[..., None, :])
    eye = np.eye(d)
    rho_xb = np.zeros_like(rho_ab)
    for k in range(d):
        x = basis[..., :, k]
        proj = np.einsum("...i,...j->...ij", x, np.conj(x))
        op = np.einsum("...ij,kl->...ikjl", proj, eye).reshape(*proj.shape[:-2], d * d, d * d)
        rho_xb += op @ rho_ab @ op
    rho_b = np.einsum("...abac->...bc", rho_ab.reshape(*rho_ab.shape[:-2], d, d, d, d))
    return numlin.von_neumann_entropy(rho_xb) - numlin.von_neumann_entropy(rho_b)


def check_purification_identity(dim, config):
    """H(X|B) on a purification equals the relative entropy of coherence C_RE^X(rho)."""
    if dim not in (2, 3):
        raise DomainError("purification check supports dim 2 or 3")
    rng = config.rng("purification", dim)
    tally = _Tally(f"purification_d{dim}", 1e-8)
    for m in _chunks(config.samples):
        rho = random_density_matrices(dim, m, rng)
        X = random_unitaries(dim, m, rng)
        h_xb = conditional_entropy_after_measurement(rho, X)
        c_re = coherence.coherence_relative_entropy(rho, X, check=False)
        diff = h_xb - c_re
        tally.add(-np.abs(diff), lambda i: {"h_x_given_b": float(h_xb[i]),
                                            "c_re": float(c_re[i])})
    return tally.report()


def check_entropy_sum(config):
    """C_RE^X(rho) + H(rho) equals the Shannon entropy of the X outcomes."""
    dim = config.dim
    rng = config.rng("entropy_sum", dim)
    tally = _Tally(f"entropy_sum_d{dim}", 1e-10)
    for m in _chunks(config.samples):
        rho = random_density_matrices(dim, m, rng)
        X = random_unitaries(dim, m, rng)
        probs = coherence.outcome_probabilities(rho, X, check=False)
        lhs = (coherence.coherence_relative_entropy(rho, X, check=False)
               + numlin.von_neumann_entropy(rho))
        diff = lhs - numlin.shannon_entropy(probs)
        tally.add(-np.abs(diff), lambda i: {"difference": float(diff[i])})
    return tally.report()


def qubit_coherence_sums(rho, X, Z):
    """Per-measure coherence sums C(rho, X) + C(rho, Z) for stacked qubits."""
    l1 = (coherence.coherence_l1(rho, X, check=False)
          + coherence.coherence_l1(rho, Z, check=False))
    cf = (coherence.formation_from_l1(coherence.coherence_l1(rho, X, check=False))
          + coherence.formation_from_l1(coherence.coherence_l1(rho, Z, check=False)))
    re = (coherence.coherence_relative_entropy(rho, X, check=False)
          + coherence.coherence_relative_entropy(rho, Z, check=False))
    return {MeasureKind.RELATIVE_ENTROPY: re, MeasureKind.FORMATION: cf, MeasureKind.L1: l1}


def check_bounds_validity(config, kinds=None, tol=1e-9):
    """Coherence sums of random qubits and basis pairs versus every analytic bound.

    One shared sample set is used for all ``kinds``; returns one report each.
    """
    kinds = list(BoundKind) if kinds is None else [BoundKind(k) for k in kinds]
    rng = config.rng("bound_validity")
    tallies = {k: _Tally(f"bound_{k.value}", tol) for k in kinds}
    for m in _chunks(config.samples):
        rho = random_qubit_states(m, rng)
        X = random_unitaries(2, m, rng)
        Z = random_unitaries(2, m, rng)
        c, _ = numlin.basis_pair_geometry(X, Z)
        c = np.clip(c, 0.5, 1.0)
        P = np.clip(numlin.purity(rho), 0.5, 1.0)
        sums = qubit_coherence_sums(rho, X, Z)
        for kind, tally in tallies.items():
            raw = bounds.evaluate(kind, c, P).raw
            total = sums[kind.measure]
            tally.add(total - raw, lambda i: {
                "c": float(c[i]), "purity": float(P[i]), "sum": float(total[i]),
                "bound": float(raw[i]), "bloch": _floats(numlin.bloch_from_state(rho[i]))})
    return [tallies[k].report() for k in kinds]


def check_bound_validity(measure, bound_kind, config):
    """Single-bound form of :func:`check_bounds_validity`."""
    kind = BoundKind(bound_kind)
    if measure is not None and MeasureKind(measure) is not kind.measure:
        raise DomainError(f"bound {kind.value} constrains {kind.measure.value}, not {measure}")
    return check_bounds_validity(config, [kind])[0]


def check_l1_saturation(config, tol=1e-9):
    """Eigenvector along the first X basis direction attains the l1 bound exactly."""
    rng = config.rng("l1_saturation")
    tally = _Tally("l1_saturation", tol)
    for m in _chunks(config.samples):
        c = rng.uniform(0.5, 1.0, size=m)
        P = rng.uniform(0.5, 1.0, size=m)
        n1, n2 = basis_pair_directions(c, m, rng)
        p = bounds.purity_to_p(P)
        rho = numlin.state_from_bloch((2 * p - 1)[:, None] * n1)
        X, Z = numlin.basis_from_bloch(n1), numlin.basis_from_bloch(n2)
        total = (coherence.coherence_l1(rho, X, check=False)
                 + coherence.coherence_l1(rho, Z, check=False))
        bound = bounds.bound_thm4_l1(c, P).raw
        diff = total - bound
        tally.add(-np.abs(diff), lambda i: {"c": float(c[i]), "purity": float(P[i]),
                                            "sum": float(total[i]), "bound": float(bound[i])})
    return tally.report()


def sampled_minimum(measure, c, P, samples, rng):
    """Smallest coherence sum over sampled eigen-directions at fixed (c, P).

    Half of the directions are uniform on the sphere, the rest are Gaussian
    perturbations of the best direction so far with a shrinking step.
    """
    measure = MeasureKind(measure)
    n1, n2 = basis_pair_directions(c, 1, rng)
    X, Z = numlin.basis_from_bloch(n1[0]), numlin.basis_from_bloch(n2[0])
    scale = 2 * float(bounds.purity_to_p(P)) - 1

    def sums(dirs):
        return qubit_coherence_sums(numlin.state_from_bloch(scale * dirs), X, Z)[measure]

    n_uniform = max(1, samples // 2)
    best_value, best_dir = np.inf, None
    for m in _chunks(n_uniform):
        dirs = random_directions(m, rng)
        vals = sums(dirs)
        i = int(np.argmin(vals))
        if vals[i] < best_value:
            best_value, best_dir = float(vals[i]), dirs[i]
    remaining, step, batch = samples - n_uniform, 0.05, 200
    while remaining > 0:
        m = min(batch, remaining)
        remaining -= m
        dirs = best_dir + step * rng.normal(size=(m, 3))
        dirs /= np.linalg.norm(dirs, axis=-1, keepdims=True)
        vals = sums(dirs)
        i = int(np.argmin(vals))
        if vals[i] < best_value:
            best_value, best_dir = float(vals[i]), dirs[i]
        else:
            step *= 0.7
    return best_value


def default_grid(n):
    return np.linspace(0.5, 1.0, n)


def check_tight_l1_exactness(grid=20):
    values = default_grid(grid)
    tally = _Tally("tight_l1_exact", 1e-9)
    for c in values:
        for P in values:
            diff = (tightsolver.tight_bound_1d(MeasureKind.L1, c, P).value
                    - bounds.bound_thm4_l1(c, P).raw)
            tally.add([-abs(diff)], lambda i: {"c": float(c), "purity": float(P)})
    return tally.report()


def check_tight_reduction(measure, grid=20, resolution=2048):
    """1D boundary search versus brute force over the whole feasible region."""
    measure = MeasureKind(measure)
    values = default_grid(grid)
    tally = _Tally(f"tight_reduction_{measure.value}", 1e-6)
    for c in values:
        for P in values:
            one = tightsolver.tight_bound_1d(measure, c, P).value
            two = tightsolver.tight_bound_2d_crosscheck(measure, c, P, resolution)
            tally.add([-abs(two - one)], lambda i: {"c": float(c), "purity": float(P),
                                                    "one_d": one, "two_d": two})
    return tally.report()


def check_tight_dominance(grid=20, tol=1e-9):
    """Tight values dominate every analytic bound of the same measure."""
    values = default_grid(grid)
    tally = _Tally("tight_dominance", tol)
    for c in values:
        for P in values:
            tight = {m: tightsolver.tight_bound_1d(m, c, P).value for m in MeasureKind}
            for kind, bv in bounds.evaluate_all(c, P).items():
                slack = tight[kind.measure] - bv.raw
                tally.add([slack], lambda i: {"c": float(c), "purity": float(P),
                                              "bound": kind.value})
    return tally.report()


def check_attainability(config, points=((0.5, 1.0), (0.75, 0.8), (0.9, 0.95), (0.6, 0.6)),
                        slack_above=5e-3):
    """Sampled eigen-directions never beat the tight value and come within ``slack_above``."""
    rng = config.rng("attainability")
    below = _Tally("attainability_lower", 1e-9)
    above = _Tally("attainability_upper", 0.0)
    for measure in MeasureKind:
        for c, P in points:
            tight = tightsolver.tight_bound_1d(measure, c, P).value
            found = sampled_minimum(measure, c, P, config.samples, rng)
            info = {"measure": measure.value, "c": c, "purity": P,
                    "tight": tight, "sampled": found}
            below.add([found - tight], lambda i: info)
            above.add([tight + slack_above - found], lambda i: info)
    return [below.report(), above.report()]


# --- suites ---------------------------------------------------------------

SUITES = ("lemmas", "bounds", "tightness", "purification", "theorem1")


def suite_checks(suite, seed, samples):
    """Ordered list of zero-argument callables, each returning a list of reports."""
    def cfg(dim=2, n=samples):
        return SampleConfig(seed=seed, samples=n, dim=dim)

    if suite == "all":
        return [job for name in SUITES for job in suite_checks(name, seed, samples)]
    if suite == "lemmas":
        jobs = [lambda d=d: [check_lemma1(d, cfg(d))] for d in range(2, 7)]
        jobs.append(lambda: [probe_lemma1_lower(3, cfg(3, min(samples, 1000)))])
        jobs.append(lambda: [check_lemma2(cfg())])
        jobs.append(lambda: [check_lemma3(cfg())])
        return jobs
    if suite == "bounds":
        return [lambda: check_bounds_validity(cfg()),
                lambda: [check_l1_saturation(cfg())],
                lambda: [check_entropy_sum(cfg(2))],
                lambda: [check_entropy_sum(cfg(3))]]
    if suite == "tightness":
        return [lambda: [check_tight_l1_exactness(8)],
                *[lambda m=m: [check_tight_reduction(m, 6)] for m in MeasureKind],
                lambda: [check_tight_dominance(8)],
                lambda: check_attainability(cfg())]
    if suite == "purification":
        return [lambda: [check_purification_identity(2, cfg(2))],
                lambda: [check_purification_identity(3, cfg(3, max(1, samples // 10)))]]
    if suite == "theorem1":
        return [lambda d=d: [check_theorem1(d, cfg(d))] for d in (2, 3, 4)]
    raise DomainError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}, all")


def run_suite(suite, seed=0, samples=100_000, jobs=1):
    """Run a named suite and return its reports in a fixed order."""
    checks = suite_checks(suite, seed, samples)
    if jobs <= 1:
        results = [check() for check in checks]
    else:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda check: check(), checks))
    return [report for group in results for report in group]
