"""Small dense linear algebra, entropies and Bloch-sphere geometry.

Every function accepts stacked inputs: a density matrix is an array of shape
``(..., d, d)``, a pure state ``(..., d)`` and a basis ``(..., d, d)`` whose
*columns* are the basis vectors. Entropies are in bits.
"""
import numpy as np

from .errors import DomainError, InvalidInputError

STRUCT_TOL = 1e-10
NUMERIC_TOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z])


def _as_square(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise InvalidInputError(f"expected square matrix, got shape {m.shape}", "shape")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix has non-finite entries", "finite")
    return m


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def _check_hermitian(m, atol):
    err = np.max(np.abs(m - dagger(m)), initial=0.0)
    if err > atol:
        raise InvalidInputError(f"matrix is not Hermitian (max deviation {err:.3g})", "hermitian")


def validate_density_matrix(rho, atol=STRUCT_TOL):
    """Return ``rho`` as a complex array after checking it is a density matrix.

    Raises InvalidInputError whose ``invariant`` is one of ``shape``,
    ``finite``, ``hermitian``, ``trace`` or ``positive``.
    """
    rho = _as_square(rho)
    _check_hermitian(rho, atol)
    tr = np.real(np.trace(rho, axis1=-2, axis2=-1))
    if np.any(np.abs(tr - 1) > atol):
        bad = np.ravel(tr)[np.argmax(np.ravel(np.abs(tr - 1)))]
        raise InvalidInputError(f"trace is {bad:.12g}, expected 1", "trace")
    lam_min = np.min(np.linalg.eigvalsh(rho), initial=np.inf)
    if lam_min < -atol:
        raise InvalidInputError(
            f"matrix is not positive semidefinite (eigenvalue {lam_min:.3g})", "positive")
    return rho


def validate_pure_state(psi, atol=STRUCT_TOL):
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim < 1:
        raise InvalidInputError("pure state must be a vector", "shape")
    norm = np.linalg.norm(psi, axis=-1)
    if np.any(np.abs(norm - 1) > atol):
        raise InvalidInputError("state vector is not normalized", "norm")
    return psi


def validate_basis(basis, atol=STRUCT_TOL):
    """Check that the columns of ``basis`` form an orthonormal basis."""
    basis = _as_square(basis)
    d = basis.shape[-1]
    gram = dagger(basis) @ basis
    err = np.max(np.abs(gram - np.eye(d)), initial=0.0)
    if err > atol:
        raise InvalidInputError(f"basis vectors are not orthonormal (deviation {err:.3g})",
                                "orthonormal")
    return basis


def basis_from_vectors(vectors, atol=STRUCT_TOL):
    """Stack a list of d vectors into a basis matrix (vectors become columns)."""
    return validate_basis(np.stack([np.asarray(v, dtype=complex) for v in vectors], axis=-1), atol)


def hermitian_eigen(m):
    """Eigendecomposition of a Hermitian matrix with eigenvalues in descending order.

    Returns ``(eigenvalues, eigenvectors)``; ``eigenvectors[..., :, i]`` belongs
    to ``eigenvalues[..., i]``.
    """
    m = _as_square(m)
    _check_hermitian(m, STRUCT_TOL)
    # symmetrize so tiny anti-Hermitian noise cannot leak into the result
    w, v = np.linalg.eigh(0.5 * (m + dagger(m)))
    return w[..., ::-1], v[..., ::-1]


def _xlog2x(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def binary_entropy(x):
    """Shannon entropy in bits of the distribution ``(x, 1 - x)``.

    Values within 1e-12 outside [0, 1] are clamped; anything further out
    raises DomainError.
    """
    x = np.asarray(x, dtype=float)
    if np.any((x < -NUMERIC_TOL) | (x > 1 + NUMERIC_TOL)) or np.any(np.isnan(x)):
        raise DomainError(f"binary_entropy argument outside [0, 1]: {x}")
    x = np.clip(x, 0.0, 1.0)
    h = -_xlog2x(x) - _xlog2x(1.0 - x)
    h = np.clip(h, 0.0, 1.0)
    return h[()] if h.ndim == 0 else h


def shannon_entropy(probs, axis=-1):
    probs = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    return -np.sum(_xlog2x(probs), axis=axis)


def entropy_of_spectrum(eigenvalues):
    lam = np.asarray(eigenvalues, dtype=float)
    lam = np.where((lam < 0) & (lam >= -STRUCT_TOL), 0.0, lam)
    return shannon_entropy(lam)


def von_neumann_entropy(rho):
    """Von Neumann entropy in bits; eigenvalues in [-1e-10, 0) count as zero."""
    rho = _as_square(rho)
    _check_hermitian(rho, STRUCT_TOL)
    lam = np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))
    h = entropy_of_spectrum(lam)
    return h[()] if np.ndim(h) == 0 else h


def purity(rho):
    rho = np.asarray(rho, dtype=complex)
    return np.real(np.einsum("...ij,...ji->...", rho, rho))


def overlap(u, v):
    """Squared modulus of the inner product of two pure states."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape[-1] != v.shape[-1]:
        raise InvalidInputError(f"dimension mismatch: {u.shape[-1]} vs {v.shape[-1]}", "shape")
    return np.abs(np.sum(np.conj(u) * v, axis=-1)) ** 2


def overlap_matrix(X, Z):
    """Matrix of |<x_i|z_j>|^2 for two bases given as column matrices."""
    X = np.asarray(X, dtype=complex)
    Z = np.asarray(Z, dtype=complex)
    if X.shape[-1] != Z.shape[-1]:
        raise InvalidInputError(f"dimension mismatch: {X.shape[-1]} vs {Z.shape[-1]}", "shape")
    return np.abs(dagger(X) @ Z) ** 2


def basis_pair_geometry(X, Z):
    """Return ``(c_max, c_min)``: largest and smallest squared overlap between the bases."""
    ov = overlap_matrix(X, Z)
    c_max = ov.max(axis=(-2, -1))
    c_min = ov.min(axis=(-2, -1))
    return c_max, c_min


def state_from_bloch(r):
    """Qubit density matrix ``(I + r.sigma)/2``."""
    r = np.asarray(r, dtype=float)
    if r.shape[-1] != 3:
        raise InvalidInputError(f"Bloch vector must have 3 components, got {r.shape}", "shape")
    norm = np.linalg.norm(r, axis=-1)
    if np.any(norm > 1 + NUMERIC_TOL):
        raise DomainError(f"Bloch vector norm {np.max(norm):.12g} exceeds 1")
    return 0.5 * (np.eye(2) + np.einsum("...k,kij->...ij", r, PAULIS))


def bloch_from_state(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (2, 2):
        raise InvalidInputError(f"Bloch representation needs a qubit, got {rho.shape}", "shape")
    return np.real(np.einsum("...ij,kji->...k", rho, PAULIS))


def pure_state_from_bloch(n):
    """Qubit state vector whose Bloch vector is the unit vector ``n``.

    The global phase is chosen per hemisphere to avoid dividing by ~0.
    """
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n, axis=-1, keepdims=True)
    x, y, z = n[..., 0], n[..., 1], n[..., 2]
    north = z >= 0
    a = np.where(north, 1 + z, x - 1j * y)
    b = np.where(north, x + 1j * y, 1 - z)
    norm = np.sqrt(2 * (1 + np.abs(z)))
    return np.stack([a, b], axis=-1) / norm[..., None]


def basis_from_bloch(n):
    """Qubit basis ``{|n>, |-n>}`` as a 2x2 column matrix."""
    n = np.asarray(n, dtype=float)
    return np.stack([pure_state_from_bloch(n), pure_state_from_bloch(-n)], axis=-1)


def angle_between(u, v):
    """Angle in [0, pi] between real vectors, via a clamped arccos."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    cos = np.sum(u * v, axis=-1) / (np.linalg.norm(u, axis=-1) * np.linalg.norm(v, axis=-1))
    return np.arccos(np.clip(cos, -1.0, 1.0))


def bloch_angle_overlap(alpha):
    """Squared overlap of two pure qubits whose Bloch vectors are ``alpha`` apart."""
    alpha = np.clip(np.asarray(alpha, dtype=float), 0.0, np.pi)
    out = np.cos(alpha / 2) ** 2
    return out[()] if out.ndim == 0 else out
