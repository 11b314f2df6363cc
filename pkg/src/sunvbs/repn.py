"""SU(n) representation kernel.

Pair spaces are n*n dimensional with row-major index ``i * n + j``.  The
conjugate space is stored as a plain second copy of C^n; conjugation only
enters through the ``U (x) conj(U)`` action.

Slot orderings:

* ``"fund-conj"``: on-site pair ``[r, r_bar]`` (the physical site).
* ``"conj-fund"``: bond pair ``[r_bar, r+1]`` (the valence bond).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

ORDERINGS = ("conj-fund", "fund-conj")


def check_rank(n: int) -> int:
    if int(n) != n or n < 2:
        raise ValueError(f"SU(n) rank must be an integer >= 2, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class BellLabel:
    l: int
    p: int

    def is_singlet(self) -> bool:
        return self.l == 0 and self.p == 0


def singlet_vector(n: int, ordering: str = "fund-conj") -> np.ndarray:
    """Maximally entangled pair state with amplitude 1/sqrt(n) on each |j, j>.

    The conjugate basis is indexed like the fundamental one, so both
    orderings give the same array; ``ordering`` is validated to keep call
    sites explicit about which slot is which.
    """
    n = check_rank(n)
    if ordering not in ORDERINGS:
        raise ValueError(f"ordering must be one of {ORDERINGS}, got {ordering!r}")
    v = np.zeros(n * n, dtype=complex)
    v[:: n + 1] = 1.0 / np.sqrt(n)
    return v


def adjoint_projector(n: int) -> np.ndarray:
    """Projector removing the singlet from fund (x) conj (fund-conj ordering)."""
    n = check_rank(n)
    omega = singlet_vector(n, "fund-conj")
    return np.eye(n * n, dtype=complex) - np.outer(omega, omega.conj())


def bell_vector(n: int, label: BellLabel | tuple[int, int]) -> np.ndarray:
    """Generalized Bell vector sum_j exp(2 pi i l j / n) |j+p mod n, j_bar> / sqrt(n)."""
    n = check_rank(n)
    l, p = (label.l, label.p) if isinstance(label, BellLabel) else label
    if not (0 <= l < n and 0 <= p < n):
        raise ValueError(f"Bell label ({l}, {p}) out of range for n={n}")
    v = np.zeros(n * n, dtype=complex)
    for j in range(n):
        v[((j + p) % n) * n + j] = np.exp(2j * np.pi * l * j / n)
    return v / np.sqrt(n)


def adjoint_labels(n: int) -> list[BellLabel]:
    n = check_rank(n)
    return [BellLabel(l, p) for l, p in product(range(n), repeat=2) if (l, p) != (0, 0)]


def adjoint_basis(n: int) -> list[np.ndarray]:
    """Bell vectors with (l, p) != (0, 0), lexicographic in (l, p)."""
    return [bell_vector(n, lab) for lab in adjoint_labels(n)]


def adjoint_isometry(n: int) -> np.ndarray:
    """Columns are the adjoint basis vectors; shape (n*n, n*n - 1)."""
    return np.stack(adjoint_basis(n), axis=1)


def lie_generators(n: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices scaled so that Tr(t^a t^b) = delta_ab / 2.

    Order: for each pair j < k the symmetric then antisymmetric matrix,
    followed by the n - 1 diagonal ones.  For n = 2 this is (sx, sy, sz) / 2.
    """
    n = check_rank(n)
    gens = []
    for j in range(n):
        for k in range(j + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[j, k] = s[k, j] = 1.0
            a = np.zeros((n, n), dtype=complex)
            a[j, k] = -1j
            a[k, j] = 1j
            gens += [s / 2, a / 2]
    for m in range(1, n):
        d = np.zeros(n, dtype=complex)
        d[:m] = 1.0
        d[m] = -m
        gens.append(np.diag(d) * np.sqrt(2.0 / (m * (m + 1))) / 2)
    return gens


def adjoint_action(t: np.ndarray) -> np.ndarray:
    """Generator acting on a fund (x) conj pair: t (x) I - I (x) t^T."""
    n = t.shape[0]
    eye = np.eye(n)
    return np.kron(t, eye) - np.kron(eye, t.T)


def random_special_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-distributed SU(n) element from a seeded complex Gaussian matrix."""
    n = check_rank(n)
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    det = np.linalg.det(q)
    return q / det ** (1.0 / n)


def pair_rotation(u: np.ndarray) -> np.ndarray:
    """U (x) conj(U) on a fund-conj pair."""
    return np.kron(u, u.conj())
