"""Dense complex tensors with named axes, plus the few linear-algebra
kernels the rest of the package needs."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

DEFAULT_GROUPING_TOL = 1e-9
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class Tensor:
    axes: tuple[str, ...]
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        axes = tuple(self.axes)
        if len(set(axes)) != len(axes):
            raise ValueError(f"axis names must be unique, got {axes}")
        data = np.asarray(self.data, dtype=complex)
        if data.ndim != len(axes):
            raise ValueError(f"{len(axes)} axis names for a {data.ndim}-dimensional array")
        data.flags.writeable = False
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "data", data)

    @property
    def dims(self) -> dict[str, int]:
        return dict(zip(self.axes, self.data.shape))

    def index(self, name: str) -> int:
        try:
            return self.axes.index(name)
        except ValueError:
            raise KeyError(f"unknown axis {name!r}; axes are {self.axes}") from None

    def transpose(self, order: Sequence[str]) -> "Tensor":
        if sorted(order) != sorted(self.axes):
            raise ValueError(f"{order} is not a permutation of {self.axes}")
        return Tensor(tuple(order), self.data.transpose([self.index(a) for a in order]))

    def rename(self, mapping: dict[str, str]) -> "Tensor":
        return Tensor(tuple(mapping.get(a, a) for a in self.axes), self.data)

    @classmethod
    def from_matrix(cls, m: np.ndarray, rows: Sequence[tuple[str, int]],
                    cols: Sequence[tuple[str, int]]) -> "Tensor":
        """Inverse of :func:`matricize` given the (name, dim) of each axis."""
        names = [a for a, _ in rows] + [a for a, _ in cols]
        shape = [d for _, d in rows] + [d for _, d in cols]
        m = np.asarray(m)
        if m.shape != (prod(d for _, d in rows), prod(d for _, d in cols)):
            raise ValueError(f"matrix shape {m.shape} does not match axes {rows} x {cols}")
        return cls(tuple(names), m.reshape(shape))


def contract(a: Tensor, b: Tensor, pairs: Sequence[tuple[str, str]]) -> Tensor:
    """Sum over paired axes; survivors are a's then b's, each in original order."""
    left = [p[0] for p in pairs]
    right = [p[1] for p in pairs]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise ValueError(f"duplicate axis in pairing {pairs}")
    ia = [a.index(x) for x in left]
    ib = [b.index(y) for y in right]
    for x, y, i, j in zip(left, right, ia, ib):
        if a.data.shape[i] != b.data.shape[j]:
            raise ValueError(f"dimension mismatch pairing {x!r} ({a.data.shape[i]}) "
                             f"with {y!r} ({b.data.shape[j]})")
    out_axes = [x for x in a.axes if x not in left] + [y for y in b.axes if y not in right]
    if len(set(out_axes)) != len(out_axes):
        raise ValueError(f"surviving axes collide: {out_axes}")
    return Tensor(tuple(out_axes), np.tensordot(a.data, b.data, axes=(ia, ib)))


def matricize(t: Tensor, rows: Sequence[str], cols: Sequence[str]) -> np.ndarray:
    rows, cols = list(rows), list(cols)
    names = rows + cols
    if len(set(names)) != len(names) or set(names) != set(t.axes):
        raise ValueError(f"rows {rows} and cols {cols} must partition axes {t.axes}")
    dims = t.dims
    data = t.transpose(names).data
    return data.reshape(prod(dims[a] for a in rows), prod(dims[a] for a in cols))


@dataclass(frozen=True)
class SpectralForm:
    """Eigenvalues grouped into (value, multiplicity) classes, descending."""

    classes: tuple[tuple[float, int], ...]
    grouping_tol: float = DEFAULT_GROUPING_TOL

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.classes])

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.classes)

    @property
    def dim(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> np.ndarray:
        return np.repeat(self.values, self.multiplicities)


def check_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3g})")
    return 0.5 * (m + m.conj().T)


def group_eigenvalues(evals: np.ndarray, grouping_tol: float) -> list[tuple[int, int]]:
    """Split descending eigenvalues into runs whose spread is <= grouping_tol.

    Returns (start, stop) slices.
    """
    bounds = []
    start = 0
    for k in range(1, len(evals) + 1):
        if k == len(evals) or evals[start] - evals[k] > grouping_tol:
            bounds.append((start, k))
            start = k
    return bounds


def hermitian_eigs(m: np.ndarray, grouping_tol: float = DEFAULT_GROUPING_TOL):
    """Eigendecomposition of a Hermitian matrix with degeneracy grouping.

    Returns ``(SpectralForm, eigenvectors)``; eigenvector columns follow the
    descending eigenvalue order.
    """
    if grouping_tol <= 0:
        raise ValueError("grouping_tol must be positive")
    h = check_hermitian(m)
    evals, evecs = np.linalg.eigh(h)
    evals, evecs = evals[::-1], evecs[:, ::-1]
    classes = tuple((float(np.mean(evals[a:b])), b - a)
                    for a, b in group_eigenvalues(evals, grouping_tol))
    return SpectralForm(classes, grouping_tol), evecs


def eigenprojectors(spec: SpectralForm, evecs: np.ndarray) -> list[np.ndarray]:
    out = []
    start = 0
    for m in spec.multiplicities:
        v = evecs[:, start:start + m]
        out.append(v @ v.conj().T)
        start += m
    return out


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every subsystem whose index is not in ``keep``."""
    dims = [int(d) for d in dims]
    rho = np.asarray(rho)
    total = prod(dims)
    if rho.shape != (total, total):
        raise ValueError(f"rho has shape {rho.shape}, expected {(total, total)} for dims {dims}")
    keep = sorted(set(keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    k = len(dims)
    t = rho.reshape(dims + dims)
    letters = [chr(ord("a") + i) for i in range(2 * k)]
    bra = letters[k:]
    for i in range(k):
        if i not in keep:
            bra[i] = letters[i]
    out = [letters[i] for i in keep] + [bra[i] for i in keep]
    r = np.einsum("".join(letters[:k]) + "".join(bra) + "->" + "".join(out), t)
    d = prod(dims[i] for i in keep)
    return r.reshape(d, d)


def reduced_from_vector(psi: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduced density of the pure state |psi><psi| without forming the full matrix."""
    dims = [int(d) for d in dims]
    psi = np.asarray(psi).reshape(dims)
    keep = sorted(set(keep))
    rest = [i for i in range(len(dims)) if i not in keep]
    d = prod(dims[i] for i in keep)
    x = psi.transpose(keep + rest).reshape(d, -1)
    return x @ x.conj().T
