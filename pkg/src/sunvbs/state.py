"""Dense construction of the finite SU(n) VBS chain.

Subsystem order is left boundary (a conjugate qunit), physical sites 1..N,
right boundary (a fundamental qunit).  Physical sites are stored in
adjoint-basis coordinates, so each site has dimension n^2 - 1 and no
singlet component.  States are left unnormalized.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass, replace
from math import prod
from pathlib import Path

import numpy as np

from .repn import (adjoint_isometry, adjoint_projector, check_rank, pair_rotation,
                   singlet_vector)
from .tensor import reduced_from_vector

DEFAULT_MAX_AMPLITUDES = 2**26
ORIENTATIONS = ("conj-fund", "fund-conj")


class MemoryBudgetError(RuntimeError):
    pass


def max_amplitudes() -> int:
    return int(os.environ.get("VBS_MAX_AMPLITUDES", DEFAULT_MAX_AMPLITUDES))


@dataclass(frozen=True)
class BoundaryCondition:
    kind: str = "open"
    orientation: str | None = None

    def __post_init__(self):
        if self.kind not in ("open", "periodic", "projected"):
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.kind == "periodic":
            if self.orientation not in ORIENTATIONS:
                raise ValueError(f"periodic chains need an orientation in {ORIENTATIONS}")
        elif self.orientation is not None:
            raise ValueError("orientation is only meaningful for periodic chains")

    @property
    def has_boundary_qunits(self) -> bool:
        return self.kind == "open"


@dataclass(frozen=True)
class DenseState:
    n: int
    N: int
    bc: BoundaryCondition
    subsystem_dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != prod(self.subsystem_dims):
            raise ValueError("amplitude count does not match subsystem dims")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def offset(self) -> int:
        """Subsystem index of physical site 1."""
        return 1 if self.bc.has_boundary_qunits else 0

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.subsystem_dims)

    def normalized(self) -> "DenseState":
        return replace(self, amplitudes=self.amplitudes / np.sqrt(state_norm_dense(self)))


def state_norm_dense(state: DenseState) -> float:
    return float(np.vdot(state.amplitudes, state.amplitudes).real)


def site_tensor(n: int) -> np.ndarray:
    """C[k, f, c] = <b_k| W_adj |f, c>: physical coordinate k of the pair (f, c)."""
    b = adjoint_isometry(n)
    c = b.conj().T @ adjoint_projector(n)
    return c.reshape(-1, n, n)


def _check_budget(n: int, N: int, extra: int):
    if int(N) != N or N < 1:
        raise ValueError(f"site count must be an integer >= 1, got {N!r}")
    size = extra * (n * n - 1) ** N
    if size > max_amplitudes():
        raise MemoryBudgetError(
            f"{size} amplitudes exceeds the budget of {max_amplitudes()} "
            "(set VBS_MAX_AMPLITUDES to override)")


def _bond(n: int) -> np.ndarray:
    # conj-fund singlet as an n x n matrix [conj slot, fund slot]
    return singlet_vector(n, "conj-fund").reshape(n, n)


def _grow(t: np.ndarray, n: int, N: int, site: np.ndarray) -> np.ndarray:
    """Append N sites to t[..., f] where the last axis feeds the next site's
    fundamental slot; returns t[..., k1..kN, c_N]."""
    bond = _bond(n)
    for r in range(N):
        t = np.tensordot(t, site, axes=([t.ndim - 1], [1]))  # [..., k_r, c_r]
        if r < N - 1:
            t = np.tensordot(t, bond, axes=([t.ndim - 1], [0]))  # [..., k_r, f_{r+1}]
    return t


def build_dense_vbs(n: int, N: int) -> DenseState:
    """Open chain: N+1 bond singlets, W_adj on each site, explicit boundary qunits."""
    n = check_rank(n)
    _check_budget(n, N, n * n)
    t = _grow(_bond(n), n, N, site_tensor(n))  # [a, k1..kN, c_N]
    t = np.tensordot(t, _bond(n), axes=([t.ndim - 1], [0]))  # [a, k.., b]
    dims = (n,) + (n * n - 1,) * N + (n,)
    return DenseState(n, N, BoundaryCondition("open"), dims, t.reshape(-1))


def build_dense_vbs_periodic(n: int, N: int, orientation: str = "conj-fund") -> DenseState:
    """Ring of N sites.

    ``conj-fund`` pairs (r_bar, r+1); ``fund-conj`` pairs (r, (r+1)_bar), i.e.
    bonds carry the singlet of fund (x) conj instead.
    """
    n = check_rank(n)
    if N < 2:
        raise ValueError("periodic chains need N >= 2")
    _check_budget(n, N, 1)
    bc = BoundaryCondition("periodic", orientation)
    site = site_tensor(n)
    if orientation == "fund-conj":
        # bond joins site r's fundamental slot to site r+1's conjugate slot
        site = site.transpose(0, 2, 1)
    start = _bond(n)  # [c_0 (closing leg), f_1]
    t = _grow(start, n, N, site)  # [c_0, k.., c_N]
    t = np.trace(np.moveaxis(t, -1, 1), axis1=0, axis2=1)
    return DenseState(n, N, bc, (n * n - 1,) * N, t.reshape(-1))


def embed_physical(state: DenseState) -> np.ndarray:
    """Amplitude tensor with every physical site mapped back to its n^2 pair space."""
    iso = adjoint_isometry(state.n)
    t = state.tensor()
    for s in range(state.N):
        ax = state.offset + s
        t = np.moveaxis(np.tensordot(iso, t, axes=([1], [ax])), 0, ax)
    return t


def rotate(state: DenseState, u: np.ndarray) -> DenseState:
    """Global SU(n) rotation: U on fundamental slots, conj(U) on conjugate ones."""
    iso = adjoint_isometry(state.n)
    r_site = iso.conj().T @ pair_rotation(u) @ iso
    ops = [r_site] * state.N
    if state.bc.has_boundary_qunits:
        ops = [u.conj()] + ops + [u]
    t = state.tensor()
    for ax, op in enumerate(ops):
        t = np.moveaxis(np.tensordot(op, t, axes=([1], [ax])), 0, ax)
    return replace(state, amplitudes=t.reshape(-1))


def project_boundaries(state: DenseState, left: np.ndarray, right: np.ndarray) -> DenseState:
    """Fix the two boundary qunits to the given vectors (contract with their duals)."""
    if not state.bc.has_boundary_qunits:
        raise ValueError("state has no boundary qunits")
    t = np.tensordot(np.conj(left), state.tensor(), axes=([0], [0]))
    t = np.tensordot(t, np.conj(right), axes=([t.ndim - 1], [0]))
    dims = state.subsystem_dims[1:-1]
    return DenseState(state.n, state.N, BoundaryCondition("projected"), dims, t.reshape(-1))


def reduced_density(state: DenseState, sites: range | tuple[int, int],
                    include_boundaries: bool = False) -> np.ndarray:
    """Unit-trace reduced density of physical sites ``first..last`` (1-based, inclusive)."""
    first, last = (sites.start, sites.stop - 1) if isinstance(sites, range) else sites
    if first > last or first < 1 or last > state.N:
        raise ValueError(f"site interval [{first}, {last}] outside 1..{state.N}")
    keep = [state.offset + s - 1 for s in range(first, last + 1)]
    if include_boundaries:
        if not state.bc.has_boundary_qunits:
            raise ValueError("state has no boundary qunits")
        keep = [0] + keep + [len(state.subsystem_dims) - 1]
    rho = reduced_from_vector(state.amplitudes, state.subsystem_dims, keep)
    return rho / np.trace(rho).real


def boundary_density(state: DenseState) -> np.ndarray:
    """Unit-trace reduced density of the two boundary qunits alone."""
    if not state.bc.has_boundary_qunits:
        raise ValueError("state has no boundary qunits")
    rho = reduced_from_vector(state.amplitudes, state.subsystem_dims,
                              [0, len(state.subsystem_dims) - 1])
    return rho / np.trace(rho).real


_BC_CODES = {("open", None): 0, ("periodic", "conj-fund"): 1,
             ("periodic", "fund-conj"): 2, ("projected", None): 3}


def dump_state(state: DenseState, path: str | Path) -> None:
    """Binary cache: little-endian int64 header (n, N, bc, ndims, dims...),
    then interleaved little-endian float64 (re, im) amplitudes."""
    code = _BC_CODES[(state.bc.kind, state.bc.orientation)]
    dims = state.subsystem_dims
    header = struct.pack(f"<{4 + len(dims)}q", state.n, state.N, code, len(dims), *dims)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(state.amplitudes.astype("<c16").tobytes())


def load_state(path: str | Path) -> DenseState:
    raw = Path(path).read_bytes()
    n, N, code, ndims = struct.unpack_from("<4q", raw, 0)
    dims = struct.unpack_from(f"<{ndims}q", raw, 32)
    kind, orientation = {v: k for k, v in _BC_CODES.items()}[code]
    amps = np.frombuffer(raw, dtype="<c16", offset=32 + 8 * ndims)
    return DenseState(n, N, BoundaryCondition(kind, orientation), tuple(dims), amps.copy())
