"""Block entanglement of the SU(n) VBS chain: reduced-density spectra,
von Neumann / Renyi entropies and geometric entanglement per block."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log

import numpy as np

from .repn import check_rank
from .state import DenseState, build_dense_vbs, project_boundaries, reduced_density
from .tensor import hermitian_eigs
from .transfer import ModelParams, transfer_power


class UnsupportedBlockLength(ValueError):
    pass


def _check_length(L) -> int:
    if int(L) != L or L < 1:
        raise ValueError(f"block length must be an integer >= 1, got {L!r}")
    return int(L)


@dataclass(frozen=True)
class BlockSpectrum:
    """Reduced-density spectrum of a block of L sites in the infinite chain.

    One singlet eigenvalue and an (n^2 - 1)-fold adjoint eigenvalue.
    """

    n: int
    L: int
    p_exact: Fraction = field(init=False, repr=False)

    def __post_init__(self):
        check_rank(self.n)
        _check_length(self.L)
        object.__setattr__(self, "p_exact", Fraction(-1, self.n**2 - 1) ** self.L)

    @property
    def p(self) -> float:
        return float(self.p_exact)

    @property
    def lambda_singlet(self) -> float:
        return float((1 + (self.n**2 - 1) * self.p_exact) / self.n**2)

    @property
    def lambda_adjoint(self) -> float:
        return float((1 - self.p_exact) / self.n**2)

    @property
    def multiplicities(self) -> tuple[int, int]:
        return 1, self.n**2 - 1

    def eigenvalues(self) -> np.ndarray:
        return np.array([self.lambda_singlet] + [self.lambda_adjoint] * (self.n**2 - 1))


def block_spectrum_exact(n: int, L: int) -> BlockSpectrum:
    return BlockSpectrum(n, L)


def block_spectrum_from_transfer(n: int, L: int) -> np.ndarray:
    """Unit-trace spectrum of the UD-grouped A(L), descending."""
    evals = np.linalg.eigvalsh(transfer_power(n, L).ud())[::-1]
    return evals / evals.sum()


def _as_probs(spec) -> np.ndarray:
    if isinstance(spec, BlockSpectrum):
        return spec.eigenvalues()
    return np.asarray(spec, dtype=float)


def von_neumann(spec) -> float:
    """-sum p log p in nats, with 0 log 0 = 0."""
    lam = _as_probs(spec)
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log(lam)))


def renyi(spec, alpha: float) -> float:
    if alpha <= 0:
        raise ValueError(f"Renyi order must be positive, got {alpha}")
    if alpha == 1:
        return von_neumann(spec)
    lam = _as_probs(spec)
    lam = lam[lam > 0]
    return float(np.log(np.sum(lam**alpha)) / (1 - alpha))


@dataclass(frozen=True)
class EntropyReport:
    von_neumann: float
    renyi: dict[float, float]
    geometric_per_block: float | None


def entropy_report(n: int, L: int, alphas=(2, 3)) -> EntropyReport:
    spec = block_spectrum_exact(n, L)
    ge = geometric_entanglement_per_block(n, L) if L % 2 == 0 else None
    return EntropyReport(von_neumann(spec), {a: renyi(spec, a) for a in alphas}, ge)


def _geometric_closed_form(n: int, decay: float) -> float:
    # decay = exp(-L / xi_c); the formula is smooth in it
    return log(n) - log(1 + (n - 1) * decay)


def geometric_entanglement_per_block(n: int, L: int) -> float:
    """log n - log(1 + (n - 1) exp(-L / xi_c)), valid for even L only."""
    n = check_rank(n)
    if int(L) != L or L < 2 or L % 2:
        raise UnsupportedBlockLength(
            f"geometric entanglement per block needs an even L >= 2, got {L!r}; "
            "the closed form does not cover odd block lengths")
    decay = float(Fraction(1, n**2 - 1) ** int(L))
    return _geometric_closed_form(n, decay)


def block_overlap_functional(n: int, L: int, r: np.ndarray) -> float:
    """Contract A(L) with conj(r), r on the left legs and r, conj(r) on the right."""
    r = np.asarray(r, dtype=complex)
    if r.shape != (n,) or abs(np.linalg.norm(r) - 1) > 1e-12:
        raise ValueError("r must be a unit vector of dimension n")
    core = transfer_power(n, L).core.data
    val = np.einsum("abcd,a,b,c,d->", core, r.conj(), r, r, r.conj())
    return float(val.real)


def geometric_from_functional(n: int, L: int, r: np.ndarray) -> float:
    """-log(functional / lambda1^L): the per-block value implied by the overlap."""
    lam1 = float(ModelParams(n).lambda1_exact ** L)
    return -log(block_overlap_functional(n, L, r) / lam1)


def _random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


@dataclass
class ProductOptimizer:
    """Alternating maximization of |<b_1 (x) ... (x) b_m | psi>|^2 over block vectors.

    Each update replaces one block vector by the normalized contraction of
    psi with the conjugates of all others, which is the exact maximizer for
    that block with the others held fixed.
    """

    psi: np.ndarray
    block_dims: tuple[int, ...]
    seed: int = 0
    history: list[float] = field(default_factory=list)

    def __post_init__(self):
        self.psi = np.asarray(self.psi).reshape(self.block_dims)
        self.rng = np.random.default_rng(self.seed)
        self.vectors = [_random_unit(self.rng, d) for d in self.block_dims]

    def _environment(self, k: int) -> np.ndarray:
        t = self.psi
        # contract from the back so axis indices below k stay fixed
        for j in reversed(range(len(self.block_dims))):
            if j != k:
                t = np.tensordot(t, self.vectors[j].conj(), axes=([j], [0]))
        return t

    def overlap(self) -> float:
        t = self.psi
        for v in reversed(self.vectors):
            t = np.tensordot(t, v.conj(), axes=([t.ndim - 1], [0]))
        return float(abs(t) ** 2)

    def sweep(self) -> float:
        for k in range(len(self.block_dims)):
            env = self._environment(k)
            norm = np.linalg.norm(env)
            if norm == 0:
                raise ZeroDivisionError("vanishing partial overlap")
            self.vectors[k] = env / norm
        value = self.overlap()
        self.history.append(value)
        return value


def optimize_product_blocks(state: DenseState, L: int, max_sweeps: int = 200,
                            tol: float = 1e-12, seed: int = 0, max_restarts: int = 5):
    """Best squared overlap of the normalized state with a product of L-site blocks.

    Returns ``(overlap, block_vectors, history)``.
    """
    L = _check_length(L)
    if state.bc.has_boundary_qunits:
        raise ValueError("project the boundary qunits first (see project_boundaries)")
    if state.N % L:
        raise ValueError(f"block length {L} does not divide N = {state.N}")
    psi = state.normalized().amplitudes
    d = (state.n**2 - 1) ** L
    dims = (d,) * (state.N // L)
    for attempt in range(max_restarts):
        opt = ProductOptimizer(psi, dims, seed=seed + 7919 * attempt)
        try:
            best = opt.overlap()
            opt.history.append(best)
            for _ in range(max_sweeps):
                value = opt.sweep()
                if value - best < tol:
                    best = max(best, value)
                    break
                best = value
        except ZeroDivisionError:
            continue
        return best, opt.vectors, opt.history
    raise RuntimeError(f"optimizer hit a zero partial overlap in {max_restarts} restarts")


def finite_geometric_per_block(n: int, N: int, L: int, seed: int = 0,
                               max_sweeps: int = 200) -> float:
    """-log(best overlap) / (N / L) on an open chain whose boundary qunits are
    projected onto seeded random states."""
    rng = np.random.default_rng(seed)
    state = project_boundaries(build_dense_vbs(n, N), _random_unit(rng, n), _random_unit(rng, n))
    overlap, _, _ = optimize_product_blocks(state, L, max_sweeps=max_sweeps, seed=seed)
    return -log(overlap) / (N // L)


def block_spectrum_oracle(n: int, N: int, L: int, offset: int) -> np.ndarray:
    """Dense-chain spectrum of sites offset+1..offset+L, boundary qunits traced.

    Returns the n^2 largest eigenvalues, descending (the rest vanish).
    """
    if offset < 0 or offset + L > N:
        raise ValueError(f"block [{offset + 1}, {offset + L}] outside 1..{N}")
    rho = reduced_density(build_dense_vbs(n, N), (offset + 1, offset + L))
    spec, _ = hermitian_eigs(rho)
    return spec.expanded()[: n * n]
