"""Transfer matrix of the SU(n) valence bond solid chain.

The 4-leg transfer tensor carries axes ``lu, ld, ru, rd`` (left/right,
ket-layer up / bra-layer down), each of dimension n.  Two groupings matter:

* LR: rows (lu, ld), cols (ru, rd).  Powers, norms and correlators live here.
* UD: rows (lu, ru), cols (ld, rd).  Its spectrum is the block entanglement
  spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

import numpy as np

from .repn import adjoint_action, adjoint_projector, check_rank, lie_generators
from .tensor import SpectralForm, Tensor, matricize

AXES = ("lu", "ld", "ru", "rd")
LR = (("lu", "ld"), ("ru", "rd"))
UD = (("lu", "ru"), ("ld", "rd"))


@dataclass(frozen=True)
class ModelParams:
    n: int

    def __post_init__(self):
        check_rank(self.n)

    @property
    def lambda1_exact(self) -> Fraction:
        return Fraction(self.n**2 - 1, self.n**2)

    @property
    def lambda2_exact(self) -> Fraction:
        return Fraction(-1, self.n**2)

    @property
    def lambda1(self) -> float:
        return float(self.lambda1_exact)

    @property
    def lambda2(self) -> float:
        return float(self.lambda2_exact)

    @property
    def xi_c(self) -> float:
        return 1.0 / log(self.n**2 - 1)


@dataclass(frozen=True)
class TransferMatrix:
    core: Tensor
    n: int
    power: int = 1

    def lr(self) -> np.ndarray:
        return matricize(self.core, *LR)

    def ud(self) -> np.ndarray:
        return matricize(self.core, *UD)

    @classmethod
    def from_lr(cls, m: np.ndarray, n: int, power: int = 1) -> "TransferMatrix":
        legs = [(a, n) for a in AXES]
        return cls(Tensor.from_matrix(m, legs[:2], legs[2:]), n, power)


def omega(n: int) -> np.ndarray:
    """Dominant LR eigenvector: the normalized identity on (lu, ld)."""
    return np.eye(n, dtype=complex).reshape(-1) / np.sqrt(n)


def transfer_single(n: int) -> TransferMatrix:
    """A(1)[a, a', b, b'] = d(a,a') d(b,b') / n - d(a,b) d(a',b') / n^2."""
    n = check_rank(n)
    d = np.eye(n)
    core = (np.einsum("ij,kl->ijkl", d, d) / n
            - np.einsum("ik,jl->ijkl", d, d) / n**2)
    return TransferMatrix(Tensor(AXES, core), n, 1)


def double_layer(n: int, op: np.ndarray | None = None) -> TransferMatrix:
    """Ket/bra contraction of the on-site projector with an optional operator.

    A_op[f, f', c, c'] = (1/n) <f' c'| W op W |f c>, with the 1/n carried by
    one normalized bond singlet per site.
    """
    n = check_rank(n)
    w = adjoint_projector(n)
    m = w if op is None else w @ op @ w
    # rows of m index the bra layer (f', c'), columns the ket layer (f, c)
    t = m.reshape(n, n, n, n)  # [f', c', f, c]
    core = t.transpose(2, 0, 3, 1)  # [f, f', c, c'] = [lu, ld, ru, rd]
    return TransferMatrix(Tensor(AXES, core / n), n, 1)


def lr_spectrum(n: int) -> SpectralForm:
    p = ModelParams(n)
    return SpectralForm(((p.lambda1, 1), (p.lambda2, n * n - 1)))


def transfer_power(n: int, L: int) -> TransferMatrix:
    """A(L) = lambda1^L P_omega + lambda2^L (I - P_omega) in the LR grouping."""
    n = check_rank(n)
    if int(L) != L or L < 1:
        raise ValueError(f"block length must be an integer >= 1, got {L!r}")
    p = ModelParams(n)
    l1 = float(p.lambda1_exact ** L)
    l2 = float(p.lambda2_exact ** L)
    w = omega(n)
    proj = np.outer(w, w.conj())
    m = l1 * proj + l2 * (np.eye(n * n) - proj)
    return TransferMatrix.from_lr(m, n, int(L))


def correlation_length(n: int) -> float:
    return ModelParams(n).xi_c


def chain_norm(n: int, N: int, bc: str = "open") -> float:
    """Squared norm of the N-site chain.

    periodic: Tr A(N) = lambda1^N + (n^2-1) lambda2^N.
    open: (1/n) <vec I| A(N) |vec I>, which with normalized singlets and
    free boundary qunits equals lambda1^N.
    """
    n = check_rank(n)
    if int(N) != N or N < 1:
        raise ValueError(f"chain length must be an integer >= 1, got {N!r}")
    a = transfer_power(n, N).lr()
    if bc == "periodic":
        return float(np.trace(a).real)
    if bc == "open":
        vec_i = np.eye(n).reshape(-1)
        return float((vec_i @ a @ vec_i).real / n)
    raise ValueError(f"bc must be 'open' or 'periodic', got {bc!r}")


def site_operator(n: int, a: int) -> np.ndarray:
    gens = lie_generators(n)
    if int(a) != a or not 0 <= a < len(gens):
        raise IndexError(f"generator index {a} out of range 0..{len(gens) - 1}")
    return adjoint_action(gens[a])


def one_point(n: int, a: int) -> float:
    w = omega(n)
    ao = double_layer(n, site_operator(n, a)).lr()
    return float((w.conj() @ ao @ w).real / ModelParams(n).lambda1)


def connected_correlator(n: int, a: int, b: int, d: int) -> float:
    """<O^a_i O^b_{i+d}> - <O^a><O^b> in the infinite chain."""
    n = check_rank(n)
    if int(d) != d or d < 1:
        raise ValueError(f"distance must be an integer >= 1, got {d!r}")
    w = omega(n)
    lam1 = ModelParams(n).lambda1
    oa = double_layer(n, site_operator(n, a)).lr()
    ob = double_layer(n, site_operator(n, b)).lr()
    mid = np.linalg.matrix_power(transfer_single(n).lr() / lam1, d - 1)
    two = (w.conj() @ oa @ mid @ ob @ w) / lam1**2
    return float(two.real) - one_point(n, a) * one_point(n, b)
