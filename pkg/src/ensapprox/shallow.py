"""One-hidden-layer product approximators built from subset-sign units.

The monomial network for prod_{i<=d} x_i has one unit per variable subset
S: its input weights are -1 on S and +1 elsewhere, its argument is scaled
by a small lambda, and its output weight is

    v_S = (-1)^{|S|} / (2^d * d! * c_d * lambda^d)

with c_d the activation's d-th Taylor coefficient at the expansion point.
Expanding every unit and summing, all Taylor orders below d cancel by an
inclusion-exclusion pairing, order d leaves exactly the full product, and
the orders above d shrink like lambda^2, so the approximation error is
driven to zero by the lambda knob.  Networks for general cube functions
concatenate one such block per monomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import validation
from .activations import (
    ActivationSpec,
    DegenerateActivationError,
    eval_activation,
    taylor_coeffs,
)
from .multilinear import MAX_DIMENSION, MultilinearPoly, _check_dimension

DEFAULT_LAMBDA = 0.05

_MOD_P = 2_147_483_647  # prime < 2^31, keeps int64 products exact


def default_activation() -> ActivationSpec:
    return ActivationSpec.shifted_logistic()


@dataclass(frozen=True, eq=False)
class ShallowNetwork:
    """F(x) = offset + sum_i v_i * sigma(lambda * w_i . x + b_i).

    weights holds one sign row per unit (entries in {-1, 0, +1}; zeros mark
    variables a unit ignores, which only composite function networks use).
    """

    weights: np.ndarray       # (units, d)
    biases: np.ndarray        # (units,)
    out_weights: np.ndarray   # (units,)
    output_offset: float
    lam: float
    activation: ActivationSpec

    @property
    def unit_count(self) -> int:
        return self.weights.shape[0]

    @property
    def dimension(self) -> int:
        return self.weights.shape[1]

    def predict(self, X) -> np.ndarray:
        """Evaluate the network on each row of X."""
        X = validation.as_float_matrix(X, "X")
        if X.shape[1] != self.dimension:
            raise ValueError(f"X has {X.shape[1]} columns, network expects {self.dimension}")
        if self.unit_count == 0:
            return np.full(X.shape[0], self.output_offset)
        z = self.lam * (X @ self.weights.T) + self.biases
        return eval_activation(self.activation, z) @ self.out_weights + self.output_offset


@dataclass(frozen=True)
class RankCertificate:
    """Exact rank of the subset-product matrix of the unit input weights."""

    rank: int
    full_rank: bool
    rows: int
    units: int


def eval_shallow(net: ShallowNetwork, x) -> float:
    x = validation.as_float_vector(x, "x")
    return float(net.predict(x.reshape(1, -1))[0])


def _nonzero_taylor(activation: ActivationSpec, order: int) -> float:
    c = taylor_coeffs(activation, order)[order]
    if abs(c) <= 1e-12:
        raise DegenerateActivationError(
            f"Taylor coefficient c_{order} of {activation.kind!r} at offset "
            f"{activation.bias_offset} is zero; the order-{order} construction "
            f"divides by it (shift the expansion point)"
        )
    return c


def build_monomial_network(
    d: int,
    activation: ActivationSpec | None = None,
    lam: float = DEFAULT_LAMBDA,
) -> ShallowNetwork:
    """The 2^d-unit network approximating prod_{i<=d} x_i."""
    _check_dimension(d)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    if activation is None:
        activation = default_activation()
    c_d = _nonzero_taylor(activation, d)
    scale = 1.0 / (2**d * math.factorial(d) * c_d * lam**d)
    n = 1 << d
    masks = np.arange(n)
    weights = np.empty((n, d))
    for i in range(d):
        weights[:, i] = np.where(masks & (1 << i), -1.0, 1.0)
    sizes = np.array([bin(m).count("1") for m in masks])
    out_weights = np.where(sizes % 2, -scale, scale)
    return ShallowNetwork(
        weights=weights,
        biases=np.zeros(n),
        out_weights=out_weights,
        output_offset=0.0,
        lam=lam,
        activation=activation,
    )


def build_function_network(
    poly: MultilinearPoly,
    activation: ActivationSpec | None = None,
    lam: float = DEFAULT_LAMBDA,
) -> ShallowNetwork:
    """Concatenate one monomial block per nonzero coefficient of poly.

    Each block is the |S|-variable monomial network embedded into the full
    input space (zero weight on unused variables) with its output weights
    scaled by v_S.  The empty-set coefficient needs no units and becomes
    the additive output offset.
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    if activation is None:
        activation = default_activation()
    d = poly.dimension
    offset = 0.0
    w_rows: list[np.ndarray] = []
    v_rows: list[np.ndarray] = []
    subsets = sorted(
        (S for S, v in poly.coeffs.items() if v != 0),
        key=lambda S: sum(1 << i for i in S),
    )
    for S in subsets:
        if not S:
            offset = float(poly.coeffs[S])
            continue
        members = sorted(S)
        k = len(members)
        try:
            c_k = _nonzero_taylor(activation, k)
        except DegenerateActivationError as err:
            raise DegenerateActivationError(f"subset of size {k}: {err}") from None
        scale = float(poly.coeffs[S]) / (2**k * math.factorial(k) * c_k * lam**k)
        for sub in range(1 << k):
            row = np.zeros(d)
            for pos, var in enumerate(members):
                row[var] = -1.0 if sub & (1 << pos) else 1.0
            w_rows.append(row)
            v_rows.append(scale * (-1.0) ** bin(sub).count("1"))
    n = len(w_rows)
    weights = np.array(w_rows) if n else np.zeros((0, d))
    return ShallowNetwork(
        weights=weights,
        biases=np.zeros(n),
        out_weights=np.array(v_rows),
        output_offset=offset,
        lam=lam,
        activation=activation,
    )


def _rank_mod_p(M: np.ndarray, p: int = _MOD_P) -> int:
    """Row rank of an integer matrix over GF(p), vectorized elimination."""
    M = np.array(M % p, dtype=np.int64)
    rows, cols = M.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(M[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, col]), p - 2, p)
        M[rank] = (M[rank] * inv) % p
        below = M[rank + 1 :, col].copy()
        M[rank + 1 :] = (M[rank + 1 :] - below[:, None] * M[rank]) % p
        rank += 1
    return rank


def _rank_exact(M: np.ndarray) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    m = [[int(v) for v in row] for row in M]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    prev = 1
    for col in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, rows):
            x = m[r][col]
            row, prow = m[r], m[rank]
            for c in range(col, cols):
                row[c] = (p * row[c] - x * prow[c]) // prev
        prev = p
        rank += 1
    return rank


def rank_certificate(net: ShallowNetwork) -> RankCertificate:
    """Exact rank of A with A[S, j] = prod_{i in S} w_j[i] over all subsets S.

    Full rank (2^d) certifies that the units' sign patterns span every
    monomial, i.e. no unit is redundant; any duplicated unit collapses two
    columns and drops the rank.  A mod-p elimination gives a fast sound
    certificate of full rank (rank never exceeds the rational rank); only
    deficient matrices fall through to exact integer elimination.
    """
    d = net.dimension
    _check_dimension(d)
    W = np.rint(net.weights)
    if np.max(np.abs(W - net.weights)) > 1e-9:
        raise ValueError("rank certificate needs integer sign weights")
    Wint = W.astype(np.int64)
    rows = 1 << d
    A = np.empty((rows, net.unit_count), dtype=np.int64)
    for mask in range(rows):
        members = [i for i in range(d) if mask & (1 << i)]
        A[mask] = np.prod(Wint[:, members], axis=1) if members else 1
    rank = _rank_mod_p(A)
    if rank < min(rows, net.unit_count):
        rank = _rank_exact(A)
    return RankCertificate(rank=rank, full_rank=rank == rows, rows=rows, units=net.unit_count)


def monomial_sup_error(predict, d: int, interior_samples: int = 256, seed: int = 0) -> float:
    """Sup of |predict(x) - prod x_i| over all cube vertices plus a seeded
    uniform sample of interior points."""
    if d < 1 or d > MAX_DIMENSION:
        raise ValueError(f"dimension must be in 1..{MAX_DIMENSION}")
    masks = np.arange(1 << d)
    verts = ((masks[:, None] >> np.arange(d)) & 1).astype(float)
    X = verts
    if interior_samples > 0:
        rng = np.random.default_rng(seed)
        X = np.vstack([verts, rng.random((interior_samples, d))])
    return float(np.max(np.abs(predict(X) - X.prod(axis=1))))
