"""Sigmoidal activation functions and their local Taylor structure.

A sigmoidal function tends to 1 at +infinity and 0 at -infinity; the kinds
here are additionally bounded by a constant B and nondecreasing.  The
constructive network builders need the Taylor coefficients of the activation
at its expansion point, so this module computes them exactly through the
derivative recurrence of the logistic family rather than by symbolic or
numeric differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

SMOOTH_KINDS = ("logistic", "shifted-logistic", "hyperbolic-sigmoid")
KINDS = SMOOTH_KINDS + ("hard-threshold",)

# Every smooth kind satisfies s' = rate * s * (1 - s) for its own rate
# constant, which is what makes the derivative recurrence exact.
_RATE = {"logistic": 1, "shifted-logistic": 1, "hyperbolic-sigmoid": 2}


class DegenerateActivationError(ValueError):
    """A construction required a Taylor coefficient that is zero."""


@dataclass(frozen=True)
class ActivationSpec:
    """An activation curve plus the offset at which it is expanded.

    ``bias_offset`` is added inside the argument, so the curve evaluated at
    u is really the base curve at u + bias_offset.  The shifted-logistic
    kind exists because the plain logistic, centered at 0, has vanishing
    even-order coefficients; expanding at offset 1 makes every order
    generically nonzero, which the product constructions depend on.
    """

    kind: str = "logistic"
    bias_offset: float = 0.0
    bound: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown activation kind {self.kind!r}; choose from {KINDS}")
        if not self.bound > 0:
            raise ValueError("bound must be positive")

    @classmethod
    def logistic(cls, bias_offset: float = 0.0) -> "ActivationSpec":
        return cls("logistic", bias_offset)

    @classmethod
    def shifted_logistic(cls, bias_offset: float = 1.0) -> "ActivationSpec":
        return cls("shifted-logistic", bias_offset)

    @classmethod
    def hyperbolic_sigmoid(cls, bias_offset: float = 0.0) -> "ActivationSpec":
        return cls("hyperbolic-sigmoid", bias_offset)

    @classmethod
    def hard_threshold(cls, bias_offset: float = 0.0) -> "ActivationSpec":
        return cls("hard-threshold", bias_offset)


@dataclass(frozen=True)
class TaylorCoeffs:
    """Coefficients c_0..c_K of the activation's Taylor series at u = 0."""

    coefficients: tuple[float, ...]

    def __getitem__(self, k: int) -> float:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class SigmoidalCheck:
    passed: bool
    upper_gap: float
    lower_gap: float
    max_abs: float
    bound: float
    tol: float


@dataclass(frozen=True)
class LimitProbeResult:
    """Probe values along a steepness schedule plus the classified limit."""

    values: tuple[tuple[float, float], ...]
    case: str  # "positive" | "negative" | "hyperplane"
    limit_value: float


def eval_activation(spec: ActivationSpec, u):
    """Evaluate the activation at u (scalar or array)."""
    z = np.asarray(u, dtype=float) + spec.bias_offset
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if spec.kind == "hard-threshold":
        out = (z > 0).astype(float)
    elif spec.kind == "hyperbolic-sigmoid":
        out = 0.5 * (1.0 + np.tanh(z))
    else:
        # split by sign so the exponential never overflows
        out = np.empty_like(z)
        pos = z >= 0
        out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
        ez = np.exp(z[~pos])
        out[~pos] = ez / (1.0 + ez)
    return float(out[0]) if scalar else out


def _derivative_polynomials(order: int, rate: int) -> list[list[int]]:
    """Integer polynomials P_k with sigma^(k)(u) = P_k(sigma(u)).

    P_0(s) = s and P_{k+1}(s) = P_k'(s) * rate * s * (1 - s), which follows
    from the chain rule and s' = rate * s * (1 - s).  Coefficients stay
    integers, so the only rounding in the whole pipeline is the final
    evaluation at the expansion value.
    """
    polys = [[0, 1]]
    for _ in range(order):
        prev = polys[-1]
        deriv = [i * c for i, c in enumerate(prev)][1:]
        nxt = [0] * (len(deriv) + 2)
        for i, c in enumerate(deriv):
            nxt[i + 1] += rate * c
            nxt[i + 2] -= rate * c
        polys.append(nxt)
    return polys


def taylor_coeffs(spec: ActivationSpec, order: int) -> TaylorCoeffs:
    """Taylor coefficients c_k = sigma^(k)(0) / k! for k = 0..order.

    With bias_offset 0 the expansion value is exactly 1/2 and the
    computation runs in exact rational arithmetic, so coefficients that
    vanish by symmetry come out as exact zeros.
    """
    if spec.kind not in SMOOTH_KINDS:
        raise ValueError(f"Taylor coefficients are undefined for kind {spec.kind!r}")
    if order < 0:
        raise ValueError("order must be >= 0")
    polys = _derivative_polynomials(order, _RATE[spec.kind])
    if spec.bias_offset == 0:
        s0: Union[Fraction, float] = Fraction(1, 2)
    else:
        s0 = eval_activation(spec, 0.0)
    out = []
    for k, poly in enumerate(polys):
        acc: Union[Fraction, float] = poly[-1]
        for c in reversed(poly[:-1]):
            acc = acc * s0 + c
        if isinstance(acc, Fraction):
            acc = Fraction(acc, math.factorial(k))
        else:
            acc = acc / math.factorial(k)
        out.append(float(acc))
    return TaylorCoeffs(tuple(out))


def check_sigmoidal_bounded(
    spec_or_fn: Union[ActivationSpec, Callable[[float], float]],
    U: float = 50.0,
    tol: float = 1e-6,
    samples: int = 2001,
    bound: float | None = None,
) -> SigmoidalCheck:
    """Numerically verify the limit and boundedness requirements.

    Passes iff the value at +U is within tol of 1, the value at -U is
    within tol of 0, and |value| never exceeds the bound on a grid over
    [-U, U].  Accepts a raw callable (with an explicit bound) so that
    non-sigmoidal functions can be shown to fail.
    """
    if not U > 0:
        raise ValueError("probe magnitude U must be positive")
    if isinstance(spec_or_fn, ActivationSpec):
        fn = lambda u: eval_activation(spec_or_fn, u)
        B = spec_or_fn.bound if bound is None else bound
    else:
        fn = spec_or_fn
        B = 1.0 if bound is None else bound
    grid = np.linspace(-U, U, samples)
    vals = np.array([fn(float(u)) for u in grid])
    upper_gap = abs(fn(U) - 1.0)
    lower_gap = abs(fn(-U))
    max_abs = float(np.max(np.abs(vals)))
    passed = upper_gap <= tol and lower_gap <= tol and max_abs <= B
    return SigmoidalCheck(passed, upper_gap, lower_gap, max_abs, B, tol)


def discriminatory_limit_probe(
    spec: ActivationSpec,
    w: Sequence[float],
    w0: float,
    phi: float,
    lambda_schedule: Sequence[float],
    x: Sequence[float],
) -> LimitProbeResult:
    """Evaluate sigma(lambda * (w.x + w0) + phi) along a steepness schedule.

    As lambda grows the values converge to 1 where w.x + w0 > 0, to 0 where
    it is negative, and sit at sigma(phi) exactly on the hyperplane.  The
    classified case reports which of the three regimes applies to x.
    """
    w = np.asarray(w, dtype=float)
    x = np.asarray(x, dtype=float)
    if w.shape != x.shape or w.ndim != 1:
        raise ValueError(f"w and x must be 1-d vectors of equal length, got {w.shape} and {x.shape}")
    lambdas = [float(l) for l in lambda_schedule]
    if not lambdas:
        raise ValueError("lambda schedule must be non-empty")
    if any(l <= 0 for l in lambdas):
        raise ValueError("lambda schedule must be positive")
    if any(b >= a for a, b in zip(lambdas[1:], lambdas)):
        raise ValueError("lambda schedule must be strictly increasing")
    t = float(w @ x) + w0
    values = tuple((l, eval_activation(spec, l * t + phi)) for l in lambdas)
    if t > 0:
        case, limit = "positive", 1.0
    elif t < 0:
        case, limit = "negative", 0.0
    else:
        case, limit = "hyperplane", eval_activation(spec, phi)
    return LimitProbeResult(values, case, limit)
