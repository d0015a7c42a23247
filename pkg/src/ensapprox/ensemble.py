"""Majority ensembles of independent unit models: theory and trainable parts.

For n independent units that each err with probability epsilon < 1/2, the
majority vote errs with probability

    sum_{k=0}^{floor(n/2)} C(n,k) (1-epsilon)^k epsilon^(n-k)
        <= exp(-n (1-2 epsilon)^2 / 2),

where k counts the units that got it right.  Ties (even n, exactly half
correct) are counted as ensemble errors, which keeps the sum an upper
bound and matches the simulator.  The trainable half of the module holds
the logistic unit model and the small stacked combiner that replaces the
vote with a learned layer; both train by plain full-batch gradient descent
with seed-derived initialization so runs are bit-reproducible.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from . import validation
from .activations import ActivationSpec
from .datasets import Dataset

_LOG_SPACE_THRESHOLD = 60  # C(n,k) overflows comfort well before float64 does
_INIT_SCALE = 0.1


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    trials: int
    std_error: float


@dataclass(frozen=True)
class ErrorBoundReport:
    n: int
    epsilon: float
    exact_tail: float
    hoeffding: float
    monte_carlo: Optional[MonteCarloResult] = None


def majority_vote(unit_outputs: Sequence[int]):
    """Plurality label; ties break toward the smallest label.

    On binary outputs this is the strict-majority rule with ties going to
    0, the conservative choice the error tail assumes.
    """
    if len(unit_outputs) == 0:
        raise ValueError("majority_vote needs at least one unit output")
    counts = Counter(unit_outputs)
    return min(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def _validate_rate(epsilon: float, upper: float) -> None:
    if not 0 <= epsilon <= upper:
        raise ValueError(f"epsilon must be in [0, {upper}], got {epsilon}")


def exact_error_tail(n: int, epsilon: float) -> float:
    """Majority-error probability sum, exact for odd n (ties count as error).

    Direct summation with exact binomial coefficients for small n; for
    n > 60 the terms are accumulated in log space to dodge overflow.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _validate_rate(epsilon, 1.0)
    if epsilon == 0.0:
        return 0.0
    if epsilon == 1.0:
        return 1.0
    half = n // 2
    if n <= _LOG_SPACE_THRESHOLD:
        return float(
            sum(math.comb(n, k) * (1 - epsilon) ** k * epsilon ** (n - k) for k in range(half + 1))
        )
    log_eps = math.log(epsilon)
    log_1m = math.log1p(-epsilon)
    logs = [
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1) + k * log_1m + (n - k) * log_eps
        for k in range(half + 1)
    ]
    top = max(logs)
    return float(math.exp(top) * sum(math.exp(l - top) for l in logs))


def hoeffding_bound(n: int, epsilon: float) -> float:
    """exp(-n (1-2 epsilon)^2 / 2); only meaningful below the coin-flip rate."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= epsilon < 0.5:
        raise ValueError(f"hoeffding_bound requires 0 <= epsilon < 0.5, got {epsilon}")
    return math.exp(-n * (1 - 2 * epsilon) ** 2 / 2)


def simulate_independent_ensemble(
    n: int, epsilon: float, trials: int, seed: int = 0
) -> MonteCarloResult:
    """Monte Carlo majority-error frequency for n independent epsilon-coins.

    Trials are partitioned into chunks with independently derived seeds and
    the error counts merged, so the estimate is reproducible and the chunks
    could run in parallel.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _validate_rate(epsilon, 1.0)
    majority_errors = (n + 1) // 2  # even n: exactly half wrong already errs
    chunk = 1 << 16
    n_chunks = (trials + chunk - 1) // chunk
    failures = 0
    done = 0
    for child in np.random.SeedSequence(seed).spawn(n_chunks):
        size = min(chunk, trials - done)
        errs = np.random.default_rng(child).random((size, n)) < epsilon
        failures += int(np.count_nonzero(errs.sum(axis=1) >= majority_errors))
        done += size
    estimate = failures / trials
    std_error = math.sqrt(estimate * (1 - estimate) / trials)
    return MonteCarloResult(estimate=estimate, trials=trials, std_error=std_error)


def error_bound_report(
    n: int, epsilon: float, trials: Optional[int] = None, seed: int = 0
) -> ErrorBoundReport:
    if not 0 <= epsilon < 0.5:
        raise ValueError(f"bound reports require 0 <= epsilon < 0.5, got {epsilon}")
    mc = simulate_independent_ensemble(n, epsilon, trials, seed) if trials else None
    return ErrorBoundReport(
        n=n,
        epsilon=epsilon,
        exact_tail=exact_error_tail(n, epsilon),
        hoeffding=hoeffding_bound(n, epsilon),
        monte_carlo=mc,
    )


def _stable_sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def unit_loss_and_gradient(weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray):
    """Mean cross-entropy of sigma(X w + b) against y, with its gradient."""
    z = X @ weights + bias
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z))
    residual = _stable_sigmoid(z) - y
    grad_w = X.T @ residual / len(y)
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


class LogisticUnit(BaseEstimator, ClassifierMixin):
    """Binary logistic unit model trained by full-batch gradient descent.

    The learning rate halves whenever a step would increase the loss and
    the step is rejected, so the recorded loss history is non-increasing.
    Equal seeds give bit-identical parameters.
    """

    def __init__(self, epochs: int = 300, learning_rate: float = 1.0, seed: int = 0):
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.seed = seed

    def fit(self, X, y):
        X = validation.as_float_matrix(X, "X")
        y = validation.as_label_vector(y, "y")
        validation.check_consistent_length(X, y)
        validation.check_binary_labels(y)
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        yf = y.astype(float)
        rng = np.random.default_rng(self.seed)
        w = rng.uniform(-_INIT_SCALE, _INIT_SCALE, X.shape[1])
        b = float(rng.uniform(-_INIT_SCALE, _INIT_SCALE))
        lr = float(self.learning_rate)
        loss, grad_w, grad_b = unit_loss_and_gradient(w, b, X, yf)
        self._check_finite(loss)
        history = [loss]
        for _ in range(self.epochs):
            new_w = w - lr * grad_w
            new_b = b - lr * grad_b
            new_loss, new_gw, new_gb = unit_loss_and_gradient(new_w, new_b, X, yf)
            self._check_finite(new_loss)
            if new_loss > loss:
                lr *= 0.5
            else:
                w, b, loss = new_w, new_b, new_loss
                grad_w, grad_b = new_gw, new_gb
            history.append(loss)
        self.weights_ = w
        self.bias_ = b
        self.loss_history_ = tuple(history)
        self.activation_ = ActivationSpec.logistic()
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def _check_finite(self, loss: float) -> None:
        if not math.isfinite(loss):
            raise RuntimeError(f"training diverged (non-finite loss) for unit seed {self.seed}")

    def decision_function(self, X) -> np.ndarray:
        X = validation.as_float_matrix(X, "X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, model expects {self.n_features_in_}")
        return X @ self.weights_ + self.bias_

    def predict_proba(self, X) -> np.ndarray:
        p = _stable_sigmoid(self.decision_function(X))
        return np.column_stack([1.0 - p, p])

    def predict(self, X) -> np.ndarray:
        return (self.decision_function(X) >= 0.0).astype(int)


def train_logistic_unit(
    dataset: Dataset, epochs: int = 300, learning_rate: float = 1.0, seed: int = 0
) -> LogisticUnit:
    if not dataset.is_binary:
        raise ValueError("logistic unit models need binary labels")
    return LogisticUnit(epochs=epochs, learning_rate=learning_rate, seed=seed).fit(
        dataset.X, dataset.y
    )


def mlp_loss_and_gradient(weights, biases, U: np.ndarray, Y: np.ndarray):
    """Softmax cross-entropy of a sigmoid-hidden MLP, with full gradients.

    weights/biases list the layers in order; Y is one-hot.  Returns
    (loss, grad_weights, grad_biases) with gradients matching shapes.
    """
    acts = [U]
    h = U
    for W, b in zip(weights[:-1], biases[:-1]):
        h = _stable_sigmoid(h @ W + b)
        acts.append(h)
    z = h @ weights[-1] + biases[-1]
    z = z - z.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(z).sum(axis=1, keepdims=True))
    loss = float(-np.mean(((z - log_norm) * Y).sum(axis=1)))
    delta = (np.exp(z - log_norm) - Y) / len(U)
    grad_w = [np.empty(0)] * len(weights)
    grad_b = [np.empty(0)] * len(biases)
    for layer in range(len(weights) - 1, -1, -1):
        grad_w[layer] = acts[layer].T @ delta
        grad_b[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ weights[layer].T) * acts[layer] * (1.0 - acts[layer])
    return loss, grad_w, grad_b


class StackedCombiner(BaseEstimator, ClassifierMixin):
    """Small feed-forward combiner mapping n unit outputs to class scores.

    Default architecture is one sigmoid hidden layer of width 2n feeding a
    softmax output; training is plain gradient descent with the same
    halve-on-increase schedule as the unit model.
    """

    def __init__(
        self,
        hidden: Optional[Sequence[int]] = None,
        epochs: int = 300,
        learning_rate: float = 1.0,
        seed: int = 0,
    ):
        self.hidden = hidden
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.seed = seed

    def fit(self, U, y):
        U = validation.as_float_matrix(U, "unit_outputs")
        y = validation.as_label_vector(y, "labels")
        validation.check_consistent_length(U, y, "unit_outputs, labels")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        classes = np.unique(y)
        if len(classes) < 2:
            raise ValueError("combiner training needs at least two distinct labels")
        n_units = U.shape[1]
        hidden = [2 * n_units] if self.hidden is None else [int(h) for h in self.hidden]
        if any(h < 1 for h in hidden):
            raise ValueError("hidden widths must be >= 1")
        sizes = [n_units] + hidden + [len(classes)]
        rng = np.random.default_rng(self.seed)
        weights = [rng.uniform(-_INIT_SCALE, _INIT_SCALE, (a, b)) for a, b in zip(sizes, sizes[1:])]
        biases = [rng.uniform(-_INIT_SCALE, _INIT_SCALE, b) for b in sizes[1:]]
        Y = (y[:, None] == classes[None, :]).astype(float)
        lr = float(self.learning_rate)
        loss, grad_w, grad_b = mlp_loss_and_gradient(weights, biases, U, Y)
        self._check_finite(loss)
        history = [loss]
        for _ in range(self.epochs):
            new_w = [W - lr * g for W, g in zip(weights, grad_w)]
            new_b = [b - lr * g for b, g in zip(biases, grad_b)]
            new_loss, new_gw, new_gb = mlp_loss_and_gradient(new_w, new_b, U, Y)
            self._check_finite(new_loss)
            if new_loss > loss:
                lr *= 0.5
            else:
                weights, biases, loss = new_w, new_b, new_loss
                grad_w, grad_b = new_gw, new_gb
            history.append(loss)
        self.weights_ = tuple(weights)
        self.biases_ = tuple(biases)
        self.hidden_ = tuple(hidden)
        self.classes_ = classes
        self.loss_history_ = tuple(history)
        self.n_features_in_ = n_units
        return self

    def _check_finite(self, loss: float) -> None:
        if not math.isfinite(loss):
            raise RuntimeError(f"training diverged (non-finite loss) for combiner seed {self.seed}")

    def predict_proba(self, U) -> np.ndarray:
        U = validation.as_float_matrix(U, "unit_outputs")
        if U.shape[1] != self.n_features_in_:
            raise ValueError(f"unit_outputs has {U.shape[1]} columns, model expects {self.n_features_in_}")
        h = U
        for W, b in zip(self.weights_[:-1], self.biases_[:-1]):
            h = _stable_sigmoid(h @ W + b)
        z = h @ self.weights_[-1] + self.biases_[-1]
        z = z - z.max(axis=1, keepdims=True)
        ez = np.exp(z)
        return ez / ez.sum(axis=1, keepdims=True)

    def predict(self, U) -> np.ndarray:
        # argmax takes the first maximum, so score ties break toward the
        # smaller class label
        return self.classes_[np.argmax(self.predict_proba(U), axis=1)]


def train_stacked_combiner(
    unit_outputs,
    labels,
    hidden: Optional[Sequence[int]] = None,
    epochs: int = 300,
    learning_rate: float = 1.0,
    seed: int = 0,
) -> StackedCombiner:
    return StackedCombiner(
        hidden=hidden, epochs=epochs, learning_rate=learning_rate, seed=seed
    ).fit(unit_outputs, labels)
