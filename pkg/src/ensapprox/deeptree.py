"""Tree-composed product networks: O(d) units instead of 2^d.

A product of d inputs factors into d-1 pairwise products arranged as a
binary tree, and each pairwise product only needs the 4-unit two-variable
monomial network.  A balanced tree keeps the composition depth at
ceil(log2 d) gadget levels; a chain stretches it to d-1 levels.  Either
way the unit total is 4*(d-1), which is the whole point of going deep.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import validation
from .activations import ActivationSpec
from .shallow import ShallowNetwork, build_monomial_network

TOPOLOGIES = ("balanced", "chain")


@dataclass(frozen=True, eq=False)
class DeepNetwork:
    """Binary tree of two-input product gadgets over d leaf inputs.

    nodes lists (left, right) child references in evaluation order:
    a reference below dimension is a leaf index, otherwise it points at
    node (reference - dimension).  The root is the last node.  All nodes
    share one gadget since every pairwise product is the same function.
    """

    dimension: int
    topology: str
    nodes: tuple[tuple[int, int], ...]
    gadget: ShallowNetwork
    ensemble_layers: int  # gadget levels on the longest leaf-to-root path

    @property
    def internal_nodes(self) -> int:
        return len(self.nodes)

    @property
    def unit_count(self) -> int:
        return len(self.nodes) * self.gadget.unit_count

    @property
    def layer_count_with_leaves(self) -> int:
        """Depth counted the other common way, with the leaf level included."""
        return self.ensemble_layers + 1

    def predict(self, X) -> np.ndarray:
        X = validation.as_float_matrix(X, "X")
        if X.shape[1] != self.dimension:
            raise ValueError(f"X has {X.shape[1]} columns, network expects {self.dimension}")
        values = [X[:, i] for i in range(self.dimension)]
        for left, right in self.nodes:
            pair = np.stack([values[left], values[right]], axis=1)
            values.append(self.gadget.predict(pair))
        return values[-1]


class UnitCountRow(NamedTuple):
    d: int
    shallow_units: int
    deep_units: int
    shallow_layers: int
    deep_layers_balanced: int


def eval_deep(net: DeepNetwork, x) -> float:
    x = validation.as_float_vector(x, "x")
    return float(net.predict(x.reshape(1, -1))[0])


def build_deep_monomial_network(
    d: int,
    activation: ActivationSpec | None = None,
    lam: float = 0.05,
    topology: str = "balanced",
) -> DeepNetwork:
    """Compose build_monomial_network(2, ...) gadgets along a tree over d leaves.

    Balanced trees put the largest full power-of-two subtree on the left,
    so non-power-of-two widths pack their extra leaves leftward and the
    depth is exactly ceil(log2 d).  Chains fold left to right with depth
    d-1.
    """
    if d < 2:
        raise ValueError("deep product networks need dimension >= 2")
    if topology not in TOPOLOGIES:
        raise ValueError(f"unknown topology {topology!r}; choose from {TOPOLOGIES}")
    gadget = build_monomial_network(2, activation, lam)
    nodes: list[tuple[int, int]] = []
    depths: dict[int, int] = {}

    def add_node(left: int, right: int) -> int:
        nodes.append((left, right))
        ref = d + len(nodes) - 1
        depths[ref] = 1 + max(depths.get(left, 0), depths.get(right, 0))
        return ref

    if topology == "balanced":

        def build(lo: int, hi: int) -> int:
            n = hi - lo
            if n == 1:
                return lo
            half = 1 << ((n - 1).bit_length() - 1)
            return add_node(build(lo, lo + half), build(lo + half, hi))

        root = build(0, d)
    else:
        root = 0
        for leaf in range(1, d):
            root = add_node(root, leaf)
    return DeepNetwork(
        dimension=d,
        topology=topology,
        nodes=tuple(nodes),
        gadget=gadget,
        ensemble_layers=depths[root],
    )


def unit_count_comparison(d_values: Iterable[int]) -> tuple[UnitCountRow, ...]:
    """Side-by-side unit and layer counts: 2^d flat versus 4(d-1) in a tree."""
    rows = []
    for d in d_values:
        if d < 2:
            raise ValueError("comparison rows need dimension >= 2")
        rows.append(
            UnitCountRow(
                d=d,
                shallow_units=2**d,
                deep_units=4 * (d - 1),
                shallow_layers=1,
                deep_layers_balanced=(d - 1).bit_length(),  # == ceil(log2 d)
            )
        )
    return tuple(rows)
