"""Recursive recognition of contractible graphs, d-spheres and d-graphs.

Definitions (all inductive, on finite simple graphs):

* ``G`` is *contractible* if it is a single vertex, or some vertex ``v`` has a
  contractible unit sphere and ``G - v`` is contractible.
* The empty graph is the (-1)-sphere. For ``d >= 0``, ``G`` is a *d-sphere* if
  every unit sphere is a (d-1)-sphere and ``G - v`` is contractible for a
  vertex ``v``.
* ``G`` is a *d-graph* if it is connected and every unit sphere is a
  (d-1)-sphere.

Every graph met during the recursion is an induced subgraph of the graph we
started from, so a vertex bitmask identifies it exactly. Results are memoised
on that mask.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from .graph import Graph, clique_sum, iter_bits, mask_connected

DEFAULT_NODE_BUDGET = int(os.environ.get("HOPFGRAPH_NODE_BUDGET", 2_000_000))


class UndecidedBudget(RuntimeError):
    """The recursion needed more nodes than the configured budget."""


@dataclass(frozen=True)
class TopologyReport:
    kind: str  # "contractible", "d-graph", "d-sphere"
    dim: int | None
    holds: bool
    witness: list = field(default_factory=list)

    def to_json(self, G: Graph) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "holds": self.holds,
            "witness": [G.labels[v] for v in self.witness],
        }


class Recognizer:
    """Memoised recognition on the induced subgraphs of one ambient graph."""

    def __init__(self, G: Graph, *, memo: bool = True, exhaustive: bool = False,
                 node_budget: int | None = None):
        self.G = G
        self.masks = G.masks
        self.memo = memo
        self.exhaustive = exhaustive
        self.node_budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
        self.nodes = 0
        self._contractible: dict[int, int | None] = {}  # mask -> next vertex to remove, None if false
        self._sphere: dict[tuple[int, int], int | None] = {}  # (mask, d) -> failing vertex or -1 if true

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise UndecidedBudget(f"recognition exceeded node budget {self.node_budget}")

    # contractibility ----------------------------------------------------

    def contractible(self, mask: int) -> bool:
        return self._contract_step(mask) is not None

    def _contract_step(self, mask: int) -> int | None:
        """Vertex whose removal continues a collapse of ``mask``, or None.

        For a single vertex the vertex itself is returned.
        """
        if self.memo and mask in self._contractible:
            return self._contractible[mask]
        self._tick()
        res = self._contract_search(mask)
        if self.memo:
            self._contractible[mask] = res
        return res

    def _contract_search(self, mask: int) -> int | None:
        if not mask:
            return None
        if mask & (mask - 1) == 0:
            return mask.bit_length() - 1
        masks = self.masks
        # contractible graphs have chi = 1
        if clique_sum(masks, mask) != 1:
            return None
        # a cone collapses onto its apex
        for v in iter_bits(mask):
            if masks[v] & mask == mask ^ (1 << v):
                return (mask ^ (1 << v)).bit_length() - 1
        for v in iter_bits(mask):
            if self.contractible(masks[v] & mask) and self.contractible(mask ^ (1 << v)):
                return v
        return None

    def collapse_order(self, mask: int) -> list[int] | None:
        if self._contract_step(mask) is None:
            return None
        order = []
        while mask:
            v = self._contract_step(mask)
            order.append(v)
            mask ^= 1 << v
        return order

    # spheres and d-graphs ----------------------------------------------

    def sphere_failure(self, mask: int, d: int) -> int | None:
        """None if ``mask`` induces a d-sphere, else a witness vertex (-1 if none applies)."""
        key = (mask, d)
        if self.memo and key in self._sphere:
            return self._sphere[key]
        self._tick()
        res = self._sphere_search(mask, d)
        if self.memo:
            self._sphere[key] = res
        return res

    def _sphere_search(self, mask: int, d: int) -> int | None:
        masks = self.masks
        if d < -1:
            return -1
        if d == -1:
            return None if mask == 0 else mask.bit_length() - 1
        if not mask:
            return -1
        if d >= 1 and not mask_connected(masks, mask):
            return -1
        if clique_sum(masks, mask) != 1 + (-1) ** d:
            return -1
        for v in iter_bits(mask):
            if self.sphere_failure(masks[v] & mask, d - 1) is not None:
                return v
        if self.exhaustive:
            for v in iter_bits(mask):
                if not self.contractible(mask ^ (1 << v)):
                    return v
            return None
        low = mask & -mask
        if not self.contractible(mask ^ low):
            return low.bit_length() - 1
        return None

    def dgraph_failure(self, mask: int, d: int) -> int | None:
        masks = self.masks
        if not mask or d < 0 or not mask_connected(masks, mask):
            return -1
        for v in iter_bits(mask):
            if self.sphere_failure(masks[v] & mask, d - 1) is not None:
                return v
        return None


def is_contractible(G: Graph, **kw) -> bool:
    return Recognizer(G, **kw).contractible(G.vmask)


def collapse_order(G: Graph, **kw) -> list[int] | None:
    """Removal order witnessing contractibility (last entry is the surviving vertex)."""
    return Recognizer(G, **kw).collapse_order(G.vmask)


def is_dsphere(G: Graph, d: int, **kw) -> bool:
    return Recognizer(G, **kw).sphere_failure(G.vmask, d) is None


def is_dgraph(G: Graph, d: int, **kw) -> bool:
    return Recognizer(G, **kw).dgraph_failure(G.vmask, d) is None


def check(G: Graph, kind: str, d: int | None = None, **kw) -> TopologyReport:
    """Run one recognizer and package the answer with its witness."""
    rec = Recognizer(G, **kw)
    if kind == "contractible":
        order = rec.collapse_order(G.vmask)
        return TopologyReport("contractible", None, order is not None, order or [])
    if d is None:
        raise ValueError(f"{kind} check needs a dimension")
    if kind == "sphere":
        bad = rec.sphere_failure(G.vmask, d)
        return TopologyReport("d-sphere", d, bad is None, [] if bad is None or bad < 0 else [bad])
    if kind == "dgraph":
        bad = rec.dgraph_failure(G.vmask, d)
        return TopologyReport("d-graph", d, bad is None, [] if bad is None or bad < 0 else [bad])
    raise ValueError(f"unknown kind {kind!r}")


def replay_collapse(G: Graph, order: list[int]) -> bool:
    """Check a collapse order step by step, independently of the memo."""
    if not order or sorted(order) != list(G.vertices):
        return False
    mask = G.vmask
    for v in order[:-1]:
        link = G.masks[v] & mask
        if not Recognizer(G, memo=False).contractible(link):
            return False
        mask ^= 1 << v
    return mask == 1 << order[-1]
