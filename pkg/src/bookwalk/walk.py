"""Typed similarity queries by truncated lazy random walk.

The knowledge graph becomes a Markov chain: from a node, first pick one of
its outgoing edge labels uniformly, then pick a target of that label
uniformly.  A lazy walk stops at each step with probability ``gamma``; node
scores are the stop probabilities accumulated over steps ``1..d_max``:

    Q(z) = gamma * sum_{d=1}^{d_max} (1 - gamma)^d * P_d(z)

where ``P_d`` is the seed distribution propagated ``d`` steps.  Nodes with no
outgoing edges retain the walker, so total stop mass is exactly
``gamma * sum_d (1 - gamma)^d`` for every seed and chain.

Propagation is dense-vector against a sparse transition matrix; results are
deterministic for fixed inputs (fixed summation order, canonical tie-breaks).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .graph import KnowledgeGraph, NodeRef, kind_of

DEFAULT_GAMMA = 0.5
DEFAULT_D_MAX = 10


@dataclass(frozen=True)
class WalkParams:
    """Stopping probability in (0, 1] and maximum step count >= 1."""

    gamma: float = DEFAULT_GAMMA
    d_max: int = DEFAULT_D_MAX

    def __post_init__(self):
        if not (0.0 < self.gamma <= 1.0):
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")
        if self.d_max < 1:
            raise ValueError(f"d_max must be >= 1, got {self.d_max}")


@dataclass(frozen=True)
class SeedDistribution:
    """Sparse initial distribution over nodes; positive weights summing to 1."""

    weights: dict[NodeRef, float]

    def __post_init__(self):
        if not self.weights:
            raise ValueError("empty seed distribution")
        if any(w <= 0 for w in self.weights.values()):
            raise ValueError("seed weights must be positive")
        total = sum(self.weights.values())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"seed weights sum to {total}, expected 1")


def seed_from_nodes(nodes: list[NodeRef]) -> SeedDistribution:
    """Uniform weight per occurrence; duplicates accumulate.

    Parameters
    ----------
    nodes : list of NodeRef
        Non-empty; ``[a, a, b]`` yields ``{a: 2/3, b: 1/3}``.
    """
    if not nodes:
        raise ValueError("cannot build a seed distribution from no nodes")
    share = 1.0 / len(nodes)
    weights: dict[NodeRef, float] = {}
    for ref in nodes:
        weights[ref] = weights.get(ref, 0.0) + share
    return SeedDistribution(weights)


class WalkChain:
    """Markov chain over a knowledge graph.

    Holds a dense node indexing, per-node label-grouped adjacency and the
    sparse column-stochastic propagation matrix ``M`` with
    ``M[z, x] = T(z | x)``.  Immutable after construction; safe to query
    concurrently.
    """

    def __init__(self, g: KnowledgeGraph):
        self.refs: list[NodeRef] = sorted(g.nodes)
        self.index: dict[NodeRef, int] = {ref: i for i, ref in enumerate(self.refs)}
        self.adjacency: list[list[tuple[str, list[int]]]] = []
        n = len(self.refs)
        self.dangling = np.zeros(n, dtype=bool)
        rows: list[int] = []
        cols: list[int] = []
        vals: list[float] = []
        for x, ref in enumerate(self.refs):
            labels = sorted(g.out_labels(ref))
            row: list[tuple[str, list[int]]] = []
            if not labels:
                self.dangling[x] = True
                rows.append(x)
                cols.append(x)
                vals.append(1.0)
            else:
                label_share = 1.0 / len(labels)
                for label in labels:
                    targets = [self.index[y] for y in g.neighbors(ref, label)]
                    row.append((label, targets))
                    w = label_share / len(targets)
                    for y in targets:
                        rows.append(y)
                        cols.append(x)
                        vals.append(w)
            self.adjacency.append(row)
        self._matrix = sparse.csr_matrix(
            (vals, (rows, cols)), shape=(n, n), dtype=np.float64
        )
        self._matrix.sum_duplicates()

    @property
    def size(self) -> int:
        return len(self.refs)

    def __contains__(self, ref: NodeRef) -> bool:
        return ref in self.index

    def seed_vector(self, seed: SeedDistribution) -> np.ndarray:
        """Dense vector for a seed distribution; unknown nodes are an error."""
        v = np.zeros(self.size)
        for ref, w in seed.weights.items():
            i = self.index.get(ref)
            if i is None:
                raise ValueError(f"seed node {ref} is not in the chain")
            v[i] = w
        return v


def build_chain(g: KnowledgeGraph) -> WalkChain:
    """Chain over every node of ``g``; run after inverse materialization so
    every relation is walkable in both directions."""
    return WalkChain(g)


def transition(chain: WalkChain, x: NodeRef) -> dict[NodeRef, float]:
    """One-step transition probabilities out of ``x``.

    Returns
    -------
    dict mapping NodeRef to probability
        ``T(y|x) = sum_l (1/|L(x)|) * (1/|Y(x,l)|)`` over labels ``l`` with
        ``y in Y(x, l)``; ``{x: 1.0}`` when ``x`` has no outgoing edges.
    """
    i = chain.index.get(x)
    if i is None:
        raise ValueError(f"unknown node {x}")
    if chain.dangling[i]:
        return {x: 1.0}
    row = chain.adjacency[i]
    label_share = 1.0 / len(row)
    out: dict[NodeRef, float] = {}
    for _label, targets in row:
        w = label_share / len(targets)
        for y in targets:
            ref = chain.refs[y]
            out[ref] = out.get(ref, 0.0) + w
    return out


def step_distribution(chain: WalkChain, dist: np.ndarray) -> np.ndarray:
    """Propagate a distribution (or sub-distribution) one step; mass preserved."""
    dist = np.asarray(dist, dtype=np.float64)
    if dist.shape != (chain.size,):
        raise ValueError(f"distribution has shape {dist.shape}, chain has {chain.size} nodes")
    return chain._matrix @ dist


@dataclass
class StopDistribution:
    """Per-node stop probabilities of a truncated lazy walk."""

    chain: WalkChain
    scores: np.ndarray = field(repr=False)

    def total_mass(self) -> float:
        return float(self.scores.sum())

    def score(self, ref: NodeRef) -> float:
        i = self.chain.index.get(ref)
        return float(self.scores[i]) if i is not None else 0.0

    def as_dict(self) -> dict[NodeRef, float]:
        return {
            ref: float(s)
            for ref, s in zip(self.chain.refs, self.scores)
            if s > 0.0
        }


def lazy_walk(
    chain: WalkChain, seed: SeedDistribution, params: WalkParams = WalkParams()
) -> StopDistribution:
    """Stop distribution of the lazy walk from ``seed``.

    The sum starts at ``d = 1``: a seed node scores only through paths that
    return to it.  Linear in the seed distribution.
    """
    v = chain.seed_vector(seed)
    scores = np.zeros(chain.size)
    continue_mass = 1.0
    for _ in range(params.d_max):
        v = step_distribution(chain, v)
        continue_mass *= 1.0 - params.gamma
        scores += params.gamma * continue_mass * v
    return StopDistribution(chain, scores)


@dataclass(frozen=True)
class RankedResult:
    """Ranked nodes of one container kind, scores strictly non-increasing."""

    entries: list[tuple[NodeRef, float]]
    target_kind: str

    def refs(self) -> list[NodeRef]:
        return [ref for ref, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def typed_query(
    chain: WalkChain,
    seed: SeedDistribution,
    target_kind: str,
    k: int = 10,
    params: WalkParams = WalkParams(),
) -> RankedResult:
    """Top-``k`` nodes of ``target_kind`` by stop probability.

    Zero-score nodes are excluded; ties break on canonical node order, so
    identical inputs always yield the identical ranking.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    stop = lazy_walk(chain, seed, params)
    candidates = [
        (ref, float(score))
        for ref, score in zip(chain.refs, stop.scores)
        if score > 0.0 and kind_of(ref) == target_kind
    ]
    candidates.sort(key=lambda item: (-item[1], item[0]))
    return RankedResult(candidates[:k], target_kind)
