"""Walk graphs of index-sequence pairs and their classification.

A pair of length-p sequences (i, alpha) encodes a closed walk that
alternates between row labels alpha_u and column labels i_u: one *down*
edge alpha_u -> i_u and one *up* edge i_u -> alpha_{u+1} per position,
with the wrap-around alpha_{p+1} = alpha_1. The alpha-labels and the
i-labels live in disjoint vertex namespaces, so the graph is bipartite.
Edge multiplicities between a vertex pair determine whether an expected
trace contribution survives, which is what the classification below
captures.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .sequences import Canon, canonicalize, is_crossing

EdgeKey = tuple[int, int]  # (alpha-value, i-value)


class GraphClass(Enum):
    PAIRED = "paired"
    SINGLE = "single"
    OTHER = "other"


@dataclass(frozen=True)
class WalkGraph:
    """Edge multiset of the closed walk defined by (i, alpha)."""

    alpha: Canon
    i_seq: Canon
    down: dict[EdgeKey, int]  # multiplicity of alpha_u -> i_u edges
    up: dict[EdgeKey, int]    # multiplicity of i_u -> alpha_{u+1} edges

    @property
    def p(self) -> int:
        return len(self.alpha)

    def edge_keys(self) -> list[EdgeKey]:
        return sorted(set(self.down) | set(self.up))


def build_graph(i_seq: Iterable[int], alpha: Iterable[int]) -> WalkGraph:
    """Count down and up edge multiplicities for the walk of (i, alpha)."""
    i_seq = tuple(i_seq)
    alpha = tuple(alpha)
    if len(i_seq) != len(alpha):
        raise ValueError(
            f"sequence lengths differ: i has {len(i_seq)}, alpha has {len(alpha)}"
        )
    p = len(alpha)
    down: Counter[EdgeKey] = Counter()
    up: Counter[EdgeKey] = Counter()
    for u in range(p):
        down[(alpha[u], i_seq[u])] += 1
        up[(alpha[(u + 1) % p], i_seq[u])] += 1
    return WalkGraph(alpha, i_seq, dict(down), dict(up))


def classify(g: WalkGraph) -> GraphClass:
    """Paired, Single, or Other, by up/down multiplicity differences.

    Paired: every vertex pair has equally many up and down edges.
    Single: some vertex pair's counts differ by exactly one (this takes
    precedence when pairs differing by one and by more both occur; either
    way one unmatched factor kills the expectation).
    Other: differences exist but none equals one, e.g. two same-direction
    coincident edges.
    """
    diffs = [abs(g.up.get(kv, 0) - g.down.get(kv, 0)) for kv in g.edge_keys()]
    if all(d == 0 for d in diffs):
        return GraphClass.PAIRED
    if 1 in diffs:
        return GraphClass.SINGLE
    return GraphClass.OTHER


def _glued_is_tree(keys: list[EdgeKey], r: int, s: int) -> bool:
    # keys are the glued undirected edges; a connected graph on r+s
    # vertices with r+s-1 edges is a tree
    if len(keys) != r + s - 1:
        return False
    adj: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for a, v in keys:
        adj.setdefault(("a", a), []).append(("i", v))
        adj.setdefault(("i", v), []).append(("a", a))
    if len(adj) != r + s:
        return False
    seen = set()
    stack = [next(iter(adj))]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        stack.extend(adj[node])
    return len(seen) == r + s


def is_delta1(i_seq: Iterable[int], alpha: Iterable[int]) -> bool:
    """True iff the walk graph glues to a tree with every edge doubled once.

    Each (alpha-value, i-value) pair must carry exactly one down and one
    up edge, and the glued undirected graph must be a tree, which forces
    p+1 total vertices: r distinct i-values plus s distinct alpha-values
    with r + s = p + 1.
    """
    g = build_graph(i_seq, alpha)
    keys = g.edge_keys()
    for kv in keys:
        if g.down.get(kv, 0) != 1 or g.up.get(kv, 0) != 1:
            return False
    r = len(set(g.i_seq))
    s = len(set(g.alpha))
    if r + s != g.p + 1:
        return False
    return _glued_is_tree(keys, r, s)


def delta1_partner(alpha: Iterable[int]) -> Canon | None:
    """The unique i-sequence forming a glued tree with alpha, if one exists.

    For a non-crossing canonical alpha with s distinct values this returns
    the single canonical i with p+1-s distinct values and is_delta1(i,
    alpha) true; for a crossing alpha it returns None. Built by the
    recursive split-and-glue construction rather than by search.
    """
    alpha = canonicalize(alpha)
    if is_crossing(alpha):
        return None
    return _partner(alpha)


def _partner(alpha: Canon) -> Canon:
    # alpha is canonical and non-crossing throughout the recursion
    p = len(alpha)
    if p == 1:
        return (1,)
    repeats = [u for u in range(1, p) if alpha[u] == alpha[0]]
    if repeats:
        # split at a repeat of alpha_1; the two halves share only the
        # alpha_1 vertex (a shared second value would be a crossing), so
        # their partners glue with disjoint i-values
        j = repeats[0] + 1  # 1-based split position
        i1 = _partner(canonicalize(alpha[: j - 1]))
        i2 = _partner(canonicalize(alpha[j - 1:]))
        shift = max(i1)
        return i1 + tuple(v + shift for v in i2)
    occ2 = [u for u in range(2, p) if alpha[u] == alpha[1]]
    if not occ2:
        # alpha_1 and alpha_2 both unique: drop position 2 and hang its
        # vertex off a fresh leading i-vertex shared with position 1
        beta = canonicalize((alpha[0],) + alpha[2:])
        return (1,) + _partner(beta)
    # alpha_2 repeats: split between its first and LAST occurrence. Any
    # earlier occurrence would leave alpha_2's value on both sides of the
    # split and break the vertex count r + s = p + 1.
    k = occ2[-1] + 1  # 1-based position of the last occurrence
    i1 = _partner(canonicalize(alpha[1: k - 1]))
    i2 = _partner(canonicalize((alpha[0],) + alpha[k:]))
    shift = max(i1)
    i2_shifted = tuple(v if v == 1 else v + shift for v in i2)
    return (1,) + tuple(v + 1 for v in i1) + i2_shifted


def paired_partners(alpha: Iterable[int], r: int) -> list[Canon]:
    """All i-sequences with r distinct values whose walk graph is paired.

    Constructed as images of the tree partner under block-label maps: for
    each partition of {1, ..., p+1-s} into r blocks, relabel the partner's
    values by their block. The image count is S(p+1-s, r); r beyond
    p+1-s gives an empty list. Crossing alpha raises ValueError.
    """
    from .sequences import enumerate_partitions

    alpha = canonicalize(alpha)
    if not 1 <= r <= len(alpha):
        raise ValueError(f"r={r} outside 1..{len(alpha)}")
    base = delta1_partner(alpha)
    if base is None:
        raise ValueError(f"alpha={alpha} is crossing; paired partners need a tree partner")
    q = max(base)  # p + 1 - s
    out = []
    for pi in enumerate_partitions(q, r):
        # base lists values in first-appearance order and blocks are
        # numbered by least element, so the image is already canonical
        out.append(tuple(pi[v - 1] for v in base))
    return sorted(out)


@dataclass(frozen=True)
class ConsecutivePair:
    """Two same-direction coincident edges with nothing between them."""

    direction: str  # "down" or "up"
    edge: EdgeKey
    positions: tuple[int, int]  # 1-based walk positions

    @property
    def distance(self) -> int:
        return self.positions[1] - self.positions[0]


def count_consecutive_violations(g: WalkGraph) -> ConsecutivePair | None:
    """Smallest-distance pair of consecutive same-direction edges, if any.

    Two coincident edges of the same direction are *consecutive* when no
    other edge between the same vertex pair occurs between them along the
    walk (down edge u sits at slot 2u-1, up edge u at slot 2u). Tree
    partners and simple paired graphs have none; same-orientation doubled
    edges always produce one, which makes this the standard diagnostic
    for Other-class graphs.
    """
    p = g.p
    timeline: dict[EdgeKey, list[tuple[int, str, int]]] = {}
    for u in range(1, p + 1):
        a_down = g.alpha[u - 1]
        a_up = g.alpha[u % p]
        v = g.i_seq[u - 1]
        timeline.setdefault((a_down, v), []).append((2 * u - 1, "down", u))
        timeline.setdefault((a_up, v), []).append((2 * u, "up", u))
    best: ConsecutivePair | None = None
    for key, events in timeline.items():
        events.sort()
        for (s1, d1, u1), (s2, d2, u2) in zip(events, events[1:]):
            if d1 != d2:
                continue
            cand = ConsecutivePair(d1, key, (u1, u2))
            if best is None or cand.distance < best.distance:
                best = cand
    return best


def dump_graph(g: WalkGraph) -> str:
    """One-line diagnostic record: alpha, i, class, edge multiset."""
    edges = " ".join(
        f"({a},{v}):down={g.down.get((a, v), 0)},up={g.up.get((a, v), 0)}"
        for a, v in g.edge_keys()
    )
    label = classify(g).value
    return f"alpha={g.alpha} i={g.i_seq} class={label} edges={edges}"
