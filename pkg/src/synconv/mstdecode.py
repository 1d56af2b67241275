"""Head-probability normalization and maximum spanning arborescence decoding.

A score matrix holds, for every dependent token, the raw association score
of each candidate head (the virtual root plus every other token). Softmax
over a dependent's candidates turns scores into head probabilities;
Chu-Liu/Edmonds over the same scores finds the best tree. Decoding keeps
exactly one token attached to the virtual root so its output is always a
valid dependency tree.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .deptree import DepTree, Token


@dataclass(frozen=True)
class ScoreMatrix:
    """(n+1) x n head-selection scores.

    Row h (0 = virtual root), column d-1 for dependent d: the score of
    dependent d choosing head h. Cells with h == d are not candidate
    attachments and are held at -inf internally.
    """

    n: int
    scores: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least 1 token, got n={self.n}")
        arr = np.asarray(self.scores, dtype=float)
        if arr.shape != (self.n + 1, self.n):
            raise ValueError(f"scores must have shape {(self.n + 1, self.n)}, got {arr.shape}")
        arr = arr.copy()
        for d in range(1, self.n + 1):
            arr[d, d - 1] = -math.inf
        bad = ~np.isfinite(arr)
        for d in range(1, self.n + 1):
            bad[d, d - 1] = False
        if bad.any():
            raise ValueError("score matrix has non-finite admissible entries")
        arr.setflags(write=False)
        object.__setattr__(self, "scores", arr)

    @classmethod
    def from_json(cls, text: str) -> ScoreMatrix:
        """Load `{"n": N, "scores": [[...], ...]}`; null marks excluded cells."""
        data = json.loads(text)
        if not isinstance(data, dict) or "n" not in data or "scores" not in data:
            raise ValueError("score matrix JSON needs keys 'n' and 'scores'")
        n = data["n"]
        if not isinstance(n, int):
            raise ValueError(f"'n' must be an integer, got {n!r}")
        rows = data["scores"]
        cleaned = [[(-math.inf if cell is None else float(cell)) for cell in row]
                   for row in rows]
        return cls(n=n, scores=np.array(cleaned, dtype=float))


def head_probabilities(m: ScoreMatrix) -> np.ndarray:
    """Per-dependent softmax over admissible heads.

    Column d-1 holds P(head = h) for dependent d; each column sums to 1.
    The max score is subtracted before exponentiation so large scores
    cannot overflow.
    """
    probs = np.zeros_like(m.scores)
    for d in range(1, m.n + 1):
        col = m.scores[:, d - 1]
        admissible = np.isfinite(col)
        shifted = col[admissible] - col[admissible].max()
        weights = np.exp(shifted)
        probs[admissible, d - 1] = weights / weights.sum()
    return probs


def mst_decode(m: ScoreMatrix) -> list[int]:
    """Best single-root arborescence; entry d-1 is dependent d's head.

    Runs Chu-Liu/Edmonds unconstrained first; if that leaves more than one
    token on the virtual root, re-solves once per candidate root child with
    the other root attachments removed and keeps the best total.
    """
    nodes = list(range(m.n + 1))
    edges: dict[tuple[int, int], float] = {}
    for d in range(1, m.n + 1):
        for h in range(m.n + 1):
            if h == d:
                continue
            edges[(h, d)] = float(m.scores[h, d - 1])
    parent = _best_arborescence(nodes, edges, root=0)
    root_children = [v for v, u in parent.items() if u == 0]
    if len(root_children) > 1:
        parent = _best_single_root(nodes, edges, m.n)
    return [parent[d] for d in range(1, m.n + 1)]


def heads_to_tree(heads: list[int], forms: list[str] | None = None,
                  meta: dict[str, str] | None = None) -> DepTree:
    """Skeleton tree from a decoded head list (forms default to w1..wN)."""
    n = len(heads)
    if forms is None:
        forms = [f"w{i}" for i in range(1, n + 1)]
    if len(forms) != n:
        raise ValueError(f"{n} heads but {len(forms)} forms")
    tokens = tuple(
        Token(id=i, form=forms[i - 1], lemma=None, upos="X", feats={},
              head=heads[i - 1], deprel="root" if heads[i - 1] == 0 else "dep")
        for i in range(1, n + 1))
    return DepTree(tokens=tokens, meta=dict(meta or {}))


def _best_single_root(nodes: list[int], edges: dict[tuple[int, int], float],
                      n: int) -> dict[int, int]:
    best_parent: dict[int, int] | None = None
    best_total = -math.inf
    for candidate in range(1, n + 1):
        trial = {(u, v): w for (u, v), w in edges.items()
                 if u != 0 or v == candidate}
        parent = _best_arborescence(nodes, trial, root=0)
        total = sum(trial[(u, v)] for v, u in parent.items())
        if total > best_total:
            best_total = total
            best_parent = parent
    assert best_parent is not None
    return best_parent


def _best_arborescence(nodes: list[int], edges: dict[tuple[int, int], float],
                       root: int) -> dict[int, int]:
    """Chu-Liu/Edmonds by cycle contraction; returns child -> parent."""
    best_in: dict[int, tuple[int, float]] = {}
    for v in nodes:
        if v == root:
            continue
        best_u = -1
        best_w = -math.inf
        for u in nodes:
            if u == v:
                continue
            w = edges.get((u, v))
            if w is None:
                continue
            # strict > keeps the lowest head index on ties (ascending scan)
            if w > best_w:
                best_u, best_w = u, w
        if best_u < 0:
            raise ValueError(f"node {v} has no incoming edge")
        best_in[v] = (best_u, best_w)

    cycle = _find_cycle(best_in, root)
    if cycle is None:
        return {v: u for v, (u, _) in best_in.items()}

    cyc_set = set(cycle)
    c_id = max(nodes) + 1
    new_nodes = [x for x in nodes if x not in cyc_set] + [c_id]
    new_edges: dict[tuple[int, int], float] = {}
    enter_via: dict[int, int] = {}  # outside head u -> cycle node its edge breaks at
    leave_via: dict[int, int] = {}  # outside dependent v -> cycle node heading it
    for (u, v), w in edges.items():
        if u in cyc_set and v in cyc_set:
            continue
        if v in cyc_set:
            adjusted = w - best_in[v][1]
            key = (u, c_id)
            if key not in new_edges or adjusted > new_edges[key]:
                new_edges[key] = adjusted
                enter_via[u] = v
        elif u in cyc_set:
            key = (c_id, v)
            if key not in new_edges or w > new_edges[key]:
                new_edges[key] = w
                leave_via[v] = u
        else:
            new_edges[(u, v)] = w

    contracted = _best_arborescence(new_nodes, new_edges, root)

    parent: dict[int, int] = {}
    for v, u in contracted.items():
        if v == c_id:
            break_at = enter_via[u]
            parent[break_at] = u
            for x in cyc_set:
                if x != break_at:
                    parent[x] = best_in[x][0]
        elif u == c_id:
            parent[v] = leave_via[v]
        else:
            parent[v] = u
    return parent


def _find_cycle(best_in: dict[int, tuple[int, float]], root: int) -> list[int] | None:
    color: dict[int, int] = {}  # 0 in progress, 1 done
    for start in best_in:
        if color.get(start) == 1:
            continue
        path = []
        node = start
        while node != root and color.get(node) is None:
            color[node] = 0
            path.append(node)
            node = best_in[node][0]
        if node != root and color.get(node) == 0:
            return path[path.index(node):]
        for x in path:
            color[x] = 1
    return None
