"""Stallings folding and the core graph of a finitely generated subgroup.

The core is stored as a rooted graph whose edges carry positive labels; the
extended core (inverse edges added formally) is what every query walks, via
:meth:`CoreGraph.step` which accepts signed letters.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exceptions import TrivialSubgroupError
from .words import (
    Word,
    alphabet,
    check_letters,
    format_letter,
    free_reduce,
    invert,
    letter_key,
)


@dataclass
class PreGraph:
    """Unfolded labelled graph; several same-labelled edges may share an end."""

    rank: int
    vertex_count: int = 1
    root: int = 0
    edges: list[tuple[int, int, int]] = field(default_factory=list)

    def add_vertex(self) -> int:
        self.vertex_count += 1
        return self.vertex_count - 1

    def add_edge(self, u: int, x: int, v: int) -> None:
        """Add an edge u --x--> v; negative x is stored reversed and positive."""
        if x > 0:
            self.edges.append((u, x, v))
        else:
            self.edges.append((v, -x, u))


@dataclass(frozen=True)
class CoreGraph:
    """A folded rooted graph in canonical (BFS) vertex numbering, root 0.

    ``edges`` lists each positive edge ``(origin, letter, terminus)`` once.
    """

    rank: int
    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    root: int = 0
    _delta: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        delta: list[dict[int, int]] = [{} for _ in range(self.vertex_count)]
        for u, x, v in self.edges:
            if x <= 0 or x > self.rank:
                raise ValueError(f"bad edge label {x}")
            if x in delta[u] or -x in delta[v]:
                raise ValueError(f"graph is not folded at edge {(u, x, v)}")
            delta[u][x] = v
            delta[v][-x] = u
        object.__setattr__(self, "_delta", tuple(delta))

    def step(self, v: int, x: int) -> int | None:
        """Terminus of the x-edge leaving v in the extended core, if any."""
        return self._delta[v].get(x)

    def letters_at(self, v: int) -> list[int]:
        return sorted(self._delta[v], key=letter_key)

    def trace(self, w: Sequence[int], start: int | None = None) -> int | None:
        v = self.root if start is None else start
        for x in w:
            v = self._delta[v].get(x)
            if v is None:
                return None
        return v

    @property
    def is_trivial(self) -> bool:
        return not self.edges


def build_bouquet(rank: int, generators: Iterable[Sequence[int]]) -> PreGraph:
    """One cycle at the root per nontrivial generator, labelled by its letters."""
    g = PreGraph(rank)
    for w in generators:
        w = free_reduce(w, rank)
        if not w:
            continue
        prev = g.root
        for x in w[:-1]:
            nxt = g.add_vertex()
            g.add_edge(prev, x, nxt)
            prev = nxt
        g.add_edge(prev, w[-1], g.root)
    return g


def fold(g: PreGraph, rng: random.Random | None = None) -> CoreGraph:
    """Fold ``g`` completely and return the canonical core.

    Edges are inserted into a union-find structure; whenever a vertex acquires
    two edges with the same signed label their termini are queued for merging.
    Passing ``rng`` shuffles the insertion order, which must not change the
    result.
    """
    n = g.vertex_count
    parent = list(range(n))
    size = [1] * n
    out: list[dict[int, int]] = [{} for _ in range(n)]
    pending: deque[tuple[int, int]] = deque()

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def attach(u: int, x: int, v: int) -> None:
        w = out[u].get(x)
        if w is None:
            out[u][x] = v
        elif find(w) != find(v):
            pending.append((v, w))

    edges = list(g.edges)
    if rng is not None:
        rng.shuffle(edges)
    for u, x, v in edges:
        ru, rv = find(u), find(v)
        attach(ru, x, rv)
        attach(rv, -x, ru)
        while pending:
            a, b = pending.popleft()
            a, b = find(a), find(b)
            if a == b:
                continue
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            moved, out[b] = out[b], {}
            for y, t in moved.items():
                attach(a, y, find(t))

    return _canonical(g.rank, find(g.root), lambda v, x: _lookup(out, find, v, x))


def _lookup(out, find, v, x):
    t = out[v].get(x)
    return None if t is None else find(t)


def _canonical(rank: int, root: int, step, keep=None) -> CoreGraph:
    """Renumber vertices by BFS from ``root`` with canonical letter order."""
    letters = alphabet(rank)
    index = {root: 0}
    order = [root]
    edges = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for x in letters:
            t = step(v, x)
            if t is None or (keep is not None and t not in keep):
                continue
            if t not in index:
                index[t] = len(order)
                order.append(t)
                queue.append(t)
            if x > 0:
                edges.append((index[v], x, index[t]))
    edges.sort()
    return CoreGraph(rank, len(order), tuple(edges))


def core_of(rank: int, generators: Iterable[Sequence[int]]) -> CoreGraph:
    """Core graph of the subgroup generated by ``generators``."""
    return fold(build_bouquet(rank, generators))


def membership(c: CoreGraph, w: Sequence[int]) -> bool:
    """True iff the reduced word w represents an element of H."""
    return c.trace(w) == c.root


def extended_degree(c: CoreGraph, v: int) -> int:
    if not 0 <= v < c.vertex_count:
        raise IndexError(f"no vertex {v} in a core with {c.vertex_count} vertices")
    return len(c._delta[v])


def subgroup_index(c: CoreGraph) -> int | float:
    """[F_m : H] as an int, or ``math.inf`` for infinite index."""
    full = 2 * c.rank
    if all(len(d) == full for d in c._delta):
        return c.vertex_count
    return math.inf


def _rooted_isomorphic(c: CoreGraph, v: int) -> bool:
    # Labels are deterministic, so the only candidate map is forced.
    image = {c.root: v}
    queue = deque([c.root])
    while queue:
        u = queue.popleft()
        for x, t in c._delta[u].items():
            s = c._delta[image[u]].get(x)
            if s is None:
                return False
            if t in image:
                if image[t] != s:
                    return False
            else:
                image[t] = s
                queue.append(t)
    return len(set(image.values())) == len(image)


def is_normal(c: CoreGraph) -> bool:
    """True iff H is normal in F_m (regular core, every vertex a valid root)."""
    if subgroup_index(c) == math.inf:
        return False
    return all(_rooted_isomorphic(c, v) for v in range(c.vertex_count))


def is_conjugacy_reduced(c: CoreGraph) -> bool:
    if c.is_trivial:
        raise TrivialSubgroupError("conjugacy reducedness is undefined for the trivial subgroup")
    return extended_degree(c, c.root) >= 2


def conjugacy_reduce(c: CoreGraph) -> tuple[Word, CoreGraph]:
    """Return ``(g, core of g H g^-1)`` with the conjugate conjugacy reduced.

    The hanging path at a degree-one root is cut off; ``g`` is the inverse of
    the label of that path.
    """
    if c.is_trivial:
        raise TrivialSubgroupError("cannot conjugacy-reduce the trivial subgroup")
    tail: list[int] = []
    removed: set[int] = set()
    v = c.root
    came_from: int | None = None
    while True:
        exits = [x for x in c._delta[v] if x != came_from]
        if len(exits) != 1:
            break
        x = exits[0]
        removed.add(v)
        tail.append(x)
        v = c._delta[v][x]
        came_from = -x
    if not tail:
        return (), c
    keep = set(range(c.vertex_count)) - removed
    return invert(tail), _canonical(c.rank, v, c.step, keep)


def subgroup_rank(c: CoreGraph) -> int:
    """Rank of H as a free group: positive edges minus vertices plus one."""
    return len(c.edges) - c.vertex_count + 1


def enumerate_count(c: CoreGraph, n: int) -> int:
    """|H_n| by explicit depth-first enumeration of non-backtracking paths.

    This is deliberately exponential; it is the independent oracle that the
    matrix-based counts are checked against, so keep n small (n <= 12).
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n == 0:
        return 1
    delta = c._delta
    root = c.root
    # distance to the root bounds how soon a path can close up
    dist = _distances(c)
    total = 0
    stack = [(root, 0, 0)]  # (vertex, forbidden letter, depth)
    while stack:
        v, banned, depth = stack.pop()
        remaining = n - depth
        if remaining == 1:
            for x, t in delta[v].items():
                if x != banned and t == root:
                    total += 1
            continue
        for x, t in delta[v].items():
            if x != banned and dist[t] <= remaining - 1:
                stack.append((t, -x, depth + 1))
    return total


def _distances(c: CoreGraph) -> list[int]:
    dist = [c.vertex_count + 1] * c.vertex_count
    dist[c.root] = 0
    queue = deque([c.root])
    while queue:
        v = queue.popleft()
        for t in c._delta[v].values():
            if dist[t] > dist[v] + 1:
                dist[t] = dist[v] + 1
                queue.append(t)
    return dist


def to_dot(c: CoreGraph, name: str = "core") -> str:
    """Graphviz text for the core; one edge per positive letter."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(c.vertex_count):
        shape = "doublecircle" if v == c.root else "circle"
        lines.append(f'  v{v} [label="v{v}", shape={shape}];')
    for u, x, v in c.edges:
        lines.append(f'  v{u} -> v{v} [label="{format_letter(x, c.rank)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def edge_list(c: CoreGraph) -> list[list]:
    return [[u, format_letter(x, c.rank), v] for u, x, v in c.edges]


def validate_generators(rank: int, generators: Iterable[Sequence[int]]) -> list[Word]:
    out = []
    for w in generators:
        check_letters(w, rank)
        out.append(free_reduce(w))
    return out
