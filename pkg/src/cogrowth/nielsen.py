"""Geodesic spanning trees, Schreier bases and the Nielsen linear system.

A Schreier basis read off a geodesic spanning tree of the core has the
Nielsen cancellation property, and for such a basis the series counting
reduced products that end in a fixed factor satisfy a linear system with
monomial coefficients. Solving it gives the cogrowth series independently
of any automaton.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Sequence

from .core import CoreGraph
from .exceptions import NotNielsenError
from .series import ONE, ZERO, Poly, RationalFunction, det
from .words import Word, alphabet, beta, concat_reduce, free_reduce, invert


@dataclass(frozen=True)
class SpanningTree:
    """BFS tree of the core: ``parent[v] = (u, x)`` means the tree edge u --x--> v."""

    root: int
    parent: dict
    depth: dict

    def path_from_root(self, v: int) -> Word:
        letters = []
        while v != self.root:
            u, x = self.parent[v]
            letters.append(x)
            v = u
        return tuple(reversed(letters))

    def contains(self, u: int, x: int, v: int) -> bool:
        """Whether the positive edge u --x--> v is a tree edge."""
        return self.parent.get(v) == (u, x) or self.parent.get(u) == (v, -x)


def geodesic_spanning_tree(c: CoreGraph) -> SpanningTree:
    parent: dict[int, tuple[int, int]] = {}
    depth = {c.root: 0}
    queue = deque([c.root])
    letters = alphabet(c.rank)
    while queue:
        u = queue.popleft()
        for x in letters:
            v = c.step(u, x)
            if v is None or v in depth:
                continue
            depth[v] = depth[u] + 1
            parent[v] = (u, x)
            queue.append(v)
    return SpanningTree(c.root, parent, depth)


def schreier_generators(c: CoreGraph, tree: SpanningTree | None = None) -> list[Word]:
    """One free generator per positive edge outside the tree.

    For the edge e = u --x--> v the generator is
    ``red(path(root -> u) . x . path(root -> v)^-1)``.
    """
    if tree is None:
        tree = geodesic_spanning_tree(c)
    gens = []
    for u, x, v in c.edges:
        if tree.contains(u, x, v):
            continue
        w = tree.path_from_root(u) + (x,) + invert(tree.path_from_root(v))
        gens.append(free_reduce(w))
    return gens


def check_nielsen(words: Sequence[Sequence[int]]) -> bool:
    """Test the two Nielsen cancellation conditions on ``words``.

    (1) |uv| >= |u| and |uv| >= |v| whenever u != v^-1;
    (2) |uvw| > |u| - |v| + |w| whenever u != v^-1 and v != w^-1,
    for u, v, w ranging over the words and their inverses.
    """
    pool: list[Word] = []
    for w in words:
        w = tuple(w)
        if not w or free_reduce(w) != w:
            return False
        pool.append(w)
        pool.append(invert(w))
    for u, v in cartesian(pool, repeat=2):
        if u == invert(v):
            continue
        n = len(concat_reduce(u, v))
        if n < len(u) or n < len(v):
            return False
    for u, v, w in cartesian(pool, repeat=3):
        if u == invert(v) or v == invert(w):
            continue
        if len(concat_reduce(concat_reduce(u, v), w)) <= len(u) - len(v) + len(w):
            return False
    return True


def _factors(basis: Sequence[Word]) -> list[Word]:
    """w_1, w_1^-1, w_2, w_2^-1, ... in the order of the unknowns."""
    out = []
    for w in basis:
        out.append(tuple(w))
        out.append(invert(w))
    return out


def nielsen_matrix(basis: Sequence[Sequence[int]]) -> tuple[list[list[Poly]], list[Poly]]:
    """The matrix B and right-hand side Z of the system B Y = Z.

    Row (i, e), column (j, e'): ``delta - z^(|w_i^e| - beta(w_j^e', w_i^e))``,
    except that the entry is 0 when w_j^e' is the inverse of w_i^e, since a
    reduced product never has a factor followed by its own inverse.
    """
    factors = _factors(basis)
    b: list[list[Poly]] = []
    rhs: list[Poly] = []
    for r, wi in enumerate(factors):
        row = []
        for s, wj in enumerate(factors):
            if wj == invert(wi):
                entry = ZERO
            else:
                entry = -Poly.monomial(len(wi) - beta(wj, wi))
            if r == s:
                entry = entry + ONE
            row.append(entry)
        b.append(row)
        rhs.append(Poly.monomial(len(wi)))
    return b, rhs


def nielsen_cogrowth(basis: Sequence[Sequence[int]], check: bool = True) -> RationalFunction:
    """Cogrowth series from a Nielsen basis by Cramer's rule.

    Returns ``1 + sum over unknowns of det(B with column k replaced by Z) / det B``.
    """
    basis = [tuple(w) for w in basis]
    if check and not check_nielsen(basis):
        raise NotNielsenError("generating set does not have the Nielsen property")
    if not basis:
        return RationalFunction(1)
    b, rhs = nielsen_matrix(basis)
    denominator = det(b)
    if denominator.is_zero():
        raise ArithmeticError("the Nielsen system is singular")
    numerator = denominator
    for k in range(len(b)):
        replaced = [row[:k] + [rhs[i]] + row[k + 1 :] for i, row in enumerate(b)]
        numerator = numerator + det(replaced)
    return RationalFunction(numerator, denominator)
