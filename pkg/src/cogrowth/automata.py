"""Finite automata built from a core graph, and their structural analysis.

All automata are deterministic with *partial* transition functions: a missing
entry means the transition is undefined, never that it leads to a dead state.
Several initial states are allowed (the start-free automaton needs them);
operations that need a single one check for it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .core import CoreGraph
from .exceptions import AutomatonError, TrivialSubgroupError
from .series import RationalFunction, path_series
from .words import alphabet, format_letter, letter_key

START = "q*"


@dataclass(frozen=True, eq=False)
class FiniteAutomaton:
    """States are ``0..n-1``; ``names`` holds a display name for each."""

    alphabet: tuple
    names: tuple
    delta: tuple  # one dict symbol -> target per state
    initials: frozenset
    finals: frozenset

    def __post_init__(self):
        n = len(self.names)
        if len(self.delta) != n:
            raise AutomatonError("one transition map per state is required")
        symbols = set(self.alphabet)
        for q, row in enumerate(self.delta):
            for x, t in row.items():
                if x not in symbols:
                    raise AutomatonError(f"symbol {x!r} at state {q} is not in the alphabet")
                if not 0 <= t < n:
                    raise AutomatonError(f"transition {q} --{x!r}--> {t} leaves the state set")
        if not set(self.initials) | set(self.finals) <= set(range(n)):
            raise AutomatonError("initial/final states must be valid state ids")

    @property
    def size(self) -> int:
        return len(self.names)

    def edges(self):
        for q, row in enumerate(self.delta):
            for x, t in row.items():
                yield q, x, t

    @property
    def initial(self) -> int:
        """The unique initial state; raises if there is not exactly one."""
        if len(self.initials) != 1:
            raise AutomatonError(f"expected one initial state, found {len(self.initials)}")
        return next(iter(self.initials))

    def run(self, w: Sequence[Hashable], start: int | None = None) -> int | None:
        q = self.initial if start is None else start
        for x in w:
            q = self.delta[q].get(x)
            if q is None:
                return None
        return q

    def accepts(self, w: Sequence[Hashable]) -> bool:
        return path_count_per_word(self, w) > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteAutomaton):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.names == other.names
            and self.delta == other.delta
            and self.initials == other.initials
            and self.finals == other.finals
        )

    __hash__ = None


@dataclass(frozen=True)
class CountMatrix:
    """Edge-count adjacency matrix of a Moore diagram, with its state order."""

    rows: tuple
    states: tuple = field(default=())

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_numpy(self):
        import numpy as np

        return np.array(self.rows, dtype=float).reshape(self.size, self.size)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _induced(a: FiniteAutomaton, keep: Sequence[int], names=None) -> FiniteAutomaton:
    """Subautomaton on the states ``keep``, renumbered in the given order."""
    index = {q: k for k, q in enumerate(keep)}
    delta = tuple(
        {x: index[t] for x, t in a.delta[q].items() if t in index} for q in keep
    )
    return FiniteAutomaton(
        alphabet=a.alphabet,
        names=tuple(a.names[q] for q in keep) if names is None else tuple(names),
        delta=delta,
        initials=frozenset(index[q] for q in a.initials if q in index),
        finals=frozenset(index[q] for q in a.finals if q in index),
    )


def build_free_group_dfa(rank: int) -> FiniteAutomaton:
    """DFA of all freely reduced words over the 2m letters.

    State 0 is q_0; the state after reading letter x remembers x and forbids
    its inverse next. Every state is final.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    letters = alphabet(rank)
    pos = {x: k + 1 for k, x in enumerate(letters)}
    delta = [{x: pos[x] for x in letters}]
    for y in letters:
        delta.append({x: pos[x] for x in letters if x != -y})
    return FiniteAutomaton(
        alphabet=tuple(letters),
        names=(None,) + tuple(letters),
        delta=tuple(delta),
        initials=frozenset({0}),
        finals=frozenset(range(len(letters) + 1)),
    )


def core_to_dfa(c: CoreGraph) -> FiniteAutomaton:
    """The extended core read as a DFA with the root as only initial/final state."""
    letters = alphabet(c.rank)
    delta = tuple(
        {x: c.step(v, x) for x in letters if c.step(v, x) is not None}
        for v in range(c.vertex_count)
    )
    return FiniteAutomaton(
        alphabet=tuple(letters),
        names=tuple(range(c.vertex_count)),
        delta=delta,
        initials=frozenset({c.root}),
        finals=frozenset({c.root}),
    )


def product(a1: FiniteAutomaton, a2: FiniteAutomaton) -> FiniteAutomaton:
    """Accessible part of the product automaton; recognises L(a1) & L(a2)."""
    if tuple(a1.alphabet) != tuple(a2.alphabet):
        raise AutomatonError("product of automata over different alphabets")
    start = (a1.initial, a2.initial)
    index = {start: 0}
    order = [start]
    delta: list[dict] = []
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        row = {}
        for x in a1.alphabet:
            s = a1.delta[p].get(x)
            t = a2.delta[q].get(x)
            if s is None or t is None:
                continue
            if (s, t) not in index:
                index[(s, t)] = len(order)
                order.append((s, t))
                queue.append((s, t))
            row[x] = index[(s, t)]
        delta.append(row)
    return FiniteAutomaton(
        alphabet=a1.alphabet,
        names=tuple((a1.names[p], a2.names[q]) for p, q in order),
        delta=tuple(delta),
        initials=frozenset({0}),
        finals=frozenset(
            k for k, (p, q) in enumerate(order) if p in a1.finals and q in a2.finals
        ),
    )


def _reachable(adj: Sequence[Iterable[int]], sources: Iterable[int]) -> set[int]:
    seen = set(sources)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for t in adj[q]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def essential_part(a: FiniteAutomaton) -> FiniteAutomaton:
    """Restrict to states lying on some initial-to-final path."""
    forward = [list(row.values()) for row in a.delta]
    backward: list[list[int]] = [[] for _ in range(a.size)]
    for q, _, t in a.edges():
        backward[t].append(q)
    live = _reachable(forward, a.initials) & _reachable(backward, a.finals)
    return _induced(a, sorted(live))


def subgroup_dfa(c: CoreGraph) -> FiniteAutomaton:
    """Minimal DFA of the reduced words representing elements of H.

    Built as the essential part of (extended core DFA) x (reduced-word DFA),
    then renamed: the start state becomes ``"q*"`` and every other state is
    ``(v, x)``, the vertex reached and the last letter read. States are
    ordered q* first, then by vertex and letter.
    """
    prod = product(core_to_dfa(c), build_free_group_dfa(c.rank))
    ess = essential_part(prod)

    def key(k):
        v, x = ess.names[k]
        return (-1, 0, False) if x is None else (v,) + letter_key(x)

    order = sorted(range(ess.size), key=key)
    names = [START if ess.names[k][1] is None else ess.names[k] for k in order]
    return _induced(ess, order, names)


def without_start_state(d: FiniteAutomaton) -> FiniteAutomaton:
    """Drop q* from a subgroup DFA; its final states become initial too."""
    if START not in d.names:
        raise AutomatonError("expected an automaton built by subgroup_dfa")
    start = d.names.index(START)
    keep = [q for q in range(d.size) if q != start]
    if not keep:
        raise TrivialSubgroupError("the trivial subgroup has no states besides q*")
    sub = _induced(d, keep)
    finals = frozenset(q for q in sub.finals)
    return FiniteAutomaton(sub.alphabet, sub.names, sub.delta, finals, finals)


def minimize(a: FiniteAutomaton) -> FiniteAutomaton:
    """Minimal (partial) DFA recognising L(a), by Hopcroft partition refinement.

    Unreachable and dead states are discarded; the result is numbered in BFS
    order from its initial state, so minimizing twice changes nothing.
    """
    if not a.initials:
        return FiniteAutomaton(a.alphabet, (), (), frozenset(), frozenset())
    start = a.initial
    reach = sorted(_reachable([list(r.values()) for r in a.delta], [start]))
    a = _induced(a, reach)
    n = a.size
    sink = n
    symbols = list(a.alphabet)
    total = n + 1

    def target(q, x):
        if q == sink:
            return sink
        t = a.delta[q].get(x)
        return sink if t is None else t

    inverse: dict = {x: [[] for _ in range(total)] for x in symbols}
    for q in range(total):
        for x in symbols:
            inverse[x][target(q, x)].append(q)

    finals = set(a.finals)
    blocks = [b for b in (finals, set(range(total)) - finals) if b]
    block_of = [0] * total
    for k, b in enumerate(blocks):
        for q in b:
            block_of[q] = k
    work = [(k, x) for k in range(len(blocks)) for x in symbols]
    while work:
        k, x = work.pop()
        splitter = {p for q in blocks[k] for p in inverse[x][q]}
        touched: dict[int, set[int]] = {}
        for p in splitter:
            touched.setdefault(block_of[p], set()).add(p)
        for j, inside in touched.items():
            block = blocks[j]
            if len(inside) == len(block):
                continue
            outside = block - inside
            small, large = (inside, outside) if len(inside) <= len(outside) else (outside, inside)
            blocks[j] = large
            blocks.append(small)
            new = len(blocks) - 1
            for q in small:
                block_of[q] = new
            # whether or not (j, y) is still pending, queueing the smaller
            # half suffices
            for y in symbols:
                work.append((new, y))

    dead = block_of[sink]
    # renumber the surviving blocks by BFS from the start block
    index = {block_of[start]: 0} if block_of[start] != dead else {}
    order = list(index)
    delta: list[dict] = []
    queue = deque(order)
    while queue:
        b = queue.popleft()
        rep = next(iter(blocks[b]))
        row = {}
        for x in symbols:
            tb = block_of[target(rep, x)]
            if tb == dead:
                continue
            if tb not in index:
                index[tb] = len(order)
                order.append(tb)
                queue.append(tb)
            row[x] = index[tb]
        delta.append(row)
    if not order:
        return FiniteAutomaton(a.alphabet, (), (), frozenset(), frozenset())
    return FiniteAutomaton(
        alphabet=a.alphabet,
        names=tuple(tuple(a.names[q] for q in sorted(blocks[b]) if q != sink) for b in order),
        delta=tuple(delta),
        initials=frozenset({0}),
        finals=frozenset(k for k, b in enumerate(order) if next(iter(blocks[b])) in finals),
    )


def strongly_connected_components(a: FiniteAutomaton) -> list[list[int]]:
    """SCCs of the Moore diagram (iterative Tarjan), in reverse topological order."""
    succ = [sorted(set(row.values())) for row in a.delta]
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(a.size):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for k in range(i, len(succ[v])):
                w = succ[v][k]
                if w not in index:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def is_ergodic(a: FiniteAutomaton) -> bool:
    """True iff the Moore diagram is strongly connected."""
    return len(strongly_connected_components(a)) == 1


def weakly_connected_components(a: FiniteAutomaton) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(a.size)]
    for q, _, t in a.edges():
        adj[q].add(t)
        adj[t].add(q)
    seen: set[int] = set()
    comps = []
    for q in range(a.size):
        if q not in seen:
            comp = _reachable(adj, [q])
            seen |= comp
            comps.append(comp)
    return comps


def count_accepted(a: FiniteAutomaton, n: int) -> int:
    """Number of admissible paths of length n, i.e. i M^n f."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    vec = [0] * a.size
    for q in a.initials:
        vec[q] = 1
    for _ in range(n):
        nxt = [0] * a.size
        for q, row in enumerate(a.delta):
            c = vec[q]
            if c:
                for t in row.values():
                    nxt[t] += c
        vec = nxt
    return sum(vec[q] for q in a.finals)


def path_count_per_word(a: FiniteAutomaton, w: Sequence[Hashable]) -> int:
    """Number of admissible paths labelled w."""
    counts = {q: 1 for q in a.initials}
    for x in w:
        nxt: dict[int, int] = {}
        for q, c in counts.items():
            t = a.delta[q].get(x)
            if t is not None:
                nxt[t] = nxt.get(t, 0) + c
        counts = nxt
        if not counts:
            return 0
    return sum(c for q, c in counts.items() if q in a.finals)


def ambiguity_profile(a: FiniteAutomaton, max_length: int) -> set[int]:
    """Distinct numbers of admissible paths over accepted words of length 1..max_length.

    A word's path count is the final mass of its count vector (paths from the
    initial states ending in each state), so exploring the reachable count
    vectors breadth first covers every word without enumerating words.
    """
    start = tuple(sorted((q, 1) for q in a.initials))
    seen = {start}
    layer = [start]
    found: set[int] = set()
    for length in range(max_length + 1):
        nxt = []
        for vec in layer:
            mass = sum(c for q, c in vec if q in a.finals)
            if mass and length:
                found.add(mass)
            if length == max_length:
                continue
            for x in a.alphabet:
                counts: dict[int, int] = {}
                for q, c in vec:
                    t = a.delta[q].get(x)
                    if t is not None:
                        counts[t] = counts.get(t, 0) + c
                if counts:
                    key = tuple(sorted(counts.items()))
                    if key not in seen:
                        seen.add(key)
                        nxt.append(key)
        layer = nxt
    return found


def base_automaton(a: FiniteAutomaton) -> FiniteAutomaton:
    """Same digraph, every state initial and final, every edge its own letter."""
    symbols = []
    delta: list[dict] = [{} for _ in range(a.size)]
    for q, _, t in a.edges():
        sym = f"e{len(symbols)}"
        symbols.append(sym)
        delta[q][sym] = t
    everything = frozenset(range(a.size))
    return FiniteAutomaton(tuple(symbols), a.names, tuple(delta), everything, everything)


def transfer_cogrowth(d: FiniteAutomaton) -> RationalFunction:
    """Generating function of the accepted words of a DFA, i M^n f summed over n.

    For the subgroup DFA this is the cogrowth series of H.
    """
    return path_series(adjacency_matrix(d).rows, d.initials, d.finals)


def adjacency_matrix(a: FiniteAutomaton) -> CountMatrix:
    rows = [[0] * a.size for _ in range(a.size)]
    for q, _, t in a.edges():
        rows[q][t] += 1
    return CountMatrix(tuple(tuple(r) for r in rows), a.names)


def state_label(name, rank: int | None = None) -> str:
    if name == START:
        return START
    if name is None:
        return "q0"
    if isinstance(name, tuple) and len(name) == 2 and isinstance(name[1], int):
        v, x = name
        return f"(v{v},{format_letter(x, rank)})"
    if isinstance(name, tuple) and len(name) == 2 and name[1] is None:
        return f"(v{name[0]},q0)"
    if isinstance(name, int) and not isinstance(name, bool):
        return f"v{name}"
    return str(name)


def to_dot(a: FiniteAutomaton, rank: int | None = None, name: str = "automaton") -> str:
    """Graphviz text for the Moore diagram.

    Initial states get an arrow from an invisible point node, final states are
    drawn with a double circle.
    """
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for q in range(a.size):
        shape = "doublecircle" if q in a.finals else "circle"
        label = state_label(a.names[q], rank)
        lines.append(f'  s{q} [label="{label}", shape={shape}];')
    for q in sorted(a.initials):
        lines.append(f"  init{q} [shape=point];")
        lines.append(f"  init{q} -> s{q};")
    for q, x, t in a.edges():
        sym = format_letter(x, rank) if isinstance(x, int) else str(x)
        lines.append(f'  s{q} -> s{t} [label="{sym}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
