"""One-call analysis of a subgroup, with independent methods cross-checked."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from .automata import count_accepted, subgroup_dfa, transfer_cogrowth
from .core import (
    CoreGraph,
    core_of,
    edge_list,
    enumerate_count,
    is_conjugacy_reduced,
    is_normal,
    subgroup_index,
    subgroup_rank,
)
from .nielsen import nielsen_cogrowth, schreier_generators
from .series import RationalFunction, format_poly, series_coefficients
from .spectral import entropy_of_subgroup
from .words import Word, check_letters, format_word

SCHEMA_VERSION = 1
METHODS = ("transfer", "nielsen", "enumerate", "all")
ORACLE_CAP = 12


@dataclass
class AnalysisReport:
    rank: int
    generators: list[Word]
    core: CoreGraph
    index: int | float
    is_normal: bool
    conjugacy_reduced: bool | None  # None for the trivial subgroup
    rank_of_H: int
    cyclic: bool
    cogrowth: RationalFunction
    coefficients: list[int]
    entropy: float
    growth_rate: float
    methods_agree: bool
    automaton_states: int
    checked: list[str] = field(default_factory=list)
    disagreements: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "rank": self.rank,
            "generators": [format_word(w, self.rank) for w in self.generators],
            "core": {
                "vertex_count": self.core.vertex_count,
                "edges": edge_list(self.core),
            },
            "index": "infinite" if self.index == math.inf else self.index,
            "is_normal": self.is_normal,
            "conjugacy_reduced": self.conjugacy_reduced,
            "rank_of_H": self.rank_of_H,
            "cyclic": self.cyclic,
            "automaton_states": self.automaton_states,
            "cogrowth": self.cogrowth.to_json(),
            "coefficients": self.coefficients,
            "entropy": self.entropy,
            "growth_rate": self.growth_rate,
            "methods_checked": self.checked,
            "methods_agree": self.methods_agree,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        gens = ", ".join(format_word(w, self.rank) for w in self.generators) or "(none)"
        index = "infinite" if self.index == math.inf else str(self.index)
        cr = "n/a" if self.conjugacy_reduced is None else _yes(self.conjugacy_reduced)
        lines = [
            f"subgroup of F{self.rank} generated by {gens}",
            f"  core: {self.core.vertex_count} vertices, {len(self.core.edges)} edges",
            f"  index: {index}",
            f"  normal: {_yes(self.is_normal)}",
            f"  conjugacy reduced: {cr}",
            f"  free rank: {self.rank_of_H}" + (" (cyclic)" if self.cyclic else ""),
            f"  automaton states: {self.automaton_states}",
            f"  H(z) = ({format_poly(self.cogrowth.num)}) / ({format_poly(self.cogrowth.den)})",
            f"  |H_n|, n = 0..{len(self.coefficients) - 1}: "
            + ", ".join(str(c) for c in self.coefficients),
            f"  entropy: {self.entropy:.10g} (natural log), "
            f"{self.entropy / math.log(2):.10g} (bits)",
            f"  growth rate: {self.growth_rate:.10g}",
            f"  methods checked: {', '.join(self.checked)}; agree: {_yes(self.methods_agree)}",
        ]
        lines.extend(f"  DISAGREEMENT: {d}" for d in self.disagreements)
        return "\n".join(lines) + "\n"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def analyze(
    rank: int,
    generators: Sequence[Sequence[int]],
    coeffs: int = 20,
    oracle_depth: int = 10,
    method: str = "all",
) -> AnalysisReport:
    """Fold, build the subgroup DFA, compute H(z) and cross-check it.

    The transfer-matrix series is always computed. ``method`` selects which
    independent recomputations it is compared with: the Nielsen system, the
    path enumeration up to ``oracle_depth``, both (``"all"``) or neither
    (``"transfer"``).
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if coeffs < 0:
        raise ValueError("coefficient count must be nonnegative")
    if not 0 <= oracle_depth <= ORACLE_CAP:
        raise ValueError(f"oracle depth must be between 0 and {ORACLE_CAP}")
    gens = [tuple(w) for w in generators]
    for w in gens:
        check_letters(w, rank)
    c = core_of(rank, gens)
    d = subgroup_dfa(c)
    h = transfer_cogrowth(d)
    coefficients = series_coefficients(h, coeffs)

    checked = ["transfer"]
    disagreements: list[str] = []
    if method in ("nielsen", "all"):
        checked.append("nielsen")
        other = nielsen_cogrowth(schreier_generators(c))
        if other != h:
            disagreements.append(f"nielsen gives {other.to_json()}")
    if method in ("enumerate", "all"):
        checked.append("enumerate")
        expansion = series_coefficients(h, oracle_depth)
        for n in range(oracle_depth + 1):
            by_paths = enumerate_count(c, n)
            by_dfa = count_accepted(d, n)
            if not expansion[n] == by_paths == by_dfa:
                disagreements.append(
                    f"n={n}: series {expansion[n]}, enumeration {by_paths}, automaton {by_dfa}"
                )

    if c.is_trivial:
        entropy, growth, reduced = 0.0, 1.0, None
    else:
        spectral = entropy_of_subgroup(c)
        entropy, growth = spectral.entropy, spectral.growth_rate
        reduced = is_conjugacy_reduced(c)
    rank_h = subgroup_rank(c)
    return AnalysisReport(
        rank=rank,
        generators=gens,
        core=c,
        index=subgroup_index(c),
        is_normal=is_normal(c),
        conjugacy_reduced=reduced,
        rank_of_H=rank_h,
        cyclic=rank_h == 1,
        cogrowth=h,
        coefficients=coefficients,
        entropy=float(entropy),
        growth_rate=float(growth),
        methods_agree=not disagreements,
        automaton_states=d.size,
        checked=checked,
        disagreements=disagreements,
    )

