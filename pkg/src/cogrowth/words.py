"""Letters, free reduction and word combinatorics in the free group F_m.

A letter is a nonzero int: ``+i`` stands for the generator a_i and ``-i`` for
its inverse. A word is a tuple of letters. Reduced words are plain tuples too;
functions that require reduced input say so and do not re-check.

Text syntax: ``a``..``z`` are the generators a_1..a_26, the matching capital
is the inverse, ``x3`` is a_3 in numeric form, and any letter may carry an
exponent ``^-1`` (or any integer). Whitespace is ignored and ``1`` spells the
empty word.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .exceptions import AlphabetError, WordSyntaxError

Word = tuple

_TOKEN = re.compile(r"x(\d+)|([A-Za-z])|(1)")
_EXPONENT = re.compile(r"\^\s*(-?\d+)")


def inverse(x: int) -> int:
    return -x


def letter_key(x: int) -> tuple[int, bool]:
    """Sort key giving the order a_1 < a_1^-1 < a_2 < a_2^-1 < ..."""
    return (abs(x), x < 0)


def alphabet(rank: int) -> list[int]:
    """All 2m letters of Sigma in canonical order."""
    if rank < 1:
        raise ValueError(f"rank must be positive, got {rank}")
    return [s * i for i in range(1, rank + 1) for s in (1, -1)]


def check_letters(w: Iterable[int], rank: int) -> None:
    for x in w:
        if not isinstance(x, int) or x == 0 or abs(x) > rank:
            raise AlphabetError(f"letter {x!r} is not in the alphabet of F_{rank}")


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[k] != -w[k + 1] for k in range(len(w) - 1))


def free_reduce(w: Iterable[int], rank: int | None = None) -> Word:
    """Return red(w), the unique freely reduced word equal to w in F_m.

    If ``rank`` is given every letter is validated against it first.
    """
    w = tuple(w)
    if rank is not None:
        check_letters(w, rank)
    stack: list[int] = []
    for x in w:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def _overlap(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of letter pairs cancelled between reduced u and reduced v."""
    k = 0
    limit = min(len(u), len(v))
    while k < limit and u[len(u) - 1 - k] == -v[k]:
        k += 1
    return k


def concat_reduce(u: Sequence[int], v: Sequence[int]) -> Word:
    """red(u v) for reduced u and v."""
    k = _overlap(u, v)
    return tuple(u[: len(u) - k]) + tuple(v[k:])


def beta(u: Sequence[int], v: Sequence[int]) -> int:
    """Total number of letters deleted when reducing the product u v.

    Both sides of every cancelled pair are counted, so the result is even and
    equals ``len(u) + len(v) - len(red(u v))``.
    """
    return 2 * _overlap(u, v)


def cyclically_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Split reduced w as ``conjugator . core . conjugator^-1``.

    The core is cyclically reduced: its first letter is not the inverse of its
    last one (or it has length at most 1).
    """
    w = tuple(w)
    k = 0
    while len(w) - 2 * k >= 2 and w[k] == -w[len(w) - 1 - k]:
        k += 1
    return w[:k], w[k : len(w) - k]


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse the text syntax into a (not necessarily reduced) word.

    Raises WordSyntaxError on malformed text and AlphabetError if a letter
    exceeds ``rank``.
    """
    s = "".join(text.split())
    if not s:
        raise WordSyntaxError("empty input; spell the empty word as '1'")
    letters: list[int] = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected character {s[pos]!r} in {text!r}")
        pos = m.end()
        if m.group(1) is not None:
            x = int(m.group(1))
            if x == 0:
                raise WordSyntaxError(f"generator index must be positive in {text!r}")
        elif m.group(2) is not None:
            c = m.group(2)
            x = ord(c.lower()) - ord("a") + 1
            if c.isupper():
                x = -x
        else:
            x = 0  # the identity
        e = _EXPONENT.match(s, pos)
        power = 1
        if e is not None:
            power = int(e.group(1))
            pos = e.end()
        if x == 0:
            continue
        if power < 0:
            x, power = -x, -power
        letters.extend([x] * power)
    w = tuple(letters)
    if rank is not None:
        check_letters(w, rank)
    return w


def format_letter(x: int, rank: int | None = None) -> str:
    if rank is not None and rank > 26 or abs(x) > 26:
        return f"x{abs(x)}" + ("^-1" if x < 0 else "")
    c = chr(ord("a") + abs(x) - 1)
    return c.upper() if x < 0 else c


def format_word(w: Sequence[int], rank: int | None = None) -> str:
    if not w:
        return "1"
    sep = " " if (rank is not None and rank > 26) or any(abs(x) > 26 for x in w) else ""
    return sep.join(format_letter(x, rank) for x in w)
