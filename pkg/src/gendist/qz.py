"""Choice sequences for subgroups of Q/Z and their generator distances.

A choice sequence assigns a value in ``{0, 1, 2, ..., inf}`` to every prime
position.  Only sequences that are constant outside finitely many positions
are representable: a default value plus a finite map of exceptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import ParseError

__all__ = [
    "INF",
    "ExtNat",
    "ChoiceSeq",
    "parse_choice_seq",
    "seq_equiv",
    "seq_preceq",
    "qz_distance",
    "qz_diameter",
    "join",
]

INF = math.inf
ExtNat = int | float
"""A non-negative integer or ``math.inf``."""


def _check_value(v) -> ExtNat:
    if v == INF:
        return INF
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValueError(f"choice values are non-negative integers or inf, got {v!r}")
    return v


@dataclass(frozen=True)
class ChoiceSeq:
    """``k_i = exceptions.get(i, default)``; exceptions equal to the default are dropped."""

    default: ExtNat
    exceptions: tuple[tuple[int, ExtNat], ...] = ()

    def __init__(self, default: ExtNat, exceptions: Mapping[int, ExtNat] | None = None):
        default = _check_value(default)
        items = {}
        for i, v in dict(exceptions or {}).items():
            if isinstance(i, bool) or not isinstance(i, int) or i < 0:
                raise ValueError(f"positions are non-negative integers, got {i!r}")
            v = _check_value(v)
            if v != default:
                items[i] = v
        object.__setattr__(self, "default", default)
        object.__setattr__(self, "exceptions", tuple(sorted(items.items())))

    def __getitem__(self, i: int) -> ExtNat:
        return dict(self.exceptions).get(i, self.default)

    def positions(self) -> list[int]:
        return [i for i, _ in self.exceptions]

    def finite_count(self) -> ExtNat:
        """Number of positions with a finite value."""
        if self.default != INF:
            return INF
        return sum(1 for _, v in self.exceptions if v != INF)

    def __str__(self) -> str:
        def fmt(v: ExtNat) -> str:
            return "inf" if v == INF else str(v)

        text = f"default={fmt(self.default)}"
        if self.exceptions:
            text += ";" + ",".join(f"{i}:{fmt(v)}" for i, v in self.exceptions)
        return text


def _parse_value(tok: str, where: str) -> ExtNat:
    tok = tok.strip()
    if tok == "inf":
        return INF
    if not tok.isdigit():
        raise ParseError(f"{where}: expected a natural number or 'inf', got {tok!r}")
    return int(tok)


def parse_choice_seq(text: str) -> ChoiceSeq:
    """Parse ``default=<v>[;<idx>:<v>,...]`` such as ``default=inf;0:3,5:2``."""
    head, _, rest = text.strip().partition(";")
    key, eq, value = head.partition("=")
    if key.strip() != "default" or not eq:
        raise ParseError(f"expected 'default=<value>', got {head!r}")
    default = _parse_value(value, "default")
    exceptions: dict[int, ExtNat] = {}
    if rest.strip():
        for item in rest.split(","):
            idx, colon, val = item.partition(":")
            if not colon or not idx.strip().isdigit():
                raise ParseError(f"malformed exception {item!r}, expected <index>:<value>")
            i = int(idx)
            if i in exceptions:
                raise ParseError(f"duplicate position {i}")
            exceptions[i] = _parse_value(val, f"position {i}")
    return ChoiceSeq(default, exceptions)


def _positions(k: ChoiceSeq, k2: ChoiceSeq) -> set[int]:
    return set(k.positions()) | set(k2.positions())


def seq_equiv(k: ChoiceSeq, k2: ChoiceSeq) -> bool:
    """Same infinity pattern everywhere and finitely many differences."""
    if k.default != k2.default:
        # infinitely many positions differ, and if one default is inf the
        # infinity patterns differ infinitely often as well
        return False
    return all((k[i] == INF) == (k2[i] == INF) for i in _positions(k, k2))


def seq_preceq(k: ChoiceSeq, k2: ChoiceSeq) -> bool:
    return seq_equiv(k, k2) and all(k[i] <= k2[i] for i in _positions(k, k2))


def qz_distance(k: ChoiceSeq, k2: ChoiceSeq) -> ExtNat:
    if k == k2:
        return 0
    if not seq_equiv(k, k2):
        return INF
    if seq_preceq(k, k2) or seq_preceq(k2, k):
        return 1
    return 2


def qz_diameter(k: ChoiceSeq) -> ExtNat:
    """Diameter of the component of the subgroup given by ``k``."""
    c = k.finite_count()
    if c == 0:
        return 0
    if c == 1:
        return 1
    return 2


def join(k: ChoiceSeq, k2: ChoiceSeq) -> ChoiceSeq:
    """Pointwise maximum of two equivalent sequences."""
    if not seq_equiv(k, k2):
        raise ValueError("join needs equivalent sequences")
    return ChoiceSeq(k.default, {i: max(k[i], k2[i]) for i in _positions(k, k2)})
