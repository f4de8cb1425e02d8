"""Finite algebras given by operation tables.

An algebra on ``{0, ..., n-1}`` carries a list of operations, each an
``arity``-dimensional numpy table.  Subuniverses are the non-empty subsets
closed under every operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, ParseError

__all__ = [
    "Operation",
    "FiniteAlgebra",
    "SubUniverse",
    "parse_fa",
    "format_fa",
    "closure",
    "enumerate_subalgebras",
    "is_large_subalgebra",
    "fa_isomorphic",
    "symmetric_group",
    "alternating_group",
    "cyclic_group",
    "boolean_algebra",
    "monounary_as_fa",
    "builtin",
]


@dataclass(frozen=True, eq=False)
class Operation:
    arity: int
    table: np.ndarray

    def __call__(self, *args: int) -> int:
        return int(self.table[args])


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    n: int
    ops: tuple[Operation, ...]
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ContractViolation("universe must be non-empty")
        for k, op in enumerate(self.ops):
            table = np.asarray(op.table)
            if table.shape != (self.n,) * op.arity:
                raise ContractViolation(f"operation {k}: table shape {table.shape} does not match arity {op.arity}")
            if table.size and (table.min() < 0 or table.max() >= self.n):
                raise ContractViolation(f"operation {k}: entry outside [0, {self.n})")
        if self.labels is not None and len(self.labels) != self.n:
            raise ContractViolation("one label per element required")

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(op.arity for op in self.ops)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    @property
    def universe(self) -> "SubUniverse":
        return SubUniverse(self, frozenset(range(self.n)))


@dataclass(frozen=True)
class SubUniverse:
    """A subset of ``parent`` closed under all of its operations."""

    parent: FiniteAlgebra = field(compare=False, repr=False)
    elements: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_pid", id(self.parent))

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubUniverse):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    @property
    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    def describe(self) -> str:
        return "{" + ", ".join(self.parent.label(x) for x in self.sorted) + "}"


# --------------------------------------------------------------------------
# text format


def parse_fa(text: str) -> FiniteAlgebra:
    """Parse ``n <size>`` then ``op <arity>`` blocks with row-major tables."""
    tokens: list[tuple[str, int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        for pos, tok in enumerate(stripped.split(), start=1):
            tokens.append((tok, lineno, pos))
    it = iter(tokens)

    def take(what: str) -> tuple[str, int, int]:
        try:
            return next(it)
        except StopIteration:
            raise ParseError(f"unexpected end of input, expected {what}") from None

    def take_int(what: str) -> tuple[int, int, int]:
        tok, line, pos = take(what)
        try:
            return int(tok), line, pos
        except ValueError:
            raise ParseError(f"expected {what}, got {tok!r}", line, pos) from None

    tok, line, pos = take("'n'")
    if tok != "n":
        raise ParseError(f"expected 'n', got {tok!r}", line, pos)
    n, line, pos = take_int("universe size")
    if n < 1:
        raise ParseError("universe size must be >= 1", line, pos)
    ops = []
    for tok, line, pos in it:
        if tok != "op":
            raise ParseError(f"expected 'op', got {tok!r}", line, pos)
        arity, line, pos = take_int("arity")
        if arity < 0:
            raise ParseError("arity must be >= 0", line, pos)
        values = []
        for _ in range(n**arity):
            v, line, pos = take_int("table entry")
            if not 0 <= v < n:
                raise ParseError(f"table entry {v} out of range [0, {n})", line, pos)
            values.append(v)
        ops.append(Operation(arity, np.array(values, dtype=np.int64).reshape((n,) * arity)))
    return FiniteAlgebra(n, tuple(ops))


def format_fa(fa: FiniteAlgebra) -> str:
    lines = [f"n {fa.n}"]
    for op in fa.ops:
        lines.append(f"op {op.arity}")
        flat = op.table.reshape(-1) if op.arity else [int(op.table)]
        if op.arity >= 2:
            rows = op.table.reshape(-1, fa.n)
            lines.extend(" ".join(map(str, r)) for r in rows)
        else:
            lines.append(" ".join(map(str, flat)))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# closure and subuniverses


def closure(fa: FiniteAlgebra, x: Iterable[int]) -> frozenset[int]:
    """Least subset containing ``x`` and closed under every operation."""
    cur = np.zeros(fa.n, dtype=bool)
    xs = list(x)
    if xs:
        cur[xs] = True
    for op in fa.ops:
        if op.arity == 0:
            cur[int(op.table)] = True
    active = [op for op in fa.ops if op.arity > 0]
    while True:
        idx = np.flatnonzero(cur)
        if not idx.size:
            return frozenset()
        new = cur.copy()
        for op in active:
            new[op.table[np.ix_(*([idx] * op.arity))].ravel()] = True
        if np.array_equal(new, cur):
            return frozenset(int(i) for i in idx)
        cur = new


def enumerate_subalgebras(fa: FiniteAlgebra) -> list[SubUniverse]:
    """All non-empty subuniverses, sorted by size and then by elements.

    Seeds are the closure of the constants and of every singleton; each known
    subuniverse is then extended by one outside element at a time.
    """
    found: set[frozenset[int]] = set()
    queue: list[frozenset[int]] = []

    def add(s: frozenset[int]) -> None:
        if s and s not in found:
            found.add(s)
            queue.append(s)

    add(closure(fa, ()))
    for x in range(fa.n):
        add(closure(fa, (x,)))
    while queue:
        s = queue.pop()
        for x in range(fa.n):
            if x not in s:
                add(closure(fa, s | {x}))
    return [SubUniverse(fa, s) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


def is_large_subalgebra(sub: SubUniverse, amb: SubUniverse) -> bool:
    """Whether ``sub`` plus one element of ``amb`` generates ``amb``."""
    if sub.parent is not amb.parent or not sub.elements <= amb.elements:
        raise ContractViolation("is_large_subalgebra needs nested subuniverses of one algebra")
    if sub.elements == amb.elements:
        return True
    return any(closure(sub.parent, sub.elements | {b}) == amb.elements for b in amb.elements - sub.elements)


# --------------------------------------------------------------------------
# isomorphism


def _element_profile(s: SubUniverse) -> dict[int, int]:
    fa = s.parent
    return {x: len(closure(fa, (x,))) for x in s.elements}


def _generating_set(s: SubUniverse, profile: dict[int, int]) -> list[int]:
    fa = s.parent
    gens: list[int] = []
    cur = closure(fa, ())
    while cur != s.elements:
        # largest one-generated piece first keeps the generator list short
        x = max((y for y in s.elements if y not in cur), key=lambda y: (profile[y], -y))
        gens.append(x)
        cur = closure(fa, cur | {x})
    return gens


def _extend(a_ops, b_ops, phi: dict[int, int]) -> dict[int, int] | None:
    """Close a partial map under the operations, or None on a clash."""
    phi = dict(phi)
    image = set(phi.values())
    if len(image) != len(phi):
        return None
    fresh = list(phi)
    while fresh:
        dom = list(phi)
        new: list[int] = []
        fresh_set = set(fresh)
        for ta, tb, k in zip(a_ops, b_ops, (op.arity for op in a_ops)):
            ta, tb = ta.table, tb.table
            for args in product(dom, repeat=k):
                if not fresh_set.intersection(args):
                    continue
                x = int(ta[args])
                y = int(tb[tuple(phi[v] for v in args)])
                seen = phi.get(x)
                if seen is None:
                    if y in image:
                        return None
                    phi[x] = y
                    image.add(y)
                    new.append(x)
                elif seen != y:
                    return None
        fresh = new
    return phi


def fa_isomorphic(a: SubUniverse, b: SubUniverse) -> bool:
    """Whether two subuniverses (of algebras with one signature) are isomorphic."""
    if a.parent.signature != b.parent.signature:
        raise ContractViolation("algebras of different signatures are not comparable")
    if len(a) != len(b):
        return False
    pa, pb = _element_profile(a), _element_profile(b)
    if sorted(pa.values()) != sorted(pb.values()):
        return False
    a_ops = [op for op in a.parent.ops if op.arity > 0]
    b_ops = [op for op in b.parent.ops if op.arity > 0]
    phi0: dict[int, int] = {}
    for oa, ob in zip(a.parent.ops, b.parent.ops):
        if oa.arity == 0:
            x, y = int(oa.table), int(ob.table)
            if phi0.setdefault(x, y) != y:
                return False
    phi0 = _extend(a_ops, b_ops, phi0)
    if phi0 is None:
        return False
    gens = _generating_set(a, pa)
    targets = sorted(b.elements)

    def search(k: int, phi: dict[int, int]) -> bool:
        if k == len(gens):
            return len(phi) == len(a)
        g = gens[k]
        if g in phi:
            return search(k + 1, phi)
        for y in targets:
            if pb[y] != pa[g] or y in phi.values():
                continue
            trial = dict(phi)
            trial[g] = y
            ext = _extend(a_ops, b_ops, trial)
            if ext is not None and search(k + 1, ext):
                return True
        return False

    return search(0, phi0)


# --------------------------------------------------------------------------
# builtin fixtures


def _cycle_notation(p: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        parts.append("(" + "".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) or "e"


def _perm_group(perms: list[tuple[int, ...]], name: str) -> FiniteAlgebra:
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    mul = np.empty((m, m), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            mul[i, j] = index[tuple(p[q[x]] for x in range(len(p)))]
    inv = np.empty(m, dtype=np.int64)
    for i, p in enumerate(perms):
        q = [0] * len(p)
        for x, y in enumerate(p):
            q[y] = x
        inv[i] = index[tuple(q)]
    identity = index[tuple(range(len(perms[0])))]
    ops = (Operation(2, mul), Operation(1, inv), Operation(0, np.array(identity)))
    return FiniteAlgebra(m, ops, tuple(_cycle_notation(p) for p in perms), name)


def _parity(p: Sequence[int]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]) % 2


def symmetric_group(n: int) -> FiniteAlgebra:
    """S_n with multiplication ``(pq)(x) = p(q(x))``, inverse and identity."""
    if not 1 <= n <= 5:
        raise ContractViolation("symmetric_group supports 1 <= n <= 5")
    return _perm_group(list(permutations(range(n))), f"S{n}")


def alternating_group(n: int) -> FiniteAlgebra:
    if not 1 <= n <= 5:
        raise ContractViolation("alternating_group supports 1 <= n <= 5")
    return _perm_group([p for p in permutations(range(n)) if _parity(p) == 0], f"A{n}")


def cyclic_group(n: int) -> FiniteAlgebra:
    if n < 1:
        raise ContractViolation("cyclic group order must be >= 1")
    r = np.arange(n)
    ops = (
        Operation(2, (r[:, None] + r[None, :]) % n),
        Operation(1, (-r) % n),
        Operation(0, np.array(0)),
    )
    return FiniteAlgebra(n, ops, tuple(str(i) for i in range(n)), f"Z{n}")


def boolean_algebra(k: int) -> FiniteAlgebra:
    """The Boolean algebra of subsets of ``k`` atoms: meet, join, complement, 0, 1."""
    if not 1 <= k <= 4:
        raise ContractViolation("boolean_algebra supports 1 <= k <= 4 atoms")
    n = 1 << k
    r = np.arange(n)
    top = n - 1
    ops = (
        Operation(2, r[:, None] & r[None, :]),
        Operation(2, r[:, None] | r[None, :]),
        Operation(1, top ^ r),
        Operation(0, np.array(0)),
        Operation(0, np.array(top)),
    )
    atoms = "abcd"

    def label(x: int) -> str:
        if x == 0:
            return "0"
        if x == top:
            return "1"
        return "|".join(atoms[i] for i in range(k) if x >> i & 1)

    return FiniteAlgebra(n, ops, tuple(label(x) for x in range(n)), f"B{k}")


def monounary_as_fa(f: Sequence[int]) -> FiniteAlgebra:
    """A monounary algebra viewed as an operation-table algebra."""
    return FiniteAlgebra(len(f), (Operation(1, np.array(f, dtype=np.int64)),))


def builtin(spec: str) -> FiniteAlgebra:
    """Parse ``sym:4``, ``alt:4``, ``bool:3`` or ``cyc:6``."""
    try:
        kind, arg = spec.split(":")
        k = int(arg)
    except ValueError:
        raise ParseError(f"malformed builtin {spec!r}, expected kind:size") from None
    makers = {"sym": symmetric_group, "alt": alternating_group, "bool": boolean_algebra, "cyc": cyclic_group}
    if kind not in makers:
        raise ParseError(f"unknown builtin kind {kind!r}; choose from {', '.join(sorted(makers))}")
    return makers[kind](k)
