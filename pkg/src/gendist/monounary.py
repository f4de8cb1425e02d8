"""Finite monounary algebras as functional graphs.

A monounary algebra on ``{0, ..., n-1}`` is stored as the tuple ``f`` with
``f[i]`` the image of ``i``.  Every finite connected algebra has exactly one
cycle (its core) with in-trees hanging off the cycle vertices; the canonical
code below is built from that picture:

* each non-cycle vertex gets an AHU code ``(`` + sorted child codes + ``)``,
* a cycle vertex gets the same kind of code over its non-cycle children,
* a component is the lexicographically least rotation of its cycle's codes,
* the algebra is the sorted multiset of component codes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ContractViolation, ParseError

__all__ = [
    "MonoAlg",
    "Component",
    "CoreInfo",
    "CanonicalCode",
    "parse_mua",
    "format_mua",
    "components",
    "core_of",
    "independent_elements",
    "mgen",
    "generate",
    "canonical_code",
    "canonical_form",
    "find_isomorphism",
    "is_isomorphic",
    "disjoint_union",
    "attach_tail",
    "make_cycle",
    "make_mpl",
    "induced",
    "is_tree",
    "tree_root",
    "tree_decomposition",
    "associated_forest",
    "tree_of_forest",
    "relabel",
    "random_relabel",
    "least_rotation",
    "split_codes",
    "code_mgen",
]


def least_rotation(seq: Sequence) -> int:
    """Start index of the lexicographically least rotation of ``seq``."""
    n = len(seq)
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        a = seq[(i + k) % n]
        b = seq[(j + k) % n]
        if a == b:
            k += 1
            continue
        if a > b:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
        k = 0
    return min(i, j) if n else 0


def split_codes(code: bytes) -> list[bytes]:
    """Split a concatenation of balanced ``(...)`` groups into its groups."""
    out = []
    depth = 0
    start = 0
    for pos, ch in enumerate(code):
        if ch == 40:  # "("
            if depth == 0:
                start = pos
            depth += 1
        else:
            depth -= 1
            if depth == 0:
                out.append(code[start : pos + 1])
    return out


def code_mgen(code: bytes) -> int:
    """MGen of a tree algebra given by its rooted-tree code (= leaf count)."""
    return code.count(b"()")


class _Structure:
    """Cycle/tree analysis of one function table, computed once per algebra."""

    __slots__ = ("on_cycle", "children", "codes", "cycles", "members", "order", "comp_codes")

    def __init__(self, f: tuple[int, ...]):
        n = len(f)
        preds: list[list[int]] = [[] for _ in range(n)]
        for x, y in enumerate(f):
            preds[y].append(x)

        on_cycle = [False] * n
        state = [0] * n
        cycles: list[list[int]] = []
        for s in range(n):
            if state[s]:
                continue
            path = []
            x = s
            while not state[x]:
                state[x] = 1
                path.append(x)
                x = f[x]
            if state[x] == 1:
                cyc = [x]
                on_cycle[x] = True
                y = f[x]
                while y != x:
                    on_cycle[y] = True
                    cyc.append(y)
                    y = f[y]
                m = cyc.index(min(cyc))
                cycles.append(cyc[m:] + cyc[:m])
            for p in path:
                state[p] = 2
        cycles.sort(key=lambda c: c[0])

        children = [[p for p in preds[v] if not on_cycle[p]] for v in range(n)]

        # bottom-up AHU codes: BFS outward from the cycles, then reverse
        bfs = [v for v in range(n) if on_cycle[v]]
        head = 0
        while head < len(bfs):
            bfs.extend(children[bfs[head]])
            head += 1
        codes: list[bytes] = [b""] * n
        for v in reversed(bfs):
            ch = children[v]
            if not ch:
                codes[v] = b"()"
            elif len(ch) == 1:
                codes[v] = b"(" + codes[ch[0]] + b")"
            else:
                codes[v] = b"(" + b"".join(sorted(codes[c] for c in ch)) + b")"

        members: list[list[int]] = []
        comp_entries = []
        for idx, cyc in enumerate(cycles):
            seq = [codes[c] for c in cyc]
            r = least_rotation(seq)
            rot = cyc[r:] + cyc[:r]
            ccode = b"".join(seq[r:] + seq[:r])
            # canonical traversal: rotated cycle, then each in-tree in preorder
            trav = list(rot)
            for c in rot:
                stack = sorted(children[c], key=codes.__getitem__, reverse=True)
                while stack:
                    v = stack.pop()
                    trav.append(v)
                    if children[v]:
                        stack.extend(sorted(children[v], key=codes.__getitem__, reverse=True))
            members.append(sorted(trav))
            comp_entries.append((ccode, idx, trav))

        comp_entries.sort(key=lambda e: (e[0], e[1]))
        order: list[int] = []
        for _, _, trav in comp_entries:
            order.extend(trav)

        self.on_cycle = on_cycle
        self.children = children
        self.codes = codes
        self.cycles = cycles
        self.members = members
        self.order = order
        self.comp_codes = [e[0] for e in comp_entries]


@dataclass(frozen=True)
class CanonicalCode:
    """Isomorphism-invariant code of a finite monounary algebra.

    ``data`` is the bracketed, sorted list of component codes; ``components``
    is the number of connected components (1 for a connected algebra).
    """

    data: bytes
    components: int

    @property
    def connected(self) -> bool:
        return self.components == 1

    def __str__(self) -> str:
        return self.data.decode("ascii")


@dataclass(frozen=True)
class MonoAlg:
    """A finite monounary algebra: the self-map ``f`` on ``{0, ..., n-1}``."""

    f: tuple[int, ...]

    def __post_init__(self) -> None:
        f = tuple(self.f)
        object.__setattr__(self, "f", f)
        n = len(f)
        if n < 1:
            raise ContractViolation("a monounary algebra needs at least one element")
        for i, y in enumerate(f):
            if not isinstance(y, int) or not 0 <= y < n:
                raise ContractViolation(f"f[{i}] = {y!r} is outside [0, {n})")

    @property
    def n(self) -> int:
        return len(self.f)

    def __len__(self) -> int:
        return len(self.f)

    @cached_property
    def _structure(self) -> _Structure:
        return _Structure(self.f)

    @cached_property
    def code(self) -> CanonicalCode:
        s = self._structure
        return CanonicalCode(b"".join(b"[" + c + b"]" for c in s.comp_codes), len(s.comp_codes))

    def __repr__(self) -> str:
        return f"MonoAlg({list(self.f)})"


@dataclass(frozen=True)
class CoreInfo:
    """The cycle of a connected component, oriented along ``f``."""

    cycle: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class Component:
    """A connected component of ``parent``; ``elements`` is sorted."""

    parent: MonoAlg
    elements: tuple[int, ...]
    cycle: tuple[int, ...] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def algebra(self) -> MonoAlg:
        """The component as a standalone algebra, labels in sorted order."""
        return induced(self.parent, self.elements)[0]


# --------------------------------------------------------------------------
# parsing


def parse_mua(text: str) -> MonoAlg:
    """Parse the ``.mua`` format: ``n`` followed by ``n`` images.

    Lines starting with ``#`` are comments.  Tokens may be split over lines
    arbitrarily.
    """
    tokens: list[tuple[str, int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for pos, tok in enumerate(stripped.split(), start=1):
            tokens.append((tok, lineno, pos))
    if not tokens:
        raise ParseError("empty input, expected element count")

    def as_int(tok: str, lineno: int, pos: int) -> int:
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, pos) from None

    n = as_int(*tokens[0])
    if n < 1:
        raise ParseError(f"element count must be >= 1, got {n}", tokens[0][1], tokens[0][2])
    body = tokens[1:]
    if len(body) != n:
        last = tokens[-1]
        raise ParseError(f"expected {n} images, found {len(body)}", last[1], last[2])
    f = []
    for tok, lineno, pos in body:
        y = as_int(tok, lineno, pos)
        if not 0 <= y < n:
            raise ParseError(f"image {y} out of range [0, {n})", lineno, pos)
        f.append(y)
    return MonoAlg(tuple(f))


def format_mua(a: MonoAlg) -> str:
    return f"{a.n}\n{' '.join(map(str, a.f))}\n"


# --------------------------------------------------------------------------
# structure


def components(a: MonoAlg) -> list[Component]:
    """Connected components, ordered by their minimal element."""
    s = a._structure
    comps = [Component(a, tuple(m), tuple(c)) for m, c in zip(s.members, s.cycles)]
    comps.sort(key=lambda c: c.elements[0])
    return comps


def core_of(c: Component | MonoAlg) -> CoreInfo:
    """The cycle of a component, starting at its minimal cycle element."""
    if isinstance(c, MonoAlg):
        cycles = c._structure.cycles
        if len(cycles) != 1:
            raise ContractViolation("core_of needs a connected algebra")
        return CoreInfo(tuple(cycles[0]))
    return CoreInfo(c.cycle)


def independent_elements(a: MonoAlg) -> frozenset[int]:
    """Elements with no preimage under ``f``."""
    hit = set(a.f)
    return frozenset(x for x in range(a.n) if x not in hit)


def mgen(a: MonoAlg | Component) -> int:
    """Minimum number of generators.

    Per component: the number of independent elements, or 1 for a bare cycle.
    """
    if isinstance(a, Component):
        a = a.algebra()
    s = a._structure
    total = 0
    for mem in s.members:
        # cycle vertices always have a preimage, so sources are tree leaves
        leaves = sum(1 for v in mem if not s.on_cycle[v] and not s.children[v])
        total += leaves or 1
    return total


def generate(a: MonoAlg, x: Iterable[int]) -> frozenset[int]:
    """The subuniverse generated by ``x`` (forward orbit closure)."""
    seen: set[int] = set()
    f = a.f
    for start in x:
        if not 0 <= start < a.n:
            raise ContractViolation(f"element {start} not in the universe")
        v = start
        while v not in seen:
            seen.add(v)
            v = f[v]
    return frozenset(seen)


def canonical_code(a: MonoAlg) -> CanonicalCode:
    return a.code


def canonical_form(a: MonoAlg) -> tuple[MonoAlg, tuple[int, ...]]:
    """Relabel ``a`` into its canonical representative.

    Returns ``(form, order)`` where ``order[k]`` is the element of ``a`` that
    becomes ``k`` in ``form``.  Isomorphic algebras have identical forms.
    """
    order = a._structure.order
    pos = [0] * a.n
    for k, v in enumerate(order):
        pos[v] = k
    form = MonoAlg(tuple(pos[a.f[v]] for v in order))
    return form, tuple(order)


def find_isomorphism(a: MonoAlg, b: MonoAlg) -> tuple[int, ...] | None:
    """An isomorphism ``a -> b`` as a tuple of images, or None."""
    if a.n != b.n or a.code != b.code:
        return None
    oa = a._structure.order
    ob = b._structure.order
    iso = [0] * a.n
    for x, y in zip(oa, ob):
        iso[x] = y
    return tuple(iso)


def is_isomorphic(a: MonoAlg, b: MonoAlg) -> bool:
    return a.n == b.n and a.code == b.code


# --------------------------------------------------------------------------
# constructions


def relabel(a: MonoAlg, perm: Sequence[int]) -> MonoAlg:
    """The algebra obtained by renaming element ``x`` to ``perm[x]``."""
    g = [0] * a.n
    for x, y in enumerate(a.f):
        g[perm[x]] = perm[y]
    return MonoAlg(tuple(g))


def random_relabel(a: MonoAlg, rng: random.Random) -> MonoAlg:
    perm = list(range(a.n))
    rng.shuffle(perm)
    return relabel(a, perm)


def induced(a: MonoAlg, keep: Iterable[int]) -> tuple[MonoAlg, tuple[int, ...]]:
    """Restriction of ``a`` to an ``f``-closed subset.

    Elements are renumbered in increasing order; the second value lists the
    original label of each new element.
    """
    keep = tuple(sorted(set(keep)))
    index = {v: i for i, v in enumerate(keep)}
    try:
        g = tuple(index[a.f[v]] for v in keep)
    except KeyError:
        raise ContractViolation("subset is not closed under f") from None
    return MonoAlg(g), keep


def disjoint_union(a: MonoAlg, b: MonoAlg) -> MonoAlg:
    shift = a.n
    return MonoAlg(a.f + tuple(y + shift for y in b.f))


def attach_tail(a: MonoAlg, at: int, m: int) -> MonoAlg:
    """Attach fresh elements ``x_0 -> ... -> x_{m-1} -> at``.

    The new elements get labels ``n, ..., n+m-1`` with ``x_0 = n``.
    """
    if not 0 <= at < a.n:
        raise ContractViolation(f"attachment point {at} not in the universe")
    if m < 0:
        raise ContractViolation("tail length must be >= 0")
    n = a.n
    tail = tuple(n + i + 1 for i in range(m - 1)) + ((at,) if m else ())
    return MonoAlg(a.f + tail)


def make_cycle(n: int) -> MonoAlg:
    if n < 1:
        raise ContractViolation("cycle length must be >= 1")
    return MonoAlg(tuple((i + 1) % n for i in range(n)))


def make_mpl(n: int, l: int) -> MonoAlg:
    """Cycle of length ``n`` with a tail of length ``l``; the tail end is ``n``."""
    if l < 0:
        raise ContractViolation("tail length must be >= 0")
    return attach_tail(make_cycle(n), 0, l)


# --------------------------------------------------------------------------
# tree algebras


def is_tree(a: MonoAlg) -> bool:
    cycles = a._structure.cycles
    return len(cycles) == 1 and len(cycles[0]) == 1


def tree_root(t: MonoAlg) -> int:
    if not is_tree(t):
        raise ContractViolation("expected a tree algebra (connected, core of length 1)")
    return t._structure.cycles[0][0]


def _subtree(a: MonoAlg, root: int) -> tuple[MonoAlg, tuple[int, ...]]:
    """The in-tree of ``a`` below ``root`` as a tree algebra, root looped."""
    s = a._structure
    elems = [root]
    head = 0
    while head < len(elems):
        elems.extend(s.children[elems[head]])
        head += 1
    elems.sort()
    index = {v: i for i, v in enumerate(elems)}
    g = tuple(index[root] if v == root else index[a.f[v]] for v in elems)
    return MonoAlg(g), tuple(elems)


def tree_decomposition(c: Component | MonoAlg) -> list[MonoAlg]:
    """In-trees rooted at the cycle vertices, in cycle order.

    The list starts at the minimal cycle element and follows ``f``.
    """
    if isinstance(c, Component):
        parent, cycle = c.parent, c.cycle
    else:
        cycles = c._structure.cycles
        if len(cycles) != 1:
            raise ContractViolation("tree_decomposition needs a connected algebra")
        parent, cycle = c, tuple(cycles[0])
    return [_subtree(parent, r)[0] for r in cycle]


def associated_forest(t: MonoAlg) -> list[MonoAlg]:
    """Main subtrees of a tree algebra, each child of the root re-looped."""
    root = tree_root(t)
    return [_subtree(t, child)[0] for child in sorted(t._structure.children[root])]


def tree_of_forest(forest: Sequence[MonoAlg]) -> MonoAlg:
    """Join the roots of the given trees under a fresh looped root ``0``."""
    g = [0]
    for tree in forest:
        root = tree_root(tree)
        shift = len(g)
        g.extend(0 if v == root else tree.f[v] + shift for v in range(tree.n))
    return MonoAlg(tuple(g))
