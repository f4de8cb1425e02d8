"""Generator distance between finite monounary algebras.

The distance is computed by three nested reductions:

1. algebras: optimal matching of connected components, unmatched
   components of the larger side costing their MGen;
2. connected algebras: different core lengths cost MGen(a) + MGen(b),
   equal core lengths are compared tree by tree under the best rotation;
3. tree algebras: the distance of the forests of main subtrees, which is
   again a matching problem on strictly shallower trees.

Tree distances are memoized on pairs of rooted-tree codes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .assignment import assignment_min
from .errors import ContractViolation
from .monounary import (
    Component,
    MonoAlg,
    attach_tail,
    code_mgen,
    components,
    disjoint_union,
    find_isomorphism,
    generate,
    independent_elements,
    induced,
    make_mpl,
    mgen,
    split_codes,
    tree_root,
)

INF = math.inf

Distance = int | float
"""A non-negative integer, or ``math.inf`` for disconnected algebras."""

__all__ = [
    "INF",
    "Distance",
    "CostMatrix",
    "LargeEmbedWitness",
    "tree_distance",
    "forest_distance",
    "connected_distance",
    "cost_matrix",
    "distance",
    "is_largely_embeddable",
    "verify_witness",
    "push_up_witness",
]


# --------------------------------------------------------------------------
# code-level recursion


def _tree_code(t: MonoAlg) -> bytes:
    tree_root(t)
    return t._structure.comp_codes[0]


@lru_cache(maxsize=None)
def _children(code: bytes) -> tuple[bytes, ...]:
    return tuple(split_codes(code[1:-1]))


def _cycle_mgen(seq: Sequence[bytes]) -> int:
    # a cycle vertex's own "()" is not a source
    return sum(code_mgen(t) for t in seq if t != b"()") or 1


@lru_cache(maxsize=None)
def _tree_dist(c1: bytes, c2: bytes) -> int:
    if c1 == c2:
        return 0
    return _forest_dist(_children(c1), _children(c2))


def _pair_tree_dist(c1: bytes, c2: bytes) -> int:
    return _tree_dist(c1, c2) if c1 <= c2 else _tree_dist(c2, c1)


def _match_cost(rows: Sequence, cols: Sequence, pair, unmatched) -> tuple[list[list[int]], bool]:
    """Square cost matrix with phantom rows; swaps so that rows <= cols."""
    swapped = len(rows) > len(cols)
    if swapped:
        rows, cols = cols, rows
    matrix = [[pair(r, c) for c in cols] for r in rows]
    phantom = [unmatched(c) for c in cols]
    matrix.extend(list(phantom) for _ in range(len(cols) - len(rows)))
    return matrix, swapped


def _forest_dist(f1: Sequence[bytes], f2: Sequence[bytes]) -> int:
    if not f1 and not f2:
        return 0
    matrix, _ = _match_cost(f1, f2, _pair_tree_dist, code_mgen)
    return assignment_min(matrix)[0]


def _cycle_dist(s1: Sequence[bytes], s2: Sequence[bytes]) -> int:
    n = len(s1)
    if n != len(s2):
        return _cycle_mgen(s1) + _cycle_mgen(s2)
    return min(sum(_pair_tree_dist(s1[i], s2[(i + k) % n]) for i in range(n)) for k in range(n))


def _cycle_seq(a: MonoAlg) -> tuple[bytes, ...]:
    s = a._structure
    if len(s.cycles) != 1:
        raise ContractViolation("expected a connected algebra")
    return tuple(split_codes(s.comp_codes[0]))


# --------------------------------------------------------------------------
# public distances


def tree_distance(t1: MonoAlg, t2: MonoAlg) -> int:
    """Distance between two tree algebras (connected, core of length 1)."""
    return _pair_tree_dist(_tree_code(t1), _tree_code(t2))


def forest_distance(f1: Sequence[MonoAlg], f2: Sequence[MonoAlg]) -> int:
    """Distance between two forests given as lists of tree algebras.

    The empty forest is allowed; its distance to ``F`` is the total MGen of ``F``.
    """
    return _forest_dist([_tree_code(t) for t in f1], [_tree_code(t) for t in f2])


def _as_algebra(x: Component | MonoAlg) -> MonoAlg:
    return x.algebra() if isinstance(x, Component) else x


def connected_distance(a: Component | MonoAlg, b: Component | MonoAlg) -> int:
    return _cycle_dist(_cycle_seq(_as_algebra(a)), _cycle_seq(_as_algebra(b)))


@dataclass(frozen=True)
class CostMatrix:
    """Square matching problem between the components of two algebras.

    ``rows`` index the components of the algebra with fewer components
    (``swapped`` tells whether that is the second argument), followed by
    ``phantom`` rows whose entries are the MGen of each column component.
    """

    entries: tuple[tuple[int, ...], ...]
    phantom: int
    swapped: bool

    @property
    def size(self) -> int:
        return len(self.entries)


def _component_seqs(a: MonoAlg) -> list[tuple[bytes, ...]]:
    return [tuple(split_codes(c)) for c in a._structure.comp_codes]


def cost_matrix(a: MonoAlg, b: MonoAlg) -> CostMatrix:
    ca, cb = _component_seqs(a), _component_seqs(b)
    matrix, swapped = _match_cost(ca, cb, _cycle_dist, _cycle_mgen)
    phantom = abs(len(ca) - len(cb))
    return CostMatrix(tuple(map(tuple, matrix)), phantom, swapped)


def distance(a: MonoAlg, b: MonoAlg) -> int:
    """Generator distance between two finite monounary algebras."""
    if a.code == b.code:
        return 0
    return assignment_min(cost_matrix(a, b).entries)[0]


# --------------------------------------------------------------------------
# large embeddings


@dataclass(frozen=True)
class LargeEmbedWitness:
    """Certificate that ``A`` is largely embeddable into ``B``.

    ``kind`` is ``"disjoint-mpl"`` with ``params = (n, l)`` when ``B`` is ``A``
    plus a separate ``M(n, l)`` component, or ``"tail"`` with
    ``params = (at, m)`` when ``B`` is ``A`` with an ``m``-element tail hanging
    at ``at`` (an element of ``B``).  ``embedding[x]`` is the image of
    ``x in A`` and ``generator`` is the extra element of ``B``.
    """

    kind: str
    params: tuple[int, int]
    embedding: tuple[int, ...]
    generator: int


def _indegrees(b: MonoAlg) -> list[int]:
    deg = [0] * b.n
    for y in b.f:
        deg[y] += 1
    return deg


def _try_rest(a: MonoAlg, b: MonoAlg, removed: set[int]) -> tuple[int, ...] | None:
    rest = [x for x in range(b.n) if x not in removed]
    sub, labels = induced(b, rest)
    iso = find_isomorphism(a, sub)
    if iso is None:
        return None
    return tuple(labels[y] for y in iso)


def is_largely_embeddable(a: MonoAlg, b: MonoAlg) -> tuple[bool, LargeEmbedWitness | None]:
    """Decide whether ``a`` is isomorphic to a large subalgebra of ``b``."""
    t = b.n - a.n
    if t < 0:
        return False, None
    if t == 0:
        iso = find_isomorphism(a, b)
        if iso is None:
            return False, None
        return True, LargeEmbedWitness("tail", (iso[0], 0), iso, iso[0])

    # a separate one-generated component of size t
    for comp in components(b):
        if len(comp) != t or t == b.n:
            continue
        alg = comp.algebra()
        if mgen(alg) != 1:
            continue
        emb = _try_rest(a, b, set(comp.elements))
        if emb is not None:
            cyc = len(comp.cycle)
            sources = sorted(independent_elements(alg))
            gen = comp.elements[sources[0]] if sources else comp.cycle[0]
            return True, LargeEmbedWitness("disjoint-mpl", (cyc, t - cyc), emb, gen)

    # a tail of t elements ending in a source
    deg = _indegrees(b)
    f = b.f
    for x0 in sorted(independent_elements(b)):
        prefix = [x0]
        x = x0
        ok = True
        for _ in range(t - 1):
            x = f[x]
            if deg[x] != 1:
                ok = False
                break
            prefix.append(x)
        if not ok:
            continue
        emb = _try_rest(a, b, set(prefix))
        if emb is not None:
            return True, LargeEmbedWitness("tail", (f[prefix[-1]], t), emb, x0)
    return False, None


def verify_witness(a: MonoAlg, b: MonoAlg, w: LargeEmbedWitness) -> bool:
    """Check that ``w`` really exhibits ``a`` as a large subalgebra of ``b``."""
    emb = w.embedding
    if len(emb) != a.n or len(set(emb)) != a.n or not all(0 <= y < b.n for y in emb):
        return False
    if any(emb[a.f[x]] != b.f[emb[x]] for x in range(a.n)):
        return False
    if not 0 <= w.generator < b.n:
        return False
    image = set(emb)
    if generate(b, image | {w.generator}) != frozenset(range(b.n)):
        return False
    if w.kind == "tail":
        at, m = w.params
        return b.n - a.n == m and (m == 0 or at in image)
    if w.kind == "disjoint-mpl":
        n, l = w.params
        return n >= 1 and b.n - a.n == n + l
    return False


def push_up_witness(c: MonoAlg, a: MonoAlg, wa: LargeEmbedWitness, b: MonoAlg, wb: LargeEmbedWitness) -> MonoAlg:
    """An algebra ``D`` into which both ``a`` and ``b`` embed largely.

    ``wa`` certifies ``c`` into ``a`` and ``wb`` certifies ``c`` into ``b``.
    A separate ``M(n, l)`` added on one side is added to the other side; two
    tails are combined by hanging ``b``'s tail on ``a`` at the image of the
    same element of ``c``.
    """
    if not verify_witness(c, a, wa) or not verify_witness(c, b, wb):
        raise ContractViolation("witness does not certify a large embedding")
    if wa.kind == "disjoint-mpl":
        return disjoint_union(b, make_mpl(*wa.params))
    if wb.kind == "disjoint-mpl":
        return disjoint_union(a, make_mpl(*wb.params))
    at_b, m = wb.params
    if m == 0:
        return a
    c_point = wb.embedding.index(at_b)
    return attach_tail(a, wa.embedding[c_point], m)
