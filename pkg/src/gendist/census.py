"""Enumeration of finite monounary algebras up to isomorphism.

Algebras are handled structurally rather than as function tables:

* a rooted tree is the sorted tuple of its children's tree ids,
* a component is its cycle's tree ids in least rotation,
* an algebra is the sorted tuple of its component ids.

All three levels are interned to small integers, so isomorphism is equality
of keys.  Size ``s + 1`` classes are obtained from size ``s`` classes by
hanging a new leaf anywhere, plus the unions of bare cycles.  The large
embeddings between classes are enumerated downwards: a class ``B`` is joined
to ``B`` minus a removable tail (a chain-shaped subtree hanging off some
vertex) and to ``B`` minus a whole one-generated component.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from .monounary import MonoAlg, least_rotation

log = logging.getLogger(__name__)

LEAF = 0
HARD_LIMIT = 14


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


class MonounaryCensus:
    """All isomorphism classes of monounary algebras with at most ``cap`` elements.

    Vertices are numbered by increasing size, so the classes of size at most
    ``c`` are exactly the indices below ``self.bound(c)``.
    """

    def __init__(self, cap: int, hard_limit: int = HARD_LIMIT):
        if cap < 1:
            raise ValueError("cap must be >= 1")
        if cap > hard_limit:
            raise ValueError(f"cap {cap} exceeds the hard limit of {hard_limit} elements")
        self.cap = cap
        self._trees: list[tuple[int, ...]] = [()]
        self._tree_ids: dict[tuple[int, ...], int] = {(): LEAF}
        self._tree_size: list[int] = [1]
        self._comps: list[tuple[int, ...]] = []
        self._comp_ids: dict[tuple[int, ...], int] = {}
        self._comp_size: list[int] = []
        self._comp_leaves: list[int] = []

        self.keys: list[tuple[int, ...]] = []
        self.index: dict[tuple[int, ...], int] = {}
        self._level_start = [0, 0]
        self._enumerate()
        self.indptr, self.indices = self._edges()

    # -- interning ---------------------------------------------------------

    def _tree(self, children: tuple[int, ...]) -> int:
        tid = self._tree_ids.get(children)
        if tid is None:
            tid = len(self._trees)
            self._trees.append(children)
            self._tree_ids[children] = tid
            self._tree_size.append(1 + sum(self._tree_size[c] for c in children))
        return tid

    def _comp(self, seq: tuple[int, ...]) -> int:
        r = least_rotation(seq)
        if r:
            seq = seq[r:] + seq[:r]
        cid = self._comp_ids.get(seq)
        if cid is None:
            cid = len(self._comps)
            self._comps.append(seq)
            self._comp_ids[seq] = cid
            self._comp_size.append(sum(self._tree_size[t] for t in seq))
            self._comp_leaves.append(sum(self._tree_leaves(t) for t in seq) or 1)
        return cid

    def _tree_leaves(self, t: int) -> int:
        """Leaves strictly below the root (the root itself sits on the cycle)."""
        ch = self._trees[t]
        return sum(self._leaf_count(c) for c in ch)

    def _leaf_count(self, t: int) -> int:
        ch = self._trees[t]
        return 1 if not ch else sum(self._leaf_count(c) for c in ch)

    # -- local moves on trees and components -------------------------------

    @lru_cache(maxsize=None)
    def _grow_tree(self, t: int) -> tuple[int, ...]:
        ch = self._trees[t]
        out = {self._tree(tuple(sorted(ch + (LEAF,))))}
        for i, c in enumerate(ch):
            if i and ch[i - 1] == c:
                continue
            rest = ch[:i] + ch[i + 1 :]
            for c2 in self._grow_tree(c):
                out.add(self._tree(tuple(sorted(rest + (c2,)))))
        return tuple(sorted(out))

    @lru_cache(maxsize=None)
    def _chain_length(self, t: int) -> int:
        """Node count if the tree is a bare path, else 0."""
        ch = self._trees[t]
        if not ch:
            return 1
        if len(ch) == 1:
            below = self._chain_length(ch[0])
            return below + 1 if below else 0
        return 0

    @lru_cache(maxsize=None)
    def _prune_tree(self, t: int) -> tuple[tuple[int, int], ...]:
        """``(m, t')`` for every way of cutting an ``m``-element tail off ``t``."""
        ch = self._trees[t]
        out = set()
        for i, c in enumerate(ch):
            if i and ch[i - 1] == c:
                continue
            rest = ch[:i] + ch[i + 1 :]
            m = self._chain_length(c)
            if m:
                out.add((m, self._tree(rest)))
            for m2, c2 in self._prune_tree(c):
                out.add((m2, self._tree(tuple(sorted(rest + (c2,))))))
        return tuple(sorted(out))

    @lru_cache(maxsize=None)
    def _grow_comp(self, cid: int) -> tuple[int, ...]:
        seq = self._comps[cid]
        out = set()
        for i, t in enumerate(seq):
            for t2 in self._grow_tree(t):
                out.add(self._comp(seq[:i] + (t2,) + seq[i + 1 :]))
        return tuple(sorted(out))

    @lru_cache(maxsize=None)
    def _prune_comp(self, cid: int) -> tuple[tuple[int, int], ...]:
        seq = self._comps[cid]
        out = set()
        for i, t in enumerate(seq):
            for m, t2 in self._prune_tree(t):
                out.add((m, self._comp(seq[:i] + (t2,) + seq[i + 1 :])))
        return tuple(sorted(out))

    # -- enumeration -------------------------------------------------------

    def _enumerate(self) -> None:
        cycle_comp = {k: self._comp((LEAF,) * k) for k in range(1, self.cap + 1)}
        prev: list[tuple[int, ...]] = []
        for size in range(1, self.cap + 1):
            level: set[tuple[int, ...]] = set()
            for key in prev:
                for i, c in enumerate(key):
                    if i and key[i - 1] == c:
                        continue
                    rest = key[:i] + key[i + 1 :]
                    for c2 in self._grow_comp(c):
                        level.add(tuple(sorted(rest + (c2,))))
            for parts in _partitions(size):
                level.add(tuple(sorted(cycle_comp[k] for k in parts)))
            prev = sorted(level)
            for key in prev:
                self.index[key] = len(self.keys)
                self.keys.append(key)
            self._level_start.append(len(self.keys))
            log.debug("census size %d: %d classes", size, len(prev))

    def _edges(self) -> tuple[np.ndarray, np.ndarray]:
        src: list[int] = []
        dst: list[int] = []
        for b, key in enumerate(self.keys):
            targets = set()
            for i, c in enumerate(key):
                if i and key[i - 1] == c:
                    continue
                rest = key[:i] + key[i + 1 :]
                for _, c2 in self._prune_comp(c):
                    targets.add(self.index[tuple(sorted(rest + (c2,)))])
                if rest and self._comp_leaves[c] == 1:
                    targets.add(self.index[rest])
            for a in targets:
                src.append(b)
                dst.append(a)
        n = len(self.keys)
        s = np.array(src + dst, dtype=np.int32)
        d = np.array(dst + src, dtype=np.int32)
        order = np.lexsort((d, s))
        s, d = s[order], d[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, s + 1, 1)
        np.cumsum(indptr, out=indptr)
        return indptr, d

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def bound(self, size: int) -> int:
        """Number of classes with at most ``size`` elements."""
        return self._level_start[min(size, self.cap) + 1]

    def size_of(self, v: int) -> int:
        return sum(self._comp_size[c] for c in self.keys[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def vertex_of(self, a: MonoAlg) -> int:
        """Census index of the class of ``a``."""
        if a.n > self.cap:
            raise KeyError(f"algebra of size {a.n} exceeds census cap {self.cap}")
        s = a._structure
        tid = [0] * a.n
        bfs = [v for v in range(a.n) if s.on_cycle[v]]
        head = 0
        while head < len(bfs):
            bfs.extend(s.children[bfs[head]])
            head += 1
        for v in reversed(bfs):
            tid[v] = self._tree(tuple(sorted(tid[c] for c in s.children[v])))
        key = tuple(sorted(self._comp(tuple(tid[c] for c in cyc)) for cyc in s.cycles))
        return self.index[key]

    def algebra(self, v: int) -> MonoAlg:
        """A representative function table for class ``v``."""
        f: list[int] = []
        for cid in self.keys[v]:
            seq = self._comps[cid]
            base = len(f)
            k = len(seq)
            f.extend(base + (i + 1) % k for i in range(k))
            for i, t in enumerate(seq):
                stack = [(c, base + i) for c in self._trees[t]]
                while stack:
                    tree, parent = stack.pop()
                    me = len(f)
                    f.append(parent)
                    stack.extend((c, me) for c in self._trees[tree])
        return MonoAlg(tuple(f))

    def distances_from(self, source: int, size_cap: int | None = None) -> np.ndarray:
        """Blue-length distances from ``source`` among classes of size <= ``size_cap``.

        Unreachable classes get -1.  Every class is its own isomorphism class
        here, so there are no zero-cost edges and a level BFS suffices.
        """
        limit = self.bound(self.cap if size_cap is None else size_cap)
        if not 0 <= source < limit:
            raise KeyError(f"vertex {source} is not in the network")
        dist = np.full(limit, -1, dtype=np.int32)
        dist[source] = 0
        frontier = np.array([source], dtype=np.int64)
        indptr, indices = self.indptr, self.indices
        d = 0
        while frontier.size:
            starts = indptr[frontier]
            lengths = indptr[frontier + 1] - starts
            total = int(lengths.sum())
            if not total:
                break
            offsets = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
            nbrs = indices[offsets + np.arange(total)]
            nbrs = nbrs[nbrs < limit]
            nbrs = nbrs[dist[nbrs] < 0]
            if not nbrs.size:
                break
            nbrs = np.unique(nbrs)
            d += 1
            dist[nbrs] = d
            frontier = nbrs.astype(np.int64)
        return dist
