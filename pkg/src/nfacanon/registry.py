"""Equivalence registries mapping metastates to DFA states modulo language.

A registry supports three operations: ``get`` looks up a DFA state whose
language equals the queried metastate's, ``put`` links a metastate to a
freshly created state, and ``unify`` records that two DFA states were found
language-equivalent (by intermediate minimization).  Metastates are integer
bitmasks over NFA states.

Three implementations are provided:

* ``OneToOneRegistry`` -- plain hash map, ``unify`` is a no-op; reproduces
  classic subset construction.
* ``CCLRegistry`` -- convexity-closure lattices: each known equivalence class
  is summarized by a greatest element plus an antichain of minimal elements,
  covering every metastate sandwiched in between.
* ``CCLSRegistry`` -- CCL with a similarity preorder used to prune/saturate
  metastates, widening lattices without any ``unify`` calls.
"""

from __future__ import annotations

from typing import Optional, Protocol

from .simulation import Preorder, prune, saturate


class RegistryContractError(Exception):
    """A registry operation violated its contract (e.g. conflicting put)."""


class UnionFind:
    """Growable union-find over DFA state ids; the smallest id is the root."""

    def __init__(self):
        self._parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        parent = self._parent
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        root, other = (ra, rb) if ra < rb else (rb, ra)
        self._parent[other] = root
        return root


class Lattice:
    """Convexity-closed equivalence region of metastates.

    A metastate Q is covered iff Q is a subset of ``greatest`` and some
    element of ``minimals`` is a subset of Q.  ``minimals`` is an antichain.
    """

    __slots__ = ("rep", "greatest", "minimals")

    def __init__(self, rep: int, greatest: int, minimals: list[int]):
        self.rep = rep
        self.greatest = greatest
        self.minimals = minimals

    def covers(self, mask: int) -> bool:
        if mask | self.greatest != self.greatest:
            return False
        return any(m & mask == m for m in self.minimals)

    def absorb(self, greatest: int, minimals: list[int]) -> None:
        """Join another region into this one, refiltering the antichain."""
        self.greatest |= greatest
        self.minimals = _antichain(self.minimals + minimals)


def _antichain(elems: list[int]) -> list[int]:
    """Dedupe and drop every element with a strict subset in the list."""
    out = []
    seen = set()
    for m in elems:
        if m in seen:
            continue
        if any(o != m and o & m == o for o in elems):
            continue
        seen.add(m)
        out.append(m)
    return out


class Registry(Protocol):
    def get(self, mask: int) -> Optional[int]: ...
    def put(self, mask: int, state: int) -> None: ...
    def unify(self, q1: int, q2: int) -> None: ...


class OneToOneRegistry:
    """Exact hash-based registry; ``unify`` does nothing."""

    def __init__(self, uf: UnionFind | None = None):
        self._exact: dict[int, int] = {}
        self.uf = uf if uf is not None else UnionFind()

    def get(self, mask: int) -> Optional[int]:
        state = self._exact.get(mask)
        return None if state is None else self.uf.find(state)

    def put(self, mask: int, state: int) -> None:
        old = self._exact.setdefault(mask, state)
        if old != state:
            raise RegistryContractError(
                f"metastate already mapped to {old}, refusing remap to {state}"
            )

    def unify(self, q1: int, q2: int) -> None:
        pass


class CCLRegistry:
    """Convexity-closure-lattice registry.

    Lattices are keyed by union-find roots of their representative states;
    ``unify`` merges roots and joins the associated lattices.  The cover scan
    visits lattices in insertion order (most recently merged last); the first
    hit wins.  Setting ``cover_hits`` to a list records every non-exact hit
    as a (queried metastate, returned state) pair.
    """

    def __init__(self, uf: UnionFind | None = None):
        self._exact: dict[int, int] = {}
        self.uf = uf if uf is not None else UnionFind()
        self.lattices: dict[int, Lattice] = {}
        self.cover_hits: list[tuple[int, int]] | None = None

    def get(self, mask: int) -> Optional[int]:
        state = self._exact.get(mask)
        if state is not None:
            return self.uf.find(state)
        return self._scan(mask, mask)

    def put(self, mask: int, state: int) -> None:
        self._put(mask, state, mask, [mask])

    def unify(self, q1: int, q2: int) -> None:
        r1, r2 = self.uf.find(q1), self.uf.find(q2)
        if r1 == r2:
            return
        root = self.uf.union(r1, r2)
        l1 = self.lattices.pop(r1, None)
        l2 = self.lattices.pop(r2, None)
        if l1 is None:
            merged = l2
        elif l2 is None:
            merged = l1
        else:
            l1.absorb(l2.greatest, l2.minimals)
            merged = l1
        if merged is not None:
            merged.rep = root
            self.lattices[root] = merged

    def _put(self, mask: int, state: int, greatest: int, minimals: list[int]) -> None:
        old = self._exact.setdefault(mask, state)
        if old != state:
            raise RegistryContractError(
                f"metastate already mapped to {old}, refusing remap to {state}"
            )
        root = self.uf.find(state)
        existing = self.lattices.get(root)
        if existing is None:
            self.lattices[root] = Lattice(root, greatest, list(minimals))
        else:
            existing.absorb(greatest, minimals)

    def _scan(self, query: int, original: int) -> Optional[int]:
        for lat in self.lattices.values():
            if lat.covers(query):
                state = self.uf.find(lat.rep)
                if self.cover_hits is not None:
                    self.cover_hits.append((original, state))
                return state
        return None


class CCLSRegistry(CCLRegistry):
    """CCL refined by a similarity preorder on the input NFA.

    ``put`` stores a lattice spanning from the pruned to the saturated form
    of the metastate; ``get`` normalizes the query by pruning first.
    """

    def __init__(self, preorder: Preorder, uf: UnionFind | None = None):
        super().__init__(uf)
        self.preorder = preorder

    def get(self, mask: int) -> Optional[int]:
        state = self._exact.get(mask)
        if state is not None:
            return self.uf.find(state)
        return self._scan(prune(mask, self.preorder), mask)

    def put(self, mask: int, state: int) -> None:
        pruned = prune(mask, self.preorder)
        saturated = saturate(mask, self.preorder)
        self._put(mask, state, saturated, [pruned])
