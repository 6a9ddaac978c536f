"""Tests for the one-to-one, CCL, and CCLS equivalence registries."""

import random

import pytest

from nfacanon.automata import Nfa, to_mask
from nfacanon.registry import (
    CCLRegistry,
    CCLSRegistry,
    Lattice,
    OneToOneRegistry,
    RegistryContractError,
    UnionFind,
)
from nfacanon.simulation import Preorder, compute_similarity


class TestUnionFind:
    def test_smallest_id_is_root(self):
        uf = UnionFind()
        uf.union(5, 2)
        uf.union(2, 9)
        assert uf.find(5) == uf.find(9) == 2

    def test_unrelated_ids_stay_apart(self):
        uf = UnionFind()
        uf.union(0, 1)
        assert uf.find(2) == 2
        assert uf.find(1) == 0


class TestOneToOne:
    def test_put_then_get(self):
        reg = OneToOneRegistry()
        reg.put(to_mask([0]), 0)
        assert reg.get(to_mask([0])) == 0

    def test_unseen_undefined(self):
        reg = OneToOneRegistry()
        assert reg.get(to_mask([1, 2])) is None

    def test_unify_is_noop(self):
        reg = OneToOneRegistry()
        reg.put(to_mask([0]), 1)
        reg.put(to_mask([1]), 2)
        reg.unify(1, 2)
        assert reg.get(to_mask([0])) == 1
        assert reg.get(to_mask([1])) == 2

    def test_conflicting_put_rejected(self):
        reg = OneToOneRegistry()
        reg.put(to_mask([0]), 1)
        with pytest.raises(RegistryContractError):
            reg.put(to_mask([0]), 2)


def _masks(*sets):
    return [to_mask(s) for s in sets]


class TestCCL:
    def test_put_creates_singleton_lattice(self):
        reg = CCLRegistry()
        q = to_mask([1, 2])
        reg.put(q, 7)
        lat = reg.lattices[reg.uf.find(7)]
        assert lat.greatest == q
        assert lat.minimals == [q]
        assert lat.rep == 7

    def test_disjoint_puts_independent(self):
        reg = CCLRegistry()
        reg.put(to_mask([1, 2]), 0)
        reg.put(to_mask([3, 4]), 1)
        assert len(reg.lattices) == 2

    def test_empty_metastate_is_valid_key(self):
        reg = CCLRegistry()
        reg.put(0, 5)
        assert reg.get(0) == 5

    def test_unify_joins_lattices(self):
        reg = CCLRegistry()
        a, b = _masks([1, 2], [3, 4])
        reg.put(a, 0)
        reg.put(b, 1)
        reg.unify(0, 1)
        assert len(reg.lattices) == 1
        lat = reg.lattices[0]
        assert lat.greatest == a | b
        assert sorted(lat.minimals) == sorted([a, b])

    def test_unify_filters_dominated_minimals(self):
        reg = CCLRegistry()
        reg.put(to_mask([1, 2]), 0)
        reg.put(to_mask([1]), 1)
        reg.unify(0, 1)
        assert reg.lattices[0].minimals == [to_mask([1])]

    def test_unify_self_is_noop(self):
        reg = CCLRegistry()
        reg.put(to_mask([1, 2]), 0)
        before = (reg.lattices[0].greatest, list(reg.lattices[0].minimals))
        reg.unify(0, 0)
        assert (reg.lattices[0].greatest, reg.lattices[0].minimals) == before

    def test_get_covered_metastate(self):
        reg = CCLRegistry()
        reg.put(to_mask([1, 2]), 0)
        reg.put(to_mask([3, 4]), 1)
        reg.unify(0, 1)
        assert reg.get(to_mask([1, 2, 3])) == 0

    def test_get_above_cover_fails(self):
        reg = CCLRegistry()
        reg.put(to_mask([1, 2]), 0)
        reg.put(to_mask([3, 4]), 1)
        reg.unify(0, 1)
        assert reg.get(to_mask([1, 5])) is None

    def test_get_below_cover_fails(self):
        reg = CCLRegistry()
        reg.put(to_mask([1, 2]), 0)
        reg.put(to_mask([3, 4]), 1)
        reg.unify(0, 1)
        assert reg.get(to_mask([2, 4])) is None

    def test_convexity_closure_has_exactly_seven_elements(self):
        # merging regions {1,2} and {3,4}: of the 31 nonempty subsets of
        # {1..5}, exactly the 7 sandwiched between a minimal and the union
        # are covered
        reg = CCLRegistry()
        reg.put(to_mask([1, 2]), 0)
        reg.put(to_mask([3, 4]), 1)
        reg.unify(0, 1)
        covered = []
        universe = [1, 2, 3, 4, 5]
        for bits in range(1, 32):
            subset = [universe[i] for i in range(5) if bits >> i & 1]
            if reg.get(to_mask(subset)) is not None:
                covered.append(tuple(subset))
        expected = {
            (1, 2),
            (3, 4),
            (1, 2, 3),
            (1, 2, 4),
            (1, 3, 4),
            (2, 3, 4),
            (1, 2, 3, 4),
        }
        assert set(covered) == expected

    def test_cover_hits_recorded(self):
        reg = CCLRegistry()
        reg.cover_hits = []
        reg.put(to_mask([1, 2]), 0)
        reg.put(to_mask([3, 4]), 1)
        reg.unify(0, 1)
        assert reg.get(to_mask([1, 2])) == 0
        assert reg.cover_hits == []
        assert reg.get(to_mask([1, 2, 3])) == 0
        assert reg.cover_hits == [(to_mask([1, 2, 3]), 0)]

    def test_antichain_invariant_random_ops(self):
        rng = random.Random(11)
        reg = CCLRegistry()
        states = []
        for step in range(300):
            mask = to_mask([s for s in range(10) if rng.random() < 0.4])
            if mask not in reg._exact:
                reg.put(mask, step)
                states.append(step)
            if len(states) >= 2 and rng.random() < 0.3:
                reg.unify(*rng.sample(states, 2))
            for lat in reg.lattices.values():
                for m in lat.minimals:
                    assert m | lat.greatest == lat.greatest
                for a in lat.minimals:
                    for b in lat.minimals:
                        if a != b:
                            assert a & b not in (a, b)

    def test_put_then_get_identity(self):
        rng = random.Random(3)
        reg = CCLRegistry()
        mapping = {}
        for step in range(100):
            mask = to_mask([s for s in range(12) if rng.random() < 0.5])
            if mask not in mapping:
                reg.put(mask, step)
                mapping[mask] = step
        for mask, state in mapping.items():
            assert reg.get(mask) == state


def _strict_preorder():
    """Preorder over 3 states where 1 is strictly below 0."""
    nfa = Nfa(3, 1, [(0, 0, 2), (1, 0, 2), (0, 0, 0)], initial=[0], final=[2])
    p = compute_similarity(nfa)
    assert p.leq(1, 0) and not p.leq(0, 1)
    return p


class TestCCLS:
    def test_identity_preorder_matches_ccl(self):
        rng = random.Random(5)
        ccl = CCLRegistry()
        ccls = CCLSRegistry(Preorder.identity(10))
        states = []
        for step in range(200):
            mask = to_mask([s for s in range(10) if rng.random() < 0.4])
            if mask not in ccl._exact:
                ccl.put(mask, step)
                ccls.put(mask, step)
                states.append(step)
            if len(states) >= 2 and rng.random() < 0.3:
                pair = rng.sample(states, 2)
                ccl.unify(*pair)
                ccls.unify(*pair)
            probe = to_mask([s for s in range(10) if rng.random() < 0.4])
            assert ccl.get(probe) == ccls.get(probe)

    def test_put_widens_lattice(self):
        p = _strict_preorder()
        reg = CCLSRegistry(p)
        reg.put(to_mask([0]), 4)
        lat = reg.lattices[reg.uf.find(4)]
        assert lat.greatest & to_mask([0, 1]) == to_mask([0, 1])
        assert lat.minimals == [to_mask([0])]

    def test_get_hits_saturated_form_without_unify(self):
        p = _strict_preorder()
        reg = CCLSRegistry(p)
        reg.put(to_mask([0]), 4)
        assert reg.get(to_mask([0, 1])) == 4

    def test_get_prunes_query(self):
        p = _strict_preorder()
        reg = CCLSRegistry(p)
        reg.put(to_mask([0, 2]), 4)
        # query {0,1,2} prunes to {0,2}, matching the stored minimal
        assert reg.get(to_mask([0, 1, 2])) == 4

    def test_unseen_uncovered_undefined(self):
        reg = CCLSRegistry(_strict_preorder())
        assert reg.get(to_mask([2])) is None


class TestLattice:
    def test_covers_membership_rule(self):
        lat = Lattice(0, to_mask([0, 1, 2]), _masks([0], [1, 2]))
        assert lat.covers(to_mask([0, 2]))
        assert lat.covers(to_mask([1, 2]))
        assert not lat.covers(to_mask([2]))
        assert not lat.covers(to_mask([0, 3]))
