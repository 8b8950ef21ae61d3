"""Torus points, canonical forms, subgroups and their structure."""

import random

import pytest

from conftest import make_h2, make_p113, random_homogeneous_lattice, rows_to_lattice
from torilat import intlin
from torilat.errors import CapExceededError, ValidationError
from torilat.torus import (
    PointSet,
    all_torus_points,
    canonical_form,
    degenerate_torus,
    group_structure,
    identity_point,
    point_from_canon,
    point_from_rep,
    points_from_parameterization,
    subgroup_closure,
    vanishing_lattice,
    zero_set_in_torus,
)


class TestCanonicalForm:
    def test_invariant_under_lattice_shifts(self, h2):
        # shifting the representative by any column of (q-1)-scaled
        # relations of G leaves the point fixed; conversely adding a
        # multiple of q-1 in any coordinate does nothing
        rng = random.Random(7)
        for _ in range(25):
            s = [rng.randrange(10) for _ in range(4)]
            p = point_from_rep(s, h2)
            shifted = [x + 10 * rng.randint(-2, 2) for x in s]
            assert point_from_rep(shifted, h2) == p

    def test_group_kernel_directions(self, h2):
        # exponent vectors of elements of G: beta^T applied to anything;
        # points s and s + beta^T(c) coincide in T_X
        rng = random.Random(11)
        betaT = intlin.transpose(h2.beta_free)
        for _ in range(25):
            s = [rng.randrange(10) for _ in range(4)]
            c = [rng.randrange(10) for _ in range(2)]
            shift = intlin.mat_vec(betaT, c)
            moved = [a + b for a, b in zip(s, shift)]
            assert point_from_rep(moved, h2) == point_from_rep(s, h2)

    def test_distinct_points_differ(self, h2):
        assert point_from_rep([1, 0, 0, 0], h2) != point_from_rep([0, 0, 0, 0], h2)

    def test_round_trip_from_canon(self, h2, p113):
        rng = random.Random(3)
        for st in (h2, p113):
            for _ in range(20):
                s = [rng.randrange(10) for _ in range(st.r)]
                p = point_from_rep(s, st)
                assert point_from_canon(p.canon, st) == p

    def test_wrong_length_rejected(self, h2):
        with pytest.raises(ValidationError):
            canonical_form([0, 0], h2)


class TestEnumeration:
    def test_torus_cardinality(self, h2, p113):
        assert len(all_torus_points(h2)) == 100
        assert len(all_torus_points(p113)) == 1000

    def test_cap(self):
        st = make_p113(q=1009)
        with pytest.raises(CapExceededError):
            all_torus_points(st)

    def test_identity_present(self, h2):
        assert identity_point(h2) in all_torus_points(h2)


class TestDegenerateTorus:
    def test_published_orders(self, h2):
        Y50, pred50 = degenerate_torus([2, 5, 4, 5], 10, h2)
        Y10, pred10 = degenerate_torus([5, 2, 5, 4], 10, h2)
        assert len(Y50) == 50
        assert len(Y10) == 10
        # d = (5,2,5,2) and (2,5,2,5) are not pairwise coprime, so no
        # product prediction applies
        assert pred50 is None and pred10 is None

    def test_full_torus(self, h2):
        Y, _ = degenerate_torus([1, 1, 1, 1], 10, h2)
        assert Y == all_torus_points(h2)

    def test_pairwise_coprime_order_formula(self):
        rng = random.Random(2024)
        qs = [5, 7, 11]
        from math import gcd

        count = 0
        while count < 100:
            q = rng.choice(qs)
            st = make_h2(q=q)
            h = rng.choice([d for d in range(1, q) if (q - 1) % d == 0])
            a = [rng.randint(1, q - 1) for _ in range(4)]
            d = [h // gcd(h, ai) for ai in a]
            if not all(
                gcd(d[i], d[j]) == 1
                for i in range(4)
                for j in range(i + 1, 4)
            ):
                continue
            Y, predicted = degenerate_torus(a, h, st)
            expected = d[0] * d[1] * d[2] * d[3]
            assert predicted == expected
            assert len(Y) == expected
            count += 1

    def test_bad_subgroup_order(self, h2):
        with pytest.raises(ValidationError):
            degenerate_torus([1, 1, 1, 1], 3, h2)


class TestSubgroups:
    def test_zero_sets_are_subgroups(self, h2, p113):
        rng = random.Random(5)
        for st in (h2, p113):
            for _ in range(10):
                L = random_homogeneous_lattice(st, rng, contain_full=False)
                Y = zero_set_in_torus(L, st)
                assert identity_point(st) in Y
                assert Y.is_group

    def test_closure_contains_generators(self, h2):
        g = point_from_rep([1, 2, 3, 4], h2)
        Y = subgroup_closure([g], h2)
        assert g in Y
        assert identity_point(h2) in Y
        qm = h2.q - 1
        canons = Y.canon_set()
        for p in Y:
            assert tuple((x + y) % qm for x, y in zip(p.canon, g.canon)) in canons

    def test_structure_of_published_examples(self, h2):
        Y50, _ = degenerate_torus([2, 5, 4, 5], 10, h2)
        Y10, _ = degenerate_torus([5, 2, 5, 4], 10, h2)
        gs50 = group_structure(Y50, h2)
        gs10 = group_structure(Y10, h2)
        assert gs50.orders == (5, 10)
        assert gs10.orders == (10,)

    def test_round_trip(self, h2, p113):
        rng = random.Random(17)
        for st in (h2, p113):
            for _ in range(10):
                gens = [
                    point_from_rep(
                        [rng.randrange(st.q - 1) for _ in range(st.r)], st
                    )
                    for _ in range(rng.randint(1, 2))
                ]
                Y = subgroup_closure(gens, st)
                gs = group_structure(Y, st)
                back = points_from_parameterization(gs.Q, gs.h, st)
                assert back == Y
                order = 1
                for d in gs.orders:
                    order *= d
                assert order == len(Y)

    def test_structure_requires_group(self, h2):
        Y = PointSet([point_from_rep([1, 0, 0, 0], h2)])
        with pytest.raises(ValidationError):
            group_structure(Y, h2)


class TestVanishingLattice:
    def test_degenerate_cases_recover_algorithm_output(self, h2):
        from torilat.lattice import degenerate_lattice

        for a in ([2, 5, 4, 5], [5, 2, 5, 4]):
            Y, _ = degenerate_torus(a, 10, h2)
            L1 = vanishing_lattice(Y, h2)
            L2 = degenerate_lattice(a, 10, h2).L
            assert intlin.lattice_equal(L1, L2)

    def test_full_torus_gives_scaled_lattice(self, h2):
        Y = all_torus_points(h2)
        L = vanishing_lattice(Y, h2)
        phi = h2.phi_columns_matrix()
        scaled = [[10 * x for x in row] for row in phi]
        assert intlin.lattice_equal(L, scaled)

    def test_identity_only_gives_full_homogeneity_lattice(self, h2):
        Y = PointSet([identity_point(h2)], is_group=True)
        L = vanishing_lattice(Y, h2)
        assert intlin.lattice_equal(L, h2.phi_columns_matrix())


class TestZeroSet:
    def test_published_lattice_point_count(self, h2):
        L = rows_to_lattice([[10, 0, -10, 0], [0, 5, 10, -5]], 4)
        Y = zero_set_in_torus(L, h2)
        assert len(Y) == 50

    def test_inhomogeneous_rejected(self, h2):
        with pytest.raises(ValidationError):
            zero_set_in_torus(rows_to_lattice([[1, 0, 0, 0]], 4), h2)
