"""Series specs, Weyl orders, homogeneous-space K-theory."""

from math import comb

import pytest

from pvtower.abgroup import FGAbelianGroup, GradedGroup
from pvtower.liegroups import (
    SeriesSpec,
    homogeneous_ktheory,
    homogeneous_tower,
    weyl_enumerate,
    weyl_order,
)

Z = FGAbelianGroup.free


class TestSeriesSpec:
    def test_minimum_ranks(self):
        SeriesSpec("A", 1)
        SeriesSpec("B", 2)
        SeriesSpec("C", 3)
        SeriesSpec("D", 3)
        for series, rank in (("A", 0), ("B", 1), ("C", 2), ("D", 2)):
            with pytest.raises(ValueError):
                SeriesSpec(series, rank)

    def test_unknown_series(self):
        with pytest.raises(ValueError):
            SeriesSpec("E", 6)


class TestWeylOrder:
    def test_closed_forms_small(self):
        # A_1 = S_2; B_2 = signed permutations of 2 letters; D_3 = even sign
        # changes on 3 letters -- each enumerated by hand.
        assert weyl_order(SeriesSpec("A", 1)) == 2
        assert weyl_order(SeriesSpec("B", 2)) == 8
        assert weyl_order(SeriesSpec("D", 3)) == 24

    def test_enumeration_examples(self):
        assert weyl_enumerate(SeriesSpec("A", 2)) == 6
        assert weyl_enumerate(SeriesSpec("C", 3)) == 48

    def test_closed_form_matches_enumeration(self):
        for series in "ABCD":
            for rank in range(1, 5):
                try:
                    spec = SeriesSpec(series, rank)
                except ValueError:
                    continue
                assert weyl_order(spec) == weyl_enumerate(spec)

    def test_rank_cap(self):
        with pytest.raises(ValueError):
            weyl_enumerate(SeriesSpec("A", 8))


class TestHomogeneousKTheory:
    def test_five_sphere(self):
        result = homogeneous_ktheory(SeriesSpec("A", 2), SeriesSpec("A", 1))
        assert result.group == GradedGroup(Z(1), Z(1))

    def test_a_series_gap_three(self):
        result = homogeneous_ktheory(SeriesSpec("A", 4), SeriesSpec("A", 1))
        assert result.group == GradedGroup(Z(4), Z(4))

    def test_nonzero_ranks_binomial_profile(self):
        result = homogeneous_ktheory(SeriesSpec("A", 4), SeriesSpec("A", 2))
        assert result.nonzero_ranks == (1, 2, 1)
        assert sum(result.nonzero_ranks) == 4
        assert result.group.even.free_rank == result.group.odd.free_rank == 2

    def test_series_mismatch(self):
        with pytest.raises(ValueError):
            homogeneous_ktheory(SeriesSpec("A", 3), SeriesSpec("B", 2))

    def test_rank_order(self):
        with pytest.raises(ValueError):
            homogeneous_ktheory(SeriesSpec("A", 2), SeriesSpec("A", 2))

    def test_spot_groups_free_even(self):
        result = homogeneous_ktheory(SeriesSpec("C", 5), SeriesSpec("C", 3))
        for d, g in enumerate(result.spot_groups):
            assert not g.has_torsion
            assert g.odd.is_trivial
            assert g.even.free_rank == (comb(2, d) if d <= 2 else 0)


class TestHomogeneousTower:
    def test_final_matches_direct_computation(self):
        for series, n, k in (("A", 3, 1), ("B", 4, 2), ("D", 5, 3)):
            tower = homogeneous_tower(SeriesSpec(series, n), SeriesSpec(series, k))
            direct = homogeneous_ktheory(SeriesSpec(series, n), SeriesSpec(series, k))
            assert tower.final == direct.group

    def test_adjacent_pair_total_rank_two(self):
        for series, n in (("A", 2), ("B", 3), ("C", 4), ("D", 4)):
            tower = homogeneous_tower(SeriesSpec(series, n), SeriesSpec(series, n - 1))
            assert tower.final.even.free_rank + tower.final.odd.free_rank == 2

    def test_levels_torsion_free_and_unflagged(self):
        tower = homogeneous_tower(SeriesSpec("A", 4), SeriesSpec("A", 2))
        assert not tower.ambiguous
        assert [lvl.level for lvl in tower.levels] == [3, 2, 1]
        for lvl in tower.levels:
            assert not lvl.ambiguous
            assert not lvl.group.has_torsion
            assert lvl.kernel_module_rank is not None and lvl.kernel_module_rank >= 0

    def test_intermediate_level_contents(self):
        # n=2, k=1: one level; it keeps spot 0 (a single Z in even degree) and
        # the kernel of the outgoing differential at spot 1, a rank-one module
        # over the coefficient ring carried with an odd shift.
        tower = homogeneous_tower(SeriesSpec("A", 2), SeriesSpec("A", 1))
        assert len(tower.levels) == 1
        lvl = tower.levels[0]
        assert lvl.level == 1
        assert lvl.group == GradedGroup(Z(1), FGAbelianGroup.trivial())
        assert lvl.kernel_module_rank == 1
        assert lvl.kernel_suspension == 1
