import itertools
from fractions import Fraction

import pytest

from jcouple.kepler import (
    KramersVerdict,
    LieBasisElement,
    LieExpression,
    Statistics,
    basis_commutator,
    commutator,
    degeneracy_enumerated,
    degeneracy_paper,
    energy_level,
    j_operator,
    kramers_applicability,
    merge_spectrum,
    so4_split_check,
    spectrum,
)
from jcouple.numerics import DomainError, GaussianRational, HalfInt, parse_halfint

H = parse_halfint

I_UNIT = GaussianRational(Fraction(0), Fraction(1))


def _all_basis(z):
    return [
        LieBasisElement(family, particle, axis)
        for family in ("L", "M")
        for particle in range(1, z + 1)
        for axis in (1, 2, 3)
    ]


class TestLieAlgebra:
    def test_cross_component_commutes(self):
        assert commutator(j_operator(1, 1, 1), j_operator(2, 1, 2)).is_zero

    def test_same_component_closes(self):
        lhs = commutator(j_operator(1, 1, 1), j_operator(1, 1, 2))
        assert lhs == j_operator(1, 1, 3).scaled(I_UNIT)

    def test_distinct_particles_commute(self):
        for ai, aj in itertools.product((1, 2, 3), repeat=2):
            assert commutator(j_operator(1, 1, ai), j_operator(1, 2, aj)).is_zero

    def test_table_antisymmetry(self):
        for x in _all_basis(2):
            for y in _all_basis(2):
                assert basis_commutator(x, y) == -basis_commutator(y, x)

    def test_jacobi_identity(self):
        basis = _all_basis(1)
        for x, y, z in itertools.product(basis, repeat=3):
            total = (
                commutator(LieExpression({x: 1}), basis_commutator(y, z))
                + commutator(LieExpression({y: 1}), basis_commutator(z, x))
                + commutator(LieExpression({z: 1}), basis_commutator(x, y))
            )
            assert total.is_zero, (x, y, z)

    def test_split_check_small_z(self):
        for z in (1, 2, 3):
            report = so4_split_check(z)
            assert report.ok
            assert report.checked == 36 * z * z

    def test_split_check_rejects_bad_z(self):
        with pytest.raises(DomainError):
            so4_split_check(0)


class TestEnergy:
    def test_values(self):
        assert energy_level(H("1/2")) == Fraction(-1, 16)
        assert energy_level(H("1")) == Fraction(-1, 9)
        assert energy_level(H("0")) == 0

    def test_strictly_decreasing(self):
        previous = None
        for twice in range(41):
            value = energy_level(HalfInt(twice))
            if previous is not None:
                assert value < previous
            previous = value


class TestDegeneracies:
    def test_paper_formulas(self):
        assert degeneracy_paper((H("1/2"),), Statistics.BOSON0) == 4
        assert degeneracy_paper((H("1/2"),), Statistics.FERMION_HALF) == 6
        assert degeneracy_paper((H("1/2"), H("1")), Statistics.BOSON0) == 12

    def test_enumerated_counts(self):
        assert degeneracy_enumerated((H("1/2"),), Statistics.BOSON0) == 4
        assert degeneracy_enumerated((H("1"),), Statistics.BOSON0) == 9
        assert degeneracy_enumerated((H("1/2"),), Statistics.FERMION_HALF) == 8

    def test_coincidence_only_at_z_one(self):
        for z in (1, 2, 3):
            js = tuple([H("1/2")] * z)
            paper = degeneracy_paper(js, Statistics.BOSON0)
            enum = degeneracy_enumerated(js, Statistics.BOSON0)
            assert (paper == enum) == (z == 1)


class TestSpectrum:
    def test_z1_boson_levels(self):
        levels = spectrum(1, H("1"), Statistics.BOSON0)
        assert [level.energy for level in levels] == [
            Fraction(0),
            Fraction(-1, 16),
            Fraction(-1, 9),
        ]

    def test_z2_pair_energy(self):
        levels = spectrum(2, H("1/2"), Statistics.BOSON0)
        by_tuple = {level.js: level for level in levels}
        assert by_tuple[(H("1/2"), H("1/2"))].energy == Fraction(-1, 8)

    def test_divergence_flags(self):
        boson = {level.js: level for level in spectrum(1, H("1"), Statistics.BOSON0)}
        assert not boson[(H("1/2"),)].diverges
        assert boson[(H("1"),)].diverges
        fermion = {level.js: level for level in spectrum(1, H("1/2"), Statistics.FERMION_HALF)}
        assert fermion[(H("1/2"),)].degeneracy_paper == 6
        assert fermion[(H("1/2"),)].degeneracy_enumerated == 8
        assert fermion[(H("1/2"),)].diverges

    def test_merged_energies_unique(self):
        levels = spectrum(2, H("3/2"), Statistics.BOSON0)
        merged = merge_spectrum(levels)
        energies = [m.energy for m in merged]
        assert len(energies) == len(set(energies))
        assert sum(m.degeneracy_paper for m in merged) == sum(
            level.degeneracy_paper for level in levels
        )

    def test_guard(self):
        with pytest.raises(DomainError):
            spectrum(1, HalfInt(2 * 10**6), Statistics.BOSON0)


class TestKramers:
    def test_applicability(self):
        assert (
            kramers_applicability(1, Statistics.FERMION_HALF)
            is KramersVerdict.GUARANTEED_DOUBLE
        )
        assert (
            kramers_applicability(2, Statistics.FERMION_HALF)
            is KramersVerdict.NOT_INFERABLE
        )
        assert kramers_applicability(3, Statistics.BOSON0) is KramersVerdict.NOT_INFERABLE

    def test_guaranteed_double_spectra_have_even_counts(self):
        for z in (1, 3):
            assert (
                kramers_applicability(z, Statistics.FERMION_HALF)
                is KramersVerdict.GUARANTEED_DOUBLE
            )
            for level in spectrum(z, H("3/2"), Statistics.FERMION_HALF):
                assert level.degeneracy_enumerated % 2 == 0
