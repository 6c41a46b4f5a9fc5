import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skomni import subsets
from skomni.capacity import (
    MinimizerStatus,
    partition_surplus,
    restricted_singleton_surplus,
    singleton_minimizer_check,
    singleton_surplus_identity,
    sk_capacity,
)
from skomni.errors import SizeLimitError
from skomni.generators import random_source
from skomni.partitions import (
    Partition,
    enumerate_partitions,
    isolating_partition,
    singleton_partition,
)
from skomni.sources import TabularOracle, mutual_information

from conftest import binary_entropy, make_two_speaker_bsc


def test_surplus_values_xor(xor_oracle):
    s = singleton_partition(3)
    assert partition_surplus(xor_oracle, s) == pytest.approx(0.5)
    for pair in (0b011, 0b101, 0b110):
        p = Partition.from_cells([pair, 0b111 & ~pair], 3)
        assert partition_surplus(xor_oracle, p) == pytest.approx(1.0)


def test_surplus_rejects_single_cell(xor_oracle):
    whole = Partition.from_cells([0b111], 3)
    with pytest.raises(SizeLimitError):
        partition_surplus(xor_oracle, whole)


def test_capacity_xor(xor_oracle):
    report = sk_capacity(xor_oracle)
    assert report.value == pytest.approx(0.5)
    assert report.partitions_examined == 4
    assert report.argmin == (singleton_partition(3),)


def test_capacity_identical_bits_all_tie(identical_oracle):
    report = sk_capacity(identical_oracle)
    assert report.value == pytest.approx(1.0)
    assert len(report.argmin) == 4


def test_capacity_iid_bits_is_zero(iid_oracle):
    report = sk_capacity(iid_oracle)
    assert report.value == pytest.approx(0.0)
    assert len(report.argmin) == 4


def test_capacity_common_randomness(common_randomness_oracle):
    report = sk_capacity(common_randomness_oracle)
    assert report.value == pytest.approx(1.0)
    assert len(report.argmin) == 4


def test_capacity_two_speaker(two_speaker_oracle):
    report = sk_capacity(two_speaker_oracle)
    assert report.value == pytest.approx(1.0 - binary_entropy(0.45))
    assert report.argmin == (Partition.from_rgs((0, 0, 1)),)


def test_capacity_xor4(xor4_oracle):
    report = sk_capacity(xor4_oracle)
    assert report.value == pytest.approx(1.0 / 3.0)
    assert report.partitions_examined == 14
    assert report.argmin == (singleton_partition(4),)


def test_capacity_m2_reduces_to_mutual_information():
    oracle = TabularOracle(random_source(2, (3, 2), seed=17))
    report = sk_capacity(oracle)
    assert abs(report.value - mutual_information(oracle, 0b01, 0b10)) <= 1e-12
    assert report.partitions_examined == 1


def test_capacity_lower_bounds_every_partition(xor4_oracle):
    c = sk_capacity(xor4_oracle).value
    assert c >= -1e-9
    for p in enumerate_partitions(4, min_cells=2):
        assert c <= partition_surplus(xor4_oracle, p) + 1e-9


def test_restricted_singleton_surplus_xor(xor_oracle):
    for t in (0b011, 0b101, 0b110):
        assert restricted_singleton_surplus(xor_oracle, t) == pytest.approx(0.0)
    with pytest.raises(SizeLimitError):
        restricted_singleton_surplus(xor_oracle, 0b111)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=3, max_value=5))
def test_singleton_surplus_identity(seed, m):
    oracle = TabularOracle(random_source(m, (2,) * m, seed=seed))
    for u in range(1, m + 1):
        lhs, rhs = singleton_surplus_identity(oracle, 1 << (u - 1))
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_minimizer_check_xor(xor_oracle):
    for method in ("isolating", "brute"):
        v = singleton_minimizer_check(xor_oracle, method)
        assert v.status is MinimizerStatus.UNIQUE
        assert v.comparisons == 3
        assert v.witness is None


def test_minimizer_comparison_counts():
    for m in (3, 4, 5):
        oracle = TabularOracle(random_source(m, (2,) * m, seed=m))
        v = singleton_minimizer_check(oracle, "isolating")
        assert v.comparisons == (1 << m) - m - 2


def test_minimizer_check_identical(identical_oracle):
    v = singleton_minimizer_check(identical_oracle, "brute")
    assert v.status is MinimizerStatus.NON_UNIQUE
    assert v.witness is not None
    assert v.witness.surplus == pytest.approx(v.witness.singleton_surplus)


def test_minimizer_check_two_speaker(two_speaker_oracle):
    v = singleton_minimizer_check(two_speaker_oracle, "isolating")
    assert v.status is MinimizerStatus.NOT_MINIMIZER
    assert v.witness is not None
    # The cut isolating terminal 3 beats the singleton partition.
    assert v.witness.partition == isolating_partition(3, 0b100)
    assert v.witness.surplus < v.witness.singleton_surplus


def test_minimizer_ambiguous_inside_wide_band(xor_oracle):
    # Every comparison differs by 0.5; a band of 1 swallows them all
    # without any being an exact tie.
    v = singleton_minimizer_check(xor_oracle, "isolating", tie_tol=1.0)
    assert v.status is MinimizerStatus.AMBIGUOUS


def test_minimizer_methods_agree_on_random_sources():
    for seed in range(40):
        m = 3 + seed % 3
        oracle = TabularOracle(random_source(m, (2,) * m, seed=seed))
        a = singleton_minimizer_check(oracle, "isolating")
        b = singleton_minimizer_check(oracle, "brute")
        if MinimizerStatus.AMBIGUOUS in (a.status, b.status):
            continue
        assert a.status == b.status


def test_isolating_partition_identity():
    # For any partition P, summing |complement of A| times the surplus of
    # the partition isolating A's complement over the cells A of P equals
    # (|P| - 1) * (surplus(P) + (m - 1) * surplus(S)).
    for seed in (1, 2):
        for m in (3, 4, 5):
            oracle = TabularOracle(random_source(m, (2,) * m, seed=seed))
            s_value = partition_surplus(oracle, singleton_partition(m))
            full = subsets.full_mask(m)
            for p in enumerate_partitions(m, min_cells=2):
                lhs = 0.0
                for cell in p.cells:
                    comp = full & ~cell
                    lhs += subsets.size(comp) * partition_surplus(
                        oracle, isolating_partition(m, comp)
                    )
                rhs = (p.n_cells - 1) * (
                    partition_surplus(oracle, p) + (m - 1) * s_value
                )
                assert lhs == pytest.approx(rhs, abs=1e-8)


def test_cell_complement_counting_identity():
    for m in (3, 4, 5):
        for p in enumerate_partitions(m, min_cells=2):
            total = sum(m - subsets.size(cell) for cell in p.cells)
            assert total == m * (p.n_cells - 1)


def test_exact_oracle_yields_fractions(k4_oracle):
    from fractions import Fraction

    report = sk_capacity(k4_oracle)
    assert isinstance(report.value, Fraction)
    assert report.exact
    v = singleton_minimizer_check(k4_oracle, "isolating")
    assert v.status is MinimizerStatus.UNIQUE
    assert v.comparisons == 10
