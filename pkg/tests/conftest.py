"""Shared fixture sources.

Expected numbers quoted in the test modules were computed by hand from the
defining pmfs (small joint entropies, binary entropy values) before being
frozen here; tests compare library output against these constants, not
against other library output.
"""

import math

import pytest

from skomni.generators import exchangeable_mixture, random_source
from skomni.pin import PinGraph, PinOracle, complete_graph
from skomni.sources import JointSource, TabularOracle


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def make_xor_source() -> JointSource:
    """X1, X2 fair independent bits, X3 = X1 xor X2."""
    atoms = {
        (0, 0, 0): 0.25,
        (0, 1, 1): 0.25,
        (1, 0, 1): 0.25,
        (1, 1, 0): 0.25,
    }
    return JointSource(3, (2, 2, 2), atoms)


def make_identical_bits(m: int = 3) -> JointSource:
    """One fair bit copied to every terminal."""
    atoms = {(0,) * m: 0.5, (1,) * m: 0.5}
    return JointSource(m, (2,) * m, atoms)


def make_iid_bits(m: int = 3) -> JointSource:
    """m independent fair bits."""
    atoms = {}
    for cell in range(1 << m):
        x = tuple((cell >> i) & 1 for i in range(m))
        atoms[x] = 1.0 / (1 << m)
    return JointSource(m, (2,) * m, atoms)


def make_common_randomness() -> JointSource:
    """X_i = 2Y + Z_i with Y, Z_1..Z_3 independent fair bits.

    Every subset entropy is an integer (H_i = 2, H_ij = 3, H_123 = 4), so
    all four partition surpluses equal exactly 1 and every terminal's cut
    surplus ties the singleton surplus.
    """
    atoms = {}
    for y in (0, 1):
        for z1 in (0, 1):
            for z2 in (0, 1):
                for z3 in (0, 1):
                    atoms[(2 * y + z1, 2 * y + z2, 2 * y + z3)] = 1.0 / 16
    return JointSource(3, (4, 4, 4), atoms)


def make_two_speaker_bsc() -> JointSource:
    """X1 fair bit; X2 = X1 xor Bern(0.05); X3 = X1 xor Bern(0.45).

    The noisy third terminal is the only one whose cut surplus falls below
    the singleton surplus, so exactly one terminal can stay silent and the
    capacity equals 1 - h(0.45).
    """
    q1 = (0.95, 0.05)
    q2 = (0.55, 0.45)
    atoms = {}
    for x1 in (0, 1):
        for x2 in (0, 1):
            for x3 in (0, 1):
                atoms[(x1, x2, x3)] = 0.5 * q1[x1 ^ x2] * q2[x1 ^ x3]
    return JointSource(3, (2, 2, 2), atoms)


def make_broadcast_pair(eps: float = 0.1) -> JointSource:
    """X3 fair bit; X1 and X2 are X3 through equally noisy flips.

    The two receiver cut surpluses tie the singleton surplus exactly (in
    the reals), while the sender cut stays strictly above; the float
    differences land inside the tie band as nonzero noise, which makes
    this the canonical NumericallyAmbiguous boundary case.
    """
    atoms = {}
    for x3 in (0, 1):
        for n1 in (0, 1):
            for n2 in (0, 1):
                p = 0.5 * (eps if n1 else 1 - eps) * (eps if n2 else 1 - eps)
                key = (x3 ^ n1, x3 ^ n2, x3)
                atoms[key] = atoms.get(key, 0.0) + p
    return JointSource(3, (2, 2, 2), atoms)


def make_xor4_source() -> JointSource:
    """X1..X3 fair independent bits, X4 their xor; capacity 1/3."""
    atoms = {}
    for cell in range(8):
        x1, x2, x3 = cell & 1, (cell >> 1) & 1, (cell >> 2) & 1
        atoms[(x1, x2, x3, x1 ^ x2 ^ x3)] = 0.125
    return JointSource(4, (2, 2, 2, 2), atoms)


def make_unequal_marginals() -> JointSource:
    """X1 fair bit, X2 = X3 = 0 constant; clearly not isentropic."""
    atoms = {(0, 0, 0): 0.5, (1, 0, 0): 0.5}
    return JointSource(3, (2, 2, 2), atoms)


def make_path3_graph() -> PinGraph:
    """Path 1 - 2 - 3; strength 1 with a three-way argmin tie."""
    return PinGraph(3, ((1, 2, 1), (2, 3, 1)))


@pytest.fixture
def xor_source():
    return make_xor_source()


@pytest.fixture
def xor_oracle():
    return TabularOracle(make_xor_source())


@pytest.fixture
def identical_oracle():
    return TabularOracle(make_identical_bits(3))


@pytest.fixture
def iid_oracle():
    return TabularOracle(make_iid_bits(3))


@pytest.fixture
def common_randomness_oracle():
    return TabularOracle(make_common_randomness())


@pytest.fixture
def two_speaker_oracle():
    return TabularOracle(make_two_speaker_bsc())


@pytest.fixture
def xor4_oracle():
    return TabularOracle(make_xor4_source())


@pytest.fixture
def k3_oracle():
    return PinOracle(complete_graph(3))


@pytest.fixture
def k4_oracle():
    return PinOracle(complete_graph(4))


def tabular_test_sources(m_values=(3, 4, 5)):
    """The tabular sources the cross-source invariant tests sweep over.

    Fixed constructions at every requested m plus a few seeded random
    sources; deterministic, so failures reproduce.
    """
    out = []
    for m in m_values:
        if m == 3:
            out += [
                make_xor_source(),
                make_common_randomness(),
                make_two_speaker_bsc(),
            ]
        if m == 4:
            out.append(make_xor4_source())
        out += [
            make_identical_bits(m),
            make_iid_bits(m),
            random_source(m, (2,) * m, seed=100 + m),
            exchangeable_mixture(m, 2, components=2, seed=200 + m),
        ]
    return out
