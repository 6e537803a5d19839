"""
Shared corpora for the test suite
"""

import random
from math import gcd
from typing import List

import pytest

from core_entropy.models.angle import Angle
from core_entropy.models.kneading import KneadingSequence
from core_entropy.services.angle_service import kneading_of_angle

CORPUS_MAX_DENOMINATOR = 32
RANDOM_CORPUS_SIZE = 240
RANDOM_SEED = 20240611


def angle_kneadings(max_denominator: int, min_denominator: int = 2) -> List[KneadingSequence]:
    """Distinct kneading sequences of all reduced angles p/q, sorted by text"""
    seen = {}
    for q in range(min_denominator, max_denominator + 1):
        for p in range(1, q):
            if gcd(p, q) == 1:
                nu = kneading_of_angle(Angle.of(p, q))
                seen.setdefault(nu.text, nu)
    return [seen[text] for text in sorted(seen)]


def random_sequence(rng: random.Random, max_period: int = 10, max_preperiod: int = 4) -> KneadingSequence:
    """Random non-trivial sequence; about a third are *-periodic"""
    if rng.random() < 0.3:
        length = rng.randint(2, max_period)
        body = "1" + "".join(rng.choice("01") for _ in range(length - 2))
        return KneadingSequence("", body + "*")

    preperiod = "".join(rng.choice("01") for _ in range(rng.randint(0, max_preperiod)))
    period = "".join(rng.choice("01") for _ in range(rng.randint(1, max_period)))
    if preperiod:
        preperiod = "1" + preperiod[1:]
    else:
        period = "1" + period[1:]
    return KneadingSequence(preperiod, period)


@pytest.fixture(scope="session")
def angle_corpus() -> List[KneadingSequence]:
    return angle_kneadings(CORPUS_MAX_DENOMINATOR)


@pytest.fixture(scope="session")
def star_periodic_corpus(angle_corpus) -> List[KneadingSequence]:
    return [nu for nu in angle_corpus if nu.is_star_periodic]


@pytest.fixture(scope="session")
def preperiodic_corpus(angle_corpus) -> List[KneadingSequence]:
    return [nu for nu in angle_corpus if not nu.is_star_periodic]


@pytest.fixture(scope="session")
def random_corpus() -> List[KneadingSequence]:
    rng = random.Random(RANDOM_SEED)
    return [random_sequence(rng) for _ in range(RANDOM_CORPUS_SIZE)]
