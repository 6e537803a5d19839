import random
from itertools import combinations

import pytest

from core_entropy.core.exceptions import InvalidSequenceError, TrivialSequenceError
from core_entropy.models.kneading import BoundedStream, InternalAddress, KneadingSequence
from core_entropy.models.symbols import INFINITY, BeyondHorizon, Symbol, is_infinite
from core_entropy.services.symbolic_service import (
    Certificate,
    address_to_kneading,
    bifurcation_base,
    bifurcation_chain,
    diff,
    diff_resolved,
    entry,
    internal_address,
    is_bifurcation,
    precedes_by_address,
    project,
    rho,
    upper_lower,
    weak_branch,
)
from core_entropy.utils.parsing import parse_sequence as seq
from tests.conftest import RANDOM_SEED, random_sequence


def test_internal_address_of_period_five():
    assert internal_address(seq("(1101*)")).text == "1-3-5"


def test_upper_and_lower_of_period_five():
    upper, lower = upper_lower(seq("(1101*)"))
    assert (upper.text, lower.text) == ("(11010)", "(11011)")


def test_address_of_lower_sequence_continues():
    address = internal_address(seq("(11011)"), max_terms=7)
    assert address.entries == (1, 3, 6, 8, 11, 13, 16)
    assert address.truncated


def test_address_of_preperiodic_sequence_is_truncated():
    address = internal_address(seq("1(10)"))
    assert address.entries[:4] == (1, 3, 5, 7)
    assert address.truncated
    assert address.text.endswith("-...")


def test_upper_lower_small_periods():
    assert tuple(s.text for s in upper_lower(seq("(101*)"))) == ("(1011)", "(10)")
    assert tuple(s.text for s in upper_lower(seq("(1*)"))) == ("(10)", "(1)")


def test_upper_lower_rejects_non_star_periodic():
    with pytest.raises(InvalidSequenceError):
        upper_lower(seq("1(10)"))
    with pytest.raises(InvalidSequenceError):
        upper_lower(KneadingSequence.trivial())


def test_is_bifurcation():
    assert is_bifurcation(seq("(101*)")) == 2
    assert is_bifurcation(seq("(1101*)")) is None
    assert is_bifurcation(seq("(1*)")) == 1


def test_bifurcation_chain_of_cascade_member():
    nu = address_to_kneading([1, 2, 4, 8])
    chain = bifurcation_chain(nu)
    assert [c.period_length for c in chain] == [8, 4, 2, 1]
    assert chain[-1].is_trivial
    assert bifurcation_base(seq("(101*)")) == seq("(1*)")


def test_bifurcation_has_infinite_diff_to_its_base():
    nu = seq("(101*)")
    base = bifurcation_base(nu)
    assert is_infinite(diff_resolved(nu, base))


def test_diff_against_bounded_stream():
    stream = BoundedStream("10111110" + "1" * 12)
    nu = seq("(1*)")
    assert diff_resolved(nu, stream) == 4

    unresolved = diff(nu, stream, horizon=20)
    assert isinstance(unresolved, BeyondHorizon)
    assert unresolved.horizon == 20


def test_diff_of_eventually_periodic_words_is_exact():
    assert diff(seq("1(10)"), seq("(11*)")) == 5
    assert diff(seq("1(10)"), seq("(1101*)")) == 7
    assert diff(seq("(1*)"), seq("(1*)")) == INFINITY
    assert diff_resolved(seq("(11*)"), seq("1(10)")) == 5


def test_rho():
    assert rho(seq("(10)"), 2) == INFINITY
    assert rho(seq("(10)"), 1) == 2
    assert rho(seq("1(10)"), 1) == 3
    assert rho(seq("1(10)"), 3) == 5


def test_rho_rejects_stars_and_small_n():
    with pytest.raises(InvalidSequenceError):
        rho(seq("(1*)"), 1)
    with pytest.raises(ValueError):
        rho(seq("1(0)"), 0)


def test_rho_past_stream_horizon():
    result = rho(BoundedStream("1111"), 1)
    assert isinstance(result, BeyondHorizon)


@pytest.mark.parametrize(
    "address, expected",
    [
        ([1, 3, 5], "(1101*)"),
        ([1, 2, 4], "(101*)"),
        ([1, 2, 3], "(10*)"),
        ([1, 3, 4], "(110*)"),
        ([1, 2], "(1*)"),
    ],
)
def test_address_to_kneading(address, expected):
    assert address_to_kneading(address).text == expected


def test_address_to_kneading_trivial():
    with pytest.raises(TrivialSequenceError):
        address_to_kneading([1])
    assert address_to_kneading([1], allow_trivial=True).is_trivial
    with pytest.raises(ValueError):
        address_to_kneading(InternalAddress((1, 3), truncated=True))


def test_address_round_trip_on_small_addresses():
    checked = 0
    for size in range(1, 4):
        for tail in combinations(range(2, 13), size):
            address = (1,) + tail
            nu = address_to_kneading(address)
            assert nu.period_length == address[-1]
            assert internal_address(nu).entries == address
            checked += 1
    assert checked == 11 + 55 + 165


def test_weak_branch_examples():
    assert weak_branch(seq("1(10)"), seq("(1101*)")) == seq("(1101*)")
    assert weak_branch(seq("(1*)"), seq("1(0)")) == seq("(1*)")


def test_weak_branch_needs_finite_diff():
    with pytest.raises(ValueError):
        weak_branch(seq("(101*)"), seq("(1*)"))


@pytest.mark.parametrize(
    "nu, other, expected",
    [
        ("(110*)", "1101(0)", "(110*)"),
        ("(10*)", "10(101101111)", "(10*)"),
        ("(1001100)", "(100*)", "(100*)"),
        ("(10*)", "(10101*)", "(10*)"),
    ],
)
def test_weak_branch_on_lower_resolution_is_star_periodic_input(nu, other, expected):
    nu, other = seq(nu), seq(other)
    k = diff_resolved(nu, other)
    mu = weak_branch(nu, other)
    assert mu == seq(expected)
    assert diff_resolved(mu, nu) >= k
    assert diff_resolved(mu, other) >= k


def test_weak_branch_reaches_diff_on_random_pairs():
    rng = random.Random(RANDOM_SEED)
    checked = 0
    for _ in range(1000):
        nu, other = random_sequence(rng), random_sequence(rng)
        k = diff_resolved(nu, other)
        if is_infinite(k):
            continue
        mu = weak_branch(nu, other)
        assert mu.is_star_periodic
        assert diff_resolved(mu, nu) >= k, (nu, other, mu)
        assert diff_resolved(mu, other) >= k, (nu, other, mu)
        checked += 1
    assert checked > 800


def test_precedes_by_address():
    assert precedes_by_address(seq("(11*)"), seq("1(10)")) == Certificate.YES
    assert precedes_by_address(seq("(1*)"), seq("(1101*)")) == Certificate.NO_EVIDENCE
    assert precedes_by_address(seq("(1101*)"), seq("(1101*)")) == Certificate.NO_EVIDENCE
    assert precedes_by_address(seq("(1*)"), seq("1(0)")) == Certificate.YES
    assert precedes_by_address(KneadingSequence.trivial(), seq("1(0)")) == Certificate.YES


def test_precedes_by_address_needs_star_periodic_mu():
    with pytest.raises(InvalidSequenceError):
        precedes_by_address(seq("1(10)"), seq("1(0)"))


def test_internal_address_of_trivial_sequence():
    with pytest.raises(TrivialSequenceError):
        internal_address(KneadingSequence.trivial())


def test_entry_and_shift():
    nu = seq("1(10)")
    assert [entry(nu, k) for k in range(1, 5)] == [Symbol.ONE, Symbol.ONE, Symbol.ZERO, Symbol.ONE]
    assert nu.shift(1).text == "(10)"
    assert nu.shift(2).text == "(01)"
    assert nu.shift(3).text == "(10)"


def test_project_keeps_kneading_type():
    upper = project(seq("(1101*)"), "0")
    assert isinstance(upper, KneadingSequence)
    assert upper.text == "(11010)"
    assert project(seq("(1101*)"), "1").text == "(11011)"
    assert project(KneadingSequence.trivial(), "1").text == "(1)"


def test_project_bounded_stream():
    stream = project(BoundedStream("1*0*", 4), "1")
    assert stream.text == "1101..."
    with pytest.raises(ValueError):
        project(seq("(1*)"), "*")


def test_diff_is_symmetric_on_random_pairs():
    rng = random.Random(RANDOM_SEED + 1)
    for _ in range(1000):
        a, b = random_sequence(rng), random_sequence(rng)
        assert diff(a, b) == diff(b, a)
        assert diff(a, a) == INFINITY


def test_resolving_a_star_never_delays_the_first_difference():
    rng = random.Random(RANDOM_SEED + 2)
    checked = 0
    while checked < 500:
        a, b = random_sequence(rng), random_sequence(rng)
        if not a.has_star or b.has_star:
            continue
        wild = diff(a, b)
        for e in "01":
            assert diff(project(a, e), b) <= wild
        assert diff_resolved(a, b) == max(diff(project(a, e), project(b, e)) for e in "01")
        checked += 1


@pytest.mark.slow
def test_address_round_trip_up_to_six_entries():
    checked = 0
    for size in range(1, 6):
        for tail in combinations(range(2, 21), size):
            address = (1,) + tail
            assert internal_address(address_to_kneading(address)).entries == address
            checked += 1
    assert checked == 19 + 171 + 969 + 3876 + 11628
