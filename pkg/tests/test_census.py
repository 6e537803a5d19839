import pytest

from core_entropy.core.exceptions import HorizonError, InvalidSequenceError, TrivialSequenceError
from core_entropy.models.kneading import BoundedStream, EventuallyPeriodicWord, KneadingSequence
from core_entropy.services.automaton_service import compile_automaton
from core_entropy.services.census_service import (
    CRITICAL,
    IntervalState,
    census,
    precritical_words,
    transition,
)
from core_entropy.utils.parsing import parse_sequence as seq

ORACLE_DEPTH = 40


def test_interval_state_is_unordered():
    assert IntervalState(3, 1) == IntervalState(1, 3)
    assert IntervalState.initial() == IntervalState(0, CRITICAL)


def test_transition_splits_on_different_symbols():
    nu = seq("1(10)")
    split, children = transition(nu, IntervalState(1, 2))
    assert split
    assert set(children) == {IntervalState(0, 2), IntervalState(0, 1)}

    split, children = transition(nu, IntervalState.initial())
    assert not split
    assert children == (IntervalState(0, 1),)


def test_maximal_census():
    result = census(seq("1(0)"), 20)
    assert result.count(1) == 0
    for n in range(2, 21):
        assert result.count(n) == 2 ** (n - 2)
    assert result.cumulative(20) == 2 ** 19 - 1


def test_census_of_period_two_tail():
    result = census(seq("1(10)"), 7)
    assert [count for _, count in result.rows()] == [0, 0, 1, 1, 1, 3, 3]


def test_census_of_zero_entropy_sequences_stays_small():
    for text in ("(1*)", "(101*)"):
        counts = census(seq(text), 10).counts
        assert all(c <= 1 for c in counts)


def test_census_on_bounded_stream_matches_sequence():
    nu = seq("1(10)")
    stream = BoundedStream("1" + "10" * 15)
    assert census(stream, 31).counts == census(nu, 31).counts


def test_census_rejects_bad_input():
    with pytest.raises(TrivialSequenceError):
        census(KneadingSequence.trivial(), 10)
    with pytest.raises(ValueError):
        census(seq("1(0)"), 1)
    with pytest.raises(HorizonError):
        census(BoundedStream("1000"), 10)


def test_precritical_words_agree_with_counts(random_corpus):
    for nu in random_corpus[:60]:
        words = precritical_words(nu, 14)
        counts = census(nu, 14).counts
        for n in range(1, 15):
            assert len(words[n]) == counts[n]
            assert all(len(w) == n - 1 for w in words[n])


def test_precritical_words_of_maximal_sequence_are_distinct():
    words = precritical_words(seq("1(0)"), 8)
    assert words[2] == ["1"]
    assert sorted(words[3]) == ["10", "11"]
    for n in range(2, 9):
        assert len(set(words[n])) == 2 ** (n - 2)


def test_precritical_words_depth_limit():
    with pytest.raises(ValueError):
        precritical_words(seq("1(0)"), 30)


def test_automaton_of_maximal_sequence():
    automaton = compile_automaton(seq("1(0)"))
    assert automaton.replay(12)[2:] == tuple(2 ** (n - 2) for n in range(2, 13))


def test_automaton_prunes_dead_states():
    automaton = compile_automaton(seq("(1*)"))
    assert automaton.size == 1
    assert automaton.successors == ((),)
    assert automaton.split_count == 0


def test_automaton_matrix_counts_edges():
    automaton = compile_automaton(seq("1(10)"))
    matrix = automaton.matrix().toarray()
    for i, targets in enumerate(automaton.successors):
        assert matrix[:, i].sum() == len(targets)


def test_automaton_rejects_streams_and_trivial():
    with pytest.raises(InvalidSequenceError):
        compile_automaton(BoundedStream("1101"))
    with pytest.raises(TrivialSequenceError):
        compile_automaton(KneadingSequence.trivial())


def test_automaton_accepts_plain_words():
    automaton = compile_automaton(EventuallyPeriodicWord("1", "10"))
    assert automaton.sequence == seq("1(10)")


def test_replay_matches_census_on_random_corpus(random_corpus):
    assert len(random_corpus) >= 200
    for nu in random_corpus:
        assert compile_automaton(nu).replay(ORACLE_DEPTH) == census(nu, ORACLE_DEPTH).counts, nu.text


def test_replay_matches_census_on_angle_corpus(angle_corpus):
    for nu in angle_corpus:
        assert compile_automaton(nu).replay(ORACLE_DEPTH) == census(nu, ORACLE_DEPTH).counts, nu.text
