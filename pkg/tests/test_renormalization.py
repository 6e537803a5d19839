import random

import pytest

from core_entropy.core.exceptions import PostconditionError, RenormalizationError, TrivialSequenceError
from core_entropy.models.angle import Angle
from core_entropy.models.kneading import KneadingSequence
from core_entropy.services.angle_service import kneading_of_angle
from core_entropy.services.entropy_service import entropy_exact
from core_entropy.services.renormalization_service import (
    EntropyIdentityReport,
    RenormalizationCertificate,
    derenormalize,
    detect_renormalizable,
    entropy_identity_check,
    maximal_base_chain,
    tune,
)
from core_entropy.services.symbolic_service import address_to_kneading, internal_address
from core_entropy.utils.parsing import parse_sequence as seq
from tests.conftest import RANDOM_SEED, angle_kneadings, random_sequence


def test_derenormalize():
    assert derenormalize(seq("(101*)"), 2) == seq("(1*)")
    assert derenormalize(seq("11(10)"), 2) == seq("1(0)")
    with pytest.raises(ValueError):
        derenormalize(seq("1(0)"), 1)


def test_tune_examples():
    assert tune(seq("(1*)"), seq("1(0)")) == seq("11(10)")
    assert tune(seq("(1*)"), seq("(1*)"), standard=True) == seq("(101*)")


def test_standard_tuning_matches_angle_tuning():
    # airplane tuned by the basilica lands at 4/9
    nu = tune(seq("(10*)"), seq("(1*)"), standard=True)
    assert nu == kneading_of_angle(Angle.of(4, 9))
    assert internal_address(nu).text == "1-2-3-6"


def test_tune_rejects_bad_bases():
    with pytest.raises(RenormalizationError):
        tune(seq("1(10)"), seq("1(0)"))
    with pytest.raises(RenormalizationError):
        tune(KneadingSequence.trivial(), seq("1(0)"))
    with pytest.raises(TrivialSequenceError):
        tune(seq("(1*)"), KneadingSequence.trivial())


def test_detect_bifurcation_of_basilica():
    certificates = detect_renormalizable(seq("(101*)"))
    assert [c.p for c in certificates] == [2]
    certificate = certificates[0]
    assert certificate.base == seq("(1*)")
    assert certificate.dynamical_projection == "upper"
    assert certificate.derenormalized == seq("(1*)")
    assert certificate.certified


def test_detect_on_uncertified_lower_tuning():
    certificates = detect_renormalizable(seq("11(10)"))
    assert [c.p for c in certificates] == [2]
    certificate = certificates[0]
    assert certificate.dynamical_projection == "lower"
    assert certificate.derenormalized == seq("1(0)")
    assert not certificate.certified


def test_cascade_members_are_two_renormalizable():
    nu = address_to_kneading([1, 2, 4])
    certificates = [c for c in detect_renormalizable(nu) if c.p == 2]
    assert len(certificates) == 1
    assert certificates[0].base == seq("(1*)")


def test_detect_ignores_non_renormalizable():
    assert detect_renormalizable(seq("1(0)")) == []
    assert detect_renormalizable(seq("(10*)")) == []


def test_detect_rejects_trivial():
    with pytest.raises(TrivialSequenceError):
        detect_renormalizable(KneadingSequence.trivial())


def test_certificate_as_dict():
    certificate = detect_renormalizable(seq("(101*)"))[0]
    assert certificate.as_dict() == {
        "p": 2,
        "base": "(1*)",
        "dynamical": "(10)",
        "dynamical_projection": "upper",
        "eta": "(1*)",
        "certified": True,
    }


def test_entropy_identity_on_examples():
    report = entropy_identity_check(seq("11(10)"), detect_renormalizable(seq("11(10)"))[0])
    assert report.passed
    assert report.h_eta / report.p == pytest.approx(report.h_nu, abs=1e-9)

    airplane_doubled = tune(seq("(10*)"), seq("(1*)"), standard=True)
    certificate = [c for c in detect_renormalizable(airplane_doubled) if c.p == 3][0]
    report = entropy_identity_check(airplane_doubled, certificate)
    assert report.certified
    assert report.h_nu == pytest.approx(entropy_exact(seq("(10*)")).value, abs=1e-9)


def test_entropy_identity_strict_mode_raises():
    # a certificate that does not belong to the sequence
    bogus = RenormalizationCertificate(
        p=2,
        base=seq("(1*)"),
        dynamical=seq("(10)"),
        dynamical_projection="upper",
        derenormalized=seq("(1*)"),
        certified=False,
    )
    with pytest.raises(PostconditionError):
        entropy_identity_check(seq("1(0)"), bogus)
    report = entropy_identity_check(seq("1(0)"), bogus, strict=False)
    assert isinstance(report, EntropyIdentityReport)
    assert not report.passed


def test_maximal_base_chain():
    chain = maximal_base_chain(seq("(101*)"))
    assert [c.p for c in chain] == [2]
    assert chain[-1].derenormalized == seq("(1*)")

    cascade = maximal_base_chain(address_to_kneading([1, 2, 4, 8]))
    assert [c.p for c in cascade] == [2, 2]
    assert maximal_base_chain(seq("1(0)")) == []


def test_tune_then_derenormalize_returns_eta():
    bases = [nu for nu in angle_kneadings(15) if nu.is_star_periodic and nu.period_length <= 4]
    etas = angle_kneadings(9)
    for mu in bases:
        for eta in etas:
            for standard in (False, True):
                nu = tune(mu, eta, standard=standard)
                assert derenormalize(nu, mu.period_length) == eta


@pytest.mark.slow
def test_entropy_identity_on_tuned_pairs():
    bases = [nu for nu in angle_kneadings(31) if nu.is_star_periodic and 2 <= nu.period_length <= 5]
    etas = [eta for eta in angle_kneadings(9) if eta.is_star_periodic or not eta.is_periodic]
    pairs = [(mu, eta) for mu in bases for eta in etas]
    assert len(pairs) >= 100

    for mu, eta in pairs:
        nu = tune(mu, eta, standard=True)
        p = mu.period_length
        certificates = [c for c in detect_renormalizable(nu, p) if c.p == p]
        assert len(certificates) == 1, nu.text
        assert certificates[0].dynamical_projection == "upper"
        report = entropy_identity_check(nu, certificates[0])
        assert report.gap < 1e-9, report.as_dict()


def test_tune_then_derenormalize_on_random_pairs():
    rng = random.Random(RANDOM_SEED)
    for _ in range(500):
        p = rng.randint(2, 6)
        mu = KneadingSequence("", "1" + "".join(rng.choice("01") for _ in range(p - 2)) + "*")
        eta = random_sequence(rng, max_period=8)
        assert eta.period_length <= 8
        for standard in (False, True):
            nu = tune(mu, eta, standard=standard)
            assert derenormalize(nu, p) == eta, (mu.text, eta.text, standard)
