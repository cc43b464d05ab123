import pytest
from crafted import Delay, Factory, Oversized, Silent

from axiombench import fixtures
from axiombench.errors import HarnessIncompatibility, UsageError
from axiombench.model_api import (Model, autoregress, check_factory, check_model, clone, feed,
                                  fingerprint, learn, registered_models, resolve_model)
from axiombench.signals import make_rng, random_admissible_items


def test_delay_learns_matching_cycle_in_two_passes():
    phi = [1, 2, 4, 8, 16, 32, 64]
    out = learn(Delay(7), phi, 10)
    assert out.learned and out.passes == 2 and out.tau == 14


def test_learn_reports_budget_exhaustion():
    out = learn(Delay(7), [1, 2, 4], 5)
    assert not out.learned and out.tau is None and out.passes == 5


def test_learn_callback_sees_every_pass():
    seen = []
    learn(Delay(3), [1, 2, 4], 10, on_pass=lambda n, ok: seen.append((n, ok)))
    assert seen == [(1, False), (2, True)]


def test_learn_rejects_bad_arguments():
    with pytest.raises(UsageError):
        learn(Delay(), [1], 0)
    with pytest.raises(UsageError):
        learn(Delay(), [], 3)


def test_learned_state_regenerates_sequence():
    rng = make_rng(5)
    m = fixtures.make_fixture("memoriser_bounded").blank()
    for _ in range(30):
        phi = random_admissible_items(rng, 7, 10, cyclic=True)
        before = m.clone()
        out = learn(m, phi, 100)
        if out.learned:
            replay = before.clone()
            feed(replay, phi * (out.passes - 1))
            assert autoregress(replay, 7) == tuple(phi)


def test_autoregress_feeds_back_predictions():
    m = Delay(2)
    feed(m, [1, 2])
    assert autoregress(m, 5) == (1, 2, 1, 2, 1)
    with pytest.raises(UsageError):
        autoregress(m, -1)


def test_contract_checks():
    assert isinstance(Delay(), Model)
    check_model(Delay(), 10)
    with pytest.raises(HarnessIncompatibility, match="clone"):
        check_model(Silent(), 10)
    with pytest.raises(HarnessIncompatibility, match="predict"):
        check_model(Oversized(), 10)
    with pytest.raises(HarnessIncompatibility):
        check_factory(object())
    with pytest.raises(HarnessIncompatibility):
        check_factory(Factory(Delay, width=0))
    with pytest.raises(HarnessIncompatibility):
        clone(Silent())
    with pytest.raises(HarnessIncompatibility):
        fingerprint(object())


def test_registry_and_import_paths():
    assert set(fixtures.VARIANTS) <= set(registered_models())
    f = resolve_model("echo", 6)
    assert f.width == 6 and f.descriptor == "fixture:echo"
    f = resolve_model("crafted:delay_factory", 10)
    assert isinstance(f.blank(), Delay)
    with pytest.raises(UsageError):
        resolve_model("no_such_model", 10)
    with pytest.raises(UsageError):
        resolve_model("crafted:missing", 10)
