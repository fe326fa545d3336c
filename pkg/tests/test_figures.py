import pytest

from tolposet.figures import FIXTURES, fixture_dir, load_relation, replay


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda fx: fx.name)
def test_replays(fx):
    for fact, expected, observed in replay(fx):
        assert observed == expected, fact


def test_every_relation_file_loads():
    names = sorted(p.stem for p in fixture_dir().glob("*.rel"))
    assert len(names) == 21
    for name in names:
        assert load_relation(name).poset.n > 0


def test_fixtures_reference_existing_files():
    stems = {p.stem for p in fixture_dir().iterdir()}
    for fx in FIXTURES:
        assert fx.poset in stems
        assert set(fx.relations.values()) <= stems
