"""Configuration validation, cache keys and the convention search."""

import pytest

from fk3hh.session import Config, Session, cache_key, parse_field, select_convention


def test_config_validation():
    with pytest.raises(ValueError):
        Config(depth=4)
    with pytest.raises(ValueError):
        Config(field="fp:2")
    with pytest.raises(ValueError):
        Config(sign_variant=9)
    with pytest.raises(ValueError):
        Config(orientation="sideways")
    assert parse_field("fp:5").char == 5


def test_cache_key_depends_on_every_setting():
    base = cache_key(Config())
    assert cache_key(Config()) == base
    assert cache_key(Config(depth=7)) != base
    assert cache_key(Config(field="fp:5")) != base
    assert cache_key(Config(sign_variant=1)) != base
    # runtime-only options do not affect the key
    assert cache_key(Config(jobs=4)) == base


def test_cache_key_depends_on_data(tmp_path):
    import shutil

    from fk3hh.algebra import DATA_DIR
    data = tmp_path / "d"
    shutil.copytree(DATA_DIR, data)
    assert cache_key(Config(data_dir=str(data))) == cache_key(Config())
    (data / "generators.json").write_text((data / "generators.json").read_text() + " ")
    assert cache_key(Config(data_dir=str(data))) != cache_key(Config())


def test_convention_search_finds_a_unique_pattern():
    cfg, trials = select_convention(Config())
    assert len(trials) == 8
    assert sum(t["ok"] for t in trials) == 1
    assert (cfg.orientation, cfg.sign_variant) == ("left-right", 3)


def test_prime_field_reproduces_grading_bracket():
    S = Session(Config(field="fp:7", depth=5))
    r = S.B.generator_bracket(8, 9)
    assert r.value == S.G[9].scale(S.C.field(2))
