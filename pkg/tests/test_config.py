import pytest

from tauforge.config import ConfigError, RunConfig, load_config, parse_config_text


def test_defaults_validate():
    cfg = load_config(env={})
    assert cfg.max_k == 3 and cfg.seed == 0 and cfg.format == "text" and cfg.jobs >= 1


def test_parse_flat_text():
    raw = parse_config_text("# c\nseed = 4  # trailing\n\nq = 0.1, 0.2\n")
    assert raw == {"seed": "4", "q": "0.1, 0.2"}
    with pytest.raises(ConfigError):
        parse_config_text("seed 4")


def test_precedence(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("seed = 1\nmax_k = 2\nq = 0.2\n")
    cfg = load_config(str(f), env={"TAUFORGE_SEED": "2"}, overrides={"max_k": 1, "seed": None})
    assert cfg.seed == 2 and cfg.max_k == 1 and cfg.q == (0.2,)


@pytest.mark.parametrize("env", [
    {"TAUFORGE_SEED": "x"},
    {"TAUFORGE_NOPE": "1"},
    {"TAUFORGE_TOLERANCE": "-1"},
    {"TAUFORGE_TAU": "0"},
    {"TAUFORGE_Q": "1.5"},
    {"TAUFORGE_CONVENTION": "jacobi"},
    {"TAUFORGE_TIMING": "maybe"},
])
def test_invalid_values(env):
    with pytest.raises(ConfigError):
        load_config(env=env)


def test_missing_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/run.cfg", env={})


def test_public_dict_excludes_execution_knobs():
    d = RunConfig(jobs=3).public_dict()
    assert "jobs" not in d and "timing" not in d and d["orders"] == [2, 3, 4]
