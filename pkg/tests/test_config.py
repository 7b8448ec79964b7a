import logging
import math

import pytest

from hybrid_qubit_sim.core.errors import ConfigError
from hybrid_qubit_sim.scenarios import (
    CATALOG,
    build_config,
    flatten,
    list_scenarios,
    load_config,
    parse_overrides,
)


def _write(tmp_path, text: str):
    path = tmp_path / "scenario.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_sections_are_flattened_and_defaults_filled(tmp_path):
    path = _write(
        tmp_path,
        "scenario: write\nphysics:\n  delta_max_ghz: 1.0\nstate:\n  a_re: 0.6\n  b_im: 0.8\n",
    )
    cfg = load_config(path)
    assert cfg.delta_max_ghz == 1.0
    assert cfg.sweep_ns == 10.0
    assert cfg.epsilon_over_delta == 2.0
    assert cfg.b == complex(0.0, 0.8)


def test_overrides_win_over_file(tmp_path):
    path = _write(tmp_path, "scenario: lz-scan\ndelta_max_ghz: 1.0\nepsilon_over_delta: 5\n")
    cfg = load_config(path, parse_overrides(["epsilon_over_delta=8", "scan.scan_sweep_ns=[1, 2]"]))
    assert cfg.epsilon_over_delta == 8.0
    assert cfg.scan_sweep_ns == [1.0, 2.0]


def test_missing_required_key_names_it():
    with pytest.raises(ConfigError) as err:
        build_config({"scenario": "write"})
    assert err.value.key == "delta_max_ghz"
    assert "delta_max_ghz" in str(err.value)


def test_unknown_scenario_and_key():
    with pytest.raises(ConfigError) as err:
        build_config({"scenario": "teleport", "delta_max_ghz": 1.0})
    assert err.value.key == "scenario"
    with pytest.raises(ConfigError) as err:
        build_config({"scenario": "write", "delta_max_ghz": 1.0, "colour": "blue"})
    assert err.value.key == "colour"
    with pytest.raises(ConfigError) as err:
        build_config({"scenario": "write", "delta_max_ghz": -1.0})
    assert err.value.key == "delta_max_ghz"


def test_amplitudes_renormalised_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        cfg = build_config(
            {"scenario": "write", "delta_max_ghz": 1.0, "a_re": 0.6, "b_re": 0.8 + 1e-8}
        )
    assert abs(cfg.a) ** 2 + abs(cfg.b) ** 2 == pytest.approx(1.0, abs=1e-14)
    assert "renormalising" in caplog.text


def test_amplitudes_far_from_unit_norm_rejected():
    with pytest.raises(ConfigError) as err:
        build_config({"scenario": "write", "delta_max_ghz": 1.0, "a_re": 1.0, "b_re": 1.0})
    assert err.value.key == "a_re"


def test_echo_round_trips():
    cfg = build_config({"scenario": "read", "delta_max_ghz": 2.0, "a_re": 0.6, "b_im": 0.8})
    again = build_config(cfg.echo())
    assert again == cfg


def test_deep_nesting_and_bad_overrides():
    with pytest.raises(ConfigError):
        flatten({"physics": {"inner": {"x": 1}}})
    with pytest.raises(ConfigError):
        parse_overrides(["no_equals_sign"])


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(tmp_path / "absent.yaml")
    assert err.value.key == "config"


def test_catalog_listing():
    text = list_scenarios()
    assert "write" in text
    assert "phase-gate" in text
    assert CATALOG["write"].defaults["sweep_ns"] == 10.0
    assert CATALOG["lz-scan"].table == ("sweep_ns", "v", "p_analytic", "p_simulated", "abs_error")
    assert CATALOG["phase-gate"].defaults["theta_target"] == pytest.approx(math.pi / 4.0)


def _cfg(name: str, **values):
    return build_config({"scenario": name, "delta_max_ghz": 1.0, **values})


def test_scan_lists_must_be_positive():
    with pytest.raises(ConfigError) as err:
        _cfg("sweep-time", scan_exponent_target=[0, 1])
    assert err.value.key == "scan_exponent_target"
    with pytest.raises(ConfigError) as err:
        _cfg("decoupling-compare", scan_epsilon_over_delta=[0, 10])
    assert err.value.key == "scan_epsilon_over_delta"


def test_smooth_sweep_settings():
    assert _cfg("sweep-time").edge_ns == 10.0
    assert _cfg("write", sweep_shape="smooth", edge_ns=2.0).sweep_shape == "smooth"
    with pytest.raises(ConfigError) as err:
        _cfg("write", edge_ns=-1.0)
    assert err.value.key == "edge_ns"
