import json

import numpy as np
import pandas as pd
import pytest

from provd.formula import BOT, Var, size
from provd.fuzz import CONFIGURATIONS, FormulaGenerator, FuzzHarness, fuzz_round, variable_names


@pytest.fixture(scope="module")
def small_round():
    return fuzz_round(1, iterations=24, size=6)


def test_variable_names():
    assert variable_names(3) == ["p", "q", "r"]
    assert variable_names(8)[-2:] == ["p6", "p7"]


def test_generator_respects_size():
    gen = FormulaGenerator(np.random.default_rng(0), ["p", "q"])
    for _ in range(50):
        assert size(gen.formula(5)) <= 2 * 5 + 1


def test_size_zero_gives_atoms():
    gen = FormulaGenerator(np.random.default_rng(7), ["p"])
    assert {gen.formula(0) for _ in range(40)} <= {Var("p"), BOT}


def test_invalid_arguments():
    with pytest.raises(ValueError):
        FuzzHarness(size=-1)
    with pytest.raises(ValueError):
        FuzzHarness(n_vars=0)


def test_round_has_no_anomalies(small_round):
    assert small_round.ok, small_round.anomalies
    summary = small_round.summary
    assert summary["cases"] == 24
    assert summary["proofs"] == summary["proofs_ok"]
    assert summary["countermodels"] == summary["countermodels_ok"]


def test_every_configuration_decides(small_round):
    for case in small_round.cases:
        assert len(case.verdicts) == len(CONFIGURATIONS)
        assert case.gllin is not None


def test_left_formula_on_odd_cases(small_round):
    assert not small_round.cases[0].left
    assert small_round.cases[1].left


def test_deterministic(small_round):
    again = fuzz_round(1, iterations=24, size=6)
    assert again.to_json() == small_round.to_json()
    assert fuzz_round(2, iterations=24, size=6).to_json() != small_round.to_json()


def test_size_zero_round():
    report = fuzz_round(5, iterations=10, size=0, n_vars=1)
    assert report.ok
    assert all(case.right[0] in ("p", "bot") for case in report.cases)


def test_json_report(small_round):
    data = json.loads(small_round.to_json())
    assert data["seed"] == 1 and data["iterations"] == 24
    assert data["summary"]["anomalies"] == 0
    assert len(data["cases"]) == 24


def test_dataframe_and_csv(small_round, tmp_path):
    df = small_round.to_dataframe()
    assert len(df) == 24 * len(CONFIGURATIONS)
    assert set(df["calculus"]) == {"glseq", "sseq", "dseq2", "dseq3"}
    assert set(df["kind"]) == {"=>", "=s>", "=d>"}

    path = tmp_path / "fuzz.csv"
    small_round.export_csv(path)
    loaded = pd.read_csv(path)
    assert list(loaded.columns) == list(df.columns)
    assert len(loaded) == len(df)


@pytest.mark.slow
def test_full_scale_round():
    report = fuzz_round(1, iterations=500, size=12, n_vars=3)
    assert report.ok, report.anomalies[:5]
    summary = report.summary
    assert summary["cases"] == 500
    assert summary["proofs"] == summary["proofs_ok"]
    assert summary["countermodels"] == summary["countermodels_ok"]
