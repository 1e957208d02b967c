import pytest

from relpoly.verify import SUITES, product_pairs, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    res = run_suite(name)
    assert res.passed, res.failures[:5]
    assert res.checks > 0


@pytest.mark.parametrize("name", ["sandwich", "derivative-signs", "oracle"])
def test_rerun_is_identical(name):
    assert run_suite(name, 6).to_json() == run_suite(name, 6).to_json()


def test_n_max_is_respected():
    assert run_suite("sandwich", 4).checks == 3 * 33


def test_product_pairs():
    pairs = product_pairs()
    assert len(pairs) == 20
    assert all(g.m + h.m <= 10 for _, g, _, h in pairs)


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("nope")


def test_failure_is_recorded():
    res = run_suite("oracle", 3)
    res.check(False, "synthetic")
    assert not res.passed and res.to_json()["failures"] == ["synthetic"]
