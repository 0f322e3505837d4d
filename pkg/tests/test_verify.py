import pytest

from auctionlab import ScenarioError
from auctionlab.verify import run_suite


class TestRunSuite:
    def test_marginals(self):
        checks = run_suite("marginals", n=4, k=2, samples=50_000, seed=1)
        assert all(c.passed for c in checks)
        assert any(c.name == "max_sum_error" for c in checks)

    def test_copycat(self):
        checks = run_suite("copycat", n=6, k=3, samples=50_000, seed=2)
        assert all(c.passed for c in checks)

    def test_sequential(self):
        checks = run_suite("sequential", n=4, k=2, samples=300, seed=3)
        assert all(c.passed for c in checks)

    def test_position(self):
        assert all(c.passed for c in run_suite("position"))

    def test_unknown_suite(self):
        with pytest.raises(ScenarioError):
            run_suite("bogus")
