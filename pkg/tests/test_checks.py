import numpy as np

from mvspacetime import checks


def test_default_suite_passes():
    results = checks.run_all(seed=7, n=300)
    assert all(r.passed for r in results), [r.line() for r in results if not r.passed]


def test_deterministic():
    a = [r.line() for r in checks.run_all(seed=11, n=50)]
    b = [r.line() for r in checks.run_all(seed=11, n=50)]
    assert a == b


def test_fault_detected():
    failed = {r.name for r in checks.run_all(seed=0, n=50, table=checks.faulty_table()) if not r.passed}
    assert "anticommutation ej ek + ek ej = 0" in failed
    assert "uv = u.v + u^v" in failed


def test_random_pairs_orthogonal():
    rng = np.random.default_rng(0)
    for _ in range(100):
        x, ct = checks.random_orthogonal_pair(rng)
        assert abs(x.dot(ct)) <= 1e-12 * x.norm() * ct.norm()
        x, ct = checks.random_orthogonal_pair(rng, null=True)
        assert abs(x.norm() - ct.norm()) <= 1e-12 * x.norm()
