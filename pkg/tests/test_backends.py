import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvspacetime import _backend, algebra, checks

coefficients = st.tuples(*[st.floats(-1e6, 1e6)] * 8)


def test_python_backend_always_available():
    assert "python" in _backend.available()


def test_unknown_backend():
    with pytest.raises(ValueError):
        _backend.load("fortran")


def test_env_forces_fallback():
    env = dict(os.environ, MVSPACETIME_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import mvspacetime; print(mvspacetime.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@given(coefficients, coefficients)
def test_products_identical(a, b):
    tables = [_backend.load(n).ProductTable(*algebra.build_basis_table()) for n in _backend.available()]
    results = [t.product(a, b) for t in tables]
    assert all(r == results[0] for r in results)


def test_table_fields(backend):
    index, sign = algebra.build_basis_table()
    table = backend.ProductTable(index, sign)
    assert table.index == tuple(index) and table.sign == tuple(float(s) for s in sign)
    with pytest.raises(ValueError):
        backend.ProductTable(index[:10], sign)


def test_status_codes(backend):
    assert (backend.STATUS_OK, backend.STATUS_RADIUS, backend.STATUS_NONFINITE,
            backend.STATUS_AXIS) == (0, 1, 2, 3)


def test_nonfinite_status(backend):
    rows, status, done = backend.integrate_reduced([1.0, 0, 0, 0, 1e308, 0], 5, 1e10, 1.0, 0.0)
    assert status == backend.STATUS_NONFINITE and done == 0 and rows.shape == (1, 6)


def test_checks_with_each_backend(backend):
    table = backend.ProductTable(*algebra.build_basis_table())
    results = checks.algebra_suite(np.random.default_rng(3), 200, table)
    assert all(r.passed for r in results)


def test_benchmark_script_runs(capsys):
    import runpy
    from pathlib import Path
    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    bench = runpy.run_path(str(script))
    bench["main"](["--repeat", "1", "--steps", "50", "--products", "50"])
    out = capsys.readouterr().out
    assert "geometric product x50" in out and "reduced RK4 x50" in out
