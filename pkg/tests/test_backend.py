import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import bigravity
from bigravity import _kernels_py as slow
from bigravity.radial_map import singular_data

fast = pytest.importorskip("bigravity._kernels")

m_values = st.floats(-1e4, 1e4).filter(lambda m: abs(m + 2.0) > 1e-6)


def _close(a, b, rel=1e-13):
    return abs(a - b) <= rel * max(1.0, abs(b))


def test_default_backend_is_compiled():
    assert bigravity.BACKEND == "cython"


def test_constants_agree():
    assert fast.TAYLOR_BAND == slow.TAYLOR_BAND
    assert fast.OFFSET_BAND == slow.OFFSET_BAND


@given(m_values)
def test_state_parity(m):
    for a, b in zip(fast.state(m, m - 1.0), slow.state(m, m - 1.0)):
        assert _close(a, b)


@given(st.floats(-0.4, 0.4))
def test_state_parity_near_flat(e):
    m = 1.0 + e
    for a, b in zip(fast.state(m, e), slow.state(m, e)):
        assert _close(a, b)


@given(m_values)
def test_derivs_parity(m):
    k, _, q, _, _ = slow.state(m, m - 1.0)
    for a, b in zip(fast.derivs(m, k, q), slow.derivs(m, k, q)):
        assert _close(a, b, rel=1e-12)


def test_panel_parity():
    x, w = np.polynomial.legendre.leggauss(24)
    m0, d1, d2 = singular_data()
    for a in np.linspace(-6.0, 3.0, 37):
        p = fast.piece_sum(a, a + 0.25, x, w, m0, d1, d2)
        q = slow.piece_sum(a, a + 0.25, x, w, m0, d1, d2)
        assert _close(p, q)


@pytest.mark.parametrize("m", [-5.0, -1.9, -1.0, 0.999, 1.0, 1.001, 4.0])
def test_log_reg_parity(m):
    m0, d1, d2 = singular_data()
    assert _close(fast.log_reg(m, m - 1.0, m0, d1, d2), slow.log_reg(m, m - 1.0, m0, d1, d2))


def test_forced_fallback_matches():
    code = (
        "import bigravity, json;"
        "from bigravity import radial_map as rm;"
        "cc = rm.critical_constants();"
        "print(json.dumps([bigravity.BACKEND, cc.A, cc.B, rm.F_of_m(0.5)]))"
    )
    env = dict(os.environ, BIGRAVITY_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    import json

    backend, A, B, F = json.loads(out.stdout)
    from bigravity import radial_map as rm

    cc = rm.critical_constants()
    assert backend == "python"
    assert A == pytest.approx(cc.A, rel=1e-13)
    assert B == pytest.approx(cc.B, rel=1e-9)
    assert F == pytest.approx(rm.F_of_m(0.5), rel=1e-13)
