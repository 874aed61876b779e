"""Sweep kernels against the pure-Python oracle, and lane parity."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from incalg.errors import BudgetExceeded
from incalg.field import GF
from incalg.harness.families import (bijective_shifts, invertible_elements,
                                     jordan_like_maps, multiplicative_systems)
from incalg.harness.gl import enumerate_gl, gl_order
from incalg.harness.kernels import (backend_default, build_sweep_tables,
                                    codes_of_linmap, full_scan,
                                    linmap_from_codes, sweep_gl)
from incalg.harness.verify import verify_theorem
from incalg.linmaps import is_bijective, is_k_potent_preserver
from incalg.poset import chain, poset_from_relations

HAVE_NUMBA = backend_default() == "numba"

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")


def vee():
    return poset_from_relations([1, 2, 3], [(1, 2), (1, 3)])


def test_gl_order_closed_form():
    assert gl_order(3, 2) == 168
    assert gl_order(5, 2) == 9_999_360
    assert gl_order(3, 3) == 11_232
    assert gl_order(3, 4) == 181_440
    assert gl_order(3, 5) == 1_488_000
    assert gl_order(3, 7) == 33_784_128


@pytest.mark.parametrize("q", [2, 3])
def test_enumerate_gl_counts_and_bijectivity(q):
    P, F = chain(2), GF(q)
    maps = list(enumerate_gl(P, F))
    assert len(maps) == gl_order(P.dim, q)
    assert len({codes_of_linmap(m) for m in maps}) == len(maps)
    for m in maps[:: max(1, len(maps) // 40)]:
        assert is_bijective(m)


def test_enumerate_gl_budget():
    with pytest.raises(BudgetExceeded) as ei:
        list(enumerate_gl(chain(2), GF(5), budget=10))
    assert ei.value.required == 1_488_000


@pytest.mark.parametrize("q,k", [(2, 2), (3, 2), (4, 2), (5, 3)])
def test_sweep_preservers_match_python_oracle(q, k):
    # the kernel's preserver list must equal filtering the pure-Python
    # enumeration through the pure-Python predicate, in the same order
    P, F = chain(2), GF(q)
    res = sweep_gl(P, F, k)
    oracle = [codes_of_linmap(m) for m in enumerate_gl(P, F)
              if is_k_potent_preserver(m, k)]
    got = [tuple(int(v) for v in row) for row in res.preservers]
    assert got == oracle
    assert res.n_maps == gl_order(P.dim, q)


@needs_numba
@pytest.mark.parametrize("q,k,flags", [(2, 2, (True, True)),
                                       (3, 2, (False, False)),
                                       (4, 2, (True, True)),
                                       (5, 3, (False, False))])
def test_backend_parity_gl_sweep(q, k, flags):
    want_lie, want_exidem = flags
    P, F = chain(2), GF(q)
    a = sweep_gl(P, F, k, want_lie=want_lie, want_exidem=want_exidem,
                 backend="numba")
    b = sweep_gl(P, F, k, want_lie=want_lie, want_exidem=want_exidem,
                 backend="numpy")
    assert a.counts == b.counts
    assert np.array_equal(a.preservers, b.preservers)
    assert np.array_equal(a.lie_maps, b.lie_maps)
    assert np.array_equal(a.mismatches, b.mismatches)


@needs_numba
@pytest.mark.parametrize("q", [2, 3])
def test_backend_parity_full_scan(q):
    P, F = chain(2), GF(q)
    a = full_scan(P, F, 2, want_circ=True, want_exidem=True, backend="numba")
    b = full_scan(P, F, 2, want_circ=True, want_exidem=True, backend="numpy")
    assert a.counts == b.counts
    assert np.array_equal(a.preservers, b.preservers)
    assert a.n_maps == (q ** P.dim) ** P.dim


def test_worker_partition_invariance():
    P, F = chain(2), GF(3)
    one = sweep_gl(P, F, 2, want_lie=True, workers=1)
    many = sweep_gl(P, F, 2, want_lie=True, workers=5)
    assert one.counts == many.counts
    assert np.array_equal(one.preservers, many.preservers)
    assert np.array_equal(one.lie_maps, many.lie_maps)


def test_full_scan_counts_bijective_consistently():
    P, F = chain(2), GF(2)
    res = full_scan(P, F, 2)
    n_bij = sum(v for key, v in res.counts.items() if "bij=1" in key)
    assert n_bij == gl_order(P.dim, 2)
    assert res.n_maps == 8 ** 3


@pytest.mark.parametrize("q", [3, 4])
def test_any_preserver_preserves_jordan_products(q):
    # full map space, bijective or not: preserver and not circ never happens
    P, F = chain(2), GF(q)
    res = full_scan(P, F, 2, want_circ=True)
    offenders = sum(v for key, v in res.counts.items()
                    if "pres=1" in key and "circ=0" in key)
    assert offenders == 0
    # and the preserver class is strictly larger than the bijective one
    pres_total = sum(v for key, v in res.counts.items() if "pres=1" in key)
    pres_bij = sum(v for key, v in res.counts.items()
                   if "pres=1" in key and "bij=1" in key)
    assert pres_total > pres_bij


def test_sweep_budget_guard():
    with pytest.raises(BudgetExceeded):
        sweep_gl(chain(3), GF(7), 2)  # coefficient space 7^6 over the cap


def test_family_sizes_on_two_chain():
    P = chain(2)
    assert len(invertible_elements(P, GF(3))) == 2 * 2 * 3
    assert len(multiplicative_systems(P, GF(5))) == 4
    assert len(bijective_shifts(P, GF(2))) == 4
    assert len(bijective_shifts(P, GF(3))) == 2 * 3 * 3
    fam = jordan_like_maps(P, GF(3))
    assert len(fam) == 12
    for m in fam.values():
        assert is_bijective(m)


def test_tables_cache_and_contents():
    P, F = chain(2), GF(3)
    t1 = build_sweep_tables(P, F, 2)
    t2 = build_sweep_tables(P, F, 2)
    assert t1 is t2
    assert t1.space == 27
    assert t1.delta_code == 1 + 3  # codes of e_1 and e_2
    # vector negation composed with itself is the identity
    assert np.array_equal(t1.vec_neg[t1.vec_neg], np.arange(27))


def test_codes_round_trip():
    P, F = chain(2), GF(5)
    for m in list(enumerate_gl(P, F, budget=2 * 10 ** 6))[:100]:
        assert linmap_from_codes(P, F, codes_of_linmap(m)) == m


def test_verify_theorem_argument_validation():
    P = chain(2)
    with pytest.raises(ValueError):
        verify_theorem("z2", P, GF(3))
    with pytest.raises(ValueError):
        verify_theorem("char-ne-2", P, GF(2))
    with pytest.raises(ValueError):
        verify_theorem("kpotent", P, GF(7))  # k missing
    with pytest.raises(ValueError):
        verify_theorem("kpotent", P, GF(5), k=5)  # char divides k
    with pytest.raises(ValueError):
        verify_theorem("no-such-theorem", P, GF(2))


def test_numpy_fallback_selected_by_env_flag():
    # a fresh interpreter with the flag set must pick the numpy lane and
    # reproduce the numba counts
    code = (
        "import json\n"
        "from incalg.poset import chain\n"
        "from incalg.field import GF\n"
        "from incalg.harness.kernels import backend_default, sweep_gl\n"
        "res = sweep_gl(chain(2), GF(3), 2, want_lie=True)\n"
        "print(json.dumps({'backend': backend_default(),"
        " 'used': res.backend, 'counts': res.counts}))\n"
    )
    env = dict(os.environ, INCALG_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    got = json.loads(out.stdout)
    assert got["backend"] == "numpy"
    assert got["used"] == "numpy"
    here = sweep_gl(chain(2), GF(3), 2, want_lie=True)
    assert got["counts"] == here.counts


@needs_numba
def test_numba_backend_request_fails_cleanly_when_disabled():
    code = (
        "from incalg.poset import chain\n"
        "from incalg.field import GF\n"
        "from incalg.harness.kernels import sweep_gl\n"
        "try:\n"
        "    sweep_gl(chain(2), GF(2), 2, backend='numba')\n"
        "except ValueError as e:\n"
        "    print('refused')\n"
    )
    env = dict(os.environ, INCALG_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "refused"


def test_verify_z2_on_vee_poset():
    r = verify_theorem("z2", vee(), GF(2))
    assert r.match
    assert r.n_maps == gl_order(5, 2)
    assert r.preserver_count == r.family_count == 128
