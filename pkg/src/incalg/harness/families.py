"""Constructive families of maps that the factorization theorems predict.

Everything here is built from the published ingredients only (inner
conjugations, order-induced maps, multiplicative scalings, shifts, roots of
unity), so comparing these families against a sweep's preserver list checks
the converse direction of each statement.
"""

import itertools

from ..algebra import IncElement
from ..errors import BudgetExceeded, UnsupportedField
from ..field import roots_of_unity
from ..linmaps import (compose, conjugation_map, is_multiplicative_coeffs,
                       multiplicative_map, order_induced_map, scale_map,
                       shift_from_functional)
from ..poset import enumerate_order_maps

FAMILY_BUDGET = 200_000


def invertible_elements(P, F, budget=FAMILY_BUDGET):
    """All invertible elements: nonzero on the diagonal, free off it."""
    if not F.is_finite():
        raise UnsupportedField("element enumeration needs a finite field")
    q = F.q
    n, ns = P.n, P.n_strict
    total = (q - 1) ** n * q ** ns
    if total > budget:
        raise BudgetExceeded(f"{total} invertible elements, budget {budget}",
                             required=total)
    units = list(range(1, q))
    alls = list(range(q))
    out = []
    for dvals in itertools.product(units, repeat=n):
        for svals in itertools.product(alls, repeat=ns):
            out.append(IncElement(P, F, tuple(dvals) + tuple(svals)))
    return out


def multiplicative_systems(P, F):
    """Elements with ones on the diagonal and units elsewhere whose
    coefficients are multiplicative across x < y < z."""
    if not F.is_finite():
        raise UnsupportedField("element enumeration needs a finite field")
    q = F.q
    units = list(range(1, q))
    out = []
    for svals in itertools.product(units, repeat=P.n_strict):
        sigma = IncElement(P, F, (F.one,) * P.n + tuple(svals))
        if is_multiplicative_coeffs(sigma):
            out.append(sigma)
    return out


def jordan_like_maps(P, F, budget=FAMILY_BUDGET):
    """Every map of the shape conjugation after order-induced after
    multiplicative scaling, both order-map kinds, deduplicated.

    Returns a dict keyed by the map's column tuple so membership tests and
    set comparison against sweep output are cheap.
    """
    betas = invertible_elements(P, F, budget=budget)
    sigmas = multiplicative_systems(P, F)
    oms = (enumerate_order_maps(P, "automorphism")
           + enumerate_order_maps(P, "anti_automorphism"))
    seen = {}
    for om in oms:
        lam_hat = order_induced_map(om, F)
        for sigma in sigmas:
            base = compose(lam_hat, multiplicative_map(sigma))
            for beta in betas:
                m = compose(conjugation_map(beta), base)
                key = tuple(tuple(c) for c in m.cols)
                if key not in seen:
                    seen[key] = m
    return seen


def scaled_maps(maps, F, k):
    """Scalar multiples r * psi over the (k-1)-th roots of unity."""
    roots = roots_of_unity(F, k - 1)
    seen = {}
    for m in maps:
        for r in roots:
            sm = scale_map(m, r)
            key = tuple(tuple(c) for c in sm.cols)
            if key not in seen:
                seen[key] = sm
    return seen


def bijective_shifts(P, F):
    """All bijective maps f -> f + s(f) * delta.

    The shift is bijective exactly when 1 + s(delta) is nonzero, so the
    functional's diagonal coordinates may not sum to minus one.
    """
    if not F.is_finite():
        raise UnsupportedField("element enumeration needs a finite field")
    q = F.q
    bad = F.neg(F.one)
    out = []
    for svals in itertools.product(range(q), repeat=P.dim):
        s_delta = 0
        for v in svals[:P.n]:
            s_delta = F.add(s_delta, v)
        if s_delta == bad:
            continue
        out.append(shift_from_functional(P, F, list(svals)))
    return out
