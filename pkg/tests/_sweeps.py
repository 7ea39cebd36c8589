"""Expensive sweeps shared by the module tests and the acceptance suite (computed once per run)."""

import random
from collections import Counter
from functools import lru_cache

from k3div.fibration.weierstrass import OutOfScope, WeierstrassQE, is_k3, valuation_profile
from k3div.gf import GF2, FiniteField2k, Poly
from k3div.singularity import NORMAL_FORMS, BiSeries, classify, jacobian_colength, parse_bipoly


def _poly(F, coeffs):
    return Poly(F, tuple(coeffs))


def _check(W, counts, failures):
    if not is_k3(W):
        counts["not_k3"] += 1
        return
    try:
        fibers = valuation_profile(W)
    except OutOfScope:
        counts["out_of_scope"] += 1
        return
    total = sum(f.geometric_count * f.valuation for f in fibers)
    counts["passing"] += 1
    if total != 20:
        failures.append((W.to_json(), total))


@lru_cache(maxsize=None)
def weierstrass_sweep(extra_gf4: int = 600, seed: int = 20):
    """Every (phi, a, psi) over GF(2) within the degree bounds, plus random inputs over GF(4).

    Returns (counts, failures) where failures lists inputs with sum deg*v != 20.
    """
    counts, failures = Counter(), []
    for pb in range(16):
        for ab in range(16):
            for sb in range(64):
                W = WeierstrassQE(
                    _poly(GF2, [(pb >> i) & 1 for i in range(4)]),
                    _poly(GF2, [(ab >> i) & 1 for i in range(4)]),
                    _poly(GF2, [(sb >> i) & 1 for i in range(6)]),
                )
                _check(W, counts, failures)
    F = FiniteField2k(2)
    rng = random.Random(seed)
    for _ in range(extra_gf4):
        W = WeierstrassQE(
            _poly(F, [rng.randrange(4) for _ in range(4)]),
            _poly(F, [rng.randrange(4) for _ in range(4)]),
            _poly(F, [rng.randrange(4) for _ in range(6)]),
        )
        _check(W, counts, failures)
    return counts, tuple(failures)


# --- singularities -----------------------------------------------------------------


def _random_part(F, lo, hi, rng):
    return BiSeries(F, {(i, d - i): rng.randrange(F.order) for d in range(lo, hi + 1) for i in range(d + 1)})


def coordinate_variant(f, F, rng, precision=14):
    """``f(t', s') + h^2`` for a random automorphism ``(t, s) -> (t', s')`` and random ``h``.

    Both operations preserve the Jacobian colength in characteristic 2
    (``d(h^2) = 0``), so they must preserve the classification.
    """
    while True:
        a, b, c, d = (rng.randrange(F.order) for _ in range(4))
        if F.mul(a, d) ^ F.mul(b, c):
            break
    t = BiSeries(F, {(1, 0): a, (0, 1): b}) + _random_part(F, 2, 3, rng)
    s = BiSeries(F, {(1, 0): c, (0, 1): d}) + _random_part(F, 2, 3, rng)
    g = f.truncate(precision).substitute(t.truncate(precision), s.truncate(precision))
    h = _random_part(F, 1, 4, rng)
    return (g + h * h).truncate(precision)


@lru_cache(maxsize=None)
def singularity_sweep(per_form: int = 1000, seed: int = 8):
    """For each normal form: number of variants where classify or the colength disagree."""
    rng = random.Random(seed)
    fields = [GF2, FiniteField2k(2)]
    out = {}
    for name, text in NORMAL_FORMS.items():
        bad = []
        for i in range(per_form):
            F = fields[i % 4 == 3]  # every fourth variant over GF(4)
            g = coordinate_variant(parse_bipoly(text, F), F, rng)
            v = classify(g)
            col = jacobian_colength(g)
            if v.type != name or v.colength != col:
                bad.append(str(g))
        out[name] = (per_form, tuple(bad))
    return out
