"""Shared fixtures; records every lattice built during the run for the Milgram sweep."""

import pytest

from k3div.lattice import core

CONSTRUCTED = {}

_orig_post_init = core.IntegerLattice.__post_init__


def _recording_post_init(self):
    _orig_post_init(self)
    CONSTRUCTED.setdefault(self.gram, self)


core.IntegerLattice.__post_init__ = _recording_post_init


@pytest.fixture(scope="session")
def constructed_lattices():
    return CONSTRUCTED


def milgram_sweep():
    """(checked, skipped, failures) over every even nondegenerate lattice built so far."""
    from k3div.lattice import LatticeError
    from k3div.lattice.discriminant import discriminant_form

    checked, skipped, failures = 0, 0, []
    for gram, L in list(CONSTRUCTED.items()):
        if any(gram[i][i] % 2 for i in range(len(gram))) or L.det == 0:
            skipped += 1
            continue
        try:
            D = discriminant_form(L)
        except LatticeError:
            skipped += 1
            continue
        if D.gauss_signature_mod8 is None:  # group too large for the Gauss sum
            skipped += 1
            continue
        p, q = L.signature
        checked += 1
        if D.gauss_signature_mod8 != (p - q) % 8:
            failures.append(L.label or gram)
    return checked, skipped, failures


def pytest_collection_modifyitems(session, config, items):
    # the acceptance suite runs last so its Milgram sweep sees every lattice of the run
    items.sort(key=lambda it: it.nodeid.startswith("tests/test_acceptance.py"))
