import os
import pathlib
import random

import pytest

from eclocal import RkContext, WeierstrassCurve, field_make

DATA_DIR = pathlib.Path(__file__).parent / "data"


def pytest_configure(config):
    # isolate the on-disk psi-table cache; in-process memoization still applies
    os.environ.setdefault(
        "ECLOCAL_CACHE", str(pathlib.Path(config.rootpath) / ".pytest_psi_cache")
    )


@pytest.fixture(scope="session")
def extended_table_10():
    from eclocal.infinity.psi import psi_table

    return psi_table(10, "extended")


@pytest.fixture(scope="session")
def short_table_9():
    from eclocal.infinity.psi import psi_table

    return psi_table(9, "short")


def random_element(ring, rng):
    return ring.from_int_list([rng.randrange(ring.q) for _ in range(ring.k)])


def random_elliptic_curve(ring, rng, tries=200):
    for _ in range(tries):
        c = WeierstrassCurve(ring, *(random_element(ring, rng) for _ in range(5)))
        if c.is_elliptic():
            return c
    raise AssertionError("no elliptic curve found")


def random_infinity_x(ring, rng, min_nu=1):
    while True:
        coeffs = [0] * min_nu + [rng.randrange(ring.q) for _ in range(ring.k - min_nu)]
        if any(coeffs):
            return ring.from_int_list(coeffs)


def rings_for(specs):
    return [RkContext(field_make(p, e), k) for p, e, k in specs]
