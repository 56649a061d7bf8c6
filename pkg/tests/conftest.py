import numpy as np
import pytest

from nihobent import TracePolynomial, evaluate, make_tower
from nihobent.gf2 import find_unit_relative_trace


@pytest.fixture(scope="session")
def tower3():
    return make_tower(3)


@pytest.fixture(scope="session")
def tower4():
    return make_tower(4)


@pytest.fixture(scope="session")
def tower5():
    return make_tower(5)


def primitive_unit(tower):
    """Smallest primitive a with a + a^(2^m) = 1, or None."""
    m = tower.m
    for a in range(tower.size):
        if tower.add(a, tower.frobenius(a, m)) == 1 and tower.is_primitive(a):
            return a
    return None


def tt_of(tower, terms):
    return evaluate(tower, TracePolynomial(tower.m, tuple(terms)))


def scale_input(tower, tt, c):
    """Table of t -> f(c t)."""
    perm = np.fromiter(
        (tower.mul(c, t) for t in range(tower.size)), dtype=np.int64, count=tower.size
    )
    return tt[perm]


def frobenius_input(tower, tt, j):
    """Table of t -> f(t^(2^j))."""
    perm = np.fromiter(
        (tower.frobenius(t, j) for t in range(tower.size)), dtype=np.int64, count=tower.size
    )
    return tt[perm]


def subfield_trace_matrix(tower):
    """T[u_idx, x_idx] = Tr_m(u x) over the subfield."""
    zs = tower.subfield_elements()
    rows = [tower.subfield_trace_bits[tower.mul_scalar_vec(int(u), zs)] for u in zs]
    return np.array(rows, dtype=np.uint8)


def extract_class_h(tower, tt, basis):
    """Recover (G table, mu) assuming tt is Tr_m(x G(y/x)) under t = basis*x + y.

    Returns None if some line of the table is not linear in x, i.e. the
    function is not of class-H shape for this basis.
    """
    zs = tower.subfield_elements()
    T = subfield_trace_matrix(tower)

    def solve(bits):
        hits = np.nonzero((T == bits[None, :]).all(axis=1))[0]
        return int(zs[hits[0]]) if len(hits) else None

    mu = solve(tt[zs])
    if mu is None:
        return None
    g_vals = []
    for z in zs:
        ts = np.fromiter(
            (tower.mul(basis, int(x)) ^ tower.mul(int(z), int(x)) for x in zs),
            dtype=np.int64,
            count=len(zs),
        )
        u = solve(tt[ts])
        if u is None:
            return None
        g_vals.append(u)
    return np.array(g_vals, dtype=np.int64), mu


def unit_trace_element(tower):
    return find_unit_relative_trace(tower)
