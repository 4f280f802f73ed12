import itertools
import random
from fractions import Fraction

from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from palc.lp import Row, Sense, Simplex, Status, check_farkas, satisfies, solve


def _solve_square(a, b):
    """Fraction Gaussian elimination; None when singular."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(a, b)]
    for col in range(n):
        p = next((r for r in range(col, n) if m[r][col] != 0), None)
        if p is None:
            return None
        m[col], m[p] = m[p], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _vertex_optimum(c, rows, n, sense):
    """Best objective over all basic feasible points (bounded problems only)."""
    eqs = [(list(r.coeffs), r.rhs) for r in rows]
    eqs += [([1 if j == k else 0 for k in range(n)], 0) for j in range(n)]
    best = None
    for combo in itertools.combinations(range(len(eqs)), n):
        x = _solve_square([eqs[i][0] for i in combo], [eqs[i][1] for i in combo])
        if x is None or not satisfies(rows, [mpq(v.numerator, v.denominator) for v in x]):
            continue
        v = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
        if best is None or (v > best if sense == "max" else v < best):
            best = v
    return best


def _random_lp(rng, n):
    rows = [Row(tuple(mpq(1) for _ in range(n)), "le", mpq(rng.randint(1, 6)))]
    for _ in range(rng.randint(1, 4)):
        coeffs = tuple(mpq(rng.randint(-3, 3)) for _ in range(n))
        kind = rng.choice(["le", "ge", "eq"])
        rows.append(Row(coeffs, kind, mpq(rng.randint(-4, 4))))
    c = [mpq(rng.randint(-3, 3)) for _ in range(n)]
    return c, rows


@given(st.integers(0, 10**6), st.integers(2, 3), st.sampled_from(["min", "max"]))
def test_simplex_matches_vertex_enumeration(seed, n, sense):
    rng = random.Random(seed)
    c, rows = _random_lp(rng, n)
    res = solve(c, rows, sense=sense)
    best = _vertex_optimum(c, rows, n, sense)
    if best is None:
        assert res.status == Status.INFEASIBLE
        assert check_farkas(rows, res.certificate)
    else:
        assert res.status == Status.OPTIMAL
        assert res.value == mpq(best.numerator, best.denominator)
        assert satisfies(rows, res.x)


def test_unbounded():
    res = solve([mpq(1), mpq(0)], [Row((mpq(1), mpq(-1)), "le", mpq(1))], sense=Sense.MAX)
    assert res.status == Status.UNBOUNDED


def test_warm_start_reuses_tableau():
    rows = [Row((mpq(1), mpq(1), mpq(1)), "eq", mpq(1)), Row((mpq(1), mpq(-2), mpq(0)), "ge", mpq(0))]
    s = Simplex(3, rows)
    assert s.optimize([1, 0, 0], "max").value == 1
    assert s.optimize([0, 1, 0], "max").value == mpq(1, 3)
    assert s.optimize([0, 0, 1], "min").value == 0
    again = Simplex(3, rows)
    assert again.optimize([0, 1, 0], "max").value == mpq(1, 3)


def test_farkas_certificate_for_contradiction():
    rows = [Row((mpq(1), mpq(1)), "eq", mpq(1)), Row((mpq(1), mpq(1)), "ge", mpq(2))]
    res = Simplex(2, rows).feasible()
    assert res.status == Status.INFEASIBLE
    assert check_farkas(rows, res.certificate)
    assert not check_farkas(rows, tuple(-y for y in res.certificate))


def test_pivot_sequence_is_deterministic():
    rng = random.Random(9)
    c, rows = _random_lp(rng, 3)
    a, b = Simplex(3, rows), Simplex(3, rows)
    ra, rb = a.optimize(c, "max"), b.optimize(c, "max")
    assert ra == rb and a.pivots == b.pivots
