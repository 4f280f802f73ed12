"""Pure-Python hot kernels.

Reference implementation of everything in ``_ckernels.pyx``; both must
return identical values.  Arguments are ``gmpy2.mpq`` rationals.

Edge naming for the triangle/Bayes rules, for concepts ``a`` (pivot),
``b`` and ``c``, where the rules bound the ``b -> c`` ratio:

    ac = (a -> c)   ab = (a -> b)   ba = (b -> a)   ca = (c -> a)   cb = (c -> b)
"""

from gmpy2 import mpq

_0 = mpq(0)
_1 = mpq(1)


def pivot(rows, r, c):
    """Gauss-Jordan pivot of a dense tableau on entry ``(r, c)``, in place."""
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        prow[:] = [x / piv if x else x for x in prow]
    nz = [j for j, x in enumerate(prow) if x]
    for k, row in enumerate(rows):
        if k == r:
            continue
        f = row[c]
        if not f:
            continue
        for j in nz:
            row[j] = row[j] - f * prow[j]


def simplex_run(tab, z, basis, allowed):
    """Bland's-rule primal simplex, minimising the objective row ``z``.

    ``tab`` rows end with the right-hand side; only columns ``< allowed``
    may enter.  Updates ``tab``, ``z`` and ``basis`` in place and returns
    ``(optimal, pivots)``; ``optimal`` is False when unbounded.
    """
    everything = tab + [z]
    pivots = 0
    while True:
        enter = -1
        for j in range(allowed):
            if z[j] < 0:
                enter = j
                break
        if enter < 0:
            return True, pivots
        leave, best = -1, None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or ratio == best and basis[i] < basis[leave]:
                    leave, best = i, ratio
        if leave < 0:
            return False, pivots
        pivot(everything, leave, enter)
        basis[leave] = enter
        pivots += 1


def triangle(ac_lo, ac_hi, ab_lo, ab_hi, ba_lo, ba_hi, ca_lo, ca_hi):
    """Candidate range for ``b -> c`` from the four edges through ``a``."""
    if ab_lo != 0:
        s = ab_lo + ac_lo - 1
        lo = ba_lo / ab_lo * s if s > 0 else _0
    elif ac_lo == 1:
        lo = ba_lo
    else:
        lo = _0

    # every applicable upper bound is sound on its own; taking the min of all
    # of them keeps the rule monotone in its inputs
    hi = _1
    if ab_lo != 0:
        hi = min(hi, 1 - ba_lo + ac_hi * ba_lo / ab_lo)
        if ca_lo != 0:
            t = ac_hi / ca_lo * ba_hi / ab_lo
            hi = min(hi, t, t * (1 - ca_lo) + ba_hi, ac_hi / (ca_lo * (ab_lo - ac_hi) + ac_hi))
    if ca_lo == 1:
        hi = min(hi, ba_hi)
    if ac_hi == 0:
        hi = min(hi, 1 - ba_lo)
    return min(lo, _1), hi


def bayes(ac_lo, ac_hi, ab_lo, ab_hi, ba_lo, ba_hi, ca_lo, ca_hi, cb_lo, cb_hi):
    """Bayes-rule range for ``b -> c``; ``None`` unless ``ca_lo`` and ``ab_lo`` are nonzero."""
    if ca_lo == 0 or ab_lo == 0:
        return None
    lo = cb_lo * ac_lo / ca_hi * ba_lo / ab_hi
    hi = cb_hi * ac_hi / ca_lo * ba_hi / ab_lo
    return min(lo, _1), min(hi, _1)
