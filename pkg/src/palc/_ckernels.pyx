# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels on gmpy2's C API.

Arithmetic runs directly on the ``mpq_t`` payloads; results are fresh
gmpy2 ``mpq`` objects.  Must agree exactly with ``_pykernels``.
"""

from gmpy2 cimport *

cdef extern from "gmp.h":
    void mpq_mul(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_div(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_add(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_sub(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    int mpq_sgn(mpq_srcptr)
    int mpq_cmp(mpq_srcptr, mpq_srcptr)
    int mpq_cmp_si(mpq_srcptr, long, unsigned long)
    void mpq_init(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_srcptr)
    void mpq_clear(mpq_ptr)

import_gmpy2()


cdef inline mpq _new():
    return GMPy_MPQ_New(NULL)


cdef inline mpq _int(long v):
    cdef mpq r = _new()
    mpq_set_si(r.q, v, 1)
    return r


cdef inline mpq _mul(mpq a, mpq b):
    cdef mpq r = _new()
    mpq_mul(r.q, a.q, b.q)
    return r


cdef inline mpq _div(mpq a, mpq b):
    cdef mpq r = _new()
    mpq_div(r.q, a.q, b.q)
    return r


cdef inline mpq _add(mpq a, mpq b):
    cdef mpq r = _new()
    mpq_add(r.q, a.q, b.q)
    return r


cdef inline mpq _sub(mpq a, mpq b):
    cdef mpq r = _new()
    mpq_sub(r.q, a.q, b.q)
    return r


cdef inline mpq _min(mpq a, mpq b):
    return b if mpq_cmp(b.q, a.q) < 0 else a


def pivot(list rows, Py_ssize_t r, Py_ssize_t c):
    """Gauss-Jordan pivot of a dense tableau on entry ``(r, c)``, in place."""
    cdef list prow = rows[r]
    cdef list row
    cdef mpq piv = prow[c]
    cdef mpq x, f, out
    cdef mpq_t tmp
    cdef Py_ssize_t j, k, t, n = len(prow), m = len(rows)
    cdef list nz = []
    if mpq_cmp_si(piv.q, 1, 1) != 0:
        for j in range(n):
            x = prow[j]
            if mpq_sgn(x.q) != 0:
                out = _new()
                mpq_div(out.q, x.q, piv.q)
                prow[j] = out
    for j in range(n):
        x = prow[j]
        if mpq_sgn(x.q) != 0:
            nz.append(j)
    mpq_init(tmp)
    try:
        for k in range(m):
            if k == r:
                continue
            row = rows[k]
            f = row[c]
            if mpq_sgn(f.q) == 0:
                continue
            for t in range(len(nz)):
                j = nz[t]
                x = prow[j]
                mpq_mul(tmp, f.q, x.q)
                out = _new()
                mpq_sub(out.q, (<mpq>row[j]).q, tmp)
                row[j] = out
    finally:
        mpq_clear(tmp)


def simplex_run(list tab, list z, list basis, Py_ssize_t allowed):
    """Bland's-rule primal simplex, minimising the objective row ``z``.

    ``tab`` rows end with the right-hand side; only columns ``< allowed``
    may enter.  Updates ``tab``, ``z`` and ``basis`` in place and returns
    ``(optimal, pivots)``; ``optimal`` is False when unbounded.
    """
    cdef list everything = tab + [z]
    cdef list row
    cdef Py_ssize_t m = len(tab), i, j, enter, leave, last
    cdef long pivots = 0
    cdef mpq a, x
    cdef mpq_t ratio, best
    cdef bint have_best
    cdef int cmp
    mpq_init(ratio)
    mpq_init(best)
    try:
        while True:
            enter = -1
            for j in range(allowed):
                x = z[j]
                if mpq_sgn(x.q) < 0:
                    enter = j
                    break
            if enter < 0:
                return True, pivots
            leave = -1
            have_best = False
            for i in range(m):
                row = tab[i]
                a = row[enter]
                if mpq_sgn(a.q) > 0:
                    last = len(row) - 1
                    mpq_div(ratio, (<mpq>row[last]).q, a.q)
                    if not have_best:
                        cmp = -1
                    else:
                        cmp = mpq_cmp(ratio, best)
                    if cmp < 0 or cmp == 0 and <long>basis[i] < <long>basis[leave]:
                        leave = i
                        mpq_set(best, ratio)
                        have_best = True
            if leave < 0:
                return False, pivots
            pivot(everything, leave, enter)
            basis[leave] = enter
            pivots += 1
    finally:
        mpq_clear(ratio)
        mpq_clear(best)


def triangle(mpq ac_lo, mpq ac_hi, mpq ab_lo, mpq ab_hi, mpq ba_lo, mpq ba_hi, mpq ca_lo, mpq ca_hi):
    """Candidate range for ``b -> c`` from the four edges through ``a``."""
    cdef mpq one = _int(1)
    cdef mpq lo, hi, s, t
    if mpq_sgn(ab_lo.q) != 0:
        s = _sub(_add(ab_lo, ac_lo), one)
        lo = _mul(_div(ba_lo, ab_lo), s) if mpq_sgn(s.q) > 0 else _int(0)
    elif mpq_cmp_si(ac_lo.q, 1, 1) == 0:
        lo = ba_lo
    else:
        lo = _int(0)

    hi = one
    if mpq_sgn(ab_lo.q) != 0:
        hi = _min(hi, _add(_sub(one, ba_lo), _div(_mul(ac_hi, ba_lo), ab_lo)))
        if mpq_sgn(ca_lo.q) != 0:
            t = _div(_mul(_div(ac_hi, ca_lo), ba_hi), ab_lo)
            hi = _min(hi, t)
            hi = _min(hi, _add(_mul(t, _sub(one, ca_lo)), ba_hi))
            hi = _min(hi, _div(ac_hi, _add(_mul(ca_lo, _sub(ab_lo, ac_hi)), ac_hi)))
    if mpq_cmp_si(ca_lo.q, 1, 1) == 0:
        hi = _min(hi, ba_hi)
    if mpq_sgn(ac_hi.q) == 0:
        hi = _min(hi, _sub(one, ba_lo))
    return _min(lo, one), hi


def bayes(mpq ac_lo, mpq ac_hi, mpq ab_lo, mpq ab_hi, mpq ba_lo, mpq ba_hi, mpq ca_lo, mpq ca_hi,
          mpq cb_lo, mpq cb_hi):
    """Bayes-rule range for ``b -> c``; ``None`` unless ``ca_lo`` and ``ab_lo`` are nonzero."""
    if mpq_sgn(ca_lo.q) == 0 or mpq_sgn(ab_lo.q) == 0:
        return None
    cdef mpq one = _int(1)
    cdef mpq lo = _div(_mul(_div(_mul(cb_lo, ac_lo), ca_hi), ba_lo), ab_hi)
    cdef mpq hi = _div(_mul(_div(_mul(cb_hi, ac_hi), ca_lo), ba_hi), ab_lo)
    return _min(lo, one), _min(hi, one)
