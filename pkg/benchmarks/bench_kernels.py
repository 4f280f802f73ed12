"""Compiled vs pure-Python kernels.

Micro: the triangle/Bayes rules and the simplex pivot on random inputs.
Macro: local propagation plus exact ranges over small random knowledge
bases, and exact ranges over 8-9 symbol ones (up to 512 atoms); each
backend runs in its own interpreter since the choice is fixed at import.

    python3 benchmarks/bench_kernels.py [--kbs 200] [--large 4] [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import random
import statistics
import subprocess
import sys
import time

from gmpy2 import mpq

from palc import _pykernels

try:
    from palc import _ckernels
except ImportError:
    _ckernels = None


def _intervals(rng, n):
    out = []
    for _ in range(n):
        d = rng.choice((2, 3, 4, 5, 10, 20))
        a, b = sorted((mpq(rng.randint(0, d), d), mpq(rng.randint(0, d), d)))
        out.append((a, b))
    return out


def _rule_args(rng, n):
    args = []
    for _ in range(n):
        ivs = _intervals(rng, 5)
        args.append([x for iv in ivs for x in iv])
    return args


def _tableaus(rng, n, rows=24, cols=60):
    out = []
    for _ in range(n):
        t = [[mpq(rng.randint(-4, 4), rng.randint(1, 6)) if rng.random() < 0.5 else mpq(0)
              for _ in range(cols)] for _ in range(rows)]
        for row in t:
            row[0] = mpq(rng.randint(1, 5), rng.randint(1, 5))
        out.append(t)
    return out


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def micro(repeat: int) -> list[tuple[str, float, float | None]]:
    rng = random.Random(0)
    args = _rule_args(rng, 20000)
    tabs = _tableaus(rng, 40)
    rows = []

    def run_rules(mod):
        def go():
            for a in args:
                mod.triangle(*a[:8])
                mod.bayes(*a)
        return go

    def run_pivots(mod):
        def go():
            for t in tabs:
                work = [list(r) for r in t]
                for r in range(len(work)):
                    mod.pivot(work, r, 0) if work[r][0] else None
        return go

    for name, make in (("rules (20k triangle+bayes)", run_rules), ("pivot (40 tableaus 24x60)", run_pivots)):
        py = _best(make(_pykernels), repeat)
        cy = _best(make(_ckernels), repeat) if _ckernels else None
        rows.append((name, py, cy))
    return rows


_MACRO = """
import json, random, sys, time
from palc.concepts import Atom
from palc.kernels import BACKEND
from palc.oracle import ExactOracle
from palc.propagation import propagate_to_fixpoint
from palc.randomkb import random_kb, random_kbs
mode, n = sys.argv[1], int(sys.argv[2])
if mode == "small":
    kbs = [g.kb for g in random_kbs(11, n)]
else:
    rng = random.Random(5)
    kbs = [random_kb(rng, max_symbols=9, max_conditionings=14, min_symbols=8).kb for _ in range(n)]
t = time.perf_counter()
for kb in kbs:
    if mode == "small":
        m = propagate_to_fixpoint(kb).matrix
        o = ExactOracle(kb)
        pairs = [(a, b) for a in m.concepts for b in m.concepts]
    else:
        o = ExactOracle(kb)
        names = [Atom(s) for s in kb.signature]
        pairs = [(a, b) for a in names[:2] for b in names]
    for a, b in pairs:
        o.range_or_vacuous(a, b)
print(json.dumps({"backend": BACKEND, "seconds": time.perf_counter() - t}))
"""


def macro(mode: str, n: int, repeat: int) -> tuple[float, float | None]:
    out = {}
    for pure in (True, False):
        env = dict(os.environ)
        env.pop("PALC_PURE_PYTHON", None)
        if pure:
            env["PALC_PURE_PYTHON"] = "1"
        best = None
        for _ in range(repeat):
            res = subprocess.run([sys.executable, "-c", _MACRO, mode, str(n)], env=env,
                                 capture_output=True, text=True, check=True)
            doc = json.loads(res.stdout)
            best = doc["seconds"] if best is None else min(best, doc["seconds"])
        out[doc["backend"]] = best
    return out.get("python"), out.get("cython")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kbs", type=int, default=200, help="random KBs in the macro run")
    ap.add_argument("--large", type=int, default=4, help="8-9 symbol KBs in the LP run")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    print(f"{'workload':<40} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    rows = micro(args.repeat)
    rows.append((f"propagate + LP ({args.kbs} small KBs)", *macro("small", args.kbs, args.repeat)))
    rows.append((f"LP ranges ({args.large} KBs, 8-9 symbols)", *macro("large", args.large, args.repeat)))
    for name, py, cy in rows:
        if cy is None:
            print(f"{name:<40} {py:>10.3f} {'n/a':>10} {'n/a':>8}")
        else:
            print(f"{name:<40} {py:>10.3f} {cy:>10.3f} {py / cy:>7.2f}x")
    ratios = [py / cy for _, py, cy in rows if cy]
    if ratios:
        print(f"geometric mean speedup: {statistics.geometric_mean(ratios):.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
