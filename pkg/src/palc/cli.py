"""Command-line front end.

Exit codes: 0 consistent / success, 1 inconsistent knowledge base, 2 usage
or parse error, 3 vacuous antecedent, 4 soundness violation (local range
fails to contain the exact one; a bug, never a user error).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .atoms import DEFAULT_ATOM_CAP
from .concepts import And, Atom, Concept, render
from .errors import NonPropositionalQuery, PalcError, SignatureTooLarge
from .intervals import Interval, fmt
from .kb import KnowledgeBase
from .oracle import ConsistencyReport, ExactOracle
from .parser import KBSyntaxError, load_kb, parse_concept
from .propagation import DEFAULT_MAX_SWEEPS, PropagationResult, Propagator, TraceStep, tracked_concepts
from .tableau import classify

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_USAGE = 2
EXIT_VACUOUS = 3
EXIT_UNSOUND = 4

EQUAL = "equal"
CONTAINS = "local_contains_exact"
VACUOUS = "vacuous"


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


# -- JSON helpers -----------------------------------------------------------


def rat(x) -> dict:
    return {"num": int(x.numerator), "den": int(x.denominator)}


def iv_json(iv: Interval | None):
    return None if iv is None else {"lo": rat(iv.lo), "hi": rat(iv.hi)}


def step_json(step: TraceStep, concepts) -> dict:
    i, j = step.entry
    return {
        "rule": step.rule,
        "entry": [render(concepts[i]), render(concepts[j])],
        "context": [render(concepts[k]) for k in step.context],
        "old": iv_json(step.old),
        "new": iv_json(step.new),
        "vacates": step.vacates,
    }


def show(iv: Interval | None) -> str:
    return "vacuous" if iv is None else f"{iv} ~ {iv.decimal(4)}"


# -- report types -----------------------------------------------------------


@dataclass
class QueryReport:
    antecedent: str
    consequent: str
    local: Interval | None = None
    exact: Interval | None = None
    agreement: str | None = None
    timings: dict = field(default_factory=dict)
    vacuous: bool = False

    def to_json(self, trace=None, with_timings: bool = False) -> dict:
        out = {
            "query": {"from": self.antecedent, "to": self.consequent},
            "local": iv_json(self.local),
            "exact": iv_json(self.exact),
            "agreement": self.agreement,
            "trace": trace,
        }
        if with_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def agreement(local: Interval | None, exact: Interval | None) -> str | None:
    """Compare the two methods; raises on a soundness violation."""
    if local is None or exact is None:
        return VACUOUS
    if local == exact:
        return EQUAL
    if local.contains(exact):
        return CONTAINS
    raise AssertionError(f"soundness violation: local {local} does not contain exact {exact}")


# -- session ----------------------------------------------------------------


class Session:
    def __init__(self, args):
        self.args = args
        self.kb = _load(args.file)
        self.timings: dict[str, float] = {}
        self._oracle: ExactOracle | None = None

    @property
    def method(self) -> str:
        return "both" if getattr(self.args, "compare", False) else self.args.method

    def propagate(self, extra=()) -> PropagationResult:
        t = time.perf_counter()
        tracked = tracked_concepts(self.kb, extra)
        res = Propagator(self.kb, tracked, max_sweeps=self.args.max_sweeps).run()
        self.timings["local"] = time.perf_counter() - t
        if res.status == "sweep_cap":
            print(f"warning: propagation stopped after {res.sweeps} sweeps; ranges are sound "
                  "but may not be a fixpoint", file=sys.stderr)
        return res

    def oracle(self) -> ExactOracle:
        if self._oracle is None:
            t = time.perf_counter()
            self._oracle = ExactOracle(self.kb, self.args.atom_cap)
            self._oracle.consistency()
            self.timings["exact"] = self.timings.get("exact", 0.0) + time.perf_counter() - t
        return self._oracle

    def exact_range(self, a: Concept, b: Concept) -> Interval | None:
        o = self.oracle()
        t = time.perf_counter()
        r = o.range_or_vacuous(a, b).range
        self.timings["exact"] += time.perf_counter() - t
        return r


def _load(path: str) -> KnowledgeBase:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"palc: cannot read {path}: {e.strerror}", file=sys.stderr)
        raise _Exit(EXIT_USAGE) from None
    try:
        return load_kb(text)
    except KBSyntaxError as e:
        for d in e.diagnostics:
            print(f"{path}:{d}", file=sys.stderr)
        raise _Exit(EXIT_USAGE) from None
    except PalcError as e:
        print(f"{path}: error: {e}", file=sys.stderr)
        raise _Exit(EXIT_USAGE) from None


def _concept(text: str, kb: KnowledgeBase, flag: str) -> Concept:
    try:
        return parse_concept(text, kb)
    except KBSyntaxError as e:
        for d in e.diagnostics:
            print(f"{flag}:{d}", file=sys.stderr)
        raise _Exit(EXIT_USAGE) from None


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _hint(args) -> None:
    if args.method == "local" and not getattr(args, "compare", False) and not args.json:
        print("hint: local ranges are sound but may be wider than the minimal ones; "
              "use --method both or --compare to measure the slack", file=sys.stderr)


def _local_inconsistency(args, res: PropagationResult) -> tuple[dict, list[str]]:
    cs = res.matrix.concepts
    steps = res.trace.steps
    payload = {"consistent": False, "sweeps": res.sweeps, "trace": [step_json(s, cs) for s in steps]}
    lines = ["local: inconsistent"]
    shown = steps if args.trace else steps[-1:]
    lines += ["  " + s.describe(cs) for s in shown]
    return payload, lines


def _exact_inconsistency(o: ExactOracle, report: ConsistencyReport) -> tuple[dict, list[str]]:
    labels = [f"{pc} ({side} bound)" for pc, side in (c.provenance for c in o.polytope.constraints)]
    labels.append(f"sum over {render(report.antecedent)} = 1")
    cert = [{"row": lab, "multiplier": rat(u)} for lab, u in zip(labels, report.certificate)]
    lines = [f"exact: {report}", "  infeasibility certificate (row multipliers):"]
    lines += [f"    {fmt(u)}  {lab}" for lab, u in zip(labels, report.certificate) if u]
    return {"consistent": False, "antecedent": render(report.antecedent),
            "certificate": cert}, lines


# -- commands ---------------------------------------------------------------


def cmd_check(args) -> int:
    s = Session(args)
    payload: dict = {"consistent": True, "method": s.method}
    lines: list[str] = []
    if s.method in ("local", "both"):
        res = s.propagate()
        if res.consistent:
            payload["local"] = {"consistent": True, "sweeps": res.sweeps, "converged": res.converged}
            lines.append(f"local: consistent so far ({res.sweeps} sweeps)")
            if args.trace:
                payload["local"]["trace"] = [step_json(st, res.matrix.concepts) for st in res.trace.steps]
                lines += ["  " + ln for ln in res.trace.lines()]
        else:
            payload["consistent"] = False
            payload["local"], more = _local_inconsistency(args, res)
            lines += more
    if s.method in ("exact", "both"):
        o = s.oracle()
        report = o.consistency()
        if report:
            payload["exact"] = {"consistent": True, "atoms": o.space.n}
            lines.append(f"exact: consistent ({o.space.n} atoms)")
        else:
            payload["consistent"] = False
            payload["exact"], more = _exact_inconsistency(o, report)
            lines += more
    lines.append("consistent" if payload["consistent"] else "inconsistent")
    _emit(args, payload, lines)
    return EXIT_OK if payload["consistent"] else EXIT_INCONSISTENT


def cmd_classify(args) -> int:
    kb = _load(args.file)
    h = classify(kb.terminology)
    lines = [f"{c} < {p}" for c, p in h.edges]
    for cls in h.nodes:
        if len(cls) > 1:
            lines.append(" = ".join(cls))
    _emit(args, h.to_json(), lines)
    return EXIT_OK


def cmd_query(args) -> int:
    s = Session(args)
    a = _concept(args.from_, s.kb, "--from")
    b = _concept(args.to, s.kb, "--to")
    rep = QueryReport(render(a), render(b))
    trace = None
    if not s.kb.reasoner.is_satisfiable(a):
        rep.vacuous, rep.agreement = True, VACUOUS
    if s.method in ("local", "both"):
        res = s.propagate((a, b, And((a, b))))
        if not res.consistent:
            p, lines = _local_inconsistency(args, res)
            _emit(args, {"consistent": False, "method": s.method, "local": p}, lines)
            return EXIT_INCONSISTENT
        if args.trace:
            trace = [step_json(st, res.matrix.concepts) for st in res.trace.steps]
        m = res.matrix
        if not rep.vacuous and a in m and b in m:
            rep.local = m.get(a, b)
        if rep.local is None:
            rep.vacuous = True
    if s.method in ("exact", "both"):
        o = s.oracle()
        report = o.consistency()
        if not report:
            p, lines = _exact_inconsistency(o, report)
            _emit(args, {"consistent": False, "method": s.method, "exact": p}, lines)
            return EXIT_INCONSISTENT
        if not rep.vacuous or s.method == "exact":
            try:
                rep.exact = s.exact_range(a, b)
            except NonPropositionalQuery as e:
                print(f"palc: {e}", file=sys.stderr)
                return EXIT_USAGE
            rep.vacuous = rep.vacuous or rep.exact is None
    if rep.vacuous:
        rep.local = rep.exact = None
        rep.agreement = VACUOUS
    elif s.method == "both":
        try:
            rep.agreement = agreement(rep.local, rep.exact)
        except AssertionError as e:
            print(f"palc: {e}", file=sys.stderr)
            return EXIT_UNSOUND
    rep.timings = dict(s.timings)
    lines = [f"query: {rep.antecedent} -> {rep.consequent}"]
    if rep.vacuous:
        lines.append(f"vacuous: {rep.antecedent} has probability 0 in every model")
    else:
        if s.method in ("local", "both"):
            lines.append(f"local: {show(rep.local)}")
        if s.method in ("exact", "both"):
            lines.append(f"exact: {show(rep.exact)}")
        if rep.agreement:
            lines.append(f"agreement: {rep.agreement}")
    if args.timings:
        lines += [f"time {k}: {v:.6f}s" for k, v in sorted(rep.timings.items())]
    if trace is not None and not args.json:
        lines += ["trace:"] + ["  " + ln for ln in res.trace.lines()]
    _emit(args, rep.to_json(trace, args.timings), lines)
    if not rep.vacuous:
        _hint(args)
    return EXIT_VACUOUS if rep.vacuous else EXIT_OK


def cmd_ranges(args) -> int:
    s = Session(args)
    names = [Atom(n) for n in s.kb.signature]
    local = exact = None
    if s.method in ("local", "both"):
        res = s.propagate()
        if not res.consistent:
            p, lines = _local_inconsistency(args, res)
            _emit(args, {"consistent": False, "method": s.method, "local": p}, lines)
            return EXIT_INCONSISTENT
        local = res.matrix
    if s.method in ("exact", "both"):
        o = s.oracle()
        report = o.consistency()
        if not report:
            p, lines = _exact_inconsistency(o, report)
            _emit(args, {"consistent": False, "method": s.method, "exact": p}, lines)
            return EXIT_INCONSISTENT
        exact = o
    entries, lines = [], []
    slack = None
    code = EXIT_OK
    for a in names:
        for b in names:
            lv = ev = None
            if local is not None and a in local and b in local:
                lv = local.get(a, b)
            if exact is not None:
                ev = s.exact_range(a, b)
            e = {"from": render(a), "to": render(b)}
            text = f"{render(a)} -> {render(b)} :"
            if local is not None:
                e["local"] = iv_json(lv)
                text += f" {'local ' if exact is not None else ''}{show(lv)}"
            if exact is not None:
                e["exact"] = iv_json(ev)
                text += f" {'exact ' if local is not None else ''}{show(ev)}"
            if args.compare:
                try:
                    flag = agreement(lv, ev)
                except AssertionError as err:
                    print(f"palc: {err}", file=sys.stderr)
                    flag, code = "violation", EXIT_UNSOUND
                e["agreement"] = flag
                text += f"  {flag}"
                if lv is not None and ev is not None:
                    gap = lv.width - ev.width
                    slack = gap if slack is None or gap > slack else slack
            entries.append(e)
            lines.append(text)
    payload = {"method": s.method, "concepts": [render(a) for a in names], "entries": entries}
    if args.compare:
        payload["max_slack"] = None if slack is None else rat(slack)
        lines.append(f"max slack: {'n/a' if slack is None else fmt(slack)}")
    _emit(args, payload, lines)
    _hint(args)
    return code


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="palc", description="Probabilistic terminological reasoning")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, method=True):
        sp.add_argument("file", help="knowledge base in .palc syntax")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if method:
            sp.add_argument("--method", choices=("local", "exact", "both"), default="local")
            sp.add_argument("--max-sweeps", type=int, default=DEFAULT_MAX_SWEEPS, metavar="N")
            sp.add_argument("--atom-cap", type=int, default=DEFAULT_ATOM_CAP, metavar="M")
            sp.add_argument("--trace", action="store_true", help="print the propagation trace")

    sp = sub.add_parser("check", help="decide consistency")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("classify", help="print the subsumption hierarchy")
    common(sp, method=False)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("query", help="range of one conditional")
    common(sp)
    sp.add_argument("--from", dest="from_", required=True, metavar="CONCEPT")
    sp.add_argument("--to", required=True, metavar="CONCEPT")
    sp.add_argument("--timings", action="store_true", help="report wall time per method")
    sp.set_defaults(func=cmd_query)

    sp = sub.add_parser("ranges", help="pairwise ranges over the named concepts")
    common(sp)
    sp.add_argument("--compare", action="store_true", help="run both methods and flag agreement")
    sp.set_defaults(func=cmd_ranges)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "max_sweeps", 1) < 1 or getattr(args, "atom_cap", 1) < 1:
        print("palc: --max-sweeps and --atom-cap must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _Exit as e:
        return e.code
    except SignatureTooLarge as e:
        print(f"palc: {e} (raise --atom-cap or use --method local)", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
