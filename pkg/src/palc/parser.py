"""Reader and writer for the ``.palc`` knowledge-base language.

One statement per ``.``-terminated line group::

    concept bird.            # declarations
    role moves_by.
    flying_object = (all moves_by flying).
    bird < animal.
    pcond bird -> flying_object : [0.95, 1].
    pcond bird -> antarctic_bird : 1/5.

Errors never stop the parse; the reader skips to the next ``.`` and keeps
collecting diagnostics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from gmpy2 import mpq

from .concepts import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Concept,
    Exists,
    Forall,
    Not,
    Or,
    RESERVED,
    check_declared,
    render,
    roles,
    symbols,
)
from .errors import PalcError
from .intervals import Interval, Q, fmt
from .kb import KnowledgeBase, PConditioning, validate_kb
from .terminology import Axiom, AxiomKind, validate_terminology


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int


@dataclass(frozen=True)
class ParseDiagnostic:
    span: SourceSpan
    message: str
    severity: Severity = Severity.ERROR

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.severity.value}: {self.message}"


@dataclass
class ParsedDocument:
    concepts: list
    roles: list
    axioms: list
    conditionings: list
    diagnostics: list

    @property
    def ok(self) -> bool:
        return not any(d.severity == Severity.ERROR for d in self.diagnostics)

    def __iter__(self):
        # (axioms, conditionings, diagnostics)
        return iter((self.axioms, self.conditionings, self.diagnostics))


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+\s*/\s*\d+|\d+\.\d+|\.\d+|\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<punct>[().\[\],:<=])
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.col, max(1, len(self.text)))


class _Error(Exception):
    def __init__(self, tok, message):
        self.tok, self.message = tok, message


def _tokenize(text: str, diags: list) -> list[_Tok]:
    toks: list[_Tok] = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind in ("ws", "comment"):
            continue
        elif kind == "bad":
            diags.append(ParseDiagnostic(SourceSpan(line, col, 1), f"unexpected character {m.group()!r}"))
        else:
            toks.append(_Tok(kind, m.group(), line, col))
    return toks


class _Parser:
    def __init__(self, toks, eof_span):
        self.toks, self.i = toks, 0
        self.eof = _Tok("eof", "", *eof_span)

    def peek(self, k=0) -> _Tok:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else self.eof

    def next(self) -> _Tok:
        t = self.peek()
        self.i += 1
        return t

    def expect(self, text, what=None) -> _Tok:
        t = self.next()
        if t.text != text:
            raise _Error(t, f"expected {what or repr(text)}, found {t.text or 'end of input'!r}")
        return t

    def ident(self) -> _Tok:
        t = self.next()
        if t.kind != "ident":
            raise _Error(t, f"expected identifier, found {t.text or 'end of input'!r}")
        return t

    def skip_statement(self) -> None:
        while self.peek().kind != "eof":
            if self.next().text == ".":
                return

    def concept(self) -> Concept:
        t = self.next()
        if t.kind == "ident":
            if t.text == "top":
                return TOP
            if t.text == "bottom":
                return BOTTOM
            return Atom(t.text)
        if t.text != "(":
            raise _Error(t, f"expected concept, found {t.text or 'end of input'!r}")
        op = self.ident()
        if op.text in ("and", "or"):
            a, b = self.concept(), self.concept()
            out: Concept = And((a, b)) if op.text == "and" else Or((a, b))
        elif op.text == "not":
            out = Not(self.concept())
        elif op.text in ("all", "some"):
            role = self.ident().text
            body = self.concept()
            out = Forall(role, body) if op.text == "all" else Exists(role, body)
        else:
            raise _Error(op, f"unknown constructor {op.text!r}")
        self.expect(")", "')'")
        return out

    def number(self, diags) -> tuple[mpq, _Tok]:
        t = self.next()
        if t.kind != "number":
            raise _Error(t, f"expected number, found {t.text or 'end of input'!r}")
        try:
            return Q(t.text), t
        except (ValueError, ZeroDivisionError) as e:
            raise _Error(t, str(e)) from None

    def range(self, diags):
        if self.peek().text == "[":
            start = self.next()
            lo, lt = self.number(diags)
            self.expect(",", "','")
            hi, ht = self.number(diags)
            self.expect("]", "']'")
        else:
            lo, lt = self.number(diags)
            hi, ht, start = lo, lt, lt
        bad = False
        for v, tok in ((lo, lt), (hi, ht)):
            if not 0 <= v <= 1:
                diags.append(ParseDiagnostic(tok.span, "interval out of bounds: probabilities lie in [0, 1]"))
                bad = True
        if lo > hi:
            diags.append(ParseDiagnostic(start.span, "lo > hi: empty interval"))
            bad = True
        return None if bad else Interval(lo, hi)


def parse_document(text: str) -> ParsedDocument:
    """Parse ``text`` into declarations, axioms, conditionings and diagnostics."""
    diags: list[ParseDiagnostic] = []
    toks = _tokenize(text, diags)
    # end-of-input errors point at the last token so spans stay inside the text
    p = _Parser(toks, (toks[-1].line, toks[-1].col) if toks else (1, 1))
    doc = ParsedDocument([], [], [], [], diags)
    where: dict[int, _Tok] = {}  # id of parsed object -> first token, for later checks

    while p.peek().kind != "eof":
        first = p.peek()
        try:
            if first.text in ("concept", "role") and p.peek(1).text not in ("<", "="):
                p.next()
                name = p.ident()
                p.expect(".")
                if name.text in RESERVED:
                    raise _Error(name, f"{name.text!r} is reserved")
                (doc.concepts if first.text == "concept" else doc.roles).append(name.text)
            elif first.text == "pcond" and p.peek(1).text not in ("<", "="):
                p.next()
                ante = p.concept()
                p.expect("->", "'->'")
                cons = p.concept()
                p.expect(":", "':'")
                rng = p.range(diags)
                p.expect(".", "'.'")
                if rng is not None:
                    pc = PConditioning(ante, cons, rng)
                    where[id(pc)] = first
                    doc.conditionings.append(pc)
            elif first.kind == "ident":
                lhs = p.ident()
                if lhs.text in RESERVED:
                    raise _Error(lhs, f"{lhs.text!r} is reserved and cannot be defined")
                op = p.next()
                if op.text not in ("<", "="):
                    raise _Error(op, f"expected '<' or '=', found {op.text or 'end of input'!r}")
                rhs = p.concept()
                p.expect(".", "'.'")
                ax = Axiom(lhs.text, rhs, AxiomKind.DEFINITION if op.text == "=" else AxiomKind.SPECIALIZATION)
                where[id(ax)] = lhs
                doc.axioms.append(ax)
            else:
                raise _Error(first, f"unexpected {first.text!r}: expected a statement")
        except _Error as e:
            diags.append(ParseDiagnostic(e.tok.span, e.message))
            if e.tok.text != ".":
                p.skip_statement()

    _check_names(doc, where)
    return doc


def _check_names(doc: ParsedDocument, where: dict) -> None:
    concepts = set(doc.concepts) | {a.lhs for a in doc.axioms}
    role_set = set(doc.roles)
    seen: set[str] = set()
    for ax in doc.axioms:
        tok = where[id(ax)]
        if ax.lhs in seen:
            doc.diagnostics.append(ParseDiagnostic(tok.span, f"symbol {ax.lhs!r} is defined more than once"))
        seen.add(ax.lhs)
    for obj in [*doc.axioms, *doc.conditionings]:
        tok = where[id(obj)]
        parts = [obj.rhs] if isinstance(obj, Axiom) else [obj.antecedent, obj.consequent]
        for c in parts:
            try:
                check_declared(c, concepts, role_set)
            except PalcError as e:
                doc.diagnostics.append(ParseDiagnostic(tok.span, str(e)))
    for name in sorted(set(doc.concepts) & role_set):
        doc.diagnostics.append(
            ParseDiagnostic(SourceSpan(1, 1, 1), f"{name!r} declared as both concept and role")
        )
    if doc.ok:
        try:
            validate_terminology(doc.axioms, doc.concepts + [a.lhs for a in doc.axioms], doc.roles)
        except PalcError as e:
            name = getattr(e, "path", [getattr(e, "symbol", None)])[0]
            tok = next((where[id(a)] for a in doc.axioms if a.lhs == name), None)
            span = tok.span if tok else SourceSpan(1, 1, 1)
            doc.diagnostics.append(ParseDiagnostic(span, str(e)))


def parse_concept(text: str, kb: KnowledgeBase | None = None) -> Concept:
    """Parse one concept expression, checked against ``kb``'s signature."""
    diags: list[ParseDiagnostic] = []
    toks = _tokenize(text, diags)
    p = _Parser(toks, (toks[-1].line, toks[-1].col) if toks else (1, 1))
    c = None
    try:
        c = p.concept()
        if p.peek().kind != "eof":
            raise _Error(p.peek(), f"unexpected {p.peek().text!r} after concept")
    except _Error as e:
        diags.append(ParseDiagnostic(e.tok.span, e.message))
    if c is not None and kb is not None:
        sig, rls = set(kb.signature), set(kb.terminology.roles)
        for name in sorted(symbols(c) - sig):
            diags.append(ParseDiagnostic(SourceSpan(1, text.find(name) + 1, len(name)),
                                         f"undeclared concept {name!r}"))
        for name in sorted(roles(c) - rls):
            diags.append(ParseDiagnostic(SourceSpan(1, text.find(name) + 1, len(name)),
                                         f"undeclared role {name!r}"))
    if diags:
        raise KBSyntaxError(diags)
    return c


def parse_kb(text: str):
    """``(axioms, conditionings, diagnostics)`` for a ``.palc`` document."""
    doc = parse_document(text)
    return doc.axioms, doc.conditionings, doc.diagnostics


def load_kb(text: str) -> KnowledgeBase:
    """Parse and validate; raise :class:`KBSyntaxError` on any error diagnostic."""
    doc = parse_document(text)
    if not doc.ok:
        raise KBSyntaxError(doc.diagnostics)
    return build_kb(doc)


def build_kb(doc: ParsedDocument) -> KnowledgeBase:
    t = validate_terminology(doc.axioms, doc.concepts + [a.lhs for a in doc.axioms], doc.roles)
    return validate_kb(t, doc.conditionings)


class KBSyntaxError(PalcError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(map(str, self.diagnostics)))


def _range_text(r: Interval) -> str:
    if r.is_point:
        return fmt(r.lo)
    return f"[{fmt(r.lo)}, {fmt(r.hi)}]"


def serialize_kb(kb: KnowledgeBase) -> str:
    t = kb.terminology
    lines = [f"concept {s}." for s in t.signature]
    lines += [f"role {r}." for r in t.roles]
    for ax in t.axioms:
        lines.append(f"{ax.lhs} {'=' if ax.is_definition else '<'} {render(ax.rhs)}.")
    for pc in kb.conditionings:
        lines.append(f"pcond {render(pc.antecedent)} -> {render(pc.consequent)} : {_range_text(pc.range)}.")
    return "\n".join(lines) + ("\n" if lines else "")
