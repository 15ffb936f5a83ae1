"""Text formats: `.olog` specifications, `.omap` morphisms, `.osys` systems.

All three formats are line oriented, UTF-8, with `#` comments. Parsing is
total: malformed input produces diagnostics with source positions, never an
exception. Printing is canonical (declarations sorted by id), so printing a
parsed file reproduces it byte for byte and printing is stable under
re-parsing.

    olog Family {
      type person "a person"
      aspect mother : person -> woman "has as mother"
      fact parents;w = mother
      pullback A = B *_D C via (f,g) legs (pb,pc)
    }

Morphism files map each source type to a target type and each source aspect
to a target path: ``type a => b`` and ``aspect f => g;h`` (or ``id(T)``).
System files list nodes and edges: ``node n = file.olog`` and
``edge e : n -> m = file.omap``, resolved relative to the system file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path as FsPath

from .core import (
    Aspect,
    Fact,
    Graph,
    Path,
    Specification,
    TypeNode,
    fact_errors,
    format_path,
    path_errors,
    path_target,
)
from .entail import DEFAULT_BOUND
from .errors import OlogError
from .flow import GraphMorphism, morphism_errors
from .sketch import (
    CoproductDecl,
    EmptyDecl,
    ImageDecl,
    ProductDecl,
    PullbackDecl,
    PushoutDecl,
    SingletonDecl,
    missing_square_facts,
    validate_decls,
)
from .system import InformationSystem, Shape, validate_system

ERROR = "error"
WARNING = "warning"

KEYWORDS = {
    "olog", "type", "aspect", "fact", "product", "pullback", "coproduct",
    "pushout", "singleton", "empty", "image", "via", "legs", "span", "of",
    "injective", "surjective", "id", "node", "edge",
}


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str
    message: str
    at: SourceSpan

    def __str__(self) -> str:
        return f"{self.at} - {self.severity}: {self.message}"


def has_errors(diagnostics) -> bool:
    return any(d.severity == ERROR for d in diagnostics)


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<STRING>"[^"\n]*")
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<OP>->|=>|\*_|\+_|[{}();,=:*+])
  | (?P<WS>[ \t]+)
  | (?P<BAD>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    span: SourceSpan


def _strip_comment(line: str) -> str:
    out = []
    in_string = False
    for ch in line:
        if ch == '"':
            in_string = not in_string
        if ch == "#" and not in_string:
            break
        out.append(ch)
    return "".join(out)


def _tokenize_line(line: str, lineno: int, filename: str) -> list[_Tok]:
    toks: list[_Tok] = []
    for m in _TOKEN_RE.finditer(_strip_comment(line)):
        kind = m.lastgroup
        if kind == "WS":
            continue
        span = SourceSpan(filename, lineno, m.start() + 1)
        toks.append(_Tok(kind or "BAD", m.group(), span))
    return toks


class _Cursor:
    def __init__(self, toks: list[_Tok], line_span: SourceSpan):
        self.toks = toks
        self.pos = 0
        self.line_span = line_span

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> _Tok | None:
        t = self.peek()
        if t is not None:
            self.pos += 1
        return t

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)

    def span(self) -> SourceSpan:
        t = self.peek()
        return t.span if t is not None else self.line_span


class _Parser:
    """Shared token-level helpers plus a diagnostics sink."""

    def __init__(self, filename: str):
        self.filename = filename
        self.diagnostics: list[ParseDiagnostic] = []

    def error(self, message: str, at: SourceSpan):
        self.diagnostics.append(ParseDiagnostic(ERROR, message, at))

    def warn(self, message: str, at: SourceSpan):
        self.diagnostics.append(ParseDiagnostic(WARNING, message, at))

    def expect(self, cur: _Cursor, kind: str, text: str | None = None) -> _Tok | None:
        t = cur.next()
        what = f"'{text}'" if text is not None else kind.lower()
        if t is None:
            self.error(f"expected {what}, found end of line", cur.line_span)
            return None
        if t.kind != kind or (text is not None and t.text != text):
            self.error(f"expected {what}, found '{t.text}'", t.span)
            return None
        return t

    def expect_string(self, cur: _Cursor, what: str) -> _Tok | None:
        t = cur.next()
        if t is None:
            self.error(f"expected {what}, found end of line", cur.line_span)
            return None
        if t.kind != "STRING":
            self.error(f"expected {what}, found '{t.text}'", t.span)
            return None
        return t

    def expect_ident(self, cur: _Cursor, what: str = "an identifier") -> _Tok | None:
        t = cur.next()
        if t is None:
            self.error(f"expected {what}, found end of line", cur.line_span)
            return None
        if t.kind != "IDENT":
            self.error(f"expected {what}, found '{t.text}'", t.span)
            return None
        return t

    def expect_end(self, cur: _Cursor):
        t = cur.peek()
        if t is not None:
            self.error(f"unexpected trailing '{t.text}'", t.span)

    def parse_path_tokens(self, cur: _Cursor) -> tuple[list[_Tok], SourceSpan] | None:
        """Collect the tokens of one path: `id(T)` or `a;b;c`."""
        first = cur.peek()
        if first is None:
            self.error("expected a path, found end of line", cur.line_span)
            return None
        toks = [cur.next()]
        if first.kind == "IDENT" and first.text == "id":
            if self.expect(cur, "OP", "(") is None:
                return None
            t = self.expect_ident(cur, "a type id")
            if t is None:
                return None
            toks.append(t)
            if self.expect(cur, "OP", ")") is None:
                return None
            return toks, first.span
        if first.kind != "IDENT":
            self.error(f"expected a path, found '{first.text}'", first.span)
            return None
        while cur.peek() is not None and cur.peek().text == ";":
            cur.next()
            t = self.expect_ident(cur, "an aspect id")
            if t is None:
                return None
            toks.append(t)
        return toks, first.span


def _resolve_path(
    parser: _Parser, graph: Graph, toks: list[_Tok], span: SourceSpan
) -> Path | None:
    if toks[0].text == "id" and len(toks) == 2:
        tid = toks[1].text
        if not graph.has_type(tid):
            parser.error(f"unknown type '{tid}'", toks[1].span)
            return None
        return Path(tid, ())
    edges = []
    for t in toks:
        a = graph.aspect_by_id.get(t.text)
        if a is None:
            parser.error(f"unknown aspect '{t.text}'", t.span)
            return None
        edges.append(t.text)
    p = Path(graph.aspect_by_id[edges[0]].src, tuple(edges))
    errs = path_errors(graph, p)
    if errs:
        parser.error(errs[0], span)
        return None
    return p


_ARTICLE_RE = re.compile(r"^(a|an)\s", re.IGNORECASE)


def _label_lints(label: str) -> frozenset[str]:
    flags = set()
    if not _ARTICLE_RE.match(label):
        flags.add("label-article")
    if label and label[-1] in ".,:;!?":
        flags.add("label-punctuation")
    return frozenset(flags)


# ---------------------------------------------------------------------------
# .olog parsing


def parse_olog(
    text: str, filename: str = "<olog>"
) -> tuple[Specification | None, list[ParseDiagnostic]]:
    """Parse a specification; on any error returns (None, diagnostics).

    Warnings (style lints on labels, undeclared commuting squares) do not
    prevent construction. Empty input denotes the empty specification.
    """
    p = _Parser(filename)
    lines = text.splitlines()

    name = "olog"
    body: list[tuple[str, _Cursor]] = []  # (first ident text, cursor past it)
    opened = closed = False
    for lineno, raw in enumerate(lines, start=1):
        toks = _tokenize_line(raw, lineno, filename)
        if not toks:
            continue
        for t in toks:
            if t.kind == "BAD":
                p.error(f"unexpected character '{t.text}'", t.span)
        toks = [t for t in toks if t.kind != "BAD"]
        if not toks:
            continue
        cur = _Cursor(toks, SourceSpan(filename, lineno, 1))
        head = toks[0]
        if not opened:
            if head.text == "olog":
                cur.next()
                t = p.expect_ident(cur, "the olog name")
                if t is not None:
                    name = t.text
                p.expect(cur, "OP", "{")
                p.expect_end(cur)
                opened = True
            else:
                p.error("expected 'olog <Name> {'", head.span)
            continue
        if closed:
            p.error("content after closing '}'", head.span)
            continue
        if head.text == "}":
            cur.next()
            p.expect_end(cur)
            closed = True
            continue
        cur.next()
        body.append((head.text, cur))
    if opened and not closed:
        p.error("missing closing '}'", SourceSpan(filename, len(lines) or 1, 1))
    if not opened and not body and not has_errors(p.diagnostics):
        return Specification(Graph(), name=name), p.diagnostics

    types: list[TypeNode] = []
    aspects: list[tuple[Aspect, SourceSpan]] = []
    deferred: list[tuple[str, _Cursor]] = []
    seen_ids: dict[str, SourceSpan] = {}

    def declare(ident: _Tok) -> bool:
        if ident.text in KEYWORDS:
            p.error(f"'{ident.text}' is reserved and cannot be an id", ident.span)
            return False
        if ident.text in seen_ids:
            p.error(f"duplicate declaration of '{ident.text}'", ident.span)
            return False
        seen_ids[ident.text] = ident.span
        return True

    for head, cur in body:
        if head == "type":
            ident = p.expect_ident(cur, "a type id")
            if ident is None:
                continue
            label_tok = p.expect_string(cur, "a quoted label")
            p.expect_end(cur)
            if label_tok is None or not declare(ident):
                continue
            label = label_tok.text[1:-1]
            if not label:
                p.error(f"type '{ident.text}' has an empty label", label_tok.span)
                continue
            lints = _label_lints(label)
            for flag in sorted(lints):
                p.warn(f"type '{ident.text}': style lint {flag}", label_tok.span)
            types.append(TypeNode(id=ident.text, label=label, lint_flags=lints))
        elif head == "aspect":
            ident = p.expect_ident(cur, "an aspect id")
            if ident is None:
                continue
            if p.expect(cur, "OP", ":") is None:
                continue
            src = p.expect_ident(cur, "a source type id")
            if src is None or p.expect(cur, "OP", "->") is None:
                continue
            tgt = p.expect_ident(cur, "a target type id")
            if tgt is None:
                continue
            label = ""
            mods = set()
            t = cur.peek()
            if t is not None and t.kind == "STRING":
                cur.next()
                label = t.text[1:-1]
            while cur.peek() is not None:
                t = cur.next()
                if t.text in ("injective", "surjective"):
                    mods.add(t.text)
                else:
                    p.error(f"unexpected '{t.text}' after aspect", t.span)
                    break
            if not declare(ident):
                continue
            aspects.append(
                (
                    Aspect(
                        id=ident.text,
                        src=src.text,
                        tgt=tgt.text,
                        label=label,
                        modifiers=frozenset(mods),
                    ),
                    ident.span,
                )
            )
        elif head in ("fact", "product", "pullback", "coproduct", "pushout",
                      "singleton", "empty", "image"):
            deferred.append((head, cur))
        else:
            span = cur.toks[0].span if cur.toks else cur.line_span
            p.error(f"unknown declaration '{head}'", span)

    graph = Graph(types=tuple(types), aspects=tuple(a for a, _ in aspects))
    for a, span in aspects:
        if not graph.has_type(a.src):
            p.error(f"aspect '{a.id}': unknown source type '{a.src}'", span)
        if not graph.has_type(a.tgt):
            p.error(f"aspect '{a.id}': unknown target type '{a.tgt}'", span)

    facts: list[Fact] = []
    sketch: list = []
    for head, cur in deferred:
        if head == "fact":
            got = p.parse_path_tokens(cur)
            if got is None:
                continue
            ltoks, lspan = got
            if p.expect(cur, "OP", "=") is None:
                continue
            got = p.parse_path_tokens(cur)
            if got is None:
                continue
            rtoks, rspan = got
            p.expect_end(cur)
            lhs = _resolve_path(p, graph, ltoks, lspan)
            rhs = _resolve_path(p, graph, rtoks, rspan)
            if lhs is None or rhs is None:
                continue
            fact = Fact(lhs, rhs)
            errs = fact_errors(graph, fact)
            if errs:
                p.error(errs[0], lspan)
                continue
            facts.append(fact)
        else:
            decl = _parse_sketch_decl(p, graph, head, cur)
            if decl is not None:
                sketch.append(decl)

    if has_errors(p.diagnostics):
        return None, p.diagnostics

    spec = Specification(
        graph=graph, facts=tuple(facts), sketch=tuple(sketch), name=name
    )
    for msg in validate_decls(spec):
        p.error(msg, SourceSpan(filename, 1, 1))
    if has_errors(p.diagnostics):
        return None, p.diagnostics

    for msg in missing_square_facts(spec):
        p.warn(msg, SourceSpan(filename, 1, 1))
    return spec, p.diagnostics


def _parse_id_tuple(p: _Parser, cur: _Cursor) -> list[_Tok] | None:
    if p.expect(cur, "OP", "(") is None:
        return None
    out: list[_Tok] = []
    t = cur.peek()
    if t is not None and t.text == ")":
        cur.next()
        return out
    while True:
        t = p.expect_ident(cur, "an aspect id")
        if t is None:
            return None
        out.append(t)
        t = cur.next()
        if t is None:
            p.error("expected ',' or ')', found end of line", cur.line_span)
            return None
        if t.text == ")":
            return out
        if t.text != ",":
            p.error(f"expected ',' or ')', found '{t.text}'", t.span)
            return None


def _parse_path_tuple(p: _Parser, cur: _Cursor, n: int):
    """n comma-separated paths in parentheses."""
    if p.expect(cur, "OP", "(") is None:
        return None
    out = []
    for i in range(n):
        got = p.parse_path_tokens(cur)
        if got is None:
            return None
        out.append(got)
        if i < n - 1 and p.expect(cur, "OP", ",") is None:
            return None
    if p.expect(cur, "OP", ")") is None:
        return None
    return out


def _parse_sketch_decl(p: _Parser, graph: Graph, head: str, cur: _Cursor):
    if head in ("singleton", "empty"):
        ident = p.expect_ident(cur, "a type id")
        p.expect_end(cur)
        if ident is None:
            return None
        return SingletonDecl(ident.text) if head == "singleton" else EmptyDecl(ident.text)

    target = p.expect_ident(cur, "a target type id")
    if target is None:
        return None

    if head == "image":
        if p.expect(cur, "IDENT", "of") is None:
            return None
        got = p.parse_path_tokens(cur)
        if got is None:
            return None
        ptoks, pspan = got
        if p.expect(cur, "IDENT", "via") is None:
            return None
        pair = _parse_id_tuple(p, cur)
        p.expect_end(cur)
        if pair is None or len(pair) != 2:
            if pair is not None:
                p.error("image needs exactly two aspects in 'via'", cur.span())
            return None
        of = _resolve_path(p, graph, ptoks, pspan)
        if of is None:
            return None
        return ImageDecl(target.text, of, pair[0].text, pair[1].text)

    if p.expect(cur, "OP", "=") is None:
        return None

    if head == "product":
        factor_toks = [p.expect_ident(cur, "a factor type id")]
        if factor_toks[0] is None:
            return None
        while cur.peek() is not None and cur.peek().text == "*":
            cur.next()
            t = p.expect_ident(cur, "a factor type id")
            if t is None:
                return None
            factor_toks.append(t)
        if p.expect(cur, "IDENT", "via") is None:
            return None
        projs = _parse_id_tuple(p, cur)
        p.expect_end(cur)
        if projs is None or len(projs) != len(factor_toks):
            p.error("product needs one projection per factor", cur.line_span)
            return None
        return ProductDecl(
            target.text,
            tuple((f.text, a.text) for f, a in zip(factor_toks, projs)),
        )

    if head == "coproduct":
        summand_toks = [p.expect_ident(cur, "a summand type id")]
        if summand_toks[0] is None:
            return None
        while cur.peek() is not None and cur.peek().text == "+":
            cur.next()
            t = p.expect_ident(cur, "a summand type id")
            if t is None:
                return None
            summand_toks.append(t)
        if p.expect(cur, "IDENT", "via") is None:
            return None
        incls = _parse_id_tuple(p, cur)
        p.expect_end(cur)
        if incls is None or len(incls) != len(summand_toks):
            p.error("coproduct needs one inclusion per summand", cur.line_span)
            return None
        return CoproductDecl(
            target.text,
            tuple((s.text, a.text) for s, a in zip(summand_toks, incls)),
        )

    if head == "pullback":
        b = p.expect_ident(cur, "a leg type id")
        if b is None or p.expect(cur, "OP", "*_") is None:
            return None
        apex = p.expect_ident(cur, "the cospan target type id")
        if apex is None:
            return None
        c = p.expect_ident(cur, "a leg type id")
        if c is None or p.expect(cur, "IDENT", "via") is None:
            return None
        cospan = _parse_path_tuple(p, cur, 2)
        if cospan is None or p.expect(cur, "IDENT", "legs") is None:
            return None
        legs = _parse_id_tuple(p, cur)
        p.expect_end(cur)
        if legs is None or len(legs) != 2:
            p.error("pullback needs exactly two leg projections", cur.line_span)
            return None
        pf = _resolve_path(p, graph, *cospan[0])
        pg = _resolve_path(p, graph, *cospan[1])
        if pf is None or pg is None:
            return None
        for path, want in ((pf, b.text), (pg, c.text)):
            if path.source != want:
                p.error(
                    f"cospan path {format_path(path)} must start at '{want}'",
                    cospan[0][1],
                )
                return None
        if path_target(graph, pf) != apex.text or path_target(graph, pg) != apex.text:
            p.error(f"cospan paths must end at '{apex.text}'", cospan[0][1])
            return None
        return PullbackDecl(
            target.text,
            (b.text, legs[0].text),
            (c.text, legs[1].text),
            (pf, pg),
        )

    if head == "pushout":
        b = p.expect_ident(cur, "a leg type id")
        if b is None or p.expect(cur, "OP", "+_") is None:
            return None
        apex = p.expect_ident(cur, "the span source type id")
        if apex is None:
            return None
        c = p.expect_ident(cur, "a leg type id")
        if c is None or p.expect(cur, "IDENT", "via") is None:
            return None
        incls = _parse_id_tuple(p, cur)
        if incls is None or len(incls) != 2:
            p.error("pushout needs exactly two inclusions", cur.line_span)
            return None
        if p.expect(cur, "IDENT", "span") is None:
            return None
        span_paths = _parse_path_tuple(p, cur, 2)
        p.expect_end(cur)
        if span_paths is None:
            return None
        pf = _resolve_path(p, graph, *span_paths[0])
        pg = _resolve_path(p, graph, *span_paths[1])
        if pf is None or pg is None:
            return None
        if pf.source != apex.text or pg.source != apex.text:
            p.error(f"span paths must start at '{apex.text}'", span_paths[0][1])
            return None
        return PushoutDecl(
            target.text,
            (b.text, incls[0].text),
            (c.text, incls[1].text),
            (pf, pg),
        )

    p.error(f"unknown sketch declaration '{head}'", cur.line_span)
    return None


# ---------------------------------------------------------------------------
# Printing


def format_decl(graph: Graph, decl) -> str:
    if isinstance(decl, SingletonDecl):
        return f"singleton {decl.target}"
    if isinstance(decl, EmptyDecl):
        return f"empty {decl.target}"
    if isinstance(decl, ProductDecl):
        if not decl.factors:
            return f"singleton {decl.target}"
        factors = " * ".join(t for t, _ in decl.factors)
        projs = ",".join(a for _, a in decl.factors)
        return f"product {decl.target} = {factors} via ({projs})"
    if isinstance(decl, CoproductDecl):
        if not decl.summands:
            return f"empty {decl.target}"
        summands = " + ".join(t for t, _ in decl.summands)
        incls = ",".join(a for _, a in decl.summands)
        return f"coproduct {decl.target} = {summands} via ({incls})"
    if isinstance(decl, PullbackDecl):
        apex = path_target(graph, decl.cospan[0])
        return (
            f"pullback {decl.target} = {decl.leg_b[0]} *_{apex} {decl.leg_c[0]} "
            f"via ({format_path(decl.cospan[0])},{format_path(decl.cospan[1])}) "
            f"legs ({decl.leg_b[1]},{decl.leg_c[1]})"
        )
    if isinstance(decl, PushoutDecl):
        apex = decl.span[0].source
        return (
            f"pushout {decl.target} = {decl.leg_b[0]} +_{apex} {decl.leg_c[0]} "
            f"via ({decl.leg_b[1]},{decl.leg_c[1]}) "
            f"span ({format_path(decl.span[0])},{format_path(decl.span[1])})"
        )
    if isinstance(decl, ImageDecl):
        return (
            f"image {decl.target} of {format_path(decl.of)} "
            f"via ({decl.surjection},{decl.injection})"
        )
    raise OlogError(f"cannot print sketch declaration {decl!r}")


def print_olog(spec: Specification) -> str:
    """Canonical text for a specification (sorted, LF line endings)."""
    lines = [f"olog {spec.name} {{"]
    for t in spec.graph.types:
        lines.append(f'  type {t.id} "{t.label}"')
    for a in spec.graph.aspects:
        mods = "".join(
            f" {m}" for m in ("injective", "surjective") if m in a.modifiers
        )
        lines.append(f'  aspect {a.id} : {a.src} -> {a.tgt} "{a.label}"{mods}')
    for f in spec.facts:
        lines.append(f"  fact {format_path(f.lhs)} = {format_path(f.rhs)}")
    for d in spec.sketch:
        lines.append("  " + format_decl(spec.graph, d))
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Fact text (CLI arguments)


def parse_fact_text(text: str, graph: Graph) -> Fact:
    """Parse a fact given as ``path = path`` against an existing graph."""
    p = _Parser("<fact>")
    toks = _tokenize_line(text, 1, "<fact>")
    cur = _Cursor(toks, SourceSpan("<fact>", 1, 1))
    got = p.parse_path_tokens(cur)
    fact = None
    if got is not None and p.expect(cur, "OP", "=") is not None:
        got2 = p.parse_path_tokens(cur)
        if got2 is not None:
            p.expect_end(cur)
            lhs = _resolve_path(p, graph, *got)
            rhs = _resolve_path(p, graph, *got2)
            if lhs is not None and rhs is not None:
                fact = Fact(lhs, rhs)
                for msg in fact_errors(graph, fact):
                    p.error(msg, SourceSpan("<fact>", 1, 1))
                    fact = None
    if has_errors(p.diagnostics) or fact is None:
        raise OlogError(
            "bad fact: " + "; ".join(d.message for d in p.diagnostics if d.severity == ERROR)
        )
    return fact


# ---------------------------------------------------------------------------
# .omap parsing


def parse_morphism(
    text: str,
    src,
    tgt,
    filename: str = "<omap>",
) -> tuple[GraphMorphism | None, list[ParseDiagnostic]]:
    """Parse a morphism mapping file between two specifications (or graphs).

    Every source type must be mapped to a target type and every source aspect
    to a target path with compatible endpoints.
    """
    src_graph: Graph = getattr(src, "graph", src)
    tgt_graph: Graph = getattr(tgt, "graph", tgt)
    p = _Parser(filename)
    type_map: dict[str, str] = {}
    aspect_map: dict[str, Path] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize_line(raw, lineno, filename)
        if not toks:
            continue
        cur = _Cursor(toks, SourceSpan(filename, lineno, 1))
        head = cur.next()
        if head.text == "type":
            a = p.expect_ident(cur, "a source type id")
            if a is None or p.expect(cur, "OP", "=>") is None:
                continue
            b = p.expect_ident(cur, "a target type id")
            p.expect_end(cur)
            if b is None:
                continue
            if not src_graph.has_type(a.text):
                p.error(f"unknown source type '{a.text}'", a.span)
                continue
            if not tgt_graph.has_type(b.text):
                p.error(f"unknown target type '{b.text}'", b.span)
                continue
            if a.text in type_map:
                p.error(f"type '{a.text}' mapped twice", a.span)
                continue
            type_map[a.text] = b.text
        elif head.text == "aspect":
            a = p.expect_ident(cur, "a source aspect id")
            if a is None or p.expect(cur, "OP", "=>") is None:
                continue
            got = p.parse_path_tokens(cur)
            p.expect_end(cur)
            if got is None:
                continue
            if not src_graph.has_aspect(a.text):
                p.error(f"unknown source aspect '{a.text}'", a.span)
                continue
            img = _resolve_path(p, tgt_graph, *got)
            if img is None:
                continue
            if a.text in aspect_map:
                p.error(f"aspect '{a.text}' mapped twice", a.span)
                continue
            aspect_map[a.text] = img
        else:
            p.error(f"expected 'type' or 'aspect', found '{head.text}'", head.span)

    if has_errors(p.diagnostics):
        return None, p.diagnostics

    h = GraphMorphism(
        src=src_graph, tgt=tgt_graph, type_map=type_map, aspect_map=aspect_map
    )
    for msg in morphism_errors(h):
        p.error(msg, SourceSpan(filename, 1, 1))
    if has_errors(p.diagnostics):
        return None, p.diagnostics
    return h, p.diagnostics


# ---------------------------------------------------------------------------
# .osys parsing

_NODE_RE = re.compile(r"^\s*node\s+([A-Za-z_]\w*)\s*=\s*(\S+)\s*$")
_EDGE_RE = re.compile(
    r"^\s*edge\s+([A-Za-z_]\w*)\s*:\s*([A-Za-z_]\w*)\s*->\s*([A-Za-z_]\w*)\s*=\s*(\S+)\s*$"
)


def parse_system(
    path: str | FsPath, bound: int = DEFAULT_BOUND
) -> tuple[InformationSystem | None, list[ParseDiagnostic]]:
    """Parse a system file, loading the ologs and morphisms it references.

    File references resolve relative to the system file. Every edge morphism
    must preserve entailment at the given bound; failures are reported with
    the offending fact.
    """
    path = FsPath(path)
    filename = str(path)
    p = _Parser(filename)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        p.error(f"cannot read system file: {exc}", SourceSpan(filename, 1, 1))
        return None, p.diagnostics

    node_files: dict[str, str] = {}
    edge_decls: list[tuple[str, str, str, str, SourceSpan]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        span = SourceSpan(filename, lineno, 1)
        m = _NODE_RE.match(line)
        if m:
            if m.group(1) in node_files:
                p.error(f"node '{m.group(1)}' declared twice", span)
            else:
                node_files[m.group(1)] = m.group(2)
            continue
        m = _EDGE_RE.match(line)
        if m:
            edge_decls.append((m.group(1), m.group(2), m.group(3), m.group(4), span))
            continue
        p.error("expected 'node <n> = <file>' or 'edge <e> : <n> -> <m> = <file>'", span)

    specs: dict[str, Specification] = {}
    for node, fname in sorted(node_files.items()):
        fpath = path.parent / fname
        try:
            spec_text = fpath.read_text(encoding="utf-8")
        except OSError as exc:
            p.error(f"node '{node}': cannot read '{fname}': {exc}", SourceSpan(filename, 1, 1))
            continue
        spec, diags = parse_olog(spec_text, str(fpath))
        p.diagnostics.extend(diags)
        if spec is not None:
            specs[node] = spec

    constraints: dict[str, GraphMorphism] = {}
    edges: list[tuple[str, str, str]] = []
    seen_edges: set[str] = set()
    for eid, src, tgt, fname, span in edge_decls:
        if eid in seen_edges:
            p.error(f"edge '{eid}' declared twice", span)
            continue
        seen_edges.add(eid)
        if src not in node_files or tgt not in node_files:
            p.error(f"edge '{eid}' references an undeclared node", span)
            continue
        edges.append((eid, src, tgt))
        if src not in specs or tgt not in specs:
            continue
        fpath = path.parent / fname
        try:
            map_text = fpath.read_text(encoding="utf-8")
        except OSError as exc:
            p.error(f"edge '{eid}': cannot read '{fname}': {exc}", span)
            continue
        h, diags = parse_morphism(map_text, specs[src], specs[tgt], str(fpath))
        p.diagnostics.extend(diags)
        if h is not None:
            constraints[eid] = h

    if has_errors(p.diagnostics):
        return None, p.diagnostics

    sys = InformationSystem(
        shape=Shape(nodes=tuple(node_files), edges=tuple(edges)),
        specs=specs,
        constraints=constraints,
    )
    for msg in validate_system(sys, bound):
        p.error(msg, SourceSpan(filename, 1, 1))
    if has_errors(p.diagnostics):
        return None, p.diagnostics
    return sys, p.diagnostics
