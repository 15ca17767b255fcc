"""The declaration language: parser, validation, pretty-printer.

Line-oriented blocks of the shape ``kind name { field: value; ... }``.
Monoid relations use explicit integer exponent vectors (``2a+0b = 0a+2b``);
polynomials use integer coefficients with ``*``, ``^`` and parentheses.
Names must be declared before use.  Parsing the pretty-printed form of a
workspace reproduces it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .logrings import PreLogMap, PreLogRing, builtin_units
from .monoids import MonoidMap, MonoidPresentation
from .polys import Poly
from .rings import (
    INT, RAT, CoeffDomain, ModulePresentation, RingMap, RingPresentation,
    fp, int_inv, poly_str,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line} col {col}: {message}")
        self.line = line
        self.col = col


@dataclass
class Declaration:
    kind: str
    name: str
    value: object
    refs: dict = field(default_factory=dict)
    line: int = 0
    col: int = 0

    def __eq__(self, other):
        return (isinstance(other, Declaration) and self.kind == other.kind
                and self.name == other.name and self.value == other.value
                and self.refs == other.refs)


@dataclass
class Workspace:
    entries: dict  # name -> Declaration, in declaration order

    def __getitem__(self, name: str) -> Declaration:
        return self.entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def get(self, name: str, kind: str | None = None):
        if name not in self.entries:
            raise KeyError(f"unknown name {name!r}")
        decl = self.entries[name]
        if kind is not None and decl.kind != kind:
            raise KeyError(f"{name!r} is a {decl.kind}, expected {kind}")
        return decl.value

    def __eq__(self, other):
        return isinstance(other, Workspace) and \
            list(self.entries.items()) == list(other.entries.items())


# ---------------------------------------------------------------------------
# lexer

_PUNCT = "{}();:,^*+-=/"


@dataclass
class Token:
    kind: str  # IDENT | NUMBER | PUNCT | ARROW | EOF
    text: str
    line: int
    col: int


def _lex(src: str) -> list[Token]:
    out = []
    line, col = 1, 1
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        if src.startswith("->", i):
            out.append(Token("ARROW", "->", line, col))
            i += 2
            col += 2
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            out.append(Token("NUMBER", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] in "_'"):
                j += 1
            out.append(Token("IDENT", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            out.append(Token("PUNCT", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("EOF", "", line, col))
    return out


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, src: str):
        self.tokens = _lex(src)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ParseError(f"expected {want!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "PUNCT" and tok.text == text

    # -- fields ------------------------------------------------------------

    def parse_workspace(self) -> Workspace:
        entries: dict = {}
        while self.peek().kind != "EOF":
            decl = self.parse_declaration(entries)
            if decl.name in entries:
                raise ParseError(f"duplicate name {decl.name!r}", decl.line, decl.col)
            entries[decl.name] = decl
        return Workspace(entries)

    def parse_declaration(self, entries) -> Declaration:
        head = self.expect("IDENT")
        kind = head.text
        name_tok = self.expect("IDENT")
        self.expect("PUNCT", "{")
        fields: dict[str, list[Token]] = {}
        order = []
        while not self.at_punct("}"):
            key = self.expect("IDENT")
            self.expect("PUNCT", ":")
            toks = []
            while not self.at_punct(";"):
                if self.peek().kind == "EOF":
                    raise ParseError("unterminated field", key.line, key.col)
                toks.append(self.next())
            self.expect("PUNCT", ";")
            if key.text in fields:
                raise ParseError(f"duplicate field {key.text!r}", key.line, key.col)
            fields[key.text] = toks
            order.append(key.text)
        self.expect("PUNCT", "}")
        builders = {
            "monoid": self._build_monoid,
            "ring": self._build_ring,
            "prelog": self._build_prelog,
            "module": self._build_module,
            "map": self._build_map,
        }
        if kind not in builders:
            raise ParseError(f"unknown declaration kind {kind!r}", head.line, head.col)
        try:
            value, refs = builders[kind](fields, entries, name_tok)
        except ParseError:
            raise
        except (ValueError, KeyError) as exc:
            raise ParseError(str(exc), name_tok.line, name_tok.col) from exc
        return Declaration(kind, name_tok.text, value, refs, name_tok.line, name_tok.col)

    def _need(self, fields, key, tok):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", tok.line, tok.col)
        return fields[key]

    def _build_monoid(self, fields, entries, tok):
        gens = [t.text for t in self._need(fields, "gens", tok)]
        for t in self._need(fields, "gens", tok):
            if t.kind != "IDENT":
                raise ParseError("generator names must be identifiers", t.line, t.col)
        rel_toks = fields.get("rels", [])
        rels = _parse_relation_list(rel_toks, gens)
        return MonoidPresentation(tuple(gens), tuple(rels)), {}

    def _build_ring(self, fields, entries, tok):
        coeff = _parse_coeff(self._need(fields, "coeff", tok))
        var_toks = self._need(fields, "vars", tok)
        for t in var_toks:
            if t.kind != "IDENT":
                raise ParseError("variable names must be identifiers", t.line, t.col)
        names = [t.text for t in var_toks]
        ideal_toks = fields.get("ideal", [])
        polys = []
        for chunk in _split_commas(ideal_toks):
            polys.append(_parse_poly(chunk, names, coeff))
        ring = RingPresentation.make(coeff, names, polys)
        return ring, {}

    def _build_prelog(self, fields, entries, tok):
        ring_name = _single_ident(self._need(fields, "ring", tok))
        mono_name = _single_ident(self._need(fields, "monoid", tok))
        ring = _lookup(entries, ring_name, "ring", tok)
        monoid = _lookup(entries, mono_name, "monoid", tok)
        alpha = [None] * monoid.ngens
        for chunk in _split_commas(fields.get("alpha", [])):
            gen, rest = _split_arrow(chunk)
            if gen.text not in monoid.generators:
                raise ParseError(f"unknown monoid generator {gen.text!r}", gen.line, gen.col)
            alpha[monoid.generators.index(gen.text)] = _parse_poly(rest, list(ring.vars), ring.coeff)
        if any(a is None for a in alpha):
            raise ParseError("alpha must cover every monoid generator", tok.line, tok.col)
        units_field = fields.get("units")
        units = None
        if units_field:
            word = _single_ident(units_field)
            if word == "builtin":
                units = builtin_units(ring)
            elif word != "none":
                raise ParseError("units must be 'builtin' or 'none'",
                                 units_field[0].line, units_field[0].col)
        value = PreLogRing.make(ring, monoid, alpha, units)
        return value, {"ring": ring_name, "monoid": mono_name,
                       "units": "builtin" if units is not None else "none"}

    def _build_module(self, fields, entries, tok):
        ring_name = _single_ident(self._need(fields, "ring", tok))
        ring = _lookup(entries, ring_name, "ring", tok)
        gen_toks = self._need(fields, "gens", tok)
        gens = [t.text for t in gen_toks]
        rows = []
        for chunk in _split_commas(fields.get("rels", []), paren_rows=True):
            row = []
            for sub in _split_commas(chunk):
                row.append(_parse_poly(sub, list(ring.vars), ring.coeff))
            if len(row) != len(gens):
                where = chunk[0] if chunk else tok
                raise ParseError("relation row length mismatch", where.line, where.col)
            rows.append(row)
        return ModulePresentation.make(ring, gens, rows), {"ring": ring_name}

    def _build_map(self, fields, entries, tok):
        from_name = _single_ident(self._need(fields, "from", tok))
        to_name = _single_ident(self._need(fields, "to", tok))
        src = _lookup(entries, from_name, "prelog", tok)
        dst = _lookup(entries, to_name, "prelog", tok)
        ring_images = [None] * src.ring.nvars
        for chunk in _split_commas(fields.get("ring", [])):
            var, rest = _split_arrow(chunk)
            if var.text not in src.ring.vars:
                raise ParseError(f"unknown ring variable {var.text!r}", var.line, var.col)
            ring_images[src.ring.vars.index(var.text)] = _parse_poly(
                rest, list(dst.ring.vars), dst.ring.coeff)
        if any(p is None for p in ring_images):
            raise ParseError("ring images must cover every variable", tok.line, tok.col)
        mono_images = [None] * src.monoid.ngens
        for chunk in _split_commas(fields.get("monoid", [])):
            gen, rest = _split_arrow(chunk)
            if gen.text not in src.monoid.generators:
                raise ParseError(f"unknown monoid generator {gen.text!r}", gen.line, gen.col)
            mono_images[src.monoid.generators.index(gen.text)] = _parse_exponents(
                rest, list(dst.monoid.generators))
        if any(w is None for w in mono_images):
            raise ParseError("monoid images must cover every generator", tok.line, tok.col)
        rm = RingMap.make(src.ring, dst.ring, ring_images)
        mm = MonoidMap(src.monoid, dst.monoid, tuple(mono_images))
        return PreLogMap(src, dst, rm, mm), {"from": from_name, "to": to_name}


def _lookup(entries, name, kind, tok):
    if name not in entries:
        raise ParseError(f"unknown {kind} {name!r} (forward references are rejected)",
                         tok.line, tok.col)
    decl = entries[name]
    if decl.kind != kind:
        raise ParseError(f"{name!r} is a {decl.kind}, expected {kind}", tok.line, tok.col)
    return decl.value


def _single_ident(toks) -> str:
    if len(toks) != 1 or toks[0].kind != "IDENT":
        where = toks[0] if toks else Token("EOF", "", 0, 0)
        raise ParseError("expected a single name", where.line, where.col)
    return toks[0].text


def _split_commas(toks, paren_rows=False):
    """Split a token list on depth-0 commas; optionally unwrap (...) rows."""
    chunks = []
    depth = 0
    current: list[Token] = []
    for t in toks:
        if t.kind == "PUNCT" and t.text == "(":
            depth += 1
            if paren_rows and depth == 1:
                continue
        elif t.kind == "PUNCT" and t.text == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parenthesis", t.line, t.col)
            if paren_rows and depth == 0:
                continue
        elif t.kind == "PUNCT" and t.text == "," and depth == 0:
            chunks.append(current)
            current = []
            continue
        current.append(t)
    if current or chunks:
        chunks.append(current)
    return [c for c in chunks if c]


def _split_arrow(toks):
    for i, t in enumerate(toks):
        if t.kind == "ARROW":
            if i != 1 or toks[0].kind != "IDENT":
                raise ParseError("expected 'name -> expression'", t.line, t.col)
            return toks[0], toks[i + 1:]
    where = toks[0] if toks else Token("EOF", "", 0, 0)
    raise ParseError("expected '->'", where.line, where.col)


def _parse_coeff(toks) -> CoeffDomain:
    if not toks:
        raise ParseError("empty coefficient domain", 0, 0)
    head = toks[0]
    if head.kind != "IDENT":
        raise ParseError("bad coefficient domain", head.line, head.col)
    if head.text == "int" and len(toks) == 1:
        return INT
    if head.text == "rat" and len(toks) == 1:
        return RAT
    if head.text in ("int_inv", "fp"):
        if len(toks) != 4 or toks[1].text != "(" or toks[2].kind != "NUMBER" \
                or toks[3].text != ")":
            raise ParseError(f"expected {head.text}(N)", head.line, head.col)
        n = int(toks[2].text)
        return int_inv(n) if head.text == "int_inv" else fp(n)
    raise ParseError(f"unknown coefficient domain {head.text!r}", head.line, head.col)


def _parse_relation_list(toks, gens):
    rels = []
    for chunk in _split_commas(toks):
        eq_at = None
        for i, t in enumerate(chunk):
            if t.kind == "PUNCT" and t.text == "=":
                eq_at = i
                break
        if eq_at is None:
            raise ParseError("relation needs '='", chunk[0].line, chunk[0].col)
        lhs = _parse_exponents(chunk[:eq_at], gens)
        rhs = _parse_exponents(chunk[eq_at + 1:], gens)
        rels.append((lhs, rhs))
    return rels


def _parse_exponents(toks, gens):
    """Exponent vector term: '0' or '+'-joined 'INT IDENT' items."""
    vec = [0] * len(gens)
    if len(toks) == 1 and toks[0].kind == "NUMBER" and toks[0].text == "0":
        return tuple(vec)
    i = 0
    expect_item = True
    while i < len(toks):
        t = toks[i]
        if expect_item:
            if t.kind != "NUMBER":
                raise ParseError("exponent terms need explicit integer coefficients",
                                 t.line, t.col)
            if i + 1 >= len(toks) or toks[i + 1].kind != "IDENT":
                raise ParseError("expected generator name after coefficient",
                                 t.line, t.col)
            name = toks[i + 1].text
            if name not in gens:
                raise ParseError(f"unknown generator {name!r}",
                                 toks[i + 1].line, toks[i + 1].col)
            vec[gens.index(name)] += int(t.text)
            i += 2
            expect_item = False
        else:
            if t.kind == "PUNCT" and t.text == "+":
                i += 1
                expect_item = True
            else:
                raise ParseError("expected '+'", t.line, t.col)
    if expect_item:
        where = toks[-1] if toks else Token("EOF", "", 0, 0)
        raise ParseError("dangling '+'", where.line, where.col)
    return tuple(vec)


# -- polynomial expressions --------------------------------------------------

class _PolyParser:
    def __init__(self, toks, names, coeff):
        self.toks = list(toks) + [Token("EOF", "", 0, 0)]
        self.pos = 0
        self.names = names
        self.coeff = coeff
        self.car = coeff.carrier()
        self.n = len(names)

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse(self) -> Poly:
        p = self.expr()
        t = self.peek()
        if t.kind != "EOF":
            raise ParseError(f"unexpected token {t.text!r} in polynomial", t.line, t.col)
        return p

    def expr(self) -> Poly:
        from .polys import poly_add, poly_neg
        p = self.term()
        while True:
            t = self.peek()
            if t.kind == "PUNCT" and t.text in "+-":
                self.next()
                q = self.term()
                if t.text == "-":
                    q = poly_neg(q, self.car)
                p = poly_add(p, q, self.car)
            else:
                return p

    def term(self) -> Poly:
        from .polys import poly_mul
        p = self.factor()
        while True:
            t = self.peek()
            if t.kind == "PUNCT" and t.text == "*":
                self.next()
                p = poly_mul(p, self.factor(), self.car)
            else:
                return p

    def factor(self) -> Poly:
        from .polys import poly_pow
        p = self.base()
        t = self.peek()
        if t.kind == "PUNCT" and t.text == "^":
            self.next()
            e = self.next()
            if e.kind != "NUMBER":
                raise ParseError("exponent must be a number", e.line, e.col)
            return poly_pow(p, int(e.text), self.car, self.n)
        return p

    def base(self) -> Poly:
        from .polys import poly_const, poly_neg, poly_var
        t = self.next()
        if t.kind == "NUMBER":
            return poly_const(self.car.normalize(int(t.text)), self.car, self.n)
        if t.kind == "IDENT":
            if t.text not in self.names:
                raise ParseError(f"unknown variable {t.text!r}", t.line, t.col)
            return poly_var(self.names.index(t.text), self.n, self.car)
        if t.kind == "PUNCT" and t.text == "(":
            p = self.expr()
            self.expect_close()
            return p
        if t.kind == "PUNCT" and t.text == "-":
            return poly_neg(self.factor(), self.car)
        raise ParseError(f"unexpected token {t.text!r} in polynomial", t.line, t.col)

    def expect_close(self):
        t = self.next()
        if t.kind != "PUNCT" or t.text != ")":
            raise ParseError("expected ')'", t.line, t.col)


def _parse_poly(toks, names, coeff) -> Poly:
    if not toks:
        return {}
    return _PolyParser(toks, names, coeff).parse()


def parse(source: str) -> Workspace:
    """Parse a workspace; all validation errors carry line/column."""
    return _Parser(source).parse_workspace()


# ---------------------------------------------------------------------------
# pretty printer

def _exp_str(vec, gens) -> str:
    if not any(vec):
        return "0"
    return "+".join(f"{c}{g}" for c, g in zip(vec, gens))


def pretty(ws: Workspace) -> str:
    out = []
    for decl in ws.entries.values():
        out.append(_pretty_decl(decl))
    return "\n".join(out) + "\n"


def _pretty_decl(decl: Declaration) -> str:
    v = decl.value
    if decl.kind == "monoid":
        rels = ", ".join(f"{_exp_str(u, v.generators)} = {_exp_str(w, v.generators)}"
                         for u, w in v.relations)
        return (f"monoid {decl.name} {{ gens: {' '.join(v.generators)}; "
                f"rels: {rels}; }}")
    if decl.kind == "ring":
        ideal = ", ".join(poly_str(dict(g), v.vars) for g in v.ideal)
        return (f"ring {decl.name} {{ coeff: {v.coeff}; vars: {' '.join(v.vars)}; "
                f"ideal: {ideal}; }}")
    if decl.kind == "prelog":
        alpha = ", ".join(
            f"{g} -> {poly_str(dict(a), v.ring.vars)}"
            for g, a in zip(v.monoid.generators, v.alpha))
        return (f"prelog {decl.name} {{ ring: {decl.refs['ring']}; "
                f"monoid: {decl.refs['monoid']}; alpha: {alpha}; "
                f"units: {decl.refs['units']}; }}")
    if decl.kind == "module":
        rows = ", ".join(
            "(" + ", ".join(poly_str(dict(p), v.ring.vars) for p in row) + ")"
            for row in v.relations)
        return (f"module {decl.name} {{ ring: {decl.refs['ring']}; "
                f"gens: {' '.join(v.gens)}; rels: {rows}; }}")
    if decl.kind == "map":
        ring = ", ".join(
            f"{x} -> {poly_str(dict(p), v.codomain.ring.vars)}"
            for x, p in zip(v.domain.ring.vars, v.ring_map.images))
        mono = ", ".join(
            f"{g} -> {_exp_str(w, v.codomain.monoid.generators)}"
            for g, w in zip(v.domain.monoid.generators, v.monoid_map.images))
        return (f"map {decl.name} {{ from: {decl.refs['from']}; "
                f"to: {decl.refs['to']}; ring: {ring}; monoid: {mono}; }}")
    raise ValueError(f"unknown declaration kind {decl.kind}")
