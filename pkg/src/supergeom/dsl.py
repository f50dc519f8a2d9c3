"""Text front end: source files, matrix files, action files, and printing.

Source file format, one presentation per file, '#' comments:

    evens x y
    odds xi eta
    ideal x*xi + y*eta
    point 0 0

Expressions use +, -, *, ^ and parentheses over integer, fraction (a/b)
and 'i' literals; '/' exists only inside fraction literals.  Generators
are normalized at parse time, so Koszul signs are already absorbed, and
each generator must be parity-homogeneous.

Matrix files carry a block-size header and one 'row' line per matrix row
with comma-separated entries:

    dims 1 1
    odds t1 t2
    row 1 + t1*t2, t1
    row t2, 1

Action files name a built-in group, declare the space, give one 'act'
line per space coordinate (the identifier Ber denotes the group's
Berezinian), and fix the point to stabilize:

    group gl 1 1
    space evens t
    act t = Ber * t
    point 1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    MixedParityGenerator,
    ParseError,
    UnknownVariable,
)
from .scalars import QI
from .superpoly import (
    ClosedPoint,
    Presentation,
    SuperPolynomial,
    VarTable,
    poly_to_string,
)
from .supergroups import (
    ActionPresentation,
    FormFlavor,
    GroupPresentation,
    form_stabilizer_presentation,
    generic_berezinian,
    gl_presentation,
    lift_to_joint,
    sl_presentation,
)
from .supermatrix import SuperMatrix

_SYMBOLS = "+-*^(),/="


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident' | 'int' | one of the symbol characters | 'newline' | 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            tokens.append(Token("newline", "\n", line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(Token("int", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token("ident", text[start:i], line, col))
            col += i - start
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("newline", "", line, col))
    tokens.append(Token("eof", "", line + 1, 1))
    return tokens


class _Stream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.peek().kind == kind:
            return self.next()
        return None

    def expect(self, kind: str, expected: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {expected}, found {tok.text!r}" if tok.text else f"expected {expected}, found end of line",
                tok.line,
                tok.col,
            )
        return self.next()

    def skip_blank_lines(self):
        while self.peek().kind == "newline":
            self.next()

    def end_line(self):
        tok = self.peek()
        if tok.kind == "eof":
            return
        if tok.kind != "newline":
            raise ParseError(
                f"expected end of line, found {tok.text!r}", tok.line, tok.col
            )
        self.next()


# -- expressions ---------------------------------------------------------


class _ExprParser:
    """Recursive descent over +, -, *, ^ with literal fractions and i."""

    def __init__(self, stream: _Stream, table: VarTable,
                 builtins: dict[str, SuperPolynomial] | None = None):
        self.s = stream
        self.table = table
        self.builtins = builtins or {}

    def expr(self) -> SuperPolynomial:
        value = self.term()
        while True:
            if self.s.accept("+"):
                value = value + self.term()
            elif self.s.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> SuperPolynomial:
        value = self.unary()
        while self.s.accept("*"):
            value = value * self.unary()
        return value

    def unary(self) -> SuperPolynomial:
        if self.s.accept("-"):
            return -self.unary()
        return self.power()

    def power(self) -> SuperPolynomial:
        base = self.atom()
        if self.s.accept("^"):
            tok = self.s.expect("int", "a non-negative integer exponent")
            return base ** int(tok.text)
        return base

    def atom(self) -> SuperPolynomial:
        tok = self.s.peek()
        if tok.kind == "int":
            self.s.next()
            value = Fraction(int(tok.text))
            if self.s.accept("/"):
                den = self.s.expect("int", "a denominator")
                if int(den.text) == 0:
                    raise ParseError("division by zero in literal", den.line, den.col)
                value = value / int(den.text)
            return SuperPolynomial.const(self.table, QI(value))
        if tok.kind == "ident":
            self.s.next()
            if tok.text == "i":
                return SuperPolynomial.const(self.table, QI(0, 1))
            if tok.text in self.builtins:
                return self.builtins[tok.text]
            try:
                return SuperPolynomial.var(self.table, tok.text)
            except UnknownVariable:
                raise UnknownVariable(
                    f"{tok.line}:{tok.col}: unknown variable {tok.text!r}"
                ) from None
        if tok.kind == "(":
            self.s.next()
            value = self.expr()
            self.s.expect(")", "')'")
            return value
        raise ParseError(
            "expected a number, 'i', a variable, or '('", tok.line, tok.col
        )


def _parse_coordinate(stream: _Stream, table: VarTable) -> QI:
    """One point coordinate: a signed literal or a parenthesized constant."""
    tok = stream.peek()
    negative = False
    if stream.accept("-"):
        negative = True
        tok = stream.peek()
    if tok.kind == "(":
        stream.next()
        value = _ExprParser(stream, table).expr()
        stream.expect(")", "')'")
        if any(mono.degree() > 0 for mono, _ in value.items()):
            raise ParseError("point coordinate must be constant", tok.line, tok.col)
        coeff = value.constant_term()
        return -coeff if negative else coeff
    if tok.kind == "ident" and tok.text == "i":
        stream.next()
        coeff = QI(0, 1)
        return -coeff if negative else coeff
    if tok.kind == "int":
        stream.next()
        value = Fraction(int(tok.text))
        if stream.accept("/"):
            den = stream.expect("int", "a denominator")
            if int(den.text) == 0:
                raise ParseError("division by zero in literal", den.line, den.col)
            value = value / int(den.text)
        coeff = QI(value)
        if stream.accept("*"):
            unit = stream.expect("ident", "'i'")
            if unit.text != "i":
                raise ParseError("expected 'i'", unit.line, unit.col)
            coeff = QI(0, value)
        return -coeff if negative else coeff
    raise ParseError(
        "expected a point coordinate (number, fraction, i, or parenthesized constant)",
        tok.line,
        tok.col,
    )


def _parse_names(stream: _Stream) -> tuple[str, ...]:
    names = []
    while stream.peek().kind == "ident":
        names.append(stream.next().text)
    return tuple(names)


# -- source files ---------------------------------------------------------


def parse_source(text: str) -> tuple[Presentation, ClosedPoint | None]:
    """Parse one presentation plus an optional closed point."""
    stream = _Stream(tokenize(text))
    evens: tuple[str, ...] | None = None
    odds: tuple[str, ...] | None = None
    table: VarTable | None = None
    generators: list[SuperPolynomial] = []
    point: ClosedPoint | None = None

    while True:
        stream.skip_blank_lines()
        tok = stream.peek()
        if tok.kind == "eof":
            break
        if tok.kind != "ident":
            raise ParseError(
                "expected a declaration (evens, odds, ideal, point)", tok.line, tok.col
            )
        keyword = stream.next()
        if keyword.text == "evens":
            if evens is not None:
                raise ParseError("duplicate evens declaration", keyword.line, keyword.col)
            evens = _parse_names(stream)
            stream.end_line()
        elif keyword.text == "odds":
            if odds is not None:
                raise ParseError("duplicate odds declaration", keyword.line, keyword.col)
            odds = _parse_names(stream)
            stream.end_line()
        elif keyword.text in ("ideal", "point"):
            if evens is None or odds is None:
                raise ParseError(
                    "declare evens and odds before ideal or point",
                    keyword.line,
                    keyword.col,
                )
            if table is None:
                table = VarTable(evens, odds)
            if keyword.text == "ideal":
                while True:
                    start = stream.peek()
                    gen = _ExprParser(stream, table).expr()
                    parity = gen.parity()
                    if not gen.is_zero() and parity is None:
                        raise MixedParityGenerator(
                            f"{start.line}:{start.col}: generator is not parity-homogeneous: {gen}"
                        )
                    if not gen.is_zero():
                        generators.append(gen)
                    if not stream.accept(","):
                        break
                stream.end_line()
            else:
                if point is not None:
                    raise ParseError("duplicate point declaration", keyword.line, keyword.col)
                coords = []
                while True:
                    if stream.accept(","):
                        coords.append(_parse_coordinate(stream, table))
                    elif stream.peek().kind not in ("newline", "eof"):
                        coords.append(_parse_coordinate(stream, table))
                    else:
                        break
                if len(coords) != len(evens):
                    raise ParseError(
                        f"point has {len(coords)} coordinates, expected {len(evens)}",
                        keyword.line,
                        keyword.col,
                    )
                point = ClosedPoint(tuple(coords))
                stream.end_line()
        else:
            raise ParseError(
                f"unknown declaration {keyword.text!r}", keyword.line, keyword.col
            )

    if evens is None or odds is None:
        raise ParseError("source must declare both evens and odds", 1, 1)
    if table is None:
        table = VarTable(evens, odds)
    return Presentation.from_generators(table, generators), point


def print_presentation(pres: Presentation, point: ClosedPoint | None = None) -> str:
    """Canonical source text; parse_source of the result reproduces the inputs."""
    lines = [
        ("evens " + " ".join(pres.table.evens)).rstrip(),
        ("odds " + " ".join(pres.table.odds)).rstrip(),
    ]
    for gen in pres.even_gens + pres.odd_gens:
        lines.append(f"ideal {poly_to_string(gen)}")
    if point is not None:
        coords = " ".join(_coordinate_string(c) for c in point.coords)
        lines.append(("point " + coords).rstrip())
    return "\n".join(lines) + "\n"


def _coordinate_string(c: QI) -> str:
    if c.re and c.im:
        return f"({c})"
    return str(c)


# -- matrix files -----------------------------------------------------------


def parse_matrix_file(text: str) -> SuperMatrix:
    stream = _Stream(tokenize(text))
    dims: tuple[int, int] | None = None
    evens: tuple[str, ...] = ()
    odds: tuple[str, ...] = ()
    rows: list[list[SuperPolynomial]] = []
    table: VarTable | None = None

    while True:
        stream.skip_blank_lines()
        tok = stream.peek()
        if tok.kind == "eof":
            break
        keyword = stream.expect("ident", "a declaration (dims, evens, odds, row)")
        if keyword.text == "dims":
            if dims is not None:
                raise ParseError("duplicate dims declaration", keyword.line, keyword.col)
            m = int(stream.expect("int", "the even size").text)
            n = int(stream.expect("int", "the odd size").text)
            dims = (m, n)
            stream.end_line()
        elif keyword.text == "evens":
            evens = _parse_names(stream)
            stream.end_line()
        elif keyword.text == "odds":
            odds = _parse_names(stream)
            stream.end_line()
        elif keyword.text == "row":
            if dims is None:
                raise ParseError("dims must come before rows", keyword.line, keyword.col)
            if table is None:
                table = VarTable(evens, odds)
            entries = [_ExprParser(stream, table).expr()]
            while stream.accept(","):
                entries.append(_ExprParser(stream, table).expr())
            size = dims[0] + dims[1]
            if len(entries) != size:
                raise ParseError(
                    f"row has {len(entries)} entries, expected {size}",
                    keyword.line,
                    keyword.col,
                )
            rows.append(entries)
            stream.end_line()
        else:
            raise ParseError(
                f"unknown declaration {keyword.text!r}", keyword.line, keyword.col
            )

    if dims is None:
        raise ParseError("matrix file must declare dims", 1, 1)
    m, n = dims
    if len(rows) != m + n:
        raise ParseError(f"matrix has {len(rows)} rows, expected {m + n}", 1, 1)
    if table is None:
        table = VarTable(evens, odds)
    return SuperMatrix.from_full(table, m, n, rows)


# -- action files -----------------------------------------------------------


def build_group(name: str, m: int, n: int) -> GroupPresentation:
    if name == "gl":
        return gl_presentation(m, n)
    if name == "sl":
        return sl_presentation(m, n)
    if name == "osp":
        return form_stabilizer_presentation(m, n, flavor=FormFlavor.SYMMETRIC)
    if name == "psp":
        return form_stabilizer_presentation(m, n, flavor=FormFlavor.ANTISYMMETRIC)
    raise ParseError(f"unknown group {name!r} (expected gl, sl, osp, psp)")


def parse_action_file(text: str) -> tuple[ActionPresentation, ClosedPoint]:
    stream = _Stream(tokenize(text))
    group: GroupPresentation | None = None
    group_dims: tuple[int, int] | None = None
    group_kind: str | None = None
    space_evens: tuple[str, ...] = ()
    space_odds: tuple[str, ...] = ()
    space_gens: list[SuperPolynomial] = []
    act_images: dict[str, SuperPolynomial] = {}
    point: ClosedPoint | None = None
    joint: VarTable | None = None
    space_table: VarTable | None = None
    builtins: dict[str, SuperPolynomial] = {}

    def ensure_tables(where: Token):
        nonlocal joint, space_table, builtins
        if group is None:
            raise ParseError("declare the group first", where.line, where.col)
        if space_table is None:
            space_table = VarTable(space_evens, space_odds)
            gt = group.base.table
            joint = VarTable(gt.evens + space_evens, gt.odds + space_odds)
            if group_kind in ("gl", "sl"):
                ber = generic_berezinian(*group_dims)
                builtins = {"Ber": lift_to_joint(ber, joint, 0, 0)}

    while True:
        stream.skip_blank_lines()
        tok = stream.peek()
        if tok.kind == "eof":
            break
        keyword = stream.expect("ident", "a declaration (group, space, act, point)")
        if keyword.text == "group":
            if group is not None:
                raise ParseError("duplicate group declaration", keyword.line, keyword.col)
            name = stream.expect("ident", "a group name").text
            m = int(stream.expect("int", "the even size").text)
            n = int(stream.expect("int", "the odd size").text)
            group = build_group(name, m, n)
            group_dims = (m, n)
            group_kind = name
            stream.end_line()
        elif keyword.text == "space":
            sub = stream.expect("ident", "'evens', 'odds' or 'ideal'")
            if sub.text == "evens":
                space_evens = _parse_names(stream)
            elif sub.text == "odds":
                space_odds = _parse_names(stream)
            elif sub.text == "ideal":
                ensure_tables(sub)
                while True:
                    gen = _ExprParser(stream, space_table).expr()
                    if not gen.is_zero():
                        space_gens.append(gen)
                    if not stream.accept(","):
                        break
            else:
                raise ParseError(
                    f"unknown space declaration {sub.text!r}", sub.line, sub.col
                )
            stream.end_line()
        elif keyword.text == "act":
            ensure_tables(keyword)
            name = stream.expect("ident", "a space coordinate").text
            if name not in space_table.evens + space_table.odds:
                raise ParseError(
                    f"{name!r} is not a space coordinate", keyword.line, keyword.col
                )
            if name in act_images:
                raise ParseError(
                    f"duplicate act line for {name!r}", keyword.line, keyword.col
                )
            stream.expect("=", "'='")
            act_images[name] = _ExprParser(stream, joint, builtins).expr()
            stream.end_line()
        elif keyword.text == "point":
            ensure_tables(keyword)
            coords = []
            while stream.peek().kind not in ("newline", "eof"):
                stream.accept(",")
                coords.append(_parse_coordinate(stream, space_table))
            if len(coords) != space_table.m:
                raise ParseError(
                    f"point has {len(coords)} coordinates, expected {space_table.m}",
                    keyword.line,
                    keyword.col,
                )
            point = ClosedPoint(tuple(coords))
            stream.end_line()
        else:
            raise ParseError(
                f"unknown declaration {keyword.text!r}", keyword.line, keyword.col
            )

    if group is None:
        raise ParseError("action file must declare a group", 1, 1)
    if space_table is None:
        raise ParseError("action file must declare the space", 1, 1)
    if point is None:
        raise ParseError("action file must declare the point to stabilize", 1, 1)
    missing = [
        name
        for name in space_table.evens + space_table.odds
        if name not in act_images
    ]
    if missing:
        raise ParseError(f"missing act line for {missing[0]!r}", 1, 1)
    space = Presentation.from_generators(space_table, space_gens)
    action = ActionPresentation(group, space, act_images)
    return action, point
