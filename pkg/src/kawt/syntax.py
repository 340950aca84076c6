"""Weighted regular programs: abstract syntax, concrete grammar, printer.

Concrete syntax::

    program  := sum
    sum      := seq ('+' seq)*
    seq      := postfix ([';'] postfix)*          juxtaposition is sequencing
    postfix  := primary '*'*
    primary  := PROG | BOOL | '@' WEIGHT | '@' '(' wsum ')' | '0' | '1'
              | '{' bor '}' | '(' sum ')'
    bor      := band ('|' band)*
    band     := bnot ('&' bnot)*
    bnot     := '!' bnot | BOOL | '0' | '1' | '(' bor ')'
    wsum     := wprod ('+' wprod)*
    wprod    := watom ([';'] watom)*
    watom    := WEIGHT | '@' WEIGHT | '0' | '1' | '(' wsum ')'

Sequencing and choice are n-ary and flattened by `seq` and `plus`, so the
tree of a program does not depend on how its products are bracketed.
"""

import re
from dataclasses import dataclass
from itertools import chain

from .errors import ParseError, SortError, UndeclaredIdentifier


# -- signature --------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    programs: tuple = ()
    booleans: tuple = ()
    weightings: tuple = ()

    def __post_init__(self):
        for field in ("programs", "booleans", "weightings"):
            names = tuple(getattr(self, field))
            object.__setattr__(self, field, names)
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate identifier among {field}: {names}")
        seen = {}
        for sort, names in self.sorts():
            for name in names:
                if name in seen:
                    raise ValueError(f"{name!r} declared as both {seen[name]} and {sort}")
                seen[name] = sort

    def sorts(self):
        return (("program", self.programs), ("bool", self.booleans), ("weight", self.weightings))

    def sort_of(self, name):
        for sort, names in self.sorts():
            if name in names:
                return sort
        return None


SKI_SIGNATURE = Signature(programs=("sub1", "end"), booleans=("neq0",), weightings=("one", "skis"))


# -- Boolean expressions ----------------------------------------------------

class BExpr:
    __slots__ = ()


@dataclass(frozen=True)
class BVar(BExpr):
    name: str


@dataclass(frozen=True)
class BOne(BExpr):
    pass


@dataclass(frozen=True)
class BZero(BExpr):
    pass


@dataclass(frozen=True)
class BAnd(BExpr):
    left: BExpr
    right: BExpr


@dataclass(frozen=True)
class BOr(BExpr):
    left: BExpr
    right: BExpr


@dataclass(frozen=True)
class BNot(BExpr):
    arg: BExpr


# -- weightings ---------------------------------------------------------------

class WExpr:
    __slots__ = ()


@dataclass(frozen=True)
class WVar(WExpr):
    name: str


@dataclass(frozen=True)
class WOne(WExpr):
    pass


@dataclass(frozen=True)
class WZero(WExpr):
    pass


@dataclass(frozen=True)
class WMul(WExpr):
    left: WExpr
    right: WExpr


@dataclass(frozen=True)
class WAdd(WExpr):
    left: WExpr
    right: WExpr


# -- programs -----------------------------------------------------------------

class Program:
    __slots__ = ()

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class Atomic(Program):
    name: str


@dataclass(frozen=True)
class Test(Program):
    __test__ = False  # not a pytest test class
    cond: BExpr


@dataclass(frozen=True)
class Weight(Program):
    weighting: WExpr


@dataclass(frozen=True)
class Plus(Program):
    items: tuple


@dataclass(frozen=True)
class Seq(Program):
    items: tuple


@dataclass(frozen=True)
class Star(Program):
    body: Program


ONE = Test(BOne())
ZERO = Test(BZero())


def seq(*ps):
    items = tuple(chain.from_iterable(p.items if isinstance(p, Seq) else (p,) for p in ps))
    if not items:
        return ONE
    return items[0] if len(items) == 1 else Seq(items)


def plus(*ps):
    items = tuple(chain.from_iterable(p.items if isinstance(p, Plus) else (p,) for p in ps))
    if not items:
        return ZERO
    return items[0] if len(items) == 1 else Plus(items)


def power(p, n):
    return seq(*[p] * n) if n > 0 else ONE


# -- while-program encodings ---------------------------------------------------

def skip():
    return ONE


def abort():
    return ZERO


def desugar_seq(p, q):
    return seq(p, q)


def desugar_if(b, p, q):
    return plus(seq(Test(b), p), seq(Test(BNot(b)), q))


def desugar_while(b, p):
    return seq(Star(seq(Test(b), p)), Test(BNot(b)))


def bounded_plus(p, n):
    """1 + p + p^2 + ... + p^n, without a star."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return plus(*(power(p, k) for k in range(n + 1)))


def build_ski_programs(n):
    """The ski-rental loop, its denested form, and the star-free form for trip length n."""
    sig = SKI_SIGNATURE
    loop = parse("({neq0} sub1 (@one + @skis end))* {!neq0}", sig)
    denested = parse(
        "({neq0} sub1 @one)* ({neq0} sub1 @skis end ({neq0} sub1 @one)*)* {!neq0}", sig)
    rent = parse("{neq0} sub1 @one", sig)
    finite = seq(bounded_plus(rent, n), parse("(1 + {neq0} sub1 @skis end)", sig),
                 parse("{!neq0}", sig))
    return loop, denested, finite


def ski_hypotheses(n):
    """Left-hand sides of sub1^n {neq0} = 0 and end {neq0} = 0."""
    neq0 = Test(BVar("neq0"))
    return seq(power(Atomic("sub1"), n), neq0), seq(Atomic("end"), neq0)


# -- structural helpers --------------------------------------------------------

def subterms(p):
    yield p
    if isinstance(p, (Plus, Seq)):
        for q in p.items:
            yield from subterms(q)
    elif isinstance(p, Star):
        yield from subterms(p.body)


def has_star(p):
    return any(isinstance(q, Star) for q in subterms(p))


def is_weighting_free(p):
    return not any(isinstance(q, Weight) for q in subterms(p))


def size(t):
    """Number of constructor nodes, counting n-ary nodes as nested binary ones."""
    if isinstance(t, (Plus, Seq)):
        return len(t.items) - 1 + sum(size(q) for q in t.items)
    if isinstance(t, Star):
        return 1 + size(t.body)
    if isinstance(t, Test):
        return size(t.cond)
    if isinstance(t, Weight):
        return size(t.weighting)
    if isinstance(t, (BAnd, BOr, WMul, WAdd)):
        return 1 + size(t.left) + size(t.right)
    if isinstance(t, BNot):
        return 1 + size(t.arg)
    return 1


# -- printer --------------------------------------------------------------------

def pretty_bool(b):
    if isinstance(b, BVar):
        return b.name
    if isinstance(b, BOne):
        return "1"
    if isinstance(b, BZero):
        return "0"
    if isinstance(b, BNot):
        inner = pretty_bool(b.arg)
        return "!" + (f"({inner})" if isinstance(b.arg, (BAnd, BOr)) else inner)
    if isinstance(b, BAnd):
        left, right = pretty_bool(b.left), pretty_bool(b.right)
        if isinstance(b.left, BOr):
            left = f"({left})"
        if isinstance(b.right, (BOr, BAnd)):
            right = f"({right})"
        return f"{left} & {right}"
    if isinstance(b, BOr):
        right = pretty_bool(b.right)
        if isinstance(b.right, BOr):
            right = f"({right})"
        return f"{pretty_bool(b.left)} | {right}"
    raise TypeError(f"not a Boolean expression: {b!r}")


def pretty_weighting(f):
    if isinstance(f, WVar):
        return f.name
    if isinstance(f, WOne):
        return "1"
    if isinstance(f, WZero):
        return "0"
    if isinstance(f, WMul):
        left, right = pretty_weighting(f.left), pretty_weighting(f.right)
        if isinstance(f.left, WAdd):
            left = f"({left})"
        if isinstance(f.right, (WAdd, WMul)):
            right = f"({right})"
        return f"{left} {right}"
    if isinstance(f, WAdd):
        right = pretty_weighting(f.right)
        if isinstance(f.right, WAdd):
            right = f"({right})"
        return f"{pretty_weighting(f.left)} + {right}"
    raise TypeError(f"not a weighting: {f!r}")


def pretty(p):
    if isinstance(p, Atomic):
        return p.name
    if isinstance(p, Test):
        if isinstance(p.cond, BOne):
            return "1"
        if isinstance(p.cond, BZero):
            return "0"
        return "{" + pretty_bool(p.cond) + "}"
    if isinstance(p, Weight):
        if isinstance(p.weighting, WVar):
            return "@" + p.weighting.name
        return "@(" + pretty_weighting(p.weighting) + ")"
    if isinstance(p, Plus):
        return " + ".join(f"({pretty(q)})" if isinstance(q, Plus) else pretty(q) for q in p.items)
    if isinstance(p, Seq):
        return " ".join(f"({pretty(q)})" if isinstance(q, (Plus, Seq)) else pretty(q)
                        for q in p.items)
    if isinstance(p, Star):
        inner = pretty(p.body)
        return (f"({inner})" if isinstance(p.body, (Plus, Seq)) else inner) + "*"
    raise TypeError(f"not a program: {p!r}")


# -- parser --------------------------------------------------------------------

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)|([0-9]+)|(.)", re.S)
_SPACE = re.compile(r"\s*")
_ALIASES = {"¬": "!", "·": ";", "∧": "&", "∨": "|"}
_PRIMARY_START = {"@", "{", "(", "!"}


def _tokenize(src):
    tokens = []
    pos = 0
    while True:
        pos = _SPACE.match(src, pos).end()
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        kind = "id" if m.group(1) else "num" if m.group(2) else "sym"
        text = m.group(m.lastindex)
        if kind == "sym":
            text = _ALIASES.get(text, text)
            if text not in "@{}()+;*!&|=":
                raise ParseError(f"unexpected character {text!r}", m.start(m.lastindex))
        if kind == "num" and text not in ("0", "1"):
            raise ParseError(f"numeric literal {text!r}; only 0 and 1 are constants", m.start(2))
        tokens.append((kind, text, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("eof", "", len(src)))
    return tokens


class _Parser:

    def __init__(self, src, sig):
        self.sig = sig
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def at(self, text):
        kind, t, _ = self.tok
        return kind != "eof" and t == text

    def advance(self):
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text):
        kind, t, pos = self.tok
        if kind == "eof" or t != text:
            found = "end of input" if kind == "eof" else repr(t)
            raise ParseError(f"expected {text!r}, found {found}", pos)
        self.advance()

    def resolve(self, name, pos, want):
        sort = self.sig.sort_of(name)
        if sort is None:
            raise UndeclaredIdentifier(f"undeclared identifier {name!r}", pos)
        if want is not None and sort != want:
            raise SortError(f"{name!r} is a {sort} variable, expected a {want} variable", pos)
        return sort

    # programs
    def program(self):
        items = [self.seq()]
        while self.at("+"):
            self.advance()
            items.append(self.seq())
        return plus(*items)

    def seq(self):
        items = [self.postfix()]
        while True:
            kind, t, _ = self.tok
            if t == ";" and kind == "sym":
                self.advance()
                items.append(self.postfix())
            elif kind in ("id", "num") or (kind == "sym" and t in _PRIMARY_START):
                items.append(self.postfix())
            else:
                return seq(*items)

    def postfix(self):
        p = self.primary()
        while self.at("*"):
            self.advance()
            p = Star(p)
        return p

    def primary(self):
        kind, t, pos = self.advance()
        if kind == "id":
            sort = self.resolve(t, pos, None)
            if sort == "program":
                return Atomic(t)
            if sort == "bool":
                return Test(BVar(t))
            raise SortError(f"weighting variable {t!r} must be written @{t}", pos)
        if kind == "num":
            return ONE if t == "1" else ZERO
        if t == "@":
            return Weight(self.weight_after_sigil())
        if t == "{":
            b = self.bor()
            self.expect("}")
            return Test(b)
        if t == "(":
            p = self.program()
            self.expect(")")
            return p
        if t == "!":
            raise SortError("negation applies only to Boolean expressions inside {...}", pos)
        found = "end of input" if kind == "eof" else repr(t)
        raise ParseError(f"expected a program, found {found}", pos)

    # weightings
    def weight_after_sigil(self):
        kind, t, pos = self.advance()
        if kind == "id":
            self.resolve(t, pos, "weight")
            return WVar(t)
        if t == "(":
            f = self.wsum()
            self.expect(")")
            return f
        raise ParseError("expected a weighting variable or '(' after '@'", pos)

    def wsum(self):
        f = self.wprod()
        while self.at("+"):
            self.advance()
            f = WAdd(f, self.wprod())
        return f

    def wprod(self):
        f = self.watom()
        while True:
            kind, t, _ = self.tok
            if kind == "sym" and t == ";":
                self.advance()
                f = WMul(f, self.watom())
            elif kind in ("id", "num") or (kind == "sym" and t in ("@", "(", "!")):
                f = WMul(f, self.watom())
            else:
                if kind == "sym" and t == "*":
                    raise SortError("weightings have no star", self.tok[2])
                return f

    def watom(self):
        kind, t, pos = self.advance()
        if kind == "id":
            self.resolve(t, pos, "weight")
            return WVar(t)
        if kind == "num":
            return WOne() if t == "1" else WZero()
        if t == "@":
            kind, t, pos = self.advance()
            if kind != "id":
                raise ParseError("expected a weighting variable after '@'", pos)
            self.resolve(t, pos, "weight")
            return WVar(t)
        if t == "(":
            f = self.wsum()
            self.expect(")")
            return f
        if t == "!":
            raise SortError("weightings have no negation", pos)
        found = "end of input" if kind == "eof" else repr(t)
        raise ParseError(f"expected a weighting, found {found}", pos)

    # Boolean expressions
    def bor(self):
        b = self.band()
        while self.at("|"):
            self.advance()
            b = BOr(b, self.band())
        return b

    def band(self):
        b = self.bnot()
        while self.at("&"):
            self.advance()
            b = BAnd(b, self.bnot())
        return b

    def bnot(self):
        kind, t, pos = self.advance()
        if t == "!" and kind == "sym":
            return BNot(self.bnot())
        if kind == "id":
            self.resolve(t, pos, "bool")
            return BVar(t)
        if kind == "num":
            return BOne() if t == "1" else BZero()
        if t == "(":
            b = self.bor()
            self.expect(")")
            return b
        if t == "@":
            raise SortError("weightings cannot occur inside a test", pos)
        found = "end of input" if kind == "eof" else repr(t)
        raise ParseError(f"expected a Boolean expression, found {found}", pos)

    def finish(self, result):
        kind, t, pos = self.tok
        if kind != "eof":
            raise ParseError(f"unexpected {t!r}", pos)
        return result


def parse(source, sig):
    p = _Parser(source, sig)
    return p.finish(p.program())


def parse_bool(source, sig):
    p = _Parser(source, sig)
    return p.finish(p.bor())


def parse_weighting(source, sig):
    p = _Parser(source, sig)
    return p.finish(p.wsum())


# -- program files ---------------------------------------------------------------

_HEADER_KEYS = {"program": "programs", "bool": "booleans", "weight": "weightings"}


def split_header(text):
    """Split a file into (signature, body, body_offset). Raises if no '---' line."""
    decl = {v: [] for v in _HEADER_KEYS.values()}
    offset = 0
    for line in text.splitlines(keepends=True):
        start = offset
        offset += len(line)
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped == "---":
            try:
                sig = Signature(**decl)
            except ValueError as e:
                raise ParseError(str(e), start) from None
            return sig, text[offset:], offset
        key, *names = stripped.split()
        if key not in _HEADER_KEYS:
            raise ParseError(f"unknown declaration {key!r}; expected program, bool or weight", start)
        decl[_HEADER_KEYS[key]].extend(names)
    raise ParseError("missing '---' line after the signature header", len(text))


def _shift(err, offset):
    err.pos = None if err.pos is None else err.pos + offset
    err.args = (f"{err.message} (at offset {err.pos})",) if err.pos is not None else err.args
    return err


def parse_program_text(text, sig=None):
    """Parse a program file; with `sig` given, a header is optional."""
    if sig is None or any(line.strip() == "---" for line in text.splitlines()):
        sig, body, offset = split_header(text)
    else:
        body, offset = text, 0
    body = _strip_comments(body)
    if not body.strip():
        raise ParseError("empty program section", offset)
    try:
        return sig, parse(body, sig)
    except ParseError as e:
        raise _shift(e, offset)


def _strip_comments(body):
    # keep offsets stable: blank out comment text rather than deleting it
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), body)


def render_signature(sig):
    lines = []
    for key, field in _HEADER_KEYS.items():
        names = getattr(sig, field)
        if names:
            lines.append(f"{key:<7} {' '.join(names)}")
    return "\n".join(lines)


def format_program_file(sig, p):
    return f"{render_signature(sig)}\n---\n{pretty(p)}\n"
