"""Complete idempotent semirings: Boolean, tropical over N + {inf}, Lukasiewicz."""

import random
from fractions import Fraction
from functools import reduce

from .errors import ParseError, SortError
from .report import Report


class _Infinity:
    """The extra element of the extended naturals. Never equal to any int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class Semiring:
    """A semiring given by its raw operations.

    `plus` and `times` are unchecked and meant for inner loops; `add` and
    `mul` verify that both operands belong to the carrier first.
    """

    def __init__(self, name, zero, one, plus, times, contains, sample,
                 idempotent=True, complete=True, render=repr, parse=None):
        self.name = name
        self.zero = zero
        self.one = one
        self.plus = plus
        self.times = times
        self.contains = contains
        self.sample = sample
        self.idempotent = idempotent
        self.complete = complete
        self._render = render
        self._parse = parse

    def __repr__(self):
        return f"Semiring({self.name!r})"

    def _check(self, *xs):
        for x in xs:
            if not self.contains(x):
                raise SortError(f"{x!r} is not an element of the {self.name} semiring")

    def add(self, x, y):
        self._check(x, y)
        return self.plus(x, y)

    def mul(self, x, y):
        self._check(x, y)
        return self.times(x, y)

    def le(self, x, y):
        """Natural order; for idempotent semirings x <= y iff x + y = y."""
        if not self.idempotent:
            raise ValueError(f"natural order via + requires an idempotent semiring, not {self.name}")
        self._check(x, y)
        return self.plus(x, y) == y

    def sum(self, xs):
        return reduce(self.plus, xs, self.zero)

    def product(self, xs):
        return reduce(self.times, xs, self.one)

    def power(self, x, n):
        return self.product([x] * n)

    def render(self, x):
        return self._render(x)

    def parse(self, text):
        if self._parse is None:
            raise ParseError(f"no literal syntax for the {self.name} semiring")
        value = self._parse(text.strip())
        if not self.contains(value):
            raise ParseError(f"{text!r} is not an element of the {self.name} semiring")
        return value


# -- tropical (N + {inf}, min, +, 0, inf) ----------------------------------

def _is_nat(x):
    return type(x) is int and x >= 0


def _trop_plus(x, y):
    if x is INF:
        return y
    if y is INF:
        return x
    return x if x <= y else y


def _trop_times(x, y):
    if x is INF or y is INF:
        return INF
    return x + y


def _trop_sample(rng):
    return INF if rng.random() < 0.1 else rng.randint(0, 100)


def _trop_parse(text):
    if text in ("inf", "∞"):
        return INF
    if not text.isdigit():
        raise ParseError(f"tropical literal must be a natural number or 'inf', got {text!r}")
    return int(text)


def tropical_min(xs):
    """Minimum over N + {inf}; inf for an empty iterable."""
    return reduce(_trop_plus, xs, INF)


TROPICAL = Semiring(
    "tropical", zero=INF, one=0, plus=_trop_plus, times=_trop_times,
    contains=lambda x: x is INF or _is_nat(x), sample=_trop_sample,
    render=lambda x: "inf" if x is INF else str(x), parse=_trop_parse,
)


# -- Lukasiewicz ([0,1] ∩ Q, max, x ⊗ y = max(0, x + y - 1), 1, 0) --------

_F0, _F1 = Fraction(0), Fraction(1)


def _luk_times(x, y):
    s = x + y - 1
    return s if s > 0 else _F0


def _luk_parse(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"Lukasiewicz literal must be a rational p/q, got {text!r}") from None


LUKASIEWICZ = Semiring(
    "lukasiewicz", zero=_F0, one=_F1, plus=max, times=_luk_times,
    contains=lambda x: type(x) is Fraction and 0 <= x <= 1,
    sample=lambda rng: Fraction(rng.randint(0, 32), 32),
    render=str, parse=_luk_parse,
)


# -- Boolean ---------------------------------------------------------------

def _bool_parse(text):
    if text not in ("0", "1"):
        raise ParseError(f"Boolean literal must be 0 or 1, got {text!r}")
    return text == "1"


BOOLEAN = Semiring(
    "bool", zero=False, one=True, plus=lambda x, y: x or y, times=lambda x, y: x and y,
    contains=lambda x: type(x) is bool, sample=lambda rng: rng.random() < 0.5,
    render=lambda x: "1" if x else "0", parse=_bool_parse,
)


# Deliberately broken: multiplication is truncated subtraction on N + {inf}.
# Used only to show that the axiom suites detect violations.
def _sat_sub(x, y):
    if x is INF:
        return 0 if y is INF else INF
    if y is INF:
        return 0
    return max(0, x - y)


MUTANT = Semiring(
    "mutant", zero=INF, one=0, plus=_trop_plus, times=_sat_sub,
    contains=TROPICAL.contains, sample=_trop_sample, render=TROPICAL.render,
    parse=_trop_parse,
)

SEMIRINGS = {s.name: s for s in (BOOLEAN, TROPICAL, LUKASIEWICZ)}


def get_semiring(name):
    if name == "mutant":
        return MUTANT
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise ValueError(f"unknown semiring {name!r}; choose from {', '.join(SEMIRINGS)}") from None


def check_semiring_axioms(S, samples=1000, seed=0, max_family=5):
    """Check the semiring laws, idempotency and complete distributivity on random values.

    Complete distributivity is checked on finite families of up to
    `max_family` elements, including the empty family.
    """
    rng = random.Random(seed)
    rep = Report("semiring", {"semiring": S.name, "samples": samples, "seed": seed})
    plus, times, zero, one = S.plus, S.times, S.zero, S.one
    for _ in range(samples):
        x, y, z = S.sample(rng), S.sample(rng), S.sample(rng)
        w = (x, y, z)
        rep.check("add associative", plus(plus(x, y), z) == plus(x, plus(y, z)), w)
        rep.check("add commutative", plus(x, y) == plus(y, x), w)
        rep.check("add unit", plus(x, zero) == x == plus(zero, x), w)
        rep.check("mul associative", times(times(x, y), z) == times(x, times(y, z)), w)
        rep.check("mul unit", times(x, one) == x == times(one, x), w)
        rep.check("left distributive", times(x, plus(y, z)) == plus(times(x, y), times(x, z)), w)
        rep.check("right distributive", times(plus(x, y), z) == plus(times(x, z), times(y, z)), w)
        rep.check("zero annihilates", times(zero, x) == zero == times(x, zero), w)
        if S.idempotent:
            rep.check("add idempotent", plus(x, x) == x, w)
        if S.complete:
            fam = [S.sample(rng) for _ in range(rng.randint(0, max_family))]
            rep.check("complete left distributive",
                      S.sum(times(x, xi) for xi in fam) == times(x, S.sum(fam)), (x, fam))
            rep.check("complete right distributive",
                      S.sum(times(xi, x) for xi in fam) == times(S.sum(fam), x), (x, fam))
            rep.check("big sum order independent",
                      S.sum(fam) == S.sum(rng.sample(fam, len(fam))), fam)
    return rep
