"""Partial semigroups with identity and the function algebras S^P over them."""

import random
from dataclasses import dataclass
from itertools import product as cartesian

from .errors import KawtError, SortError, StarDivergence
from .guarded import universe
from .report import Report


@dataclass(frozen=True)
class PartialSemigroup:
    """Finite carrier, partial product given as a dict on the defined pairs, identity set."""

    name: str
    carrier: tuple
    product: dict
    identities: frozenset

    def __hash__(self):
        return id(self)

    def defined(self, x, y):
        return (x, y) in self.product

    def mul(self, x, y):
        return self.product[(x, y)]


def check_psg_axioms(P):
    """Exhaustively check the six partial-semigroup conditions and their consequences."""
    rep = Report("psg", {"instance": P.name, "size": len(P.carrier)})
    G, I, D, prod = P.carrier, P.identities, P.defined, P.product
    members = set(G)
    rep.check("nonempty carrier", bool(G))
    rep.check("identities in carrier", I <= members, sorted(map(repr, I - members)))
    for (x, y), z in prod.items():
        rep.check("product stays in carrier", z in members, (x, y, z))
    for x, y, z in cartesian(G, repeat=3):
        lhs = D(x, y) and prod[(x, y)] in members and D(prod[(x, y)], z)
        rhs = D(y, z) and prod[(y, z)] in members and D(x, prod[(y, z)])
        rep.check("definedness symmetric", lhs == rhs, (x, y, z))
        if lhs and rhs:
            rep.check("associative", prod[(prod[(x, y)], z)] == prod[(x, prod[(y, z)])], (x, y, z))
    for x in G:
        rep.check("right identity exists", any(D(x, e) for e in I), x)
        rep.check("left identity exists", any(D(e, x) for e in I), x)
        for e in I:
            if D(x, e):
                rep.check("right identity law", prod[(x, e)] == x, (x, e))
            if D(e, x):
                rep.check("left identity law", prod[(e, x)] == x, (e, x))
    # consequences: identities are idempotent and closed under defined products
    for x in I:
        rep.check("identity idempotent", D(x, x) and prod[(x, x)] == x, x)
        for y in I:
            if D(x, y):
                rep.check("identities closed", prod[(x, y)] in I, (x, y))
    return rep


# -- instances ----------------------------------------------------------------------

def build_cart(n):
    """Pairs over an n-element set; (x, y)(y, z) = (x, z)."""
    X = range(n)
    carrier = tuple((x, y) for x in X for y in X)
    prod = {((x, y), (y2, z)): (x, z) for (x, y) in carrier for (y2, z) in carrier if y == y2}
    return PartialSemigroup(f"cart{n}", carrier, prod, frozenset((x, x) for x in X))


def build_gu(alphabet, bound):
    """Guarded strings with at most `bound` programs; D keeps coalescings inside the bound."""
    carrier = tuple(universe(alphabet, bound))
    prod = {}
    for s in carrier:
        for t in carrier:
            if s[-1] == t[0] and (len(s) + len(t) - 2) // 2 <= bound:
                prod[(s, t)] = s + t[1:]
    ids = frozenset((a,) for a in alphabet.atoms)
    return PartialSemigroup(f"gu{len(alphabet.booleans)}x{len(alphabet.programs)}/{bound}",
                            carrier, prod, ids)


def build_str(symbols, bound, restrict=True):
    """Strings of length <= bound under concatenation.

    With restrict=False, D is the universal relation and products may leave
    the carrier, which the axiom checker reports.
    """
    carrier = tuple("".join(w) for k in range(bound + 1) for w in cartesian(symbols, repeat=k))
    prod = {(s, t): s + t for s in carrier for t in carrier
            if not restrict or len(s) + len(t) <= bound}
    tag = "" if restrict else "-unrestricted"
    return PartialSemigroup(f"str{len(symbols)}/{bound}{tag}", carrier, prod, frozenset({""}))


def build_instances(cart_size=3, alphabet=None, gu_bound=2, str_symbols="a", str_bound=3):
    from .guarded import Alphabet
    alphabet = alphabet or Alphabet(("b",), ("p",))
    return build_cart(cart_size), build_gu(alphabet, gu_bound), build_str(str_symbols, str_bound)


def build_weak():
    """Has an identity and partial products but lacks definedness symmetry:
    (a b) c is defined while b c is not."""
    carrier = ("e", "a", "b", "c", "ab", "abc")
    prod = {}
    for x in carrier:
        prod[("e", x)] = x
        prod[(x, "e")] = x
    prod[("a", "b")] = "ab"
    prod[("ab", "c")] = "abc"
    return PartialSemigroup("weak", carrier, prod, frozenset({"e"}))


# -- the function algebra S^P ----------------------------------------------------------

class FunctionAlgebra:
    """Functions G -> S stored as tuples in carrier order."""

    def __init__(self, P, S):
        if not (S.idempotent and S.complete):
            raise ValueError(f"S^P needs a complete idempotent semiring, not {S.name}")
        self.P, self.S = P, S
        self.n = len(P.carrier)
        self.pos = {x: i for i, x in enumerate(P.carrier)}
        self.triples = [(self.pos[y], self.pos[z], self.pos[x])
                        for (y, z), x in P.product.items() if x in self.pos]
        self.id_pos = [self.pos[x] for x in P.carrier if x in P.identities]
        self.i0 = self.id_pos[0]

    def element(self, mapping):
        return tuple(mapping.get(x, self.S.zero) for x in self.P.carrier)

    def as_dict(self, f):
        return dict(zip(self.P.carrier, f))

    def one(self):
        S = self.S
        ids = set(self.id_pos)
        return tuple(S.one if i in ids else S.zero for i in range(self.n))

    def zero(self):
        return (self.S.zero,) * self.n

    def add(self, f, g):
        return tuple(map(self.S.plus, f, g))

    def mul(self, f, g):
        S = self.S
        zero, plus, times = S.zero, S.plus, S.times
        out = [zero] * self.n
        for iy, iz, ix in self.triples:
            a = f[iy]
            if a == zero:
                continue
            b = g[iz]
            if b == zero:
                continue
            out[ix] = plus(out[ix], times(a, b))
        return tuple(out)

    def power(self, f, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, f)
        return out

    def star_with_index(self, f, cap=None):
        cap = self.n + 1 if cap is None else cap
        partial = term = self.one()
        for k in range(1, cap + 1):
            term = self.mul(term, f)
            nxt = self.add(partial, term)
            if nxt == partial:
                return partial, k
            partial = nxt
        raise StarDivergence(f"star partial sums did not stabilize within {cap} iterations")

    def star(self, f, cap=None):
        return self.star_with_index(f, cap)[0]

    def le(self, f, g):
        return self.add(f, g) == g

    def is_test(self, f):
        S, ids = self.S, set(self.id_pos)
        return all(v == S.zero or (v == S.one and i in ids) for i, v in enumerate(f))

    def is_weight(self, f):
        S, ids = self.S, set(self.id_pos)
        c = f[self.i0]
        return all(v == (c if i in ids else S.zero) for i, v in enumerate(f))

    def neg(self, f):
        if not self.is_test(f):
            raise SortError("negation is defined only on tests")
        S, ids = self.S, set(self.id_pos)
        return tuple(S.one if i in ids and v != S.one else S.zero for i, v in enumerate(f))

    def phi(self, f):
        return f[self.i0]

    def weight_of(self, value):
        S, ids = self.S, set(self.id_pos)
        return tuple(value if i in ids else S.zero for i in range(self.n))

    def random(self, rng, p_zero=0.5):
        S = self.S
        return tuple(S.zero if rng.random() < p_zero else S.sample(rng) for _ in range(self.n))

    def random_test(self, rng):
        S, ids = self.S, set(self.id_pos)
        return tuple(S.one if i in ids and rng.random() < 0.5 else S.zero for i in range(self.n))


def sp_ops(P, S):
    return FunctionAlgebra(P, S)


def check_theorem1(P, S, samples=300, seed=0):
    """Property-check that S^P is a *-continuous Kleene algebra with weights and tests."""
    rng = random.Random(seed)
    A = FunctionAlgebra(P, S)
    rep = Report("thm1", {"instance": P.name, "semiring": S.name, "samples": samples, "seed": seed})
    rep.merge(check_psg_axioms(P), "psg: ")
    one, zero, add, mul = A.one(), A.zero(), A.add, A.mul
    rep.check("one is a test and a weight", A.is_test(one) and A.is_weight(one))
    rep.check("zero is a test and a weight", A.is_test(zero) and A.is_weight(zero))

    for _ in range(samples):
        x, y, z = A.random(rng), A.random(rng), A.random(rng)
        w = tuple(A.as_dict(f) for f in (x, y, z))
        rep.check("add associative", add(add(x, y), z) == add(x, add(y, z)), w)
        rep.check("add commutative", add(x, y) == add(y, x), w)
        rep.check("add unit", add(x, zero) == x, w)
        rep.check("add idempotent", add(x, x) == x, w)
        rep.check("mul associative", mul(mul(x, y), z) == mul(x, mul(y, z)), w)
        rep.check("mul unit", mul(x, one) == x == mul(one, x), w)
        rep.check("left distributive", mul(x, add(y, z)) == add(mul(x, y), mul(x, z)), w)
        rep.check("right distributive", mul(add(x, y), z) == add(mul(x, z), mul(y, z)), w)
        rep.check("zero annihilates", mul(zero, x) == zero == mul(x, zero), w)

        try:
            xs = A.star(x)
            ys, k = A.star_with_index(y)
            t = A.random(rng)
            rep.check("star unfold left", A.le(add(one, mul(x, xs)), xs), w)
            rep.check("star unfold right", A.le(add(one, mul(xs, x)), xs), w)
            for zz in (z, mul(xs, add(y, t))):
                if A.le(add(y, mul(x, zz)), zz):
                    rep.check("star induction left", A.le(mul(xs, y), zz), w)
            for zz in (z, mul(add(y, t), xs)):
                if A.le(add(y, mul(zz, x)), zz):
                    rep.check("star induction right", A.le(mul(y, xs), zz), w)
            total = zero
            for j in range(k + 1):
                total = add(total, mul(mul(x, A.power(y, j)), z))
            rep.check("star continuity", mul(mul(x, ys), z) == total, w)
        except KawtError as e:
            rep.check("star defined", False, (w, f"{type(e).__name__}: {e}"))

        t, u, v = A.random_test(rng), A.random_test(rng), A.random_test(rng)
        tw = tuple(A.as_dict(f) for f in (t, u, v))
        nt, nu = A.neg(t), A.neg(u)
        rep.check("tests closed", A.is_test(mul(t, u)) and A.is_test(add(t, u)) and A.is_test(nt), tw)
        rep.check("complement", add(t, nt) == one and mul(t, nt) == zero, tw)
        rep.check("double negation", A.neg(nt) == t, tw)
        rep.check("de Morgan", A.neg(add(t, u)) == mul(nt, nu) and A.neg(mul(t, u)) == add(nt, nu), tw)
        rep.check("test mul commutative", mul(t, u) == mul(u, t), tw)
        rep.check("test mul idempotent", mul(t, t) == t, tw)
        rep.check("test distributive", add(t, mul(u, v)) == mul(add(t, u), add(t, v)), tw)

        a, b = S.sample(rng), S.sample(rng)
        wa, wb = A.weight_of(a), A.weight_of(b)
        prod, total = mul(wa, wb), add(wa, wb)
        rep.check("weights closed", A.is_weight(prod) and A.is_weight(total), (a, b))
        rep.check("weight product pointwise on identities",
                  all(prod[i] == S.times(wa[i], wb[i]) for i in A.id_pos), (a, b))
        rep.check("weight product zero off identities",
                  all(prod[i] == S.zero for i in range(A.n) if i not in A.id_pos), (a, b))
        rep.check("phi homomorphism", A.phi(total) == S.plus(a, b) and A.phi(prod) == S.times(a, b), (a, b))
        rep.check("phi surjective", A.is_weight(wa) and A.phi(wa) == a, (a,))
        rep.check("phi injective", (A.phi(wa) == A.phi(wb)) == (wa == wb), (a, b))
    rep.check("phi units", A.phi(one) == S.one and A.phi(zero) == S.zero)
    return rep
