"""Weighted guarded strings and the algebra of unambiguous weighted languages.

A guarded string A0 p1 A1 ... pk Ak is a tuple whose even positions hold
atoms and odd positions hold program symbols. An atom is a tuple of bools,
one per Boolean variable in declaration order. A language maps each guarded
string to its (single) natural weight; strings that are absent have weight
infinity.
"""

import random
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import product as cartesian

from .errors import SortError, UndeclaredIdentifier
from .report import Report
from .semiring import INF
from .syntax import (Atomic, BAnd, BNot, BOne, BOr, BVar, BZero, Plus, Seq, Star, Test, WAdd,
                     Weight, WMul, WOne, WVar, WZero)


@dataclass(frozen=True)
class Alphabet:
    """Ordered Boolean variables and program symbols over which strings are built."""

    booleans: tuple
    programs: tuple

    @property
    def atoms(self):
        return tuple(cartesian((True, False), repeat=len(self.booleans)))

    @classmethod
    def of(cls, sig):
        return cls(tuple(sig.booleans), tuple(sig.programs))

    def atom(self, **signs):
        return tuple(signs[b] for b in self.booleans)


def n_programs(s):
    return (len(s) - 1) // 2


def render_atom(atom, alphabet):
    return "{" + " ".join(b if sign else "!" + b for b, sign in zip(alphabet.booleans, atom)) + "}"


def render_string(s, alphabet, weight=None):
    parts = [render_atom(x, alphabet) if i % 2 == 0 else x for i, x in enumerate(s)]
    text = " ".join(parts)
    return text if weight is None else f"{text} ({weight})"


def universe(alphabet, bound):
    """All guarded strings with at most `bound` program symbols."""
    layer = [(a,) for a in alphabet.atoms]
    out = list(layer)
    for _ in range(bound):
        layer = [s + (p, a) for s in layer for p in alphabet.programs for a in alphabet.atoms]
        out.extend(layer)
    return out


class Language(Mapping):
    """An unambiguous set of weighted guarded strings, as a map string -> weight."""

    __slots__ = ("_w", "_hash")

    def __init__(self, weights=()):
        self._w = dict(weights)
        self._hash = None

    def __getitem__(self, s):
        return self._w[s]

    def __iter__(self):
        return iter(self._w)

    def __len__(self):
        return len(self._w)

    def __eq__(self, other):
        if isinstance(other, Language):
            return self._w == other._w
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._w.items()))
        return self._hash

    def __repr__(self):
        return f"Language({self._w!r})"

    def weight(self, s):
        return self._w.get(s, INF)

    def is_crisp(self):
        return all(w == 0 for w in self._w.values())

    def is_uniform(self):
        return len(set(self._w.values())) <= 1

    def is_atom_set(self):
        return all(len(s) == 1 for s in self._w)

    def is_universal(self, alphabet):
        return all((a,) in self._w for a in alphabet.atoms)

    def is_test(self):
        return self.is_atom_set() and self.is_crisp()

    def is_weight(self, alphabet):
        # the empty set is the zero weight
        return self.is_atom_set() and self.is_uniform() and (not self or self.is_universal(alphabet))

    def truncate(self, bound):
        return Language({s: w for s, w in self._w.items() if n_programs(s) <= bound})

    def sorted_items(self, alphabet):
        return sorted(self._w.items(), key=lambda sw: (n_programs(sw[0]), render_string(sw[0], alphabet)))

    def render(self, alphabet):
        return "\n".join(render_string(s, alphabet, w) for s, w in self.sorted_items(alphabet))


EMPTY = Language()


def one(alphabet):
    return Language({(a,): 0 for a in alphabet.atoms})


def uniform_atoms(alphabet, weight):
    if weight is INF:
        return EMPTY
    return Language({(a,): weight for a in alphabet.atoms})


def crisp(strings):
    return Language({s: 0 for s in strings})


def coalesce(x, y):
    """Coalesced product of weighted strings (s, n) and (t, m); None when undefined."""
    (s, n), (t, m) = x, y
    if s[-1] != t[0]:
        return None
    return s + t[1:], n + m


def unambiguous_union(X, Y):
    out = dict(X)
    for s, w in Y.items():
        if s not in out or w < out[s]:
            out[s] = w
    return Language(out)


def _index_by_first(Y):
    idx = {}
    for t, m in Y.items():
        idx.setdefault(t[0], []).append((t, m))
    return idx


def gt_product(X, Y, bound=None):
    """All defined coalescings, keeping the least weight per string; longer than `bound` dropped."""
    idx = _index_by_first(Y)
    out = {}
    for s, n in X.items():
        ks = n_programs(s)
        for t, m in idx.get(s[-1], ()):
            if bound is not None and ks + n_programs(t) > bound:
                continue
            u, w = s + t[1:], n + m
            if u not in out or w < out[u]:
                out[u] = w
    return Language(out)


def gt_star(X, alphabet, bound=None):
    """Union of all powers of X, restricted to strings with at most `bound` programs."""
    if bound is None and not X.is_atom_set():
        raise ValueError("star of a language with program symbols needs a length bound")
    acc = dict(one(alphabet))
    frontier = Language(acc)
    while frontier:
        step = gt_product(frontier, X, bound)
        improved = {s: w for s, w in step.items() if s not in acc or w < acc[s]}
        acc.update(improved)
        frontier = Language(improved)
    return Language(acc)


def complement(X, alphabet):
    if not X.is_test():
        raise SortError("complement is defined only on crisp sets of atoms")
    return crisp((a,) for a in alphabet.atoms if (a,) not in X)


def theta(G, Y):
    """Least weight of a string of G starting in an atom of Y, per final atom."""
    Y = set(Y)
    out = {}
    for s, w in G.items():
        if s[0] in Y:
            key = (s[-1],)
            if key not in out or w < out[key]:
                out[key] = w
    return Language(out)


def atoms_satisfying(b, alphabet):
    """Atoms in which the Boolean expression b evaluates to true."""
    def holds(expr, env):
        if isinstance(expr, BVar):
            if expr.name not in env:
                raise UndeclaredIdentifier(f"unknown Boolean variable {expr.name!r}")
            return env[expr.name]
        if isinstance(expr, BOne):
            return True
        if isinstance(expr, BZero):
            return False
        if isinstance(expr, BAnd):
            return holds(expr.left, env) and holds(expr.right, env)
        if isinstance(expr, BOr):
            return holds(expr.left, env) or holds(expr.right, env)
        if isinstance(expr, BNot):
            return not holds(expr.arg, env)
        raise TypeError(f"not a Boolean expression: {expr!r}")
    return [a for a in alphabet.atoms if holds(b, dict(zip(alphabet.booleans, a)))]


# -- valuations ------------------------------------------------------------------

class Valuation:
    """Values of program, Boolean and weighting variables in GT."""

    def __init__(self, alphabet, values):
        self.alphabet = alphabet
        self.values = dict(values)
        for name in alphabet.booleans:
            if name in self.values and not self.values[name].is_test():
                raise SortError(f"Boolean variable {name!r} must denote a crisp set of atoms")

    def __getitem__(self, name):
        try:
            return self.values[name]
        except KeyError:
            raise UndeclaredIdentifier(f"variable {name!r} has no value in the valuation") from None


def canonical_valuation(sig, weights):
    """Canonical valuation; weighting f denotes the uniform universal atom set at weights[f]."""
    alphabet = Alphabet.of(sig)
    missing = set(sig.weightings) - set(weights)
    if missing:
        raise ValueError(f"no weight given for {', '.join(sorted(missing))}")
    atoms = alphabet.atoms
    values = {}
    for p in sig.programs:
        values[p] = crisp((a, p, b) for a in atoms for b in atoms)
    for i, b in enumerate(sig.booleans):
        values[b] = crisp((a,) for a in atoms if a[i])
    for f in sig.weightings:
        w = weights[f]
        if not (w is INF or (type(w) is int and w >= 0)):
            raise ValueError(f"weight of {f!r} must be a natural number or INF, got {w!r}")
        values[f] = uniform_atoms(alphabet, w)
    return Valuation(alphabet, values)


def _interp_bool(b, v):
    if isinstance(b, BVar):
        return v[b.name]
    if isinstance(b, BOne):
        return one(v.alphabet)
    if isinstance(b, BZero):
        return EMPTY
    if isinstance(b, BAnd):
        return gt_product(_interp_bool(b.left, v), _interp_bool(b.right, v))
    if isinstance(b, BOr):
        return unambiguous_union(_interp_bool(b.left, v), _interp_bool(b.right, v))
    if isinstance(b, BNot):
        return complement(_interp_bool(b.arg, v), v.alphabet)
    raise TypeError(f"not a Boolean expression: {b!r}")


def _interp_weighting(f, v):
    if isinstance(f, WVar):
        return v[f.name]
    if isinstance(f, WOne):
        return one(v.alphabet)
    if isinstance(f, WZero):
        return EMPTY
    if isinstance(f, WMul):
        return gt_product(_interp_weighting(f.left, v), _interp_weighting(f.right, v))
    if isinstance(f, WAdd):
        return unambiguous_union(_interp_weighting(f.left, v), _interp_weighting(f.right, v))
    raise TypeError(f"not a weighting: {f!r}")


def gt_interpret(p, v, bound=None):
    """Language of p under v, exact on all strings with at most `bound` program symbols.

    `bound=None` computes the untruncated language and is only allowed for
    programs whose stars range over atom sets.
    """
    if isinstance(p, Atomic):
        lang = v[p.name]
        return lang if bound is None else lang.truncate(bound)
    if isinstance(p, Test):
        return _interp_bool(p.cond, v)
    if isinstance(p, Weight):
        return _interp_weighting(p.weighting, v)
    if isinstance(p, Plus):
        result = gt_interpret(p.items[0], v, bound)
        for q in p.items[1:]:
            result = unambiguous_union(result, gt_interpret(q, v, bound))
        return result
    if isinstance(p, Seq):
        result = gt_interpret(p.items[0], v, bound)
        for q in p.items[1:]:
            result = gt_product(result, gt_interpret(q, v, bound), bound)
        return result
    if isinstance(p, Star):
        return gt_star(gt_interpret(p.body, v, bound), v.alphabet, bound)
    raise TypeError(f"not a program: {p!r}")


# -- functions GS -> N + {inf} and the correspondence with GT -------------------------

def _tmin(a, b):
    if a is INF:
        return b
    if b is INF:
        return a
    return a if a <= b else b


def _tadd(a, b):
    return INF if a is INF or b is INF else a + b


class TGFunctions:
    """Operations on weight functions over the guarded strings up to a length bound.

    Products are evaluated per string by enumerating its factorizations
    s = t <> u, independently of the join-based `gt_product`.
    """

    def __init__(self, alphabet, bound):
        self.alphabet = alphabet
        self.bound = bound
        self.strings = universe(alphabet, bound)

    def one(self):
        return {s: 0 if len(s) == 1 else INF for s in self.strings}

    def zero(self):
        return {s: INF for s in self.strings}

    def add(self, f, g):
        return {s: _tmin(f[s], g[s]) for s in self.strings}

    def mul(self, f, g):
        out = {}
        for s in self.strings:
            best = INF
            for i in range(0, len(s), 2):
                best = _tmin(best, _tadd(f[s[:i + 1]], g[s[i:]]))
            out[s] = best
        return out

    def star(self, f):
        acc = term = self.one()
        while True:
            term = self.mul(term, f)
            nxt = self.add(acc, term)
            if nxt == acc:
                return acc
            acc = nxt

    def neg(self, f):
        if not self.is_test(f):
            raise SortError("negation is defined only on tests")
        return {s: (0 if f[s] is INF else INF) if len(s) == 1 else INF for s in self.strings}

    def is_test(self, f):
        return all(w is INF or (w == 0 and len(s) == 1) for s, w in f.items())

    def is_weight(self, f):
        atom_values = {w for s, w in f.items() if len(s) == 1}
        return len(atom_values) == 1 and all(w is INF for s, w in f.items() if len(s) > 1)

    def random(self, rng, p_inf=0.7, max_weight=4):
        return {s: INF if rng.random() < p_inf else rng.randint(0, max_weight) for s in self.strings}

    def random_test(self, rng):
        return {s: 0 if len(s) == 1 and rng.random() < 0.5 else INF for s in self.strings}

    def random_weight(self, rng, max_weight=4):
        c = INF if rng.random() < 0.15 else rng.randint(0, max_weight)
        return {s: c if len(s) == 1 else INF for s in self.strings}


def tau(f):
    return Language({s: w for s, w in f.items() if w is not INF})


def tau_inverse(lang, strings):
    return {s: lang.weight(s) for s in strings}


def check_tau_iso(alphabet, bound=3, samples=200, seed=0):
    """Check that tau commutes with the operations and matches the test/weight subsets."""
    rng = random.Random(seed)
    rep = Report("thm2", {"booleans": len(alphabet.booleans), "programs": len(alphabet.programs),
                          "bound": bound, "samples": samples, "seed": seed})
    T = TGFunctions(alphabet, bound)
    rep.check("tau one", tau(T.one()) == one(alphabet))
    rep.check("tau zero", tau(T.zero()) == EMPTY)

    def shown(f):
        return render_lang(tau(f), alphabet)

    for _ in range(samples):
        f, g = T.random(rng), T.random(rng)
        w = (shown(f), shown(g))
        tf, tg = tau(f), tau(g)
        rep.check("tau bijective", tau_inverse(tf, T.strings) == f, w)
        rep.check("tau mul", tau(T.mul(f, g)) == gt_product(tf, tg, bound), w)
        rep.check("tau add", tau(T.add(f, g)) == unambiguous_union(tf, tg), w)
        rep.check("tau star", tau(T.star(f)) == gt_star(tf, alphabet, bound), w)

        t = T.random_test(rng)
        rep.check("tau neg", tau(T.neg(t)) == complement(tau(t), alphabet), shown(t))

        # membership in B and S must match exactly, including near misses
        for h in (f, t, T.random_weight(rng), _perturb(rng, t), _perturb(rng, T.random_weight(rng))):
            rep.check("tests correspond", T.is_test(h) == tau(h).is_test(), shown(h))
            rep.check("weights correspond", T.is_weight(h) == tau(h).is_weight(alphabet), shown(h))
    return rep


def _perturb(rng, f):
    g = dict(f)
    s = rng.choice(list(g))
    g[s] = rng.choice([INF, 0, 1, 2])
    return g


def render_lang(lang, alphabet):
    return "{" + ", ".join(render_string(s, alphabet, w) for s, w in lang.sorted_items(alphabet)) + "}"
