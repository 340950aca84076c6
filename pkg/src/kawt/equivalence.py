"""Bounded and hypothesis-conditioned program equivalence; the ski-rental case study."""

import random
from dataclasses import dataclass, field

from .errors import HypothesisError, ModelError
from .guarded import (Alphabet, Language, canonical_valuation, gt_interpret, n_programs, one,
                      render_string, theta, unambiguous_union, uniform_atoms)
from .relational import TransitionSystem, interpret, rel_zero
from .semiring import INF, TROPICAL
from .syntax import (SKI_SIGNATURE, ZERO, Program, build_ski_programs, is_weighting_free, parse,
                     pretty, ski_hypotheses)


@dataclass(frozen=True)
class Hypothesis:
    """An equation lhs = 0 with a weighting-free left-hand side."""

    lhs: Program

    def __post_init__(self):
        if not is_weighting_free(self.lhs):
            raise HypothesisError(f"hypothesis {pretty(self.lhs)} = 0 mentions a weighting")

    def __str__(self):
        return f"{pretty(self.lhs)} = 0"


def parse_hypothesis(text, sig):
    lhs_text, sep, rhs_text = text.partition("=")
    if not sep:
        raise HypothesisError(f"hypothesis must have the form 'e = 0': {text.strip()!r}")
    if parse(rhs_text, sig) != ZERO:
        raise HypothesisError(f"right-hand side of a hypothesis must be 0, got {rhs_text.strip()!r}")
    return Hypothesis(parse(lhs_text, sig))


@dataclass
class Verdict:
    equal: bool
    method: str
    bound: int = None
    counterexample: tuple = None
    notes: list = field(default_factory=list)

    def render(self, alphabet=None, states=None):
        if self.equal:
            return f"EQUAL(bound={self.bound})" if self.method == "bounded-language" else "EQUAL(models)"
        where, wp, wq = self.counterexample
        fmt = lambda w: "absent" if w is INF else str(w)
        if self.method == "bounded-language":
            head = f"NOT-EQUAL(bound={self.bound})"
            what = render_string(where, alphabet) if alphabet else repr(where)
        else:
            head = "NOT-EQUAL(models)"
            model, i, j = where
            what = f"model {model} entry ({states[i] if states else i}, {states[j] if states else j})"
        return f"{head}\ncounterexample: {what}\n  left: {fmt(wp)}\n  right: {fmt(wq)}"


def _first_difference(L, M, alphabet):
    diff = [s for s in set(L) | set(M) if L.weight(s) != M.weight(s)]
    if not diff:
        return None
    s = min(diff, key=lambda s: (n_programs(s), render_string(s, alphabet)))
    return s, L.weight(s), M.weight(s)


def bounded_equiv(p, q, v, bound):
    L, M = gt_interpret(p, v, bound), gt_interpret(q, v, bound)
    cex = _first_difference(L, M, v.alphabet)
    return Verdict(cex is None, "bounded-language", bound, cex)


def factors(s):
    """All guarded-string factors of s: substrings that start and end at an atom."""
    k = n_programs(s)
    for i in range(k + 1):
        for j in range(i, k + 1):
            yield s[2 * i:2 * j + 1]


def hypothesis_strings(hyps, v, bound):
    out = set()
    for h in hyps:
        out.update(gt_interpret(h.lhs, v, bound))
    return frozenset(out)


def delete_factors(lang, forbidden):
    """Drop every string having a factor in `forbidden`."""
    if not forbidden:
        return lang
    return Language({s: w for s, w in lang.items() if not any(f in forbidden for f in factors(s))})


def one_is_top(alphabet, samples=64, seed=0):
    """Sampled check that every weight w satisfies w + 1 = 1 in GT."""
    rng = random.Random(seed)
    u = one(alphabet)
    return all(unambiguous_union(uniform_atoms(alphabet, rng.randint(0, 1000)), u) == u
               for _ in range(samples))


def equiv_under_zero_hypotheses(p, q, hyps, v, bound):
    hyps = [h if isinstance(h, Hypothesis) else Hypothesis(h) for h in hyps]
    if not hyps:
        return bounded_equiv(p, q, v, bound)
    forbidden = hypothesis_strings(hyps, v, bound)
    L = delete_factors(gt_interpret(p, v, bound), forbidden)
    M = delete_factors(gt_interpret(q, v, bound), forbidden)
    cex = _first_difference(L, M, v.alphabet)
    notes = [f"hypothesis {h}" for h in hyps]
    notes.append(f"1 is top of the weights: {one_is_top(v.alphabet)}")
    return Verdict(cex is None, "bounded-language", bound, cex, notes)


def model_equiv(p, q, models, hyps=(), cap=None):
    """Compare interpretations entrywise in every model; models must satisfy all hypotheses."""
    hyps = [h if isinstance(h, Hypothesis) else Hypothesis(h) for h in hyps]
    for k, m in enumerate(models):
        zero = rel_zero(len(m.states), m.semiring)
        for h in hyps:
            if interpret(h.lhs, m, cap) != zero:
                raise ModelError(f"model {k} violates hypothesis {h}")
    for k, m in enumerate(models):
        a, b = interpret(p, m, cap), interpret(q, m, cap)
        for i, (ra, rb) in enumerate(zip(a.rows, b.rows)):
            for j, (x, y) in enumerate(zip(ra, rb)):
                if x != y:
                    return Verdict(False, "model-family", counterexample=((k, i, j), x, y))
    return Verdict(True, "model-family")


# -- ski rental ------------------------------------------------------------------

def ski_chain_model(n, y):
    """States s0..sn counting remaining days: sub1 decrements, end jumps to s0."""
    states = tuple(f"s{i}" for i in range(n + 1))
    return TransitionSystem(
        states, TROPICAL,
        prog_label={"sub1": frozenset((f"s{i}", f"s{i - 1}") for i in range(1, n + 1)),
                    "end": frozenset((f"s{i}", "s0") for i in range(n + 1))},
        bool_label={"neq0": frozenset(f"s{i}" for i in range(1, n + 1))},
        weight_label={"one": 1, "skis": y},
    )


def realizable(G, m, start, alphabet):
    """Strings of G that some run of m from `start` traces, reading atoms off the states."""
    atom_of = {s: tuple(s in m.bool_label.get(b, ()) for b in alphabet.booleans) for s in m.states}
    succ = {}
    for p, pairs in m.prog_label.items():
        for s, t in pairs:
            succ.setdefault((p, s), []).append(t)
    out = {}
    for s, w in G.items():
        current = {start} if atom_of[start] == s[0] else set()
        for i in range(1, len(s), 2):
            p, atom = s[i], s[i + 1]
            current = {t for st in current for t in succ.get((p, st), ()) if atom_of[t] == atom}
            if not current:
                break
        if current:
            out[s] = w
    return Language(out)


@dataclass
class SkiStudy:
    n: int
    y: int
    theta_from_neq0: object
    theta_from_not_neq0: object
    theta_realizable: object
    relational: object
    hypotheses_hold: bool

    def render(self):
        f = TROPICAL.render
        return (f"n={self.n} y={self.y} min={min(self.n, self.y)} "
                f"theta({{neq0}})={f(self.theta_from_neq0)} "
                f"theta({{!neq0}})={f(self.theta_from_not_neq0)} "
                f"theta(runs from s{self.n})={f(self.theta_realizable)} "
                f"relational(s{self.n},s0)={f(self.relational)} "
                f"hypotheses={'hold' if self.hypotheses_hold else 'FAIL'}")


def ski_case_study(n, y):
    loop, _, finite = build_ski_programs(n)
    alphabet = Alphabet.of(SKI_SIGNATURE)
    v = canonical_valuation(SKI_SIGNATURE, {"one": 1, "skis": y})
    X = gt_interpret(finite, v)
    yes, no = (True,), (False,)
    m = ski_chain_model(n, y)
    zero = rel_zero(n + 1, TROPICAL)
    hold = all(interpret(h, m) == zero for h in ski_hypotheses(n))
    runs = theta(realizable(X, m, f"s{n}", alphabet), [yes, no])
    return SkiStudy(
        n, y,
        theta_from_neq0=theta(X, [yes]).weight((no,)),
        theta_from_not_neq0=theta(X, [no]).weight((no,)),
        theta_realizable=runs.weight((no,)),
        relational=interpret(loop, m)[n, 0],
        hypotheses_hold=hold,
    )
