"""Independent reference implementations used to cross-check the library.

Nothing here calls into kawt's semantics; only AST classes and constants are shared.
"""

from functools import lru_cache
from itertools import product

from kawt.semiring import INF
from kawt.syntax import (Atomic, BAnd, BNot, BOne, BOr, BVar, BZero, Plus, Seq, Star, Test)


def reflexive_transitive_closure(adj):
    """Warshall on a boolean adjacency matrix."""
    n = len(adj)
    r = [[bool(adj[i][j]) or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = True
    return tuple(tuple(row) for row in r)


def min_plus_closure(w):
    """Floyd-Warshall least path weights; the empty path costs 0. INF means no edge."""
    n = len(w)
    big = float("inf")
    d = [[0 if i == j else (big if w[i][j] is INF else w[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if w[i][i] is not INF:
            d[i][i] = min(d[i][i], w[i][i])
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return tuple(tuple(INF if x == big else int(x) for x in row) for row in d)


def holds(b, atom, booleans):
    if isinstance(b, BVar):
        return atom[booleans.index(b.name)]
    if isinstance(b, BOne):
        return True
    if isinstance(b, BZero):
        return False
    if isinstance(b, BNot):
        return not holds(b.arg, atom, booleans)
    if isinstance(b, BAnd):
        return holds(b.left, atom, booleans) and holds(b.right, atom, booleans)
    if isinstance(b, BOr):
        return holds(b.left, atom, booleans) or holds(b.right, atom, booleans)
    raise TypeError(b)


def make_member(booleans):
    """Guarded-string membership for weighting-free programs, by splitting at atoms."""

    @lru_cache(maxsize=None)
    def member(p, s):
        if isinstance(p, Test):
            return len(s) == 1 and holds(p.cond, s[0], booleans)
        if isinstance(p, Atomic):
            return len(s) == 3 and s[1] == p.name
        if isinstance(p, Plus):
            return any(member(q, s) for q in p.items)
        if isinstance(p, Seq):
            head, rest = p.items[0], p.items[1:]
            if not rest:
                return member(head, s)
            tail = rest[0] if len(rest) == 1 else Seq(rest)
            return any(member(head, s[:i + 1]) and member(tail, s[i:]) for i in range(0, len(s), 2))
        if isinstance(p, Star):
            if len(s) == 1:
                return True
            return any(member(p.body, s[:i + 1]) and member(p, s[i:]) for i in range(2, len(s), 2))
        raise TypeError(p)

    return member


def guarded_strings(n_booleans, programs, bound):
    atoms = list(product((True, False), repeat=n_booleans))
    out = [(a,) for a in atoms]
    frontier = list(out)
    for _ in range(bound):
        frontier = [s + (p, a) for s in frontier for p in programs for a in atoms]
        out.extend(frontier)
    return out


def oracle_language(p, booleans, programs, bound):
    member = make_member(tuple(booleans))
    return frozenset(s for s in guarded_strings(len(booleans), programs, bound) if member(p, s))


def bool_exprs(names, k):
    """All Boolean expressions with exactly k constructor nodes."""
    if k == 1:
        return [BVar(n) for n in names] + [BOne(), BZero()]
    out = [BNot(e) for e in bool_exprs(names, k - 1)]
    for i in range(1, k - 1):
        for l in bool_exprs(names, i):
            for r in bool_exprs(names, k - 1 - i):
                out += [BAnd(l, r), BOr(l, r)]
    return out


def programs_of_size(booleans, programs, k, _memo=None):
    """All weighting-free programs with exactly k nodes, using binary Plus/Seq."""
    memo = {} if _memo is None else _memo
    if k in memo:
        return memo[k]
    out = [Test(b) for b in bool_exprs(booleans, k)]
    if k == 1:
        out += [Atomic(a) for a in programs]
    else:
        out += [Star(q) for q in programs_of_size(booleans, programs, k - 1, memo)]
        for i in range(1, k - 1):
            for l in programs_of_size(booleans, programs, i, memo):
                for r in programs_of_size(booleans, programs, k - 1 - i, memo):
                    out += [Plus((l, r)), Seq((l, r))]
    memo[k] = out
    return out


def all_programs(booleans, programs, max_size):
    memo = {}
    return [p for k in range(1, max_size + 1) for p in programs_of_size(booleans, programs, k, memo)]


def ski_runs_brute_force(n, y):
    """Least cost to finish n remaining days paying 1 per day or y once to stop."""
    best = [0] * (n + 1)
    for i in range(1, n + 1):
        best[i] = min(1 + best[i - 1], y)
    return best[n]


def set_relation(p, states, prog_label, bool_label):
    """Classical relational meaning of a weighting-free program as a set of state pairs."""
    ident = {(s, s) for s in states}
    if isinstance(p, Atomic):
        return set(prog_label[p.name])
    if isinstance(p, Test):
        names = tuple(bool_label)
        return {(s, s) for s in states
                if holds(p.cond, tuple(s in bool_label[b] for b in names), names)}
    if isinstance(p, Plus):
        return set().union(*(set_relation(q, states, prog_label, bool_label) for q in p.items))
    if isinstance(p, Seq):
        r = ident
        for q in p.items:
            step = set_relation(q, states, prog_label, bool_label)
            r = {(a, c) for a, b in r for b2, c in step if b == b2}
        return r
    if isinstance(p, Star):
        step = set_relation(p.body, states, prog_label, bool_label)
        r = set(ident)
        while True:
            nxt = r | {(a, c) for a, b in r for b2, c in step if b == b2}
            if nxt == r:
                return r
            r = nxt
    raise TypeError(p)
