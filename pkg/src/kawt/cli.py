"""Command-line front end: check, eval, optimal, equiv, axioms, ski-demo."""

import argparse
import sys
from pathlib import Path

from .equivalence import equiv_under_zero_hypotheses, model_equiv, parse_hypothesis, ski_case_study
from .errors import HypothesisError, KawtError, ModelError, ParseError, StarDivergence
from .guarded import (Alphabet, atoms_satisfying, canonical_valuation, gt_interpret, render_atom,
                      theta, check_tau_iso)
from .psg import build_cart, build_gu, build_str, build_weak, check_psg_axioms, check_theorem1
from .relational import check_lifted_laws, interpret, parse_model_text, render_relation
from .semiring import INF, MUTANT, SEMIRINGS, check_semiring_axioms, get_semiring
from .syntax import _strip_comments, has_star, parse_bool, parse_program_text, pretty, split_header

EXIT_OK, EXIT_INPUT, EXIT_EVAL, EXIT_NOT_EQUAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _location(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return f"{line}:{col}"


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def load_program(path, sig=None):
    text = _read(path)
    try:
        return parse_program_text(text, sig)
    except ParseError as e:
        where = f"{path}:{_location(text, e.pos)}" if e.pos is not None else path
        raise InputError(f"{where}: error: {e.message}") from None


def load_model(path):
    try:
        return parse_model_text(_read(path))
    except ModelError as e:
        raise InputError(f"{path}: error: {e}") from None


def load_hypotheses(path, sig):
    text = _read(path)
    if any(line.strip() == "---" for line in text.splitlines()):
        try:
            hsig, body, offset = split_header(text)
        except ParseError as e:
            raise InputError(f"{path}: error: {e.message}") from None
        if not set(hsig.programs) <= set(sig.programs) or not set(hsig.booleans) <= set(sig.booleans):
            raise InputError(f"{path}: error: hypothesis signature is not part of the program signature")
        sig = hsig
    else:
        body, offset = text, 0
    hyps = []
    start = offset
    for line in _strip_comments(body).splitlines(keepends=True):
        if line.strip():
            try:
                hyps.append(parse_hypothesis(line, sig))
            except ParseError as e:
                pos = None if e.pos is None else start + e.pos
                where = f"{path}:{_location(text, pos)}" if pos is not None else path
                raise InputError(f"{where}: error: {e.message}") from None
            except HypothesisError as e:
                raise InputError(f"{path}: error: {e}") from None
        start += len(line)
    if not hyps:
        raise InputError(f"{path}: error: no hypotheses found")
    return hyps


def parse_weights(items, sig):
    weights = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--weights expects NAME=VALUE, got {item!r}")
        if value.strip() in ("inf", "∞"):
            weights[name] = INF
        elif value.strip().isdigit():
            weights[name] = int(value)
        else:
            raise InputError(f"weight {name!r} must be a natural number or inf, got {value!r}")
    unknown = set(weights) - set(sig.weightings)
    if unknown:
        raise InputError(f"--weights names undeclared weighting(s): {', '.join(sorted(unknown))}")
    return weights


def _check_covers(sig, model, path):
    missing = [n for n in sig.programs if n not in model.prog_label]
    missing += [n for n in sig.booleans if n not in model.bool_label]
    missing += [n for n in sig.weightings if n not in model.weight_label]
    if missing:
        raise InputError(f"{path}: error: signature mismatch, model does not label {', '.join(missing)}")


# -- commands -------------------------------------------------------------------------

def cmd_check(args, out):
    _, p = load_program(args.program)
    print(pretty(p), file=out)
    return EXIT_OK


def cmd_eval(args, out):
    sig, p = load_program(args.program)
    m = load_model(args.model)
    _check_covers(sig, m, args.model)
    rel = interpret(p, m, args.cap)
    print(render_relation(rel, m.states), file=out)
    return EXIT_OK


def cmd_optimal(args, out):
    sig, p = load_program(args.program)
    weights = parse_weights(args.weights, sig)
    missing = set(sig.weightings) - set(weights)
    if missing:
        raise InputError(f"no weight given for {', '.join(sorted(missing))} (use --weights NAME=VALUE)")
    alphabet = Alphabet.of(sig)
    spec = args.start.strip()
    if spec.startswith("{") and spec.endswith("}"):
        spec = spec[1:-1]
    try:
        start = atoms_satisfying(parse_bool(spec, sig), alphabet)
    except ParseError as e:
        raise InputError(f"--from: error: {e.message}") from None
    bound = args.bound
    if bound is None and has_star(p):
        bound = 10
    v = canonical_valuation(sig, weights)
    result = theta(gt_interpret(p, v, bound), start)
    print(f"# optimal runs from {args.start} bound={'none' if bound is None else bound}", file=out)
    for a in alphabet.atoms:
        w = result.weight((a,))
        print(f"{render_atom(a, alphabet)}: {'unreachable' if w is INF else w}", file=out)
    return EXIT_OK


def _model_paths(spec):
    path = Path(spec)
    if path.is_dir():
        files = sorted(f for f in path.iterdir() if f.is_file() and not f.name.startswith("."))
        if not files:
            raise InputError(f"{spec}: no model files found")
        return files
    if not path.exists():
        raise InputError(f"{spec}: no such file or directory")
    return [path]


def cmd_equiv(args, out):
    sig, p = load_program(args.p)
    _, q = load_program(args.q, sig)
    hyps = [h for path in args.hyp or () for h in load_hypotheses(path, sig)]
    alphabet = Alphabet.of(sig)
    if args.models:
        paths = _model_paths(args.models)
        models = [load_model(path) for path in paths]
        for path, m in zip(paths, models):
            _check_covers(sig, m, path)
        try:
            verdict = model_equiv(p, q, models, hyps, args.cap)
        except ModelError as e:
            raise InputError(f"error: {e}") from None
        if not verdict.equal:
            (k, i, j), _, _ = verdict.counterexample
            verdict.counterexample = ((paths[k].name, i, j),) + verdict.counterexample[1:]
            print(verdict.render(states=models[k].states), file=out)
            return EXIT_NOT_EQUAL
        print(verdict.render(), file=out)
        return EXIT_OK
    weights = parse_weights(args.weights, sig)
    for f in sig.weightings:
        weights.setdefault(f, 1)
    v = canonical_valuation(sig, weights)
    verdict = equiv_under_zero_hypotheses(p, q, hyps, v, args.bound)
    for note in verdict.notes:
        print(f"# {note}", file=out)
    print(verdict.render(alphabet), file=out)
    return EXIT_OK if verdict.equal else EXIT_NOT_EQUAL


def _suite_reports(args):
    seed, samples = args.seed, args.samples
    if args.suite == "semiring":
        names = [args.semiring] if args.semiring else list(SEMIRINGS)
        semirings = [MUTANT] if args.mutant else [get_semiring(n) for n in names]
        return [check_semiring_axioms(S, samples or 1000, seed) for S in semirings]
    if args.suite == "lifted":
        names = [args.semiring] if args.semiring else list(SEMIRINGS)
        semirings = [MUTANT] if args.mutant else [get_semiring(n) for n in names]
        return [check_lifted_laws(n, S, samples or 500, seed) for S in semirings for n in (1, 2, 3)]
    alphabet = Alphabet(("b",), ("p",))
    if args.suite == "psg":
        instances = [build_weak(), build_str("a", 3, restrict=False)] if args.mutant else [
            build_cart(3), build_gu(alphabet, 2), build_str("a", 3)]
        return [check_psg_axioms(P) for P in instances]
    if args.suite == "thm1":
        names = [args.semiring] if args.semiring else ["tropical", "lukasiewicz"]
        instances = [build_weak()] if args.mutant else [build_cart(3), build_gu(alphabet, 2)]
        return [check_theorem1(P, get_semiring(n), samples or 300, seed)
                for P in instances for n in names]
    if args.suite == "thm2":
        return [check_tau_iso(alphabet, 3, samples or 200, seed)]
    raise InputError(f"unknown suite {args.suite!r}")


def cmd_axioms(args, out):
    print(f"# suite={args.suite} seed={args.seed}", file=out)
    reports = _suite_reports(args)
    for rep in reports:
        print(rep.render(), file=out)
    return EXIT_OK if all(rep.ok for rep in reports) else EXIT_EVAL


def cmd_ski_demo(args, out):
    print(f"# ski rental optimal weights, n=0..{args.n_max}, y=0..{args.y_max}", file=out)
    print("# columns: n y min(n,y) theta{neq0} theta{!neq0} theta(runs from s_n) relational(s_n,s0)",
          file=out)
    for n in range(args.n_max + 1):
        for y in range(args.y_max + 1):
            s = ski_case_study(n, y)
            cells = [n, y, min(n, y), s.theta_from_neq0, s.theta_from_not_neq0,
                     s.theta_realizable, s.relational]
            print(" ".join(f"{c!s:>4}" for c in cells), file=out)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="kawt", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and sort-check a program file")
    p.add_argument("program")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="interpret a program in a transition-system model")
    p.add_argument("program")
    p.add_argument("model")
    p.add_argument("--cap", type=int, default=None, help="star iteration cap (default |X|+1)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("optimal", help="least run weights per final atom")
    p.add_argument("program")
    p.add_argument("--weights", nargs="*", metavar="F=W")
    p.add_argument("--from", dest="start", default="{1}", help="start atoms, as a test {b}")
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("equiv", help="bounded or model-based program equivalence")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--hyp", action="append", metavar="FILE")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bound", type=int)
    g.add_argument("--models", metavar="DIR")
    p.add_argument("--weights", nargs="*", metavar="F=W", help="canonical weights (default 1)")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("axioms", help="run an algebraic property suite")
    p.add_argument("--suite", choices=["semiring", "lifted", "psg", "thm1", "thm2"], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--semiring", choices=list(SEMIRINGS))
    p.add_argument("--mutant", action="store_true", help="run on the deliberately broken instance")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("ski-demo", help="ski-rental optimal weights over a grid of (n, y)")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--y-max", type=int, default=8)
    p.set_defaults(func=cmd_ski_demo)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    for name in ("bound", "cap", "samples"):
        value = getattr(args, name, None)
        if value is not None and value < (0 if name == "bound" else 1):
            print(f"kawt: error: --{name} must be positive", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as e:
        print(e, file=sys.stderr)
        return EXIT_INPUT
    except StarDivergence as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EVAL
    except KawtError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
