"""``picx``: command-line access to the lattice, oracle and separation tools.

Exit status: 0 on success, 1 when the answer is a negative verdict (fails,
obstructed, disagreement, failure witness), 2 on usage or contract errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Optional, Sequence

from . import catalog, ffield, hh, separation
from .lattice import (
    DivisorClass,
    arithmetic_genus,
    class_to_json,
    euler_characteristic,
    format_class,
    intersect,
)
from .weyl import format_word, reduce, semistandard_decompose

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class Outcome:
    def __init__(self, payload: dict, text: Sequence[str], code: int = EXIT_OK):
        self.payload = payload
        self.text = list(text)
        self.code = code


def _cls(text: str) -> DivisorClass:
    try:
        return catalog.resolve_class(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fc(h: Optional[DivisorClass]) -> str:
    return "none" if h is None else format_class(h)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PICX_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"PICX_SEED must be an integer, got {env!r}") from None


# -- commands ----------------------------------------------------------------

def cmd_chi(args) -> Outcome:
    v = euler_characteristic(args.cls)
    return Outcome({"class": class_to_json(args.cls), "chi": v}, [str(v)])


def cmd_genus(args) -> Outcome:
    v = arithmetic_genus(args.cls)
    return Outcome({"class": class_to_json(args.cls), "genus": v}, [str(v)])


def cmd_intersect(args) -> Outcome:
    v = intersect(args.a, args.b)
    return Outcome({"a": class_to_json(args.a), "b": class_to_json(args.b), "value": v}, [str(v)])


def cmd_reduce(args) -> Outcome:
    res = reduce(args.cls)
    payload = {
        "class": class_to_json(args.cls),
        "canonical": class_to_json(res.canonical),
        "word": list(res.word),
        "standardness": res.standardness,
    }
    text = [f"canonical: {_fc(res.canonical)}", f"word: {format_word(res.word)}", f"standardness: {res.standardness}"]
    return Outcome(payload, text)


def cmd_classify(args) -> Outcome:
    res = reduce(args.cls)
    try:
        kind = catalog.classify_rational_orbit(args.cls)
        orbit = {"tag": kind.tag, "degree": kind.degree, "name": kind.definition_name}
    except ValueError:
        orbit = None
    text = [f"standardness: {res.standardness}"]
    if orbit is not None:
        label = orbit["tag"] + (f" (d={orbit['degree']})" if orbit["degree"] else "")
        text.append(f"rational orbit: {label}")
    return Outcome({"class": class_to_json(args.cls), "standardness": res.standardness, "rationalOrbit": orbit}, text)


def cmd_decompose(args) -> Outcome:
    dec = semistandard_decompose(args.cls)
    structure = None
    if hh.predicted_h0(args.cls).effective:
        structure = hh.structure_decompose(args.cls)
    payload = hh.decomposition_to_json(dec)
    payload["class"] = class_to_json(args.cls)
    payload["structure"] = None if structure is None else structure.to_json()
    text = [f"standard: {_fc(dec.standard)}"]
    text += [f"piece: {n} x {_fc(f)}" for n, f in dec.pieces]
    if structure is not None:
        text.append(f"kind: {structure.kind}")
    return Outcome(payload, text)


def cmd_generating(args) -> Outcome:
    g = catalog.generating_decomposition(args.cls)
    payload = {"class": class_to_json(args.cls), "a": g.a, "b": g.b, "c": g.c, "alpha": list(g.alpha)}
    text = [f"a: {g.a}", f"b: {g.b}", f"c: {g.c}", "alpha: " + ",".join(str(x) for x in g.alpha)]
    return Outcome(payload, text)


def cmd_h0(args) -> Outcome:
    pred = hh.predicted_h0(args.cls)
    payload = pred.to_json()
    payload["class"] = class_to_json(args.cls)
    text = [f"h0: {pred.h0}", f"h1: {pred.h1}", f"h2: {pred.h2}", f"chi: {pred.chi}",
            f"effective: {str(pred.effective).lower()}", f"special: {str(pred.special).lower()}"]
    if pred.conditional:
        text.append("conditional: true")
    return Outcome(payload, text)


def _bool_cmd(name: str, fn: Callable[[DivisorClass], bool]):
    def run(args) -> Outcome:
        v = fn(args.cls)
        return Outcome({"class": class_to_json(args.cls), name: v}, [str(v).lower()])

    return run


def cmd_exceptional(args) -> Outcome:
    if args.cls is not None:
        v = catalog.is_exceptional(args.cls)
        return Outcome({"class": class_to_json(args.cls), "exceptional": v}, [str(v).lower()])
    if args.rank is None or args.dmax is None:
        raise ValueError("give a class, or both --rank and --dmax to enumerate")
    found = catalog.enumerate_exceptional(args.rank, args.dmax)
    total = sum(catalog.permutation_count(e) for e in found)
    payload = {
        "rank": args.rank,
        "dMax": args.dmax,
        "classes": [class_to_json(e) for e in found],
        "count": len(found),
        "countWithPermutations": total,
    }
    return Outcome(payload, [_fc(e) for e in found] + [f"count: {len(found)} ({total} with permutations)"])


def cmd_isolated(args) -> Outcome:
    curves = catalog.enumerate_isolated(args.genus, args.rank, args.dmax)
    complete = catalog.isolated_list_complete(args.genus, args.rank, args.dmax)
    payload = {
        "genus": args.genus,
        "rank": args.rank,
        "dMax": args.dmax,
        "curves": [class_to_json(c.cls) for c in curves],
        "label": "isolated" if args.genus <= 4 else "isolated (lattice-level)",
        "complete": complete,
    }
    text = [_fc(c.cls) for c in curves] + [f"complete: {str(complete).lower()}"]
    return Outcome(payload, text)


def cmd_separation(args) -> Outcome:
    rep = separation.check_separation(args.cls, args.k, args.delta_max, args.dmax)
    text = [f"verdict: {rep.verdict}", f"chi: {rep.chi}"]
    w = rep.witness
    if w is not None:
        text += [f"witness: {_fc(w.curve)}", f"genus: {w.genus}", f"value: {w.value}",
                 f"threshold: {w.threshold}", f"delta: {w.delta}"]
    for key, ok in rep.hypotheses.items():
        text.append(f"{key}: {str(ok).lower()}")
    code = EXIT_NEGATIVE if rep.verdict == separation.FAILS else EXIT_OK
    return Outcome(rep.to_json(), text, code)


def cmd_adjunction(args) -> Outcome:
    rep = separation.adjunction_check(args.cls, args.k, args.bound)
    text = [f"verdict: {rep.verdict}", f"obstruction: {_fc(rep.obstruction)}",
            f"nefBig: {str(rep.nef_big).lower()}", f"squareBound: {str(rep.square_bound).lower()}",
            f"complete: {str(rep.complete).lower()}"]
    code = EXIT_NEGATIVE if rep.verdict == separation.OBSTRUCTED else EXIT_OK
    return Outcome(rep.to_json(), text, code)


def cmd_search_failures(args) -> Outcome:
    found = separation.search_failing_classes(args.rank, args.k, args.dmax, args.chi_min)
    payload = {
        "rank": args.rank,
        "k": args.k,
        "dMax": args.dmax,
        "chiMin": args.chi_min,
        "classes": [f.to_json() for f in found],
    }
    text = [f"{_fc(f.cls)}  chi={f.chi}  " + " ".join(f"{_fc(v.curve)}:{v.value}<{v.threshold}" for v in f.violations)
            for f in found]
    text.append(f"count: {len(found)}")
    return Outcome(payload, text)


def cmd_verify_ff(args) -> Outcome:
    rep = ffield.verify_hh_prediction(args.cls, args.prime, args.trials, _seed(args), args.threads)
    text = [f"predicted: {rep['predicted']}", f"actual: {rep['actual']}",
            f"agree: {str(rep['agree']).lower()}", f"seed: {rep['seed']}"]
    return Outcome(rep, text, EXIT_OK if rep["agree"] else EXIT_NEGATIVE)


def cmd_separate_ff(args) -> Outcome:
    rep = ffield.sample_cluster_separation(
        args.cls, args.k, args.prime, args.samples, _seed(args), tuple(args.curve or ())
    )
    text = [f"verdict: {rep['verdict']}", f"drawn: {rep['drawn']}", f"seed: {rep['seed']}"]
    if rep["witness"] is not None:
        text.append(f"witness: sample {rep['witness']['index']} ({rep['witness']['species']})")
    return Outcome(rep, text, EXIT_OK if rep["witness"] is None else EXIT_NEGATIVE)


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: $PICX_SEED, then 0)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for independent trials")

    parser = argparse.ArgumentParser(prog="picx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn, help_text: str, cls: bool = True):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if cls:
            p.add_argument("cls", type=_cls, metavar="CLASS", help='class literal "d;m1,...,mr" or a named constant')
        p.set_defaults(func=fn)
        return p

    add("chi", cmd_chi, "Euler characteristic chi(H)")
    add("genus", cmd_genus, "arithmetic genus p(H)")
    p = add("intersect", cmd_intersect, "intersection number A.B", cls=False)
    p.add_argument("a", type=_cls, metavar="A")
    p.add_argument("b", type=_cls, metavar="B")
    add("reduce", cmd_reduce, "reduce under the Weyl group")
    add("classify", cmd_classify, "standardness and rational orbit type")
    add("decompose", cmd_decompose, "orthogonal decomposition of a semi-standard class")
    add("generating", cmd_generating, "coefficients against the generating classes")
    add("h0", cmd_h0, "predicted cohomology")
    add("special", _bool_cmd("special", hh.is_special), "predicted speciality")
    add("ample", _bool_cmd("ample", hh.is_ample), "ampleness test")
    add("nef", _bool_cmd("nef", hh.is_nef), "nefness test")

    p = add("exceptional", cmd_exceptional, "test a class, or enumerate exceptional types", cls=False)
    p.add_argument("cls", type=_cls, nargs="?", default=None, metavar="CLASS")
    p.add_argument("--rank", type=int)
    p.add_argument("--dmax", type=int)

    p = add("isolated", cmd_isolated, "enumerate isolated curves of a genus", cls=False)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)

    p = add("separation", cmd_separation, "necessary conditions for separating k-clusters")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--delta-max", type=int, default=None)
    p.add_argument("--dmax", type=int, default=None)

    p = add("adjunction", cmd_adjunction, "adjunction-theoretic sufficient criterion")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--bound", type=int, default=None, help="degree bound for the obstruction search")

    p = add("search-failures", cmd_search_failures, "standard classes failing on genus 1 or 2 curves", cls=False)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--chi-min", type=int, required=True)

    p = add("verify-ff", cmd_verify_ff, "compare predicted h0 with a finite-field computation")
    p.add_argument("--prime", type=int, default=ffield.DEFAULT_PRIME)
    p.add_argument("--trials", type=int, default=ffield.DEFAULT_TRIALS)

    p = add("separate-ff", cmd_separate_ff, "sample k-cluster separation over a finite field")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--prime", type=int, default=ffield.DEFAULT_PRIME)
    p.add_argument("--samples", type=int, default=ffield.DEFAULT_SAMPLES)
    p.add_argument("--curve", type=_cls, action="append", help="also sample clusters on this curve (repeatable)")
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        outcome = args.func(args)
    except (ValueError, OverflowError, ArithmeticError) as exc:
        print(f"picx: error: {exc}", file=err)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(outcome.payload, sort_keys=True), file=out)
    else:
        for line in outcome.text:
            print(line, file=out)
    return outcome.code


def main() -> None:
    sys.exit(run())


def load_schema(command: str) -> dict:
    """The JSON schema shipped for ``command``'s ``--json`` report."""
    from importlib.resources import files

    return json.loads(files("picx").joinpath("schemas", f"{command}.json").read_text())
