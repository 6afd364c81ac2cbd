"""Command-line front end.

Problem files are JSON documents::

    {"k": 2, "weights": [[1, 0], [1, 1], [0, 1], [0, 1], [0, 1]], "tau": [2, 4],
     "lambda": [0, 0], "ell": [1, 0, 2, 0, 0], "mode": "checked", "seed": 0}

Rationals are integers or strings ``"p/q"``; floats are rejected.  Index
sets in reports are 1-based.

Exit codes: 0 ok, 2 parse error, 3 singular or invalid geometry,
4 verification failure, 5 degenerate path.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from . import __version__
from . import cohomology_rings as cr
from . import toric_geometry as tg
from . import vortex_invariants as vi
from .errors import AlgorithmMismatch, DegeneratePath, ToricError

EXIT_OK, EXIT_PARSE, EXIT_GEOMETRY, EXIT_VERIFY, EXIT_PATH = 0, 2, 3, 4, 5

RATIONAL = {"oneOf": [{"type": "integer"},
                      {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*-?\d+\s*)?$"}]}
INT_VECTOR = {"type": "array", "items": {"type": "integer"}}

PROBLEM_SCHEMA = {
    "type": "object",
    "required": ["k", "weights", "tau"],
    "properties": {
        "k": {"type": "integer", "minimum": 0},
        "weights": {"type": "array", "items": INT_VECTOR},
        "tau": {"type": "array", "items": RATIONAL},
        "lambda": INT_VECTOR,
        "ell": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "alpha": {"type": "array", "items": {
            "type": "array", "minItems": 2, "maxItems": 2,
            "prefixItems": [RATIONAL, {"type": "array", "items": {"type": "integer", "minimum": 0}}]}},
        "genus": {"type": "integer", "minimum": 0},
        "seed": {"type": "integer"},
        "mode": {"enum": ["direct", "wallcross", "checked"]},
    },
    "additionalProperties": False,
}


class ParseError(Exception):
    pass


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"not an exact rational: {x!r}")
    try:
        return Fraction(str(x).replace(" ", ""))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}") from exc


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Problem:
    """A validated problem file."""

    def __init__(self, data: dict):
        try:
            jsonschema.validate(data, PROBLEM_SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ParseError(f"at {where}: {exc.message}") from None
        self.k = data["k"]
        for i, w in enumerate(data["weights"]):
            if len(w) != self.k:
                raise ParseError(f"at weights/{i}: expected {self.k} entries, got {len(w)}")
        self.weights = [tuple(w) for w in data["weights"]]
        if len(data["tau"]) != self.k:
            raise ParseError(f"at tau: expected {self.k} entries")
        self.tau = tuple(parse_rational(x) for x in data["tau"])
        self.lam = tuple(data["lambda"]) if "lambda" in data else None
        self.ell = tuple(data["ell"]) if "ell" in data else None
        self.alpha = [(parse_rational(c), tuple(e)) for c, e in data["alpha"]] if "alpha" in data else None
        self.genus = data.get("genus", 0)
        self.seed = data.get("seed")
        self.mode = data.get("mode")
        if self.lam is not None and len(self.lam) != self.k:
            raise ParseError("at lambda: wrong length")
        n = len(self.weights)
        if self.ell is not None and len(self.ell) != n:
            raise ParseError("at ell: wrong length")
        if self.alpha is not None and any(len(e) != n for _, e in self.alpha):
            raise ParseError("at alpha: exponent vector of wrong length")

    def system(self) -> tg.WeightSystem:
        return tg.WeightSystem(self.k, tuple(self.weights))


def load_problem(path: str) -> Problem:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(str(exc)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return Problem(data)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def int_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# ---------------------------------------------------------------------------
# output helpers


def _jsonable(obj: Any):
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _one_based(sets) -> list[list[int]]:
    return [[i + 1 for i in S] for S in sets]


def emit(args, report: dict, lines: Sequence[str]):
    if args.json:
        print(json.dumps(_jsonable(report), indent=2, sort_keys=False))
    else:
        for line in lines:
            print(line)


def _vec(v) -> str:
    return "(" + ", ".join(fmt_rational(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    P = load_problem(args.file)
    W = P.system()
    tau = P.tau
    regular = tg.is_regular(W, tau)
    if not regular:
        raise tg.SingularParameter(f"tau={_vec(tau)} is a singular value")
    report: dict[str, Any] = {
        "k": W.k, "n": W.n, "weights": [list(w) for w in W.weights], "tau": list(tau),
        "properness_witness": list(W.properness_witness),
        "regular": True,
        "chamber_fingerprint": _one_based(sorted(tg.chamber_fingerprint(W, tau))),
        "nonempty": tg.in_image(W, tau),
        "minimal_chern_number": tg.minimal_chern_number(W),
        "walls": [{"indices": [i + 1 for i in w.indices], "normal": list(w.normal)}
                  for w in tg.enumerate_walls(W)],
    }
    free = report["nonempty"] and tg.acts_freely(W, tau)
    report["free"] = free
    if report["nonempty"]:
        poly = tg.moment_polytope(W, tau)
        report["f_vector"] = list(poly.f_vector)
    if free:
        report["betti"] = list(cr.betti_numbers(W, tau))
        report["euler"] = sum(report["betti"])
        report["monotone"] = cr.monotone_check(W, tau)
        report["lambda_tau_basis"] = [list(b) for b in tg.lambda_tau_sublattice(W, tau)]
        report["eff_generators"] = [list(g) for g in tg.effective_cone(W, tau).eff_generators]
    lines = [
        f"rank k = {W.k}, n = {W.n}",
        f"properness witness: {_vec(W.properness_witness)}",
        "regular: yes",
        "chamber: " + " ".join("{" + ",".join(map(str, J)) + "}" for J in report["chamber_fingerprint"]),
        f"nonempty quotient: {'yes' if report['nonempty'] else 'no'}",
        f"free action: {'yes' if free else 'no'}",
    ]
    if "f_vector" in report:
        lines.append(f"f-vector: {_vec(report['f_vector'])}")
    if free:
        lines += [
            f"betti numbers: {_vec(report['betti'])}",
            f"euler characteristic: {report['euler']}",
            f"monotone: {'yes' if report['monotone'] else 'no'}",
        ]
    lines.append(f"minimal Chern number N = {report['minimal_chern_number']}")
    if free:
        lines += [
            "Lambda(tau) basis: " + " ".join(_vec(b) for b in report["lambda_tau_basis"]),
            "Lambda_eff generators: " + " ".join(_vec(g) for g in report["eff_generators"]),
        ]
    emit(args, report, lines)
    return EXIT_OK


def _alpha(args, P: Problem, W: tg.WeightSystem):
    if getattr(args, "ell", None) is not None:
        if len(args.ell) != W.n:
            raise ParseError(f"--ell needs {W.n} entries")
        return vi.ClassCombo.monomial(args.ell)
    if P.alpha is not None:
        return vi.ClassCombo.from_pairs(P.alpha)
    if P.ell is not None:
        return vi.ClassCombo.monomial(P.ell)
    raise ParseError("no class given: use --ell or put 'ell' or 'alpha' in the file")


def _lambda(args, P: Problem, W: tg.WeightSystem):
    lam = args.lam if getattr(args, "lam", None) is not None else P.lam
    if lam is None:
        lam = (0,) * W.k
    if len(lam) != W.k:
        raise ParseError(f"lambda needs {W.k} entries")
    return tuple(lam)


def _seed(args, P: Problem) -> int:
    if args.seed is not None:
        return args.seed
    return P.seed if P.seed is not None else 0


def cmd_invariant(args) -> int:
    P = load_problem(args.file)
    W = P.system()
    lam = _lambda(args, P, W)
    alpha = _alpha(args, P, W)
    mode = args.mode or P.mode or "direct"
    value = vi.invariant(W, P.tau, lam, alpha, mode=mode, seed=_seed(args, P),
                         cache_size=args.cache_size)
    emit(args, {"lambda": list(lam), "mode": mode, "value": value}, [fmt_rational(value)])
    return EXIT_OK


def cmd_wallcross(args) -> int:
    P = load_problem(args.file)
    W = P.system()
    lam = _lambda(args, P, W)
    alpha = _alpha(args, P, W)
    walls = tg.enumerate_walls(W)
    if args.wall is not None:
        if not 1 <= args.wall <= len(walls):
            raise ParseError(f"--wall must be between 1 and {len(walls)}")
        chosen = [(args.wall, walls[args.wall - 1])]
    else:
        chosen = list(enumerate(walls, start=1))
    reports, lines = [], []
    ok = True
    for idx, wall in chosen:
        r = vi.wallcross_check(W, wall, lam, alpha, seed=_seed(args, P))
        ok &= r.passed
        reports.append({"wall": idx, "indices": [i + 1 for i in wall.indices], "e1": list(r.e1),
                        "tau0": list(r.tau0), "epsilon": r.epsilon, "plus": r.plus,
                        "minus": r.minus, "reduced": r.reduced, "passed": r.passed})
        lines.append(f"wall {idx} {{{','.join(str(i + 1) for i in wall.indices)}}} e1={_vec(r.e1)}: "
                     f"{fmt_rational(r.plus)} - {fmt_rational(r.minus)} = {fmt_rational(r.reduced)} "
                     f"[{'pass' if r.passed else 'FAIL'}]")
    emit(args, {"lambda": list(lam), "walls": reports, "passed": ok}, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_cohomology(args) -> int:
    P = load_problem(args.file)
    W = P.system()
    pres = cr.classical_presentation(W, P.tau)
    betti = cr.betti_numbers(W, P.tau)
    report = pres.to_json()
    report["betti"] = list(betti)
    lines = cr.render_presentation(pres) + [f"betti numbers: {_vec(betti)}"]
    emit(args, report, lines)
    return EXIT_OK


def cmd_quantum(args) -> int:
    P = load_problem(args.file)
    W = P.system()
    pres = cr.batyrev_presentation(W)
    tau = tg.as_vector(W.total_weight)
    gens = tg.effective_cone(W, tau).eff_generators
    report = pres.to_json()
    report["eff_generators"] = [list(g) for g in gens]
    lines = cr.render_presentation(pres, None if args.symbolic else gens)
    status = EXIT_OK
    if args.verify:
        # the trial budget is shared round-robin between the relations
        count = len(pres.quantum)
        passed = 0
        bad = []
        for i, rel in enumerate(pres.quantum):
            share = args.verify // count + (1 if i < args.verify % count else 0)
            rep = cr.verify_quantum_relation(W, rel, share, seed=_seed(args, P) + i)
            passed += rep.passed
            bad += [{"relation": i + 1, "lambda": list(l1), "ell": list(e), "lhs": a, "rhs": b}
                    for l1, e, a, b in rep.counterexamples]
        total = args.verify if count else 0
        report["verified"] = {"passed": passed, "trials": total, "counterexamples": bad}
        lines.append(f"verified: {passed}/{total}")
        if bad:
            status = EXIT_VERIFY
    emit(args, report, lines)
    return status


def cmd_gw(args) -> int:
    P = load_problem(args.file)
    W = P.system()
    lam = _lambda(args, P, W)
    ell = args.ell if args.ell is not None else P.ell
    if ell is None or len(ell) != W.n:
        raise ParseError(f"--ell needs {W.n} entries")
    value = cr.gw_invariant(W, lam, ell)
    emit(args, {"lambda": list(lam), "ell": list(ell), "value": value}, [fmt_rational(value)])
    return EXIT_OK


def cmd_rank1(args) -> int:
    if any(w <= 0 for w in args.weights):
        raise ParseError("--weights must be positive integers")
    value = vi.rank1_genus_invariant(args.weights, args.d, args.g, parse_rational(args.tau))
    emit(args, {"weights": list(args.weights), "d": args.d, "g": args.g, "value": value},
         [fmt_rational(value)])
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="seed for path jitter and trials (default 0)")
    common.add_argument("--cache-size", type=int, default=None,
                        help="LRU budget of the rewriting memo (default unbounded)")

    parser = argparse.ArgumentParser(prog="toricvortex", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="geometry of the quotient")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("invariant", parents=[common], help="genus-zero invariant of a class")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", type=int_vector, help="lattice vector, e.g. --lambda=-1,1")
    p.add_argument("--ell", type=int_vector, help="exponents of the weight monomial")
    p.add_argument("--mode", choices=["direct", "wallcross", "checked"])
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("wallcross", parents=[common], help="check the wall-crossing identity")
    p.add_argument("file")
    p.add_argument("--wall", type=int, help="1-based wall index (default: all walls)")
    p.add_argument("--lambda", dest="lam", type=int_vector)
    p.add_argument("--ell", type=int_vector)
    p.set_defaults(func=cmd_wallcross)

    p = sub.add_parser("cohomology", parents=[common], help="classical cohomology presentation")
    p.add_argument("file")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("quantum", parents=[common], help="quantum cohomology presentation")
    p.add_argument("file")
    p.add_argument("--verify", type=int, default=0, metavar="TRIALS",
                   help="check the relations on this many random invariant identities")
    p.add_argument("--symbolic", action="store_true", help="print q^(lambda) instead of generator monomials")
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("gw", parents=[common], help="genus-zero Gromov-Witten invariant")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", type=int_vector)
    p.add_argument("--ell", type=int_vector)
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("rank1", parents=[common], help="circle action, any genus")
    p.add_argument("--weights", type=int_vector, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--tau", default="1")
    p.set_defaults(func=cmd_rank1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AlgorithmMismatch as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except DegeneratePath as exc:
        print(f"degenerate path: {exc}", file=sys.stderr)
        return EXIT_PATH
    except ToricError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
