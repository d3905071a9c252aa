"""Command line surface.

Exit codes: 0 success (or verification pass), 1 verification mismatch,
2 usage or syntax problem, 3 inconsistent base. Standard output carries
only the result payload; progress and summaries go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io as formats
from .compiler import (
    Ordering,
    compile_network,
    conditional_possibility,
    hidden_parent_closure,
    immediate_parents,
)
from .errors import (
    DomainError,
    InconsistentBaseError,
    NetworkSchemaError,
    ParseError,
    PosslogError,
)
from .marginalize import marginal_base
from .model import And, Literal, Var, WeightedBase, Interpretation
from .normalize import remove_subsumed, remove_tautologies, to_clausal
from .oracle import DEFAULT_WEIGHT_POOL, random_base, verify_compilation
from .semantics import (
    inconsistency_degree,
    necessity,
    possibility,
    world_possibility,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3


class _UsageError(PosslogError):
    pass


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _UsageError(f"cannot write {path}: {exc}") from exc


def _load_clausal(path: str) -> WeightedBase:
    return remove_tautologies(to_clausal(formats.parse_base(_read(path))))


def _require_consistent(b: WeightedBase) -> None:
    inc = inconsistency_degree(b)
    if inc != 0:
        raise InconsistentBaseError(inc)


def _parse_order(flag: str | None, base: WeightedBase) -> Ordering:
    if flag is None:
        return Ordering(base.variables)
    names = [s.strip() for s in flag.split(",") if s.strip()]
    known = {v.name: v for v in base.variables}
    missing = [n for n in names if n not in known]
    if missing:
        raise _UsageError(f"unknown variable(s) in --order: {', '.join(missing)}")
    order = Ordering(tuple(known[n] for n in names))
    order.validate_for(base.variables)
    return order


def _parse_world(text: str, base: WeightedBase) -> Interpretation:
    known = {v.name: v for v in base.variables}
    assignment: dict[Var, bool] = {}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        positive = not token.startswith("!")
        name = token[1:] if not positive else token
        if name not in known:
            raise _UsageError(f"unknown variable {name!r} in world")
        var = known[name]
        if var in assignment:
            raise _UsageError(f"variable {name!r} assigned twice")
        assignment[var] = positive
    missing = [v.name for v in base.variables if v not in assignment]
    if missing:
        raise _UsageError(f"world misses variable(s): {', '.join(missing)}")
    return Interpretation.from_assignment(base.variables, assignment)


def _context_literals(text: str) -> list[Literal]:
    f = formats.parse_formula(text)
    parts = list(f.parts) if isinstance(f, And) else [f]
    literals = []
    for p in parts:
        if not isinstance(p, Literal):
            raise _UsageError("context must be a conjunction of literals")
        literals.append(p)
    return literals


def _print_value(value: Fraction, decimal: bool) -> None:
    if decimal:
        print(f"{value} {float(value):.6f}")
    else:
        print(value)


def cmd_compile(args) -> int:
    base = formats.parse_base(_read(args.base))
    order = _parse_order(args.order, base)

    def log(stage):
        parents = " ".join(
            p.name for p in sorted(stage.parent_set.parents, key=order.position)
        )
        print(
            f"[{stage.index + 1}/{len(order.sequence)}] {order.sequence[stage.index]}:"
            f" parents=[{parents}] cpt={stage.cpt_cells} cells,"
            f" stage={stage.stage_entries} -> marginal={stage.marginal_entries} entries",
            file=sys.stderr,
        )

    net = compile_network(base, order, on_stage=log)
    _write(args.out, formats.serialize_network(net))
    if args.dot:
        _write(args.dot, formats.export_dot(net))
    return EXIT_OK


def cmd_query(args) -> int:
    base = _load_clausal(args.base)
    _require_consistent(base)
    formula = formats.parse_formula(args.formula)
    if args.mode == "pi":
        value = possibility(base, formula)
    elif args.mode == "nec":
        value = necessity(base, formula)
    else:
        if args.context is None:
            raise _UsageError("cond mode requires --context")
        if not isinstance(formula, Literal):
            raise _UsageError("cond mode expects a single literal to condition")
        value = conditional_possibility(base, formula, _context_literals(args.context))
    _print_value(value, args.decimal)
    return EXIT_OK


def cmd_eval(args) -> int:
    base = formats.parse_base(_read(args.base))
    world = _parse_world(args.world, base)
    _print_value(world_possibility(base, world), args.decimal)
    return EXIT_OK


def cmd_marginalize(args) -> int:
    base = _load_clausal(args.base)
    known = {v.name: v for v in base.variables}
    if args.var not in known:
        raise _UsageError(f"unknown variable {args.var!r}")
    _require_consistent(base)
    print(formats.serialize_base(marginal_base(base, known[args.var])), end="")
    return EXIT_OK


def cmd_parents(args) -> int:
    base = _load_clausal(args.base)
    _require_consistent(base)
    order = _parse_order(args.order, base)
    known = {v.name: v for v in base.variables}
    if args.var not in known:
        raise _UsageError(f"unknown variable {args.var!r}")
    target = known[args.var]
    stage = remove_subsumed(base)
    for var in order.sequence:
        if var == target:
            parents = hidden_parent_closure(stage, var, immediate_parents(stage, var))
            print(" ".join(p.name for p in sorted(parents, key=order.position)))
            return EXIT_OK
        stage = marginal_base(stage, var)
    raise _UsageError(f"variable {args.var!r} not reached by the ordering")


def cmd_verify(args) -> int:
    base = formats.parse_base(_read(args.base))
    net = formats.parse_network(_read(args.network))
    if set(base.variables) != set(net.variables):
        raise _UsageError("base and network are over different variables")
    report = verify_compilation(base, net)
    if report.ok:
        print("distributions match", file=sys.stderr)
        return EXIT_OK
    for mismatch in report.mismatches[:10]:
        print(mismatch)
    print(f"{len(report.mismatches)} mismatching world(s)", file=sys.stderr)
    return EXIT_MISMATCH


def cmd_gen(args) -> int:
    pool = DEFAULT_WEIGHT_POOL
    if args.weights:
        pool = [w.strip() for w in args.weights.split(",") if w.strip()]
    base = random_base(args.seed, args.vars, args.clauses, weight_pool=pool)
    _write(args.out, formats.serialize_base(base))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posslog",
        description="Exact possibilistic-logic toolkit: compile weighted bases "
        "into product-based possibilistic networks and query them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a base into a network")
    p.add_argument("base", help="path to the base file")
    p.add_argument("-o", "--out", default="-", help="output path (default stdout)")
    p.add_argument("--order", help="comma-separated elimination order (default: declaration order)")
    p.add_argument("--dot", help="also write a DOT rendering to this path")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("query", help="possibility / necessity / conditional queries")
    p.add_argument("base")
    p.add_argument("mode", choices=("pi", "nec", "cond"))
    p.add_argument("formula")
    p.add_argument("--context", help="conjunction of literals (cond mode)")
    p.add_argument("--decimal", action="store_true", help="append a 6-digit approximation")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("eval", help="degree of a single world")
    p.add_argument("base")
    p.add_argument("world", help='total assignment, e.g. "se,!wi,su"')
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("marginalize", help="forget a variable syntactically")
    p.add_argument("base")
    p.add_argument("var")
    p.set_defaults(func=cmd_marginalize)

    p = sub.add_parser("parents", help="parent set of a variable at its stage")
    p.add_argument("base")
    p.add_argument("var")
    p.add_argument("--order")
    p.set_defaults(func=cmd_parents)

    p = sub.add_parser("verify", help="check a network against a base, world by world")
    p.add_argument("base")
    p.add_argument("network")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random consistent base")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--clauses", type=int, required=True)
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--weights", help="comma-separated weight pool, e.g. '1/3,2/3'")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, NetworkSchemaError, _UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentBaseError as exc:
        print(f"error: Inc = {exc.degree}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
