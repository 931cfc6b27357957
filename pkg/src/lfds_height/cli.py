"""Command-line interface: ``lfds <subcommand> ...``.

Exit codes: 0 success, 1 verification failure (or a negative ``fps-test
--strict``), 2 input error, 3 capacity or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import BOUND_NAMES, all_bounds, is_fixed_point_system
from .errors import CapacityError, ConfigError, ParseError, UsageError
from .factorize import factor
from .harness import PRESET_Z25, PRESET_Z7560, MODES, ExperimentConfig, rows_to_csv, run_experiment
from .height import system_height
from .oracle import DEFAULT_CAP, enumerate_system
from .system import SystemSpec, load_system, parse_system
from .verification import run_verification

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


def analyze(sys_: SystemSpec) -> dict:
    """Everything ``lfds analyze --json`` prints, as plain data."""
    f = factor(sys_.n)
    b = all_bounds(sys_, f)
    h = system_height(sys_, f)
    return {
        "modulus": sys_.n,
        "dimension": sys_.m,
        "factorization": [[p, a] for p, a in f.factors],
        "per_prime": [
            {"p": t.p, "alpha": t.alpha, "s": t.s, "product": t.product} for t in b.per_prime
        ],
        "bounds": b.as_dict(),
        "height": h.system_height,
        "components": [
            {"p": c.p, "alpha": c.alpha, "height": c.height, "image_chain": list(c.image_chain)}
            for c in h.per_component
        ],
        "fixed_point_system": is_fixed_point_system(sys_, b.thm_b),
    }


ANALYZE_KEYS = ("modulus", "dimension", "factorization", "per_prime", "bounds",
                "height", "components", "fixed_point_system")


def validate_report(doc: dict) -> None:
    """Raise ``ParseError`` unless ``doc`` has the ``analyze --json`` layout."""
    def need(cond, what):
        if not cond:
            raise ParseError(f"invalid analysis report: {what}")

    need(isinstance(doc, dict) and set(doc) == set(ANALYZE_KEYS), "top-level keys")
    need(isinstance(doc["fixed_point_system"], bool), "fixed_point_system")
    for key in ("modulus", "dimension", "height"):
        need(type(doc[key]) is int, key)
    need(all(isinstance(x, list) and len(x) == 2 for x in doc["factorization"]),
         "factorization")
    need(all(set(t) == {"p", "alpha", "s", "product"} for t in doc["per_prime"]), "per_prime")
    need(set(doc["bounds"]) == {"thm_b", "thm_a", "m_omega", "xu_zou"}, "bounds")
    need(all(set(c) == {"p", "alpha", "height", "image_chain"} for c in doc["components"]),
         "components")


def _format_analysis(doc: dict) -> str:
    fact = " * ".join(f"{p}^{a}" for p, a in doc["factorization"])
    lines = [
        f"system: (Z_{doc['modulus']}^{doc['dimension']}, A)",
        f"factorization: {fact}",
        "per prime (p, alpha, s, alpha*s):",
    ]
    lines += [f"  {t['p']:>6} {t['alpha']:>3} {t['s']:>3} {t['product']:>4}"
              for t in doc["per_prime"]]
    b = doc["bounds"]
    lines += [
        f"bounds: thm_b={b['thm_b']} thm_a={b['thm_a']} m_omega={b['m_omega']} "
        f"xu_zou={b['xu_zou']}",
        f"exact height: {doc['height']}",
        "component heights: "
        + ", ".join(f"{c['p']}^{c['alpha']}:{c['height']}" for c in doc["components"]),
        f"fixed point system: {'yes' if doc['fixed_point_system'] else 'no'}",
    ]
    return "\n".join(lines)


def _read_system(args) -> SystemSpec:
    if args.system is not None:
        return parse_system(args.system)
    if args.input is None:
        raise ParseError("no system given (use --input PATH or --system TEXT)")
    if args.input == "-":
        return parse_system(sys.stdin.read())
    return load_system(args.input)


def cmd_analyze(args) -> int:
    doc = analyze(_read_system(args))
    print(json.dumps(doc, indent=2) if args.json else _format_analysis(doc))
    return EXIT_OK


def cmd_height(args) -> int:
    s = _read_system(args)
    h = system_height(s, factor(s.n))
    if args.json:
        print(json.dumps({
            "height": h.system_height,
            "components": [{"p": c.p, "alpha": c.alpha, "height": c.height,
                            "image_chain": list(c.image_chain)} for c in h.per_component],
        }, indent=2))
    else:
        print(h.system_height)
        for c in h.per_component:
            chain = " ".join(map(str, c.image_chain))
            print(f"  {c.p}^{c.alpha}: height {c.height}, |im A^k| = {chain}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    s = _read_system(args)
    b = all_bounds(s, factor(s.n))
    if args.json:
        doc = b.as_dict()
        doc["per_prime"] = [{"p": t.p, "alpha": t.alpha, "s": t.s, "product": t.product}
                            for t in b.per_prime]
        print(json.dumps(doc, indent=2))
    else:
        for key, value in b.as_dict().items():
            print(f"{key}: {value}")
        for t in b.per_prime:
            print(f"  p={t.p} alpha={t.alpha} s={t.s} alpha*s={t.product}")
    return EXIT_OK


def cmd_fps_test(args) -> int:
    s = _read_system(args)
    k = all_bounds(s, factor(s.n)).select(args.bound)
    verdict = is_fixed_point_system(s, k)
    if args.json:
        print(json.dumps({"bound": args.bound, "k": k, "fixed_point_system": verdict}))
    else:
        print(f"A^{k + 1} {'==' if verdict else '!='} A^{k} ({args.bound}): "
              f"{'fixed point system' if verdict else 'not a fixed point system'}")
    return EXIT_FAIL if args.strict and not verdict else EXIT_OK


def cmd_sample(args) -> int:
    presets = {"z25": PRESET_Z25, "z7560": PRESET_Z7560}
    base = presets[args.preset] if args.preset else None
    if base is None and (args.modulus is None or args.dim is None):
        raise ConfigError("sample needs --preset or both --modulus and --dim")
    cfg = ExperimentConfig(
        n=args.modulus if args.modulus is not None else base.n,
        m=args.dim if args.dim is not None else base.m,
        count=args.count if args.count is not None else (base.count if base else 100),
        seed=args.seed if args.seed is not None else (base.seed if base else 0),
        mode=args.mode or (base.mode if base else "uniform"),
    )
    text = rows_to_csv(run_experiment(cfg))
    if args.output and args.output != "-":
        Path(args.output).write_text(text, newline="")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def graph_dot(g) -> str:
    """DOT rendering: one node per state, edge x -> f(x), cycle periods as attributes."""
    lines = [f'digraph "Z_{g.n}^{g.m}" {{']
    for x in range(g.size):
        label = "(" + ",".join(map(str, g.coords(x))) + ")"
        attrs = f'label="{label}"'
        if g.period_of[x]:
            attrs += f", period={int(g.period_of[x])}, shape=doublecircle"
        lines.append(f"  {x} [{attrs}];")
    for x in range(g.size):
        lines.append(f"  {x} -> {int(g.successor[x])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_graph(args) -> int:
    s = _read_system(args)
    g = enumerate_system(s, args.cap)
    if args.dot:
        sys.stdout.write(graph_dot(g))
    else:
        for x in range(g.size):
            tag = f" period={int(g.period_of[x])}" if g.period_of[x] else \
                f" height={int(g.height_of[x])}"
            print(f"{g.coords(x)} -> {g.coords(g.successor[x])}{tag}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_verification(args.count, args.seed, args.cap, args.inject_fault)
    status = EXIT_OK
    for r in results:
        print(r.summary())
        for sys_, reports in r.failures:
            status = EXIT_FAIL
            print(f"  system: {sys_.to_json()}")
            for rep in reports:
                print(f"    {rep}")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lfds", description="Heights and height bounds of linear systems (Z_n^m, A).")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("--input", help="system file (JSON or text); '-' for stdin")
        p.add_argument("--system", help="inline system, same formats as --input")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    with_input(sub.add_parser("analyze", help="full report")).set_defaults(func=cmd_analyze)
    with_input(sub.add_parser("height", help="exact height")).set_defaults(func=cmd_height)
    with_input(sub.add_parser("bounds", help="all height bounds")).set_defaults(func=cmd_bounds)

    p = with_input(sub.add_parser("fps-test", help="test A^(k+1) == A^k"))
    p.add_argument("--bound", choices=BOUND_NAMES, default="thm-b")
    p.add_argument("--strict", action="store_true", help="exit 1 when not a fixed point system")
    p.set_defaults(func=cmd_fps_test)

    p = sub.add_parser("sample", help="bound comparison on sampled matrices (CSV)")
    p.add_argument("--preset", choices=("z25", "z7560"))
    p.add_argument("--modulus", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--output", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sample)

    p = with_input(sub.add_parser("graph", help="explicit state space"))
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify", help="run the brute-force lemma suites")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CapacityError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
