"""Command line interface.

Exit status is 0 on success, 1 when a check is falsified or input cannot be
parsed, and 2 when a budget runs out.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Callable, Sequence

from . import adjectives, backtrack, dynamics, variations, verify
from .errors import BudgetExceeded, PreconditionError
from .multiset import Multiset, NotationError, format_notation, parse_notation, parse_repeat

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_BUDGET = 2

# built-in values for flags that may also come from --config
DEFAULTS = {
    "format": "text",
    "max_iters": dynamics.DEFAULT_MAX_ITERS,
    "max_order": 6,
    "max_elem": 7,
    "budget": 100_000,
    "preset": "classic",
    "seed": None,
    "workers": os.cpu_count() or 1,
    "max_depth": 2,
    "n": None,
    "length": 17,
    "k_max": 40,
}


class Falsified(Exception):
    """A verification found a counterexample."""


def read_config(path: str) -> dict[str, str]:
    """Parse ``key=value`` lines; keys are long flag names."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            out[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return out


def _resolve(args: argparse.Namespace, config: dict[str, str]) -> None:
    for key, default in DEFAULTS.items():
        if getattr(args, key, "absent") is None:
            if key in config:
                raw = config[key]
                value = int(raw) if isinstance(default, int) or key == "n" else raw
            else:
                value = default
            setattr(args, key, value)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(data) -> None:
    _emit(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


def _start(args: argparse.Namespace) -> Multiset:
    if getattr(args, "repeat", None):
        return parse_repeat(args.repeat)
    text = args.notation if args.notation is not None else args.seed
    if text is None:
        raise PreconditionError("give a multiset in Integer Notation or --repeat")
    S = parse_notation(text)
    if not S:
        logging.getLogger("inventory").warning("empty input: the empty multiset is its own image")
    return S


def _need_format(args: argparse.Namespace, *allowed: str) -> None:
    if args.format not in allowed:
        raise PreconditionError(f"{args.command} supports --format {'|'.join(allowed)}")


# ---------------------------------------------------------------- commands


def cmd_iterate(args: argparse.Namespace) -> int:
    _need_format(args, "text", "json")
    S = _start(args)
    states = [S]
    for _ in range(args.steps if args.steps is not None else args.max_iters):
        states.append(dynamics.step(states[-1]))
    if args.format == "json":
        _dump([format_notation(T) for T in states])
    else:
        for i, T in enumerate(states):
            _emit(f"S_{i}  {format_notation(T) or '(empty)'}")
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace) -> int:
    _need_format(args, "text", "json")
    report = dynamics.orbit(_start(args), args.max_iters)
    if args.format == "json":
        _dump(report.to_json())
        return EXIT_OK
    _emit(f"start {format_notation(report.start) or '(empty)'}")
    for g in report.trace:
        _emit(f"S_{g.index}  {format_notation(g.state) or '(empty)'}  order {g.order}  height {g.height}")
    _emit(f"preperiod {report.preperiod}, period {report.period}")
    if report.period == 1:
        S = report.loop[0]
        _emit(f"fixed point {format_notation(S)}, read aloud {dynamics.describe(S)}")
    else:
        _emit("loop " + " -> ".join(format_notation(S) for S in report.loop))
    return EXIT_OK


def cmd_loops(args: argparse.Namespace) -> int:
    if args.format == "dot":
        _emit(adjectives.gn_dot(args.n or 7))
        return EXIT_OK
    ns = [args.n] if args.n else list(range(1, 8))
    cycles = {n: adjectives.find_gn_cycles(n) for n in ns}
    if args.format == "json":
        _dump({str(n): [[format_notation(S) for S in c] for c in cs] for n, cs in cycles.items()})
        return EXIT_OK
    for n, cs in cycles.items():
        for c in cs:
            _emit(f"g_{n}: " + " -> ".join(format_notation(S) for S in c))
    _emit(f"total {sum(len(cs) for cs in cycles.values())} cycles")
    return EXIT_OK


def cmd_ancestry(args: argparse.Namespace) -> int:
    tree = dynamics.ancestry_tree(_start(args), args.max_depth, args.budget)
    if args.format == "dot":
        _emit(tree.to_dot())
    elif args.format == "json":
        _dump(tree.to_json())
    else:
        for d, gen in enumerate(tree.generations):
            members = " ".join(format_notation(S) or "(empty)" for S in sorted(gen))
            _emit(f"generation -{d} ({len(gen)}): {members}")
        for d in range(1, len(tree.generations)):
            _emit(f"without parents at -{d}: {len(tree.orphans(d))}")
    return EXIT_OK


def _parse_edge(text: str) -> tuple[Multiset, Multiset]:
    left, sep, right = text.replace("→", "->").partition("->")
    if not sep:
        raise PreconditionError(f"edge {text!r} should look like 222->4")
    return backtrack.parse_core(left), backtrack.parse_core(right)


def cmd_backtrack(args: argparse.Namespace) -> int:
    edge = _parse_edge(args.edge)
    if args.new:
        new = frozenset(backtrack.TOP if t.strip() == "m" else int(t) for t in args.new.split(",") if t.strip())
        edge = (*edge, new)
    tree = backtrack.backtrack_tree(edge, args.budget)
    if args.format == "dot":
        _emit(tree.to_dot())
    elif args.format == "json":
        _dump(tree.to_json())
    else:
        R, R2, new = tree.edge
        label = ",".join(sorted("m" if t == backtrack.TOP else str(t) for t in new))
        _emit(f"edge {backtrack.core_label(R)}->{backtrack.core_label(R2)} with new values {label}")
        _emit(f"nodes {tree.node_count} (plus {len(tree.nodes) - tree.node_count} contradiction leaves)")
        _emit(f"height {tree.height}")
        _emit(f"max occurrences on a path {tree.max_occurrences}")
        _emit(f"valid for n >= {tree.valid_from}")
    return EXIT_OK


def _verify_sweep(args: argparse.Namespace):
    summary = verify.exhaustive_sweep(args.max_order, args.max_elem, args.workers)
    return summary.to_json(), True


def _verify_heights(args: argparse.Namespace):
    table = verify.HEIGHT_TABLE_AMENDED if args.amended else verify.HEIGHT_TABLE
    report = verify.check_height_exceptions(table=table)
    return report.to_json(), report.passed


def _verify_bound(args: argparse.Namespace):
    report = verify.check_pre_period(_start(args))
    return report.to_json(), report.passed


def _verify_sharp(args: argparse.Namespace):
    rows = []
    for fam in verify.SharpFamily:
        for k in range(max(fam.floor, 7), args.k_max + 1):
            S0, expected = verify.sharp_family(fam, k)
            measured = dynamics.orbit(S0).preperiod
            rows.append({"family": fam.pattern, "k": k, "expected": expected, "measured": measured,
                         "ok": measured == expected})
    return rows, all(r["ok"] for r in rows)


def _verify_predict(args: argparse.Namespace):
    S0 = _start(args)
    pred = verify.predict_period(S0)
    actual = dynamics.orbit(S0).period
    data = pred.to_json()
    data["measured_period"] = actual
    return data, not pred.failed and pred.period == actual


def _verify_classify(args: argparse.Namespace):
    report = dynamics.orbit(_start(args), args.max_iters)
    cls = verify.classify_loop(report.loop)
    data = cls.to_json()
    data["loop"] = [format_notation(S) for S in report.loop]
    return data, True


def _verify_recurrence(args: argparse.Namespace):
    return verify.theorem65_sequence(args.length), True


VERIFY: dict[str, Callable] = {
    "sweep": _verify_sweep,
    "heights": _verify_heights,
    "bound": _verify_bound,
    "sharp": _verify_sharp,
    "predict": _verify_predict,
    "classify": _verify_classify,
    "recurrence": _verify_recurrence,
}


def cmd_verify(args: argparse.Namespace) -> int:
    _need_format(args, "text", "json")
    try:
        data, ok = VERIFY[args.check](args)
    except verify.SweepFailure as exc:
        _dump({"passed": False, "counterexample": exc.to_json()})
        return EXIT_FALSIFIED
    except verify.UnclassifiableLoop as exc:
        _dump({"passed": False, "error": str(exc)})
        return EXIT_FALSIFIED
    if args.format == "json":
        _dump({"passed": ok, "result": data})
    else:
        _emit(_text(data))
        _emit("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FALSIFIED


def _text(data) -> str:
    if isinstance(data, list):
        return "\n".join(_text(x) if isinstance(x, (dict, list)) else str(x) for x in data)
    if isinstance(data, dict):
        return "  ".join(f"{k}={json.dumps(v, sort_keys=True, ensure_ascii=False)}" for k, v in data.items())
    return str(data)


def _seed(text: str, cfg: variations.VariationConfig) -> variations.Sigma:
    text = text.strip()
    if "->" in text or "→" in text:
        return variations.Sigma.parse(text)
    if text.startswith("digits:"):
        return variations.sigma_from_digits(text[len("digits:"):])
    if text.startswith("{"):
        counts: dict[int, int] = {}
        for tok in text.strip("{}").split(","):
            if tok.strip():
                x = int(tok)
                counts[x] = counts.get(x, 0) + 1
        return variations.sigma_from_multiset(counts)
    if cfg.domain.finite:
        return variations.sigma_from_digits(text)
    return variations.sigma_from_multiset(parse_notation(text))


def cmd_variation(args: argparse.Namespace) -> int:
    _need_format(args, "text", "json")
    cfg = variations.preset(args.preset)
    if args.action == "search":
        seeds = variations.small_seeds(cfg, args.max_order, args.max_elem)
        results = variations.divergence_search(cfg, seeds, args.max_iters)
        open_ = [(s, o) for s, o in results if isinstance(o, variations.NoCycleWithin)]
        if args.format == "json":
            _dump({
                "config": cfg.describe(),
                "seeds": len(results),
                "looped": len(results) - len(open_),
                "no_cycle_within_budget": [
                    {"seed": s.render(), "budget": o.budget, "monotone_growth": o.monotone} for s, o in open_
                ],
                "note": "no-cycle verdicts are heuristic",
            })
        else:
            _emit(cfg.describe())
            _emit(f"seeds {len(results)}, looped {len(results) - len(open_)}, "
                  f"no cycle within {args.max_iters} steps {len(open_)} (heuristic)")
            for s, o in open_:
                _emit(f"  {s.render()}  monotone growth: {'yes' if o.monotone else 'no'}")
        return EXIT_OK
    if args.seed is None:
        raise PreconditionError("variation orbit needs --seed")
    run = variations.variation_orbit(_seed(args.seed, cfg), cfg, args.max_iters)
    if args.format == "json":
        data = run.to_json()
        data["config"] = cfg.describe()
        _dump(data)
    else:
        _emit(cfg.describe())
        for i, s in enumerate(run.states):
            _emit(f"sigma_{i}: {s.render()}")
        if isinstance(run.outcome, variations.Looped):
            _emit(f"preperiod {run.outcome.preperiod}, period {run.outcome.period}")
        else:
            _emit(f"no cycle within {run.outcome.budget} steps (heuristic verdict)")
    return EXIT_OK if isinstance(run.outcome, variations.Looped) else EXIT_BUDGET


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    """Usage errors count as parse errors; status 2 is kept for budgets."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FALSIFIED, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="inventory", description="Inventory sequences on multisets.")
    parser.add_argument("--config", metavar="PATH", help="key=value file supplying flag defaults")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, fmt: str = "json|text") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=fmt.split("|"), default=None)
        p.set_defaults(func=func)
        return p

    def start_args(p: argparse.ArgumentParser, required: bool = False) -> None:
        p.add_argument("notation", nargs=None if required else "?", default=None,
                       help="multiset in Integer Notation, e.g. 113777(12)(77)")
        p.add_argument("--repeat", metavar="EXPR", help="build the start from k{x,y}+... terms")
        p.add_argument("--seed", default=None, help="start in Integer Notation (alternative to the positional)")

    p = add("iterate", cmd_iterate, "print successive generations")
    start_args(p)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--max-iters", type=int, default=None)

    p = add("orbit", cmd_orbit, "iterate to the loop and report pre-period and period")
    start_args(p)
    p.add_argument("--max-iters", type=int, default=None)

    p = add("loops", cmd_loops, "cycles of the adjective map g_n", "json|dot|text")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)

    p = add("ancestry", cmd_ancestry, "preimage tree", "json|dot|text")
    start_args(p)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)

    p = add("backtrack", cmd_backtrack, "backtracking tree for a mature core edge", "json|dot|text")
    p.add_argument("edge", help="core transition such as 222->4 or 24->22")
    p.add_argument("--new", help="values new at the transition, e.g. 2,m (default: m alone)")
    p.add_argument("--budget", type=int, default=None)

    p = add("verify", cmd_verify, "check enumerations and bounds against computation")
    p.add_argument("check", choices=sorted(VERIFY))
    start_args(p)
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--max-elem", type=int, default=None)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--length", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--amended", action="store_true", help="heights: use 11133 for the repeated 111333 under S_5")

    p = add("variation", cmd_variation, "generalized game on functions")
    p.add_argument("action", choices=["orbit", "search"], nargs="?", default="orbit")
    p.add_argument("--preset", default=None,
                   help="classic|stig|nounless10|oeig:R|significance:LIST|floor:-1")
    p.add_argument("--seed", default=None,
                   help="Integer Notation, {x,y,...}, digits:DDDD, or a function like '0->0, *->1'")
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--max-elem", type=int, default=None)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        config = read_config(args.config) if args.config else {}
        _resolve(args, config)
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotationError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
