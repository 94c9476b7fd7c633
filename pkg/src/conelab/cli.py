"""``conelab`` command line.

Exit status: 0 when every checked property holds, 1 when some property
fails (the report lists replayable witnesses), 2 for bad input or usage.
With ``--json`` the report is printed as JSON and is byte-identical across
runs with the same arguments; timings appear only in human output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import io
from .barycenter import pipeline_barycenter, uniqueness_sweep
from .cone import (
    SemilatticeCone,
    barycenter_support_sup,
    brute_force_dual,
    check_cone_axioms,
    check_functional_sum_law,
    is_barycenter,
    linear_separation_witness,
)
from .errors import ConelabError, InvariantViolation, SizeError
from .extrat import fmt, scalar
from .generate import random_lattice, random_valuation, valuation_grid
from .monad import check_algebra, check_monad_laws, multiply, sample_nested
from .poset import DEFAULT_MAX_UPSETS, FinitePoset
from .powercone import DEFAULT_MAX_SMYTH, enumerate_smyth, jia_check
from .report import Report
from .valuation import (
    check_valuation,
    integrate,
    layer_cake_integral,
    stochastic_witness,
    table_to_weights,
    valuation_table,
)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(ConelabError):
    pass


# -- helpers -------------------------------------------------------------------


def _cone(config) -> SemilatticeCone:
    if not config.cone:
        raise UsageError("--cone is required")
    return SemilatticeCone(io.load_poset(config.cone))


def _context_poset(config) -> FinitePoset | None:
    path = getattr(config, "cone", None) or getattr(config, "poset", None)
    return io.load_poset(path) if path else None


def _element(poset: FinitePoset, name: str) -> int:
    try:
        return poset.index(name)
    except ConelabError:
        raise UsageError(f"unknown element {name!r}") from None


def _upset_bound(config) -> int:
    return config.max_size or DEFAULT_MAX_UPSETS


def _smyth(cone: SemilatticeCone, config):
    return enumerate_smyth(cone, config.max_size or DEFAULT_MAX_SMYTH)


def _parse_grid(text: str) -> list[Fraction]:
    try:
        return [scalar(part) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None


# -- verbs ---------------------------------------------------------------------


def cmd_poset_check(config) -> Report:
    poset = io.load_poset(config.file)
    report = Report("poset check")
    report.result = {
        "size": poset.size,
        "is_lattice": poset.is_lattice(),
        "opens": len(poset.enumerate_upsets(_upset_bound(config))),
        "covers": io.poset_to_json(poset)["covers"],
    }
    return report


def cmd_poset_opens(config) -> Report:
    poset = io.load_poset(config.file)
    report = Report("poset opens")
    report.result = [poset.label(u) for u in poset.enumerate_upsets(_upset_bound(config))]
    return report


def cmd_valuation_check(config) -> Report:
    path = Path(config.file)
    raw = io._read_json(path)
    poset = _context_poset(config)
    if isinstance(raw, dict) and "table" in raw:
        table = io.load_table(path, poset)
    else:
        table = valuation_table(io.load_valuation(path, poset))
    report = check_valuation(table)
    report.verb = "valuation check"
    report.stats["opens"] = len(table.values)
    report.result = {"context": table.poset}
    return report


def cmd_valuation_weights(config) -> Report:
    table = io.load_table(config.file, _context_poset(config))
    nu = table_to_weights(table)
    report = Report("valuation weights")
    report.result = io.valuation_to_json(nu)
    return report


def cmd_stochastic_leq(config) -> Report:
    poset = _context_poset(config)
    mu = io.load_valuation(config.mu, poset)
    nu = io.load_valuation(config.nu, poset or mu.poset)
    witness = stochastic_witness(mu, nu)
    report = Report("stochastic-leq")
    report.checked = len(mu.poset.opens)
    report.result = {"leq": witness is None, "context": mu.poset}
    if witness is not None:
        report.fail("stochastic-order", U=witness, mu_U=mu(witness), nu_U=nu(witness))
    return report


def cmd_integrate(config) -> Report:
    nu = io.load_valuation(config.nu, _context_poset(config))
    h_source = config.h
    if Path(h_source).is_file():
        h_data = io._read_json(h_source)
    else:
        try:
            h_data = json.loads(h_source)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--h: neither a file nor inline JSON ({exc.msg})") from None
    if not isinstance(h_data, dict):
        raise UsageError("--h must map element names to values")
    h = io.parse_weights(h_data, nu.poset, "--h").weights
    value = integrate(h, nu)
    oracle = layer_cake_integral(h, nu)
    report = Report("integrate")
    report.require(value == oracle, "layer-cake", weighted_sum=value, layer_cake=oracle)
    report.result = {"integral": fmt(value)}
    return report


def cmd_cone_check(config) -> Report:
    cone = _cone(config)
    pairs = []
    for chunk in (config.scalars or "").split(";"):
        if chunk.strip():
            parts = chunk.split(",")
            if len(parts) != 2:
                raise UsageError(f"bad scalar pair {chunk!r}; expected 'a,b'")
            pairs.append((_parse_grid(parts[0])[0], _parse_grid(parts[1])[0]))
    report = check_cone_axioms(cone, pairs)
    report.verb = "cone check"
    report.result = {"context": cone.lattice}
    return report


def cmd_cone_dual(config) -> Report:
    cone = _cone(config)
    report = Report("cone dual")
    listed = sorted(f.values for f in cone.dual)
    oracle = sorted(brute_force_dual(cone))
    report.require(listed == oracle, "completeness", listed=len(listed), brute_force=len(oracle))
    report.absorb(check_functional_sum_law(cone))
    report.result = [
        {"anchor": cone.names[f.anchor], "values": {cone.names[x]: fmt(v) for x, v in enumerate(f.values)}}
        for f in cone.dual
    ]
    return report


def cmd_separate(config) -> Report:
    cone = _cone(config)
    x, y = _element(cone.lattice, config.x), _element(cone.lattice, config.y)
    functional = linear_separation_witness(cone, x, y)
    report = Report("separate")
    report.require(functional(x) <= 1 < functional(y), "separation", x=x, y=y)
    report.result = {
        "functional": {"dual": cone.names[functional.anchor]},
        "at_x": fmt(functional(x)),
        "at_y": fmt(functional(y)),
    }
    return report


def cmd_barycenter(config) -> Report:
    cone = _cone(config)
    nu = io.load_valuation(config.nu, cone.lattice)
    report = Report("barycenter")
    result: dict = {}
    closed = pipe = None
    if config.method in ("support-sup", "both"):
        closed = barycenter_support_sup(cone, nu)
        result["support-sup"] = cone.names[closed]
        report.require(bool(is_barycenter(cone, nu, closed)), "definition", nu=nu, candidate=closed)
    if config.method in ("pipeline", "both"):
        pipe, trace = pipeline_barycenter(cone, nu, _smyth(cone, config))
        result["pipeline"] = cone.names[pipe]
        if config.trace:
            result["trace"] = {
                "nu": io.valuation_to_json(trace.nu),
                "pushed": io.valuation_to_json(trace.pushed),
                "Q": io.jsonable(trace.alpha_result),
                "witness": cone.names[trace.witness],
            }
    if closed is not None and pipe is not None:
        report.require(closed == pipe, "agreement", nu=nu, support_sup=closed, pipeline=pipe)
    result["context"] = cone.lattice
    report.result = result
    return report


def cmd_powercone_enumerate(config) -> Report:
    cone = _cone(config)
    smyth = _smyth(cone, config)
    as_cone = smyth.as_cone
    report = Report("powercone enumerate")
    report.result = {
        "elements": [io.jsonable(q) for q in smyth.elements],
        "order": io.poset_to_json(as_cone.lattice)["covers"],
        "zero": as_cone.names[as_cone.zero],
    }
    return report


def cmd_powercone_jia(config) -> Report:
    cone = _cone(config)
    smyth = _smyth(cone, config)
    if config.q:
        members = frozenset(_element(cone.lattice, n) for n in config.q.split(","))
        targets = [smyth.elements[smyth.index(members)]]
    else:
        targets = list(smyth.elements)
    report = Report("powercone jia")
    verdicts = []
    for q in targets:
        verdict = jia_check(cone, q)
        principal_shape = len(q.minimal) == 1
        report.require(
            (verdict.principal is not None) == principal_shape, "linear-iff-principal", Q=q.members
        )
        if verdict.certificate is not None:
            f1, f2, p1, p2, p12 = verdict.certificate
            report.require(p12 != p1 + p2, "certificate-recheck", Q=q.members)
        verdicts.append(io.jsonable(verdict))
    report.stats["principal"] = sum(v["verdict"] == "principal" for v in verdicts)
    report.stats["not_linear"] = len(verdicts) - report.stats["principal"]
    report.result = {"verdicts": verdicts, "context": cone.lattice}
    return report


def cmd_monad_laws(config) -> Report:
    path = config.poset or config.cone
    if not path:
        raise UsageError("--poset is required")
    poset = io.load_poset(path)
    report = check_monad_laws(poset, samples=config.samples, seed=config.seed)
    report.verb = "monad-laws"
    report.result = {"context": poset}
    return report


def _beta(cone: SemilatticeCone, method: str) -> Callable:
    if method == "pipeline":
        smyth = enumerate_smyth(cone)
        return lambda nu: pipeline_barycenter(cone, nu, smyth)[0]
    return lambda nu: barycenter_support_sup(cone, nu)


def cmd_algebra_check(config) -> Report:
    cone = _cone(config)
    rng = random.Random(config.seed)
    sample = [sample_nested(cone.lattice, rng) for _ in range(config.samples)]
    method = "support-sup" if config.method == "both" else config.method
    report = check_algebra(cone, _beta(cone, method), sample)
    report.verb = "algebra-check"
    report.result = {"context": cone.lattice}
    return report


def cmd_multiply(config) -> Report:
    phi = io.load_nested(config.file, _context_poset(config))
    result = multiply(phi)
    report = Report("multiply")
    report.result = io.jsonable(result)
    return report


def cmd_sweep(config) -> Report:
    cone = _cone(config)
    grid = _parse_grid(config.grid)
    total = len(grid) ** cone.lattice.size
    bound = config.max_size or 10**6
    if total > bound:
        raise SizeError(f"grid has {total} valuations, above the bound {bound}")
    report = uniqueness_sweep(cone, valuation_grid(cone.lattice, grid))
    report.verb = "sweep"
    report.result = {"context": cone.lattice}
    return report


def cmd_random_lattice(config) -> Report:
    lattice = random_lattice(config.size, config.seed)
    report = Report("random-lattice")
    if config.valuation:
        nu = random_valuation(lattice, config.seed, mass_bound=Fraction(3))
        report.result = {"poset": io.poset_to_json(lattice), **io.valuation_to_json(nu)}
    else:
        report.result = io.poset_to_json(lattice)
    if config.output:
        Path(config.output).write_text(io.dumps(report.result) + "\n")
    return report


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--samples", type=int, default=200, help="number of random samples")
    common.add_argument("--max-size", type=int, default=None, help="bound on enumeration sizes")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--trace", action="store_true", help="include the pipeline trace")
    common.add_argument(
        "--method", choices=("support-sup", "pipeline", "both"), default="both",
        help="barycenter method",
    )

    parser = argparse.ArgumentParser(prog="conelab", description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="verb", required=True)

    def verb(name, handler, help_text, parent=verbs):
        sub = parent.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    poset = verbs.add_parser("poset", help="poset files").add_subparsers(dest="action", required=True)
    verb("check", cmd_poset_check, "parse and summarise a poset", poset).add_argument("file")
    verb("opens", cmd_poset_opens, "list all open sets (upsets)", poset).add_argument("file")

    valuation = verbs.add_parser("valuation", help="valuation files").add_subparsers(dest="action", required=True)
    sub = verb("check", cmd_valuation_check, "check strictness, monotonicity, modularity", valuation)
    sub.add_argument("file")
    sub.add_argument("--poset")
    sub = verb("weights", cmd_valuation_weights, "Möbius-invert a table into weights", valuation)
    sub.add_argument("file")
    sub.add_argument("--poset")

    sub = verb("stochastic-leq", cmd_stochastic_leq, "is mu <= nu in the stochastic order")
    sub.add_argument("--mu", required=True)
    sub.add_argument("--nu", required=True)
    sub.add_argument("--poset")

    sub = verb("integrate", cmd_integrate, "integrate a monotone function")
    sub.add_argument("--nu", required=True)
    sub.add_argument("--h", required=True, help="file or inline JSON mapping names to values")
    sub.add_argument("--poset")

    cone = verbs.add_parser("cone", help="semilattice cones").add_subparsers(dest="action", required=True)
    sub = verb("check", cmd_cone_check, "check the cone laws", cone)
    sub.add_argument("--cone", required=True)
    sub.add_argument("--scalars", help="extra scalar pairs, e.g. '0,1;2,3'")
    verb("dual", cmd_cone_dual, "enumerate the dual cone", cone).add_argument("--cone", required=True)

    sub = verb("separate", cmd_separate, "linear separation witness")
    sub.add_argument("--cone", required=True)
    sub.add_argument("--x", required=True)
    sub.add_argument("--y", required=True)

    sub = verb("barycenter", cmd_barycenter, "barycenter of a valuation")
    sub.add_argument("--cone", required=True)
    sub.add_argument("--nu", required=True)

    power = verbs.add_parser("powercone", help="upper powercone").add_subparsers(dest="action", required=True)
    verb("enumerate", cmd_powercone_enumerate, "list powercone points", power).add_argument("--cone", required=True)
    for parent in (power, verbs):
        sub = verb("jia", cmd_powercone_jia, "principality test for powercone points", parent)
        sub.add_argument("--cone", required=True)
        group = sub.add_mutually_exclusive_group()
        group.add_argument("--all", action="store_true", help="every point (default)")
        group.add_argument("--q", help="comma-separated members of one point")

    sub = verb("monad-laws", cmd_monad_laws, "unit and associativity laws")
    sub.add_argument("--poset")
    sub.add_argument("--cone")

    verb("algebra-check", cmd_algebra_check, "algebra laws of the barycenter map").add_argument("--cone", required=True)

    sub = verb("multiply", cmd_multiply, "flatten a nested valuation file")
    sub.add_argument("file")
    sub.add_argument("--poset")

    sub = verb("sweep", cmd_sweep, "uniqueness sweep over a weight grid")
    sub.add_argument("--cone", required=True)
    sub.add_argument("--grid", default="0,1/2,1,2")

    sub = verb("random-lattice", cmd_random_lattice, "seeded random lattice")
    sub.add_argument("--size", type=int, required=True)
    sub.add_argument("--valuation", action="store_true", help="emit a random valuation file instead")
    sub.add_argument("-o", "--output", help="also write the generated file here")
    return parser


def _render(report: Report, config) -> dict:
    result = report.result
    context = None
    if isinstance(result, dict) and "context" in result:
        result = dict(result)
        context = result.pop("context")
        result = result or None
    return {
        "verb": report.verb,
        "status": report.status,
        "result": io.jsonable(result),
        "witnesses": [
            {"law": w["law"], "witness": io.jsonable(w["witness"], context)} for w in report.witnesses
        ],
        "stats": {"checked": report.checked, **report.stats},
    }


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        config = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_PASS
    started = time.perf_counter()
    try:
        report = config.handler(config)
    except ConelabError as exc:
        message = f"{type(exc).__name__}: {exc}"
        if config.json:
            print(io.dumps({"verb": config.verb, "status": "error", "error": message}), file=out)
        print(f"conelab: error: {message}", file=err)
        return EXIT_ERROR
    except InvariantViolation as exc:
        report = Report(config.verb)
        report.fail("invariant", message=str(exc))
    rendered = _render(report, config)
    if config.json:
        print(io.dumps(rendered), file=out)
    else:
        _print_human(rendered, time.perf_counter() - started, out)
    return EXIT_PASS if report.ok else EXIT_FAIL


def _print_human(rendered: dict, elapsed: float, out) -> None:
    print(f"{rendered['verb']}: {rendered['status'].upper()}", file=out)
    result = rendered["result"]
    if result is not None:
        print(json.dumps(result, indent=2, ensure_ascii=False), file=out)
    for w in rendered["witnesses"][:20]:
        print(f"  violated {w['law']}: {json.dumps(w['witness'], ensure_ascii=False)}", file=out)
    if len(rendered["witnesses"]) > 20:
        print(f"  ... {len(rendered['witnesses']) - 20} more", file=out)
    stats = ", ".join(f"{k}={v}" for k, v in rendered["stats"].items())
    print(f"  {stats}, elapsed={elapsed:.3f}s", file=out)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
