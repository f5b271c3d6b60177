# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Command-line front door.

    chromapipe ring      --prime P --height H [--heights 1,0] [--in elements.json --op invert|multiply]
    chromapipe fgl       pseries|height|validate|lt|law --kind K --prime P ...
    chromapipe classify  --in deformation.json | --example tautological|twisted|mismatch --prime P ...
    chromapipe portrait  --example NAME [--depth D] [--format dot|json] [--factor EXPR[:MULT] ...]
    chromapipe selftest  [--suite NAME ...] [--trials N] [--seed S]

Exit codes: 0 success, 1 a named domain error or a failed check, 2 a usage error.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple

import bittensor as bt

from chromapipe import __version__
from chromapipe.fgl import (
    INFINITE_HEIGHT,
    check_lt_coordinate,
    fgl_validate,
    hazewinkel_deformation,
    height,
    p_series,
    render_series,
    standard_fgl,
)
from chromapipe.fgl.laws import FGL
from chromapipe.moduli import (
    classify,
    height_mismatch_fixture,
    linearization,
    random_twist,
    tautological_deformation,
    twisted_deformation,
)
from chromapipe.portrait import EXAMPLES, FORMATS, IdealSpec, closure, export_digest, export_graph, portrait_example
from chromapipe.portrait.graph import base_level, node_order
from chromapipe.selftest import SUITES, render_table, run_selftest
from chromapipe.staged import StagedRing, build_staged, make_spec, render_element, try_invert
from chromapipe.types import DomainError, UsageError
from chromapipe.utils.codec import classifying_map_to_json, deformation_from_json, dumps, element_from_json, loads
from chromapipe.utils.config import check_config, config
from chromapipe.utils.logging import log_event
from chromapipe.utils.sampling import rng_for

FGL_ACTIONS = ("pseries", "height", "validate", "lt", "law")
FGL_KINDS = ("additive", "multiplicative", "honda", "hazewinkel")
CLASSIFY_EXAMPLES = ("tautological", "twisted", "mismatch")


@dataclass(frozen=True)
class Command:
    """A validated invocation: subcommand, optional action and the parsed options."""
    name: str
    action: Optional[str]
    options: argparse.Namespace


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> Tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None


def _factor(text: str) -> Tuple[str, int]:
    expr, _, mult = text.rpartition(":") if ":" in text else (text, "", "1")
    try:
        return expr, int(mult)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multiplicity in {text!r}") from None


def _add_ring_args(parser: argparse.ArgumentParser, prime_required: bool = True) -> None:
    parser.add_argument("--prime", type=int, required=prime_required, help="Residue characteristic p.")
    parser.add_argument("--precision", type=int, default=1, help="p-adic precision a of GR(p, a, n) (default: 1).")
    parser.add_argument("--residue-degree", type=int, default=1, help="Residue field degree n (default: 1).")
    parser.add_argument("--height", "--h", dest="height", type=int, default=1, help="Height h of the base law (default: 1).")
    parser.add_argument("--heights", type=_int_list, default=(), help="Stage heights, comma separated.")
    parser.add_argument("--xdeg", type=int, default=None, help="x-degree cap N_x (default: p^h + CHROMAPIPE_XDEG_MARGIN).")
    parser.add_argument("--ucap", type=int, default=None, help="Exponent cap D (default: CHROMAPIPE_UCAP).")
    parser.add_argument("--denom-cap", type=int, default=None, help="Denominator cap M (default: CHROMAPIPE_DENOM_CAP).")
    parser.add_argument("--depths", type=_int_list, default=None, help="Completion depth per stage (default: window cap, at most CHROMAPIPE_STAGE_DEPTH).")
    parser.add_argument("--stage", type=int, default=0, help="Stage to compute at.")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chromapipe", description="Staged rings, formal group laws and portraits.")
    parser.add_argument("--version", action="version", version=f"chromapipe {__version__}")
    parser.add_argument("--debug", action="store_true", help="Debug logging on stderr.")
    parser.add_argument("--log-dir", type=str, default="", help="Directory for the events log.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    ring = sub.add_parser("ring", help="Describe a staged ring; invert or multiply elements from --in.")
    _add_ring_args(ring)
    ring.add_argument("--in", dest="in_path", type=str, default="", help="JSON with an 'elements' list.")
    ring.add_argument("--op", choices=("invert", "multiply"), default="invert")

    fgl = sub.add_parser("fgl", help="Formal group law computations.")
    fgl.add_argument("action", choices=FGL_ACTIONS)
    fgl.add_argument("--kind", choices=FGL_KINDS, required=True)
    _add_ring_args(fgl)
    fgl.add_argument("--t-max", type=int, default=None, help="Largest height searched.")

    cls = sub.add_parser("classify", help="Classify a staged deformation.")
    cls.add_argument("--in", dest="in_path", type=str, default="", help="Deformation bundle JSON.")
    cls.add_argument("--example", choices=CLASSIFY_EXAMPLES, default=None)
    cls.add_argument("--seed", type=int, default=None)
    cls.add_argument("--out", type=str, default="")
    _add_ring_args(cls, prime_required=False)

    por = sub.add_parser("portrait", help="Portrait of an example ring, or a closure in it.")
    por.add_argument("--example", choices=sorted(EXAMPLES), required=True)
    por.add_argument("--depth", type=int, default=None)
    por.add_argument("--format", choices=FORMATS, default="dot")
    por.add_argument("--factor", type=_factor, action="append", default=[], help="Factor EXPR[:MULT] of a closure query.")
    por.add_argument("--prime", type=int, default=2, help="Residue characteristic for factor checks.")
    por.add_argument("--out", type=str, default="")

    st = sub.add_parser("selftest", help="Run the acceptance suites.")
    st.add_argument("--suite", action="append", choices=sorted(SUITES), default=[])
    st.add_argument("--trials", type=int, default=None)
    st.add_argument("--units", type=int, default=None)
    st.add_argument("--seed", type=int, default=None)
    return parser


def parse_args(argv: Sequence[str]) -> Command:
    """
    Raises:
        UsageError: unknown flag, missing option, or an inconsistent combination.
    """
    parser = build_parser()
    args = parser.parse_args(list(argv))
    if args.command is None:
        parser.error("a subcommand is required")
    if args.command == "classify":
        if bool(args.in_path) == bool(args.example):
            parser.error("classify needs exactly one of --in and --example")
        if args.example and args.prime is None:
            parser.error("classify --example needs --prime")
    if args.command == "portrait" and args.depth is not None and args.depth < 1:
        parser.error("--depth must be at least 1")
    return Command(name=args.command, action=getattr(args, "action", None), options=args)


def ring_from_options(args: argparse.Namespace, cfg: "bt.Config") -> StagedRing:
    """Profile caps left open fall back to the configured defaults."""
    spec = make_spec(
        args.prime,
        args.height,
        args.heights,
        a=args.precision,
        n=args.residue_degree,
        D=args.ucap or cfg.profile.ucap,
        M=args.denom_cap or cfg.profile.denom_cap,
        N=args.depths,
        N_x=args.xdeg,
        depth=cfg.profile.depth,
        xdeg_margin=cfg.profile.xdeg_margin,
    )
    return build_staged(spec, series_iterations=cfg.profile.series_iterations)


def describe_profile(ring: StagedRing) -> str:
    prof = ring.spec.profile
    return f"profile: a={prof.a} D={prof.D} M={prof.M} N={list(prof.N)} N_x={prof.N_x}"


def _fgl_from_options(args: argparse.Namespace, ring: StagedRing) -> FGL:
    if args.kind == "hazewinkel":
        return hazewinkel_deformation(ring, args.stage)
    return standard_fgl(args.kind, ring, args.stage, h=args.height)


def _run_ring(args, cfg, out: TextIO) -> int:
    ring = ring_from_options(args, cfg)
    spec = ring.spec
    out.write(f"ring: {spec.label()}\n{describe_profile(ring)}\n")
    for s in range(spec.n_stages + 1):
        inv = ",".join("p" if g == 0 else f"u{g}" for g in spec.inverted(s)) or "-"
        gens = " ".join(render_element(ring.generator(g, s)) for g in range(1, spec.n_gens + 1)) or "-"
        out.write(f"stage {s}: height={spec.height_at(s)} inverted={inv} generators={gens}\n")
    if not args.in_path:
        return 0
    data = loads(Path(args.in_path).read_text())
    elements = [element_from_json(ring, e) for e in data["elements"]]
    if args.op == "invert":
        for i, x in enumerate(elements):
            out.write(f"x{i} = {render_element(x)}\nx{i}^-1 = {render_element(try_invert(x))}\n")
    else:
        prod = ring.one(max((x.stage for x in elements), default=0))
        for x in elements:
            prod = prod * x
        out.write(f"product = {render_element(prod)}\n")
    return 0


def _run_fgl(action, args, cfg, out: TextIO) -> int:
    ring = ring_from_options(args, cfg)
    F = _fgl_from_options(args, ring)
    out.write(f"# {ring.spec.label()} {describe_profile(ring)}\n")
    if action == "pseries":
        out.write(f"[{ring.spec.p}](x) = {render_series(p_series(F))}\n")
        return 0
    if action == "law":
        out.write(f"{F.name}(x, y) = {render_series(F.F)}\n")
        return 0
    if action == "height":
        p = ring.spec.p
        t_max = args.t_max if args.t_max is not None else max(t for t in range(0, F.nx) if p ** t < F.nx)
        h = height(F, t_max)
        out.write(f"height = {'inf' if h == INFINITE_HEIGHT else h}\n")
        return 0
    if action == "validate":
        report = fgl_validate(F)
        out.write(report.describe() + "\n")
        return 0 if report.ok else 1
    reports = [check_lt_coordinate(F, t) for t in range(1, ring.spec.h + 1)]
    for t, report in enumerate(reports, start=1):
        out.write(f"t={t} {report.describe()}\n")
    return 0 if all(r.ok for r in reports) else 1


def _run_classify(args, cfg, out: TextIO) -> int:
    if args.in_path:
        D = deformation_from_json(loads(Path(args.in_path).read_text()))
    else:
        ring = ring_from_options(args, cfg)
        out.write(f"# {ring.spec.label()} {describe_profile(ring)}\n")
        if args.example == "tautological":
            D = tautological_deformation(ring)
        elif args.example == "mismatch":
            D = height_mismatch_fixture(ring)
        else:
            seed = cfg.selftest.seed if args.seed is None else args.seed
            twist, phi = random_twist(rng_for(seed, "cli-twist"), ring, free=linearization(ring).free_degrees)
            D = twisted_deformation(ring, twist, phi)
    text = dumps(classifying_map_to_json(classify(D))) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        out.write(f"wrote {args.out}\n")
    else:
        out.write(text)
    return 0


def _run_portrait(args, cfg, out: TextIO) -> int:
    depth = args.depth or cfg.profile.portrait_depth
    if args.factor:
        nodes = closure(IdealSpec(args.example, tuple(args.factor), p=args.prime), depth)
        G = portrait_example(args.example, depth)
        levels = dict(G.levels)
        shift = len(G.inverted)
        for n in sorted(nodes, key=lambda n: node_order((n, levels.get(n, base_level(n, len(G.variables)) + shift)))):
            out.write(n.label() + "\n")
        return 0
    data = export_graph(portrait_example(args.example, depth), args.format)
    if args.out:
        Path(args.out).write_bytes(data)
        out.write(f"wrote {args.out} xxh64={export_digest(data)}\n")
    else:
        out.write(data.decode("utf-8"))
    return 0


def _run_selftest(args, cfg, out: TextIO) -> int:
    if args.trials is not None:
        cfg.selftest.trials = args.trials
    if args.units is not None:
        cfg.selftest.units = args.units
    if args.seed is not None:
        cfg.selftest.seed = args.seed
    results = run_selftest(cfg, args.suite)
    out.write(render_table(results))
    return 0 if all(r.ok for r in results) else 1


def run(cmd: Command, out: Optional[TextIO] = None, err: Optional[TextIO] = None, cfg: Optional["bt.Config"] = None) -> int:
    """Execute a command; domain errors print their label on err and return 1."""
    out = out or sys.stdout
    err = err or sys.stderr
    cfg = cfg or check_config(config())
    args = cmd.options
    try:
        if cmd.name == "ring":
            code = _run_ring(args, cfg, out)
        elif cmd.name == "fgl":
            code = _run_fgl(cmd.action, args, cfg, out)
        elif cmd.name == "classify":
            code = _run_classify(args, cfg, out)
        elif cmd.name == "portrait":
            code = _run_portrait(args, cfg, out)
        else:
            code = _run_selftest(args, cfg, out)
    except DomainError as e:
        log_event(f"{cmd.name} failed: {e}")
        err.write(f"{e.label}\n")
        return 1
    except (ValueError, KeyError, OSError) as e:
        err.write(f"error: {e}\n")
        return 1
    log_event(f"{cmd.name} exited {code}")
    return code


def setup_logging(cmd: Command, cfg: "bt.Config") -> bool:
    """Debug logging on stderr when --debug or CHROMAPIPE_DEBUG asks for it, silence otherwise."""
    debug = bool(cmd.options.debug or cfg.logging.debug)
    if debug:
        bt.logging.set_debug(True)
    else:
        bt.logging.off()
    return debug


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e.info.message}\n")
        return 2
    cfg = config()
    setup_logging(cmd, cfg)
    if cmd.options.log_dir:
        cfg.logging.dir = cmd.options.log_dir
    return run(cmd, cfg=check_config(cfg))


if __name__ == "__main__":
    sys.exit(main())
