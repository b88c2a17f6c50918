"""
Command-line interface: orbit, star, verify, evolve and homology subcommands.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import json
import math
import sys
from typing import Any, Dict, List, Optional

import numpy as np

from .config import ConfigManager, DEFAULT_CONFIG_PATH
from .errors import ConfigError, ToolkitError, UsageError
from .grammar import parse_expr, parse_scalar_list
from .grid import Axis, GridField, evolve, gaussian_bump, line_axis, rep_action
from .homology import catalogue, chern_character, orbit_for_query
from .liealg import get_algebra
from .logger import setup_logger
from .moyal import VARIANTS, PoissonStructure, star
from .operators import line_operator
from .orbits import PQ, classify_orbit, darboux_chart, hamiltonian, make_orbit, verify_darboux
from .reports import SCHEMA_VERSION, conventions
from .resource_manager import ResourceManager
from .verification import EVOLUTION_TOLERANCE, NORM_TOLERANCE, SUITES, run_verification

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--json', action='store_true', help='Write machine-readable JSON to stdout')
    parent.add_argument('--seed', type=int, default=None, help='Seed for randomized suites')
    parent.add_argument('--jobs', type=int, default=None, help='Worker threads for verification')
    parent.add_argument('--h', type=str, default=None, help='Planck parameter as an exact rational (default 1)')
    parent.add_argument('--config', type=str, default=DEFAULT_CONFIG_PATH,
                        help=f'Path to configuration file (default: {DEFAULT_CONFIG_PATH})')
    parent.add_argument('--log-level', type=str, choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        default=None, help='Logging level (default from config)')
    parent.add_argument('--log-dir', type=str, default=None, help='Log directory (default from config)')
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="orbitquant", description="Deformation quantization verification toolkit")
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    orbit = sub.add_parser('orbit', parents=[common], help='Classify orbits and show charts')
    orbit.add_argument('action', choices=['classify', 'chart', 'darboux'])
    orbit.add_argument('--algebra', required=True)
    orbit.add_argument('--point', help='Functional coordinates, e.g. "0,1,0"')
    orbit.add_argument('--orbit', help='Orbit family or short name')
    orbit.add_argument('--lambda', dest='lam', help='Orbit parameter for sl2R families')
    orbit.add_argument('--branch', type=int, default=0, help='aff(C) chart branch k')
    orbit.add_argument('--A', dest='element', help='Algebra element coordinates for the Hamiltonian')

    star_cmd = sub.add_parser('star', parents=[common], help='Truncated star product of two expressions')
    star_cmd.add_argument('--f', required=True)
    star_cmd.add_argument('--g', required=True)
    star_cmd.add_argument('--algebra', help='Use the chart variables of an orbit of this algebra')
    star_cmd.add_argument('--orbit')
    star_cmd.add_argument('--lambda', dest='lam')
    star_cmd.add_argument('--branch', type=int, default=0)
    star_cmd.add_argument('--order', type=int, default=None)
    star_cmd.add_argument('--variant', choices=VARIANTS, default=None)

    verify = sub.add_parser('verify', parents=[common], help='Run verification suites')
    verify.add_argument('--scope', default='all', help=f"all, affR, affC, sl2R or one of: {', '.join(SUITES)}")
    verify.add_argument('--order', type=int, default=None)
    verify.add_argument('--grid', type=int, default=None)
    verify.add_argument('--profile', choices=['quick', 'standard', 'thorough'], default=None)

    evolve_cmd = sub.add_parser('evolve', parents=[common], help='Grid evolution of a line generator')
    evolve_cmd.add_argument('--algebra', required=True)
    evolve_cmd.add_argument('--A', dest='element', required=True)
    evolve_cmd.add_argument('--t', type=float, default=1.0)
    evolve_cmd.add_argument('--grid', type=int, default=None)
    evolve_cmd.add_argument('--orbit', default=None)
    evolve_cmd.add_argument('--lambda', dest='lam', default="1")
    evolve_cmd.add_argument('--report', choices=['json', 'text'], default=None)

    homology = sub.add_parser('homology', parents=[common], help='K-theory and cyclic homology tables')
    homology.add_argument('--algebra')
    homology.add_argument('--orbit')
    homology.add_argument('--lambda', dest='lam', default=None)
    homology.add_argument('--catalogue', action='store_true')
    return parser


def _overrides(args) -> Dict[str, Dict[str, Any]]:
    return {
        'quantization': {k: v for k, v in (('h', args.h), ('star_order', getattr(args, 'order', None)),
                                           ('star_variant', getattr(args, 'variant', None))) if v is not None},
        'verification': {k: v for k, v in (('seed', args.seed), ('jobs', args.jobs),
                                           ('profile', getattr(args, 'profile', None))) if v is not None},
        'grid': {'line_points': args.grid} if getattr(args, 'grid', None) else {},
    }


def _emit(args, payload: Dict[str, Any], text: str) -> None:
    if args.json or getattr(args, 'report', None) == 'json':
        print(json.dumps(dict(schema_version=SCHEMA_VERSION, **payload), indent=2, default=str))
    else:
        print(text)


# Commands

def cmd_orbit(args, config, logger) -> int:
    alg = get_algebra(args.algebra)
    if args.action == 'classify':
        if not args.point:
            raise UsageError("orbit classify needs --point")
        orbit = classify_orbit(alg.name, alg.dual(parse_scalar_list(args.point)))
    else:
        if not args.orbit:
            raise UsageError(f"orbit {args.action} needs --orbit")
        orbit = make_orbit(alg.name, args.orbit, lam=args.lam)

    payload: Dict[str, Any] = {"orbit": orbit.summary()}
    lines = [f"{orbit} (dim {orbit.dim})"]
    if orbit.dim > 0:
        chart = darboux_chart(orbit, args.branch)
        payload["chart"] = chart.summary()
        lines.append(f"chart {chart.chart_vars}: F = ({', '.join(str(e) for e in chart.embed)})")
        if args.element:
            A = alg.element(parse_scalar_list(args.element))
            H = hamiltonian(orbit, A, args.branch)
            payload["hamiltonian"] = str(H)
            lines.append(f"hamiltonian of {A}: {H}")
    if args.action == 'darboux':
        report = verify_darboux(orbit, args.branch, logger)
        payload["darboux"] = report.to_dict()
        lines.append(f"darboux: {'PASS' if report.passed else 'FAIL'}")
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK if report.passed else EXIT_FAILURE
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_star(args, config, logger) -> int:
    if args.algebra:
        orbit = make_orbit(args.algebra, args.orbit or "", lam=args.lam)
        P = PoissonStructure.from_chart(darboux_chart(orbit, args.branch))
    else:
        P = PoissonStructure.standard(PQ)
    f = parse_expr(args.f, P.varset)
    g = parse_expr(args.g, P.varset)
    h = config.get_planck()
    result = star(f, g, P, h, config.get_star_order(), config.get_star_variant())
    logger.info(f"Star product of {f} and {g} at h={h}", "Moyal")
    payload = {
        "f": str(f), "g": str(g), "h": str(h), "order": result.order,
        "variant": config.get_star_variant(), "variables": list(P.varset.names),
        "value": str(result.value), "exact": result.exact, "series_bound": result.bound,
        "next_term_zero": result.next_term_zero,
        "conventions": conventions(config.get_star_variant()),
    }
    _emit(args, payload, str(result.value))
    return EXIT_OK


def cmd_verify(args, config, logger) -> int:
    report = run_verification(config, args.scope, logger)
    if args.json:
        print(report.to_json())
    else:
        print(report.format_table())
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_evolve(args, config, logger) -> int:
    alg = get_algebra(args.algebra)
    A = alg.element(parse_scalar_list(args.element))
    points = config.get_grid_points()
    resources = ResourceManager(config.get('grid', 'max_ram_usage_percent', 25), logger=logger)
    resources.require_grid([points])
    t = args.t
    payload: Dict[str, Any] = {"algebra": alg.name, "A": str(A), "t": t, "grid": points}

    if alg.name == 'affR':
        orbit = make_orbit('affR', args.orbit or 'upper')
        h = config.get_planck()
        lo, hi = config.get('grid', 'line_range', [-3.0, 3.0])
        axis = line_axis(float(lo), float(hi), points)
        bump = gaussian_bump(0.0, float(config.get('grid', 'bump_width', 0.25)))
        f0 = GridField.sample((axis,), bump)
        op = line_operator('affR', orbit, A, h)
        result = evolve(op, f0, t, cfl=float(config.get('grid', 'cfl', 0.25)), logger=logger)
        alpha, beta = (float(c.re) for c in A.coords)
        error = None
        if orbit.family == 'affR_upper':
            oracle = rep_action('affR', {"alpha": alpha, "beta": beta, "t": t},
                                lambda y: bump(np.log(y)), (axis,), h)
            error = result.relative_error(oracle)
        payload.update(orbit=str(orbit), h=str(h), operator=str(op), l2_error=error)
    elif alg.name == 'sl2R':
        orbit = make_orbit('sl2R', args.orbit or 'hyperboloid', lam=args.lam)
        axis = Axis("s", 0.0, 2 * math.pi, points)
        f0 = GridField.sample((axis,), lambda s: np.exp(np.cos(s)))
        op = line_operator('sl2R', orbit, A, 1)
        result = evolve(op, f0, t, cfl=float(config.get('grid', 'cfl', 0.25)), logger=logger)
        error = None
        payload.update(orbit=str(orbit), h="1", operator=str(op), l2_error=None)
    else:
        raise UsageError("evolve supports affR and sl2R line generators")

    drift = abs(result.l2_norm() - f0.l2_norm()) / f0.l2_norm()
    ok = drift <= NORM_TOLERANCE * max(1.0, abs(t)) and (error is None or error <= EVOLUTION_TOLERANCE)
    payload.update(norm_drift=drift, status="pass" if ok else "fail")
    text = f"{payload['orbit']}: evolve {A} to t={t} on {points} points\n  norm drift {drift:.3e}"
    if error is not None:
        text += f"\n  relative L2 error vs group action {error:.3e}"
    text += f"\n  {'PASS' if ok else 'FAIL'}"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_homology(args, config, logger) -> int:
    if args.catalogue:
        reports = catalogue(args.lam or 1)
        payload = {"catalogue": [r.to_dict() for r in reports]}
        lines = [f"{r.orbit.family:<20} K={str(r.published_K):<10} PHC={str(r.published_PHC):<10} "
                 f"{r.chern_verdict}{'' if r.chain_agrees else '  (chain mismatch flagged)'}" for r in reports]
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK
    if not args.algebra or not args.orbit:
        raise UsageError("homology needs --algebra and --orbit, or --catalogue")
    report = chern_character(orbit_for_query(args.algebra, args.orbit, args.lam), logger)
    lines = [f"{report.orbit}: K = {report.published_K}, PHC = {report.published_PHC}, "
             f"verdict {report.chern_verdict}"] + [f"  {step}" for step in report.trace] + \
        [f"  note: {n}" for n in report.notes]
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK


COMMANDS = {
    'orbit': cmd_orbit,
    'star': cmd_star,
    'verify': cmd_verify,
    'evolve': cmd_evolve,
    'homology': cmd_homology,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command

    Args:
        argv: Arguments without the program name (default sys.argv[1:])

    Returns:
        Process exit code
    """
    try:
        args = build_parser().parse_args(argv)
        config = ConfigManager(args.config, overrides=_overrides(args))
    except SystemExit as e:
        return int(e.code or 0)
    except (UsageError, ConfigError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logger = setup_logger(log_dir=args.log_dir or config.get('advanced', 'log_dir', 'logs'),
                          log_level=args.log_level or config.get('advanced', 'log_level', 'INFO'))
    config.logger = logger
    try:
        logger.event("STARTUP", f"Command {args.command}", "Main")
        return COMMANDS[args.command](args, config, logger)
    except (UsageError, ConfigError) as e:
        logger.error(f"Usage error: {e}", "Main")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ToolkitError as e:
        logger.log_error_event(type(e).__name__, str(e), "Main")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    finally:
        logger.flush()
