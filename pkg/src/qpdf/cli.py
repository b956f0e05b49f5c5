"""Command-line driver.

Exit codes: 0 ok, 1 property violation, 2 usage or input error, 3 numeric
non-convergence.  Reports go to stdout (JSON by default), diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import rkhs
from .characters import QCharacter, dual_dictionary
from .errors import (
    NoConvergence,
    NonRealAtIdentity,
    NotHermitian,
    NotInSlice,
    NotPositiveDefinite,
    NotReal,
    QPDError,
    ZeroKernel,
)
from .functions import format_quaternion, function_to_json, parse_character, resolve_function
from .group import ZWindow, group_from_json, parse_group
from .measures import AtomicMeasure, measure_distance, nonuniqueness_witness, recover, synthesize, unique_representation_exp2
from .pdf import bound_check, hermitian_defect, is_positive_definite
from .verify import SIZES, render_table, verify_all

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NO_CONVERGENCE = 0, 1, 2, 3

#: errors that mean "the input does not have the property", not "bad input"
VIOLATIONS = (NotPositiveDefinite, NotHermitian, NotReal, NotInSlice, NonRealAtIdentity, ZeroKernel)


class UsageError(Exception):
    pass


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "qpdf"


def load_dictionary(group, sphere_grid: int, z_angles: int, cache_dir: Path | None, angles=None, err=None) -> list[QCharacter]:
    """The dual dictionary, cached as JSON under a hash of ``(group, M, K, angles)``."""
    err = sys.stderr if err is None else err
    key = {"group": group.to_json(), "sphere_grid": sphere_grid, "z_angles": z_angles, "angles": angles}
    digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:32]
    path = cache_dir / f"dual-{digest}.json" if cache_dir is not None else None
    if path is not None and path.exists():
        try:
            return [QCharacter.from_json(group, c) for c in json.loads(path.read_text())]
        except (ValueError, KeyError, TypeError):
            print(f"qpdf: ignoring unreadable cache file {path}", file=err)
    chars = dual_dictionary(group, sphere_grid, z_angles, angles=angles)
    if path is not None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps([c.to_json() for c in chars]))
            tmp.replace(path)
        except OSError as exc:
            print(f"qpdf: could not write cache {path}: {exc}", file=err)
    return chars


# --- argument handling ----------------------------------------------------


def _group(args):
    if args.group is None:
        return None
    return parse_group(args.group)


def _need_group(args):
    G = _group(args)
    if G is None:
        raise UsageError("--group is required")
    return G


def _need_fn(args):
    if args.fn is None:
        raise UsageError("--fn is required")
    return resolve_function(args.fn, _group(args))


def _angles(args, group):
    if args.angles is None:
        return None
    if not isinstance(group, ZWindow):
        raise UsageError("--angles only applies to windows of Z")
    return [float(a) for a in args.angles.split(",")]


def _dictionary(args, group):
    return load_dictionary(group, args.sphere_grid, args.z_angles, _cache_dir(args), _angles(args, group), err=args.err)


def _cache_dir(args) -> Path | None:
    if args.no_cache:
        return None
    return Path(args.cache_dir) if args.cache_dir else default_cache_dir()


def _load_measure(args, group):
    if not args.measure:
        raise UsageError("--measure file:<path> is required")
    ref = args.measure
    path = ref[5:] if ref.startswith("file:") else ref
    obj = json.loads(Path(path).read_text())
    if "group" in obj:
        file_group = parse_group(obj["group"]) if isinstance(obj["group"], str) else group_from_json(obj["group"])
        if group is not None and file_group != group:
            raise UsageError(f"{path} is a measure on {file_group}, not {group}")
        group = file_group
    if group is None:
        raise UsageError("the measure file names no group; pass --group")
    return AtomicMeasure.from_json(group, obj), group


# --- commands -------------------------------------------------------------


def cmd_check_pd(args):
    phi = _need_fn(args)
    scale = max(1.0, abs(phi.at_identity))
    defect = hermitian_defect(phi)
    report = {"group": str(phi.group), "hermitian_defect": defect}
    if defect > max(args.tol, 1e-12) * scale:
        report.update(ok=False, reason="not hermitian: phi(-g) != conj(phi(g))")
        return EXIT_VIOLATION, report
    try:
        report["bounded"] = bound_check(phi)
    except NonRealAtIdentity:
        report["bounded"] = False
    verdict = is_positive_definite(phi, tol=args.tol)
    report.update(verdict.to_json())
    return (EXIT_OK if verdict.ok else EXIT_VIOLATION), report


def cmd_synthesize(args):
    mu, G = _load_measure(args, _group(args))
    phi = synthesize(mu, G)
    verdict = is_positive_definite(phi, tol=args.tol)
    report = {"function": function_to_json(phi), "total_mass": mu.total_mass, "pd": verdict.to_json()}
    return (EXIT_OK if verdict.ok else EXIT_VIOLATION), report


def cmd_recover(args):
    phi = _need_fn(args)
    D = _dictionary(args, phi.group)
    res = recover(phi, D, tol=args.residual_tol)
    report = {"group": str(phi.group), "dictionary_size": len(D), **res.to_json()}
    return (EXIT_OK if res.success else EXIT_VIOLATION), report


def cmd_witness(args):
    G = _need_group(args)
    if not args.char:
        raise UsageError("--char is required, e.g. --char k=1,axis=i1")
    gamma = parse_character(G, args.char)
    w = nonuniqueness_witness(gamma, G, seed=args.seed)
    gap = synthesize(w.mu2, G).sup_distance(w.phi)
    report = {
        "group": str(G),
        "character": gamma.to_json(),
        "rotor": w.rotor.to_list(),
        "mu1": w.mu1.to_json(),
        "mu2": w.mu2.to_json(),
        "function": function_to_json(w.phi),
        "sup_difference": gap,
        "distance": measure_distance(w.mu1, w.mu2),
    }
    return (EXIT_OK if gap <= 1e-12 else EXIT_VIOLATION), report


def cmd_dual(args):
    G = _need_group(args)
    D = _dictionary(args, G)
    report = {
        "group": str(G),
        "sphere_grid": args.sphere_grid,
        "z_angles": args.z_angles,
        "angles": _angles(args, G),
        "count": len(D),
        "characters": [c.to_json() for c in D],
    }
    return EXIT_OK, report


def cmd_exp2_unique(args):
    phi = _need_fn(args)
    mu = unique_representation_exp2(phi)
    return EXIT_OK, {"group": str(phi.group), "measure": mu.to_json(), "total_mass": mu.total_mass}


def cmd_rkhs_report(args):
    phi = _need_fn(args)
    ks = rkhs.build(phi, tol=args.tol)
    report = rkhs.report(ks)
    ok = report["reproduce_error"] <= 1e-12 and all(abs(n - 1.0) <= 1e-9 for _, n in report["norms"])
    return (EXIT_OK if ok else EXIT_VIOLATION), {"group": str(phi.group), **report}


def cmd_verify_all(args):
    report = verify_all(seed=args.seed, sizes=args.sizes)
    return (EXIT_OK if report["passed"] else EXIT_VIOLATION), report


COMMANDS = {
    "check-pd": (cmd_check_pd, "decide positive definiteness of --fn on --group"),
    "synthesize": (cmd_synthesize, "tabulate the function of an atomic measure"),
    "recover": (cmd_recover, "find a representing measure over the dual dictionary"),
    "witness": (cmd_witness, "two different measures with the same function"),
    "dual": (cmd_dual, "list (and cache) the dual dictionary"),
    "exp2-unique": (cmd_exp2_unique, "the unique representing measure on exponent <= 2"),
    "rkhs-report": (cmd_rkhs_report, "rank, reproduction error and shift norms"),
    "verify-all": (cmd_verify_all, "run every property suite"),
}


# --- rendering ------------------------------------------------------------


def _render_measure(obj: dict, indent: str = "  ") -> list[str]:
    lines = []
    for atom in obj["atoms"]:
        c = atom["character"]
        idx = f"k={c['k']}" if "k" in c else f"theta={c['theta']:.6g}"
        axis = "real" if c["real"] else "axis=" + "/".join(f"{round(x, 4) + 0.0:.4f}" for x in c["axis"][1:])
        lines.append(f"{indent}{atom['weight']:.6g}  {idx}  {axis}")
    return lines


def _render_function(obj: dict, indent: str = "  ") -> list[str]:
    return [f"{indent}{'/'.join(map(str, g)):>6}  {format_quaternion(q)}" for g, q in obj["values"]]


def render(command: str, report: dict) -> str:
    if command == "verify-all":
        return render_table(report)
    lines = []
    for key, value in report.items():
        if key == "character":
            lines.append("character:")
            lines += _render_measure({"atoms": [{"character": value, "weight": 1.0}]})
        elif key in ("mu1", "mu2", "measure"):
            lines.append(f"{key}:")
            lines += _render_measure(value)
        elif key == "function":
            lines.append("function:")
            lines += _render_function(value)
        elif key == "characters":
            lines.append("characters:")
            lines += _render_measure({"atoms": [{"character": c, "weight": 1.0} for c in value]})
        elif key == "norms":
            lines.append("norms:")
            lines += [f"  {'/'.join(map(str, s)):>6}  {n:.12f}" for s, n in value]
        elif key == "pd":
            lines.append("pd: " + ", ".join(f"{k}={v}" for k, v in value.items()))
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="Z4, Z2xZ4 or Z@N for the window -N..N of the integers")
    common.add_argument("--fn", help="const1 | cosine | lemma-exp2[:a=..,J=..] | char:k=..,axis=.. | file:path")
    common.add_argument("--measure", help="file:path holding an atomic measure")
    common.add_argument("--char", help="character, e.g. k=1,axis=i1 or theta=1.0,axis=i2")
    common.add_argument("--tol", type=float, default=1e-9, help="positive definiteness tolerance (default 1e-9)")
    common.add_argument("--residual-tol", type=float, default=1e-8, help="recovery residual tolerance (default 1e-8)")
    common.add_argument("--sphere-grid", type=int, default=64, help="axes per character in the dictionary")
    common.add_argument("--z-angles", type=int, default=128, help="angles in [0, pi] on windows of Z")
    common.add_argument("--angles", help="comma-separated angles replacing the --z-angles grid on windows of Z")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--sizes", choices=SIZES, default="default")
    common.add_argument("--cache-dir", help="dictionary cache directory")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the dictionary cache")

    parser = argparse.ArgumentParser(prog="qpdf", description="Quaternion-valued positive definite functions on abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.err = err
    handler = COMMANDS[args.command][0]
    try:
        code, report = handler(args)
    except NoConvergence as exc:
        print(f"qpdf: {exc}", file=err)
        return EXIT_NO_CONVERGENCE
    except VIOLATIONS as exc:
        print(f"qpdf: {exc}", file=err)
        report = {"ok": False, "reason": str(exc)}
        code = EXIT_VIOLATION
    except (UsageError, QPDError, ValueError, KeyError, OSError) as exc:
        print(f"qpdf: {exc}", file=err)
        return EXIT_USAGE
    if args.format == "table":
        print(render(args.command, report), file=out)
    else:
        print(json.dumps(report, indent=2), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
