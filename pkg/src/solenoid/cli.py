"""Command-line interface.

Exact values are printed as "num/den" strings; floats ride along for
human consumption only.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .approx import Character, ClPoint, FiniteLevel, char_eval, cl_coord, line_approximation, line_distance, pi_l
from .errors import DomainError, InputError, ResourceError
from .geometry import Exponents, SPoint, dist_S, dist_Sa
from .measure import dimension_table, hausdorff_dim, metric_ball_measure, mu_scaling, sample_haar_many
from .padic import PrimeSet, crt_solve, format_rational, parse_rational
from .quotient import coset_eq, quotient_dist_witness, reduce
from .torus import SMatrix, TorusPoint, classify, det, induced_circle_map, orbit

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_USAGE = 0, 2, 3, 64

COMMANDS: dict[str, Callable] = {}


def command(name: str, help: str, table: bool = False):
    def register(fn):
        fn.cli_help = help
        fn.table = table
        COMMANDS[name] = fn
        return fn
    return register


def _fmt(x) -> str:
    return format_rational(x) if isinstance(x, Fraction) else str(x)


def _primes(args) -> PrimeSet:
    if args.primes is None:
        raise InputError("--primes is required")
    return PrimeSet.parse(args.primes)


def _exponents(args, primes: PrimeSet) -> Exponents:
    if args.exponents is None:
        return Exponents.ones(len(primes))
    a = Exponents.parse(args.exponents)
    if len(a) != len(primes):
        raise InputError(f"--exponents has {len(a)} entries, --primes has {len(primes)}")
    return a


def _need(args, name: str) -> str:
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name.replace('_', '-')} is required")
    return value


def _point(args, name: str, primes: PrimeSet) -> SPoint:
    return SPoint.parse(_need(args, name), primes)


def _rational(args, name: str) -> Fraction:
    return parse_rational(_need(args, name))


def _level(args, primes: PrimeSet) -> FiniteLevel:
    return FiniteLevel.parse(_need(args, "level"), primes)


@command("dist", "d_S (or d_{S,a} with --exponents) between --a and --b")
def cmd_dist(args):
    primes = _primes(args)
    r, t = _point(args, "a", primes), _point(args, "b", primes)
    d = dist_Sa(r, t, _exponents(args, primes)) if args.exponents else dist_S(r, t)
    return {"distance": str(d), "float": float(d)}


@command("qdist", "quotient distance between the cosets of --a and --b")
def cmd_qdist(args):
    primes = _primes(args)
    d, z = quotient_dist_witness(_point(args, "a", primes), _point(args, "b", primes),
                                 _exponents(args, primes))
    return {"distance": str(d), "float": float(d), "z": z}


@command("reduce", "canonical representative of the coset of --a")
def cmd_reduce(args):
    return reduce(_point(args, "a", _primes(args))).to_json()


@command("coset-eq", "whether --a and --b define the same coset")
def cmd_coset_eq(args):
    primes = _primes(args)
    return {"equal": coset_eq(_point(args, "a", primes), _point(args, "b", primes))}


@command("ball-measure", "Haar measure of a closed ball of radius --rho")
def cmd_ball_measure(args):
    primes = _primes(args)
    m = metric_ball_measure(_rational(args, "rho"), primes, _exponents(args, primes))
    return {"measure": _fmt(m), "float": float(m)}


@command("mu", "Haar scaling factor of multiplication by --a")
def cmd_mu(args):
    m = mu_scaling(_point(args, "a", _primes(args)))
    return {"mu": _fmt(m), "float": float(m)}


@command("dim", "Hausdorff dimension 1 + sum 1/a_j")
def cmd_dim(args):
    primes = _primes(args)
    return {"dimension": _fmt(hausdorff_dim(primes, _exponents(args, primes)))}


@command("boxcount", "box counts and dimension estimates at each --rho", table=True)
def cmd_boxcount(args):
    primes = _primes(args)
    rhos = [parse_rational(tok) for tok in _need(args, "rho").split(",")]
    return [{**row, "estimate": round(row["estimate"], 12)}
            for row in dimension_table(rhos, primes, _exponents(args, primes))]


@command("sample", "Haar-random points of the fundamental domain")
def cmd_sample(args):
    points = sample_haar_many(_primes(args), args.depth, args.seed, args.count)
    return [p.to_json() for p in points]


@command("orbit", "orbit of --a (components joined by '|') under --matrix", table=True)
def cmd_orbit(args):
    primes = _primes(args)
    T = SMatrix.parse(_need(args, "matrix"), primes)
    x = TorusPoint.parse(_need(args, "a"), primes)
    rows = []
    for step, point in enumerate(orbit(T, x, args.steps)):
        for i, c in enumerate(point.components):
            rows.append({"step": step, "component": i, "rep": str(c.rep), "real_float": float(c.rep.real)})
    return rows


@command("classify", "determinant and class of the map induced by --matrix")
def cmd_classify(args):
    T = SMatrix.parse(_need(args, "matrix"), _primes(args))
    return {"det": _fmt(det(T)), "class": classify(T).value}


@command("circle-map", "image and preimages of --a under t -> m t on R / p^l Z")
def cmd_circle_map(args):
    primes = _primes(args)
    level = _level(args, primes)
    T = SMatrix.parse(_need(args, "matrix"), primes)
    image, pre = induced_circle_map(T, level, ClPoint(_rational(args, "a"), level.modulus))
    return {"modulus": level.modulus, "image": _fmt(image.value),
            "preimages": [_fmt(p.value) for p in pre]}


@command("pi-l", "residues of the canonical representative of --a at --level")
def cmd_pi_l(args):
    primes = _primes(args)
    x = reduce(_point(args, "a", primes))
    b = pi_l(x, _level(args, primes))
    return {"residues": list(b.residues), "real": _fmt(b.real)}


@command("char", "phase of the character of --level and --freq at --a")
def cmd_char(args):
    primes = _primes(args)
    level = _level(args, primes)
    x = reduce(_point(args, "a", primes))
    phase = char_eval(Character(level, args.freq), x)
    return {"cl_coord": _fmt(cl_coord(x, level).value), "phase": _fmt(phase), "float": float(phase)}


@command("approx-line", "real s whose line image lies within --eps of the coset of --a")
def cmd_approx_line(args):
    primes = _primes(args)
    a = _exponents(args, primes)
    target = _point(args, "a", primes)
    s = line_approximation(target, _rational(args, "eps"), a)
    d = line_distance(target, s, a)
    return {"s": _fmt(s), "distance": str(d), "float": float(d)}


@command("crt", "smallest z >= 0 with z = z_j mod m_j for --residues 'z:m,...'")
def cmd_crt(args):
    pairs = []
    for tok in _need(args, "residues").split(","):
        try:
            z, m = tok.split(":")
            pairs.append((int(z), int(m)))
        except ValueError as exc:
            raise InputError(f"malformed residue pair {tok!r}") from exc
    return {"z": crt_solve(pairs)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="solenoid", description="Exact computations on S-adic solenoids.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=fn.cli_help, description=fn.cli_help)
        p.add_argument("--primes")
        p.add_argument("--exponents")
        p.add_argument("--a")
        p.add_argument("--b")
        p.add_argument("--matrix")
        p.add_argument("--level")
        p.add_argument("--freq", type=int, default=1)
        p.add_argument("--rho")
        p.add_argument("--eps")
        p.add_argument("--steps", type=int, default=10)
        p.add_argument("--depth", type=int, default=16)
        p.add_argument("--count", type=int, default=1)
        p.add_argument("--residues")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="csv" if fn.table else "json")
    return parser


def _cell(v) -> str:
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return _fmt(v)


def render(result, fmt: str) -> str:
    rows = result if isinstance(result, list) else [result]
    if fmt == "json":
        if isinstance(result, list):
            result = [{k: _jsonable(v) for k, v in row.items()} for row in result]
        else:
            result = {k: _jsonable(v) for k, v in result.items()}
        return json.dumps(result, separators=(",", ":")) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv or argv[0] not in COMMANDS and argv[0] not in ("-h", "--help"):
        sys.stderr.write(parser.format_usage())
        if argv:
            sys.stderr.write(f"solenoid: unknown command {argv[0]!r}\n")
        return EXIT_USAGE
    args = parser.parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except (InputError, DomainError) as exc:
        sys.stderr.write(f"solenoid: error: {exc}\n")
        return EXIT_INPUT
    except ResourceError as exc:
        sys.stderr.write(f"solenoid: error: {exc}\n")
        return EXIT_RESOURCE
    sys.stdout.write(render(result, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
