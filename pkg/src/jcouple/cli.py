"""Command-line interface: one subcommand per operation family.

Exit codes: 0 success, 1 domain errors (bad quantum numbers, with a one-line
diagnostic on stderr), 2 usage errors.  Output is byte-deterministic for a
fixed argv: no timestamps, sorted iteration everywhere, exact values as
decimal strings with floats only under explicit "approx" keys.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import re
import sys
from typing import Iterator, Sequence

from .coupling import (
    CouplingChain,
    enumerate_chains,
    enumerate_coupling_trees,
    expand_coupled_state,
    export_dot,
    jmax,
    jmin,
)
from .kepler import (
    Statistics,
    kramers_applicability,
    merge_spectrum,
    spectrum,
)
from .numerics import (
    DomainError,
    HalfInt,
    PhasedSurdSum,
    Surd,
    halfint_range,
    parse_halfint,
    projection_range,
)
from .particles import is_fermion, particle_from_json
from .timerev import (
    audit_first_symmetry,
    audit_second_symmetry,
    check_compatibility,
    coupled_univalence,
    kramers_overlap,
    t_squared_sign,
)
from .wigner import CgArgs, cg, regge_orbit_audit, three_j


def _surd_json(value: Surd) -> dict:
    out = value.to_json_dict()
    out["approx"] = value.approx()
    return out


def _sum_json(value: PhasedSurdSum) -> dict:
    return {
        "terms": [
            {"root": str(r), "re": str(c.re), "im": str(c.im)} for r, c in value.items()
        ]
    }


def _parse_js(text: str) -> tuple[HalfInt, ...]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise DomainError("expected a comma-separated list of momenta")
    return tuple(parse_halfint(s) for s in items)


def _parse_intermediates(text: str) -> tuple[HalfInt, ...]:
    items = [s for s in text.split(",") if s.strip()]
    return tuple(parse_halfint(s) for s in items)


def _max_trees() -> int:
    raw = os.environ.get("JCOUPLE_MAX_TREES")
    if raw is None:
        return 10
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"JCOUPLE_MAX_TREES must be an integer, got {raw!r}") from exc


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_cg(ns: argparse.Namespace) -> int:
    args = CgArgs(
        parse_halfint(ns.j1),
        parse_halfint(ns.m1),
        parse_halfint(ns.j2),
        parse_halfint(ns.m2),
        parse_halfint(ns.j),
        parse_halfint(ns.m),
    )
    value = cg(args)
    if ns.format == "plain":
        _emit(f"{value} ~= {value.approx()}")
    else:
        _emit(json.dumps(_surd_json(value)))
    return 0


def cmd_threej(ns: argparse.Namespace) -> int:
    value = three_j(
        parse_halfint(ns.j1),
        parse_halfint(ns.m1),
        parse_halfint(ns.j2),
        parse_halfint(ns.m2),
        parse_halfint(ns.j),
        parse_halfint(ns.m),
    )
    if ns.format == "plain":
        _emit(f"{value} ~= {value.approx()}")
    else:
        _emit(json.dumps(_surd_json(value)))
    return 0


def cmd_regge_audit(ns: argparse.Namespace) -> int:
    entries = regge_orbit_audit(
        parse_halfint(ns.a),
        parse_halfint(ns.alpha),
        parse_halfint(ns.b),
        parse_halfint(ns.beta),
        parse_halfint(ns.c),
        parse_halfint(ns.gamma),
    )
    rows = [
        {
            "transform": e.transform,
            "claimed": e.claimed,
            "actual": e.actual,
            "verdict": "agree" if e.agrees else "diverge",
        }
        for e in entries
    ]
    if ns.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["transform", "claimed", "actual", "verdict"])
        for row in rows:
            writer.writerow([row["transform"], row["claimed"], row["actual"], row["verdict"]])
    elif ns.format == "plain":
        for row in rows:
            _emit(f"{row['transform']}\t{row['claimed']:+d}\t{row['actual']:+d}\t{row['verdict']}")
    else:
        _emit(json.dumps(rows))
    return 0


def cmd_couple(ns: argparse.Namespace) -> int:
    chain = CouplingChain(
        _parse_js(ns.js), _parse_intermediates(ns.intermediates), parse_halfint(ns.j)
    )
    expansion = expand_coupled_state(chain, parse_halfint(ns.m))
    terms = []
    for ms in sorted(expansion.amplitudes, key=lambda t: tuple(m.twice for m in t)):
        terms.append(
            {"ms": [str(m) for m in ms], "amp": _surd_json(expansion.amplitudes[ms])}
        )
    _emit(
        json.dumps({"chain": chain.to_json_dict(), "m": str(expansion.total_m), "terms": terms})
    )
    return 0


def cmd_schemes(ns: argparse.Namespace) -> int:
    trees = enumerate_coupling_trees(ns.n, max_leaves=_max_trees())
    if ns.count_only:
        _emit(str(len(trees)))
    else:
        _emit(json.dumps([t.to_nested() for t in trees]))
    return 0


def cmd_diagram(ns: argparse.Namespace) -> int:
    trees = enumerate_coupling_trees(ns.n, max_leaves=_max_trees())
    if not 0 <= ns.scheme < len(trees):
        raise DomainError(f"scheme index {ns.scheme} out of range 0..{len(trees) - 1}")
    labels = ns.labels.split(",") if ns.labels else [str(i) for i in range(1, ns.n + 1)]
    _emit(export_dot(trees[ns.scheme], labels))
    return 0


def cmd_classify(ns: argparse.Namespace) -> int:
    raw = sys.stdin.read() if ns.particle in (None, "-") else ns.particle
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON particle description: {exc}") from exc
    _emit(json.dumps({"fermion": is_fermion(particle_from_json(obj))}))
    return 0


def cmd_kepler(ns: argparse.Namespace) -> int:
    statistics = Statistics.BOSON0 if ns.stats == "boson" else Statistics.FERMION_HALF
    j_cut = parse_halfint(ns.jcut)
    levels = spectrum(ns.z, j_cut, statistics)
    verdict = kramers_applicability(ns.z, statistics)
    if ns.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["j_tuple", "energy_num", "energy_den", "deg_paper", "deg_enum", "kramers"])
        for level in levels:
            writer.writerow(
                [
                    ";".join(str(j) for j in level.js),
                    level.energy.numerator,
                    level.energy.denominator,
                    level.degeneracy_paper,
                    level.degeneracy_enumerated,
                    verdict.value,
                ]
            )
        return 0
    payload = {
        "z": ns.z,
        "jcut": str(j_cut),
        "statistics": statistics.value,
        "kramers": verdict.value,
        "levels": [
            {
                "js": [str(j) for j in level.js],
                "energy": {
                    "num": str(level.energy.numerator),
                    "den": str(level.energy.denominator),
                },
                "approx": float(level.energy),
                "deg_paper": level.degeneracy_paper,
                "deg_enum": level.degeneracy_enumerated,
                "diverges": level.diverges,
            }
            for level in levels
        ],
        "merged": [
            {
                "energy": {"num": str(m.energy.numerator), "den": str(m.energy.denominator)},
                "approx": float(m.energy),
                "deg_paper": m.degeneracy_paper,
                "deg_enum": m.degeneracy_enumerated,
                "tuples": [[str(j) for j in js] for js in m.js_tuples],
            }
            for m in merge_spectrum(levels)
        ],
    }
    _emit(json.dumps(payload))
    return 0


# ---------------------------------------------------------------------------
# verify grids


def _parse_grid(text: str) -> tuple[int, HalfInt]:
    pairs = {}
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        if "=" not in chunk:
            raise DomainError(f"grid entries look like key=value, got {chunk!r}")
        key, value = chunk.split("=", 1)
        pairs[key.strip()] = value.strip()
    if set(pairs) != {"n", "jmax"}:
        raise DomainError(f"grid needs exactly n=... and jmax=..., got {sorted(pairs)}")
    try:
        n = int(pairs["n"])
    except ValueError as exc:
        raise DomainError(f"grid n must be an integer, got {pairs['n']!r}") from exc
    top = parse_halfint(pairs["jmax"])
    if n < 2 or top.twice < 0:
        raise DomainError("grid needs n >= 2 and jmax >= 0")
    return n, top


def _js_tuples(n: int, top: HalfInt) -> Iterator[tuple[HalfInt, ...]]:
    values = [HalfInt(t) for t in range(0, top.twice + 1)]
    return itertools.product(values, repeat=n)


def _verify_records(ns: argparse.Namespace) -> Iterator[dict]:
    n, top = _parse_grid(ns.grid)
    if ns.prop in ("univalence", "compat"):
        for js in _js_tuples(n, top):
            for j in halfint_range(jmin(js), jmax(js)):
                if ns.prop == "univalence":
                    claimed = coupled_univalence(js)
                    actual = t_squared_sign(j)
                else:
                    claimed = 1
                    actual = 1 if check_compatibility(js, j) else -1
                yield {
                    "input": {"js": [str(x) for x in js], "j": str(j)},
                    "claimed": claimed,
                    "actual": actual,
                    "verdict": "agree" if claimed == actual else "diverge",
                }
        return
    for js in _js_tuples(n, top):
        for chain in enumerate_chains(js):
            base = chain.to_json_dict()
            if ns.prop == "first-sym":
                ranges = [list(projection_range(j)) for j in js]
                for ms in itertools.product(*ranges):
                    total = sum(m.twice for m in ms)
                    if abs(total) > chain.total_j.twice:
                        continue
                    audit = audit_first_symmetry(chain, ms, HalfInt(total))
                    yield {
                        "input": dict(base, ms=[str(m) for m in ms], m=str(HalfInt(total))),
                        "claimed": 1,
                        "actual": audit.ratio,
                        "verdict": audit.verdict,
                    }
            elif ns.prop == "second-sym":
                if not chain.total_j.is_half_odd:
                    continue
                for m in projection_range(chain.total_j):
                    value = audit_second_symmetry(chain, m, ns.interpretation)
                    yield {
                        "input": dict(base, m=str(m), interpretation=ns.interpretation),
                        "claimed": "0",
                        "actual": _sum_json(value),
                        "verdict": "agree" if value.is_zero else "diverge",
                    }
            elif ns.prop == "kramers":
                if not chain.total_j.is_half_odd:
                    continue
                for m in projection_range(chain.total_j):
                    value = kramers_overlap(chain, m)
                    yield {
                        "input": dict(base, m=str(m)),
                        "claimed": "0",
                        "actual": _sum_json(value),
                        "verdict": "agree" if value.is_zero else "diverge",
                    }


def cmd_verify(ns: argparse.Namespace) -> int:
    for record in _verify_records(ns):
        _emit(json.dumps(record))
    return 0


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that treats -1/2 and -0.5 as values, not option names."""

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def _add_cg_like(sub: argparse.ArgumentParser) -> None:
    for flag in ("--j1", "--m1", "--j2", "--m2", "--j", "--m"):
        sub.add_argument(flag, required=True, metavar="J", help="half-integer, e.g. 3/2")
    sub.add_argument("--format", choices=["json", "plain"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="jcouple",
        description="Exact angular-momentum coupling coefficients, scheme "
        "combinatorics, and time-reversal audits.",
    )
    parser.add_argument(
        "--quiet", action="store_true", help="suppress banners (output carries none)"
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("cg", help="one Clebsch-Gordan coefficient, exactly")
    _add_cg_like(p)
    p.set_defaults(handler=cmd_cg)

    p = subs.add_parser("threej", help="one Wigner 3j symbol, exactly")
    _add_cg_like(p)
    p.set_defaults(handler=cmd_threej)

    p = subs.add_parser("regge-audit", help="audit the 12 Regge orbit transforms")
    for flag in ("--a", "--alpha", "--b", "--beta", "--c", "--gamma"):
        p.add_argument(flag, required=True, metavar="J")
    p.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    p.set_defaults(handler=cmd_regge_audit)

    p = subs.add_parser("couple", help="expand a sequentially coupled state")
    p.add_argument("--js", required=True, help="comma-separated momenta, e.g. 1/2,1/2,1")
    p.add_argument("--intermediates", default="", help="comma-separated j12,j123,...")
    p.add_argument("--j", required=True, help="total momentum")
    p.add_argument("--m", required=True, help="total projection")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(handler=cmd_couple)

    p = subs.add_parser("schemes", help="enumerate binary coupling schemes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(handler=cmd_schemes)

    p = subs.add_parser("diagram", help="DOT diagram of one coupling scheme")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--labels", default="", help="comma-separated edge labels (default 1..n)")
    p.add_argument("--scheme", type=int, default=0, help="scheme index (0 = sequential)")
    p.add_argument("--format", choices=["dot"], default="dot")
    p.set_defaults(handler=cmd_diagram)

    p = subs.add_parser("verify", help="audit a proposition over a grid, one JSON line each")
    p.add_argument(
        "--prop",
        required=True,
        choices=["univalence", "compat", "first-sym", "second-sym", "kramers"],
    )
    p.add_argument("--grid", required=True, help="e.g. n=2,jmax=1")
    p.add_argument(
        "--interpretation",
        choices=["paper-literal", "same-state"],
        default="paper-literal",
        help="reading of the second coefficient chain (second-sym only)",
    )
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(handler=cmd_verify)

    p = subs.add_parser("classify", help="boson/fermion classification of a compound")
    p.add_argument(
        "particle",
        nargs="?",
        help='JSON nested array, e.g. "[[-1,-1,-1],-1]" (reads stdin when omitted)',
    )
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(handler=cmd_classify)

    p = subs.add_parser("kepler", help="exact Kepler spectrum and degeneracy audit")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--jcut", required=True, help="largest single-particle j")
    p.add_argument("--stats", choices=["boson", "fermion"], required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(handler=cmd_kepler)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        code = ns.handler(ns)
        sys.stdout.flush()
        return code
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # downstream consumer closed the pipe (e.g. `| head`); exit quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
