"""Command-line front end: reproducible JSON/CSV reports over the library.

Subcommands: classify, xi, kernel, generator, spin-check, motion.  Every
report embeds a "verdicts" object with the invariant checks relevant to
the command; the process exits 0 only when all of them hold.  Exit code 1
flags bad input, 2 a failed invariant.  All randomness is seeded
explicitly, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import linalg
from .atlas import descriptor, factorization_class, classify, verify_even_subalgebra_map
from .blades import INTERLEAVED, PLAIN, Multivector, Signature
from .errors import InvariantViolation
from .geometry import (
    SpinorCoords,
    generator_to_spinor,
    independent_system,
    kernel_spinors,
    motion_on_points,
    motion_on_spinors,
    normalize,
)
from .matrices import build_xi, build_xi_symbolic, neutral_signature, quadratic_form
from .spin import SpinElement, check_relations, is_lipschitz, is_spin, is_spin_plus, random_spin_element

DEFAULT_TOLERANCE = 1e-9


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    try:
        report = args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    rendered = _render(report, args)
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)
    verdicts = report.get("verdicts", {})
    return 0 if all(bool(v) for v in verdicts.values()) else 2


def _parse_args(argv: list[str] | None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="spinorlab",
        description="Exact Clifford algebra reports: classification, point matrices, "
        "kernels, plane generators, spin checks, and motions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("classify", help="matrix-algebra structure of Cl(p,q)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("xi", help="point matrix of S(n,n), symbolic or evaluated")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=str, default=None, help="comma-separated rationals x0..x2n")
    common(p)
    p.set_defaults(handler=cmd_xi)

    p = sub.add_parser("kernel", help="kernel spinors of an absolute point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=str, required=True)
    common(p)
    p.set_defaults(handler=cmd_kernel)

    p = sub.add_parser("generator", help="plane generator of a spinor, plus round trip")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=str, required=True, help="2^n coords, or scalar,vector,pairs")
    common(p)
    p.set_defaults(handler=cmd_generator)

    p = sub.add_parser("spin-check", help="norm and coordinate relations of an element")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=str, required=True, help="multivector text, e.g. '3/5 + 4/5*e12'")
    p.add_argument("--ordering", choices=(PLAIN, INTERLEAVED), default=PLAIN)
    common(p)
    p.set_defaults(handler=cmd_spin_check)

    p = sub.add_parser("motion", help="act on a point or spinor by a spin element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=str, default=None, help="multivector text in the (n,n) algebra")
    p.add_argument("--seed", type=int, default=None, help="draw the element instead")
    p.add_argument("--k", type=int, default=1, help="vector-pair count for --seed")
    p.add_argument("--x", type=str, default=None)
    p.add_argument("--a", type=str, default=None)
    common(p)
    p.set_defaults(handler=cmd_motion)

    return parser.parse_args(argv)


# -- command handlers ---------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> dict:
    sig = Signature(args.p, args.q)
    report = descriptor(sig)
    verdicts = {
        "dimension_identity": classify(sig).real_dimension == 1 << sig.dim,
    }
    if sig.dim % 2 == 0 and sig.dim > 0:
        via_factors = factorization_class(sig)
        direct = classify(sig)
        verdicts["factorization_matches"] = (
            via_factors.ring,
            via_factors.size,
            via_factors.multiplicity,
        ) == (direct.ring, direct.size, direct.multiplicity)
    if 1 <= sig.dim <= 8:
        verdicts["even_map_multiplicative"] = verify_even_subalgebra_map(sig)
    report["verdicts"] = verdicts
    return report


def cmd_xi(args: argparse.Namespace) -> dict:
    symbolic = build_xi_symbolic(args.n)
    symbolic.verify_square_identity()
    report: dict = {"n": args.n, "verdicts": {"square_identity": True}}
    if args.x is None:
        report["symbolic"] = True
        report["rows"] = symbolic.token_rows()
    else:
        x = _parse_coords(args.x, 2 * args.n + 1)
        evaluated = build_xi(x)
        evaluated.verify_square_identity(x)
        report["symbolic"] = False
        report["x"] = list(x)
        report["form_value"] = quadratic_form(x)
        report["rows"] = [list(row) for row in evaluated.entries]
    return report


def cmd_kernel(args: argparse.Namespace) -> dict:
    x = _parse_coords(args.x, 2 * args.n + 1)
    basis = kernel_spinors(x)
    xi_rows = build_xi(x).rows()
    annihilated = all(
        all(v == 0 for v in linalg.mat_vec(xi_rows, vec.values)) for vec in basis
    )
    return {
        "n": args.n,
        "x": list(x),
        "form_value": quadratic_form(x),
        "kernel_dimension": len(basis),
        "basis": [vec.to_named() for vec in basis],
        "verdicts": {
            "point_on_absolute": quadratic_form(x) == 0,
            "dimension_is_2_pow_n_minus_1": len(basis) == 1 << (args.n - 1),
            "basis_annihilated": annihilated,
        },
    }


def cmd_generator(args: argparse.Namespace) -> dict:
    spinor = _parse_spinor(args.n, args.a)
    generator = independent_system(spinor)
    recovered = generator_to_spinor(generator)
    parallel = _parallel(recovered.values, spinor.values)
    norm_info = normalize(spinor)
    report = {
        "n": args.n,
        "spinor": spinor.to_named(),
        "generator": {
            "n": generator.n,
            "equations": [list(row) for row in generator.equations],
            "basis": [list(row) for row in generator.basis],
        },
        "row_masks": list(generator.row_masks),
        "recovered_spinor": recovered.to_named(),
        "normalization": {
            "scale_sq": norm_info.scale_sq,
            "exact": norm_info.exact,
            "spinor": norm_info.spinor.to_named(),
        },
        "verdicts": {
            "relations_hold": spinor.satisfies_relations(),
            "projective_dimension_n_minus_1": generator.projective_dimension == args.n - 1,
            "basis_inside_absolute": all(quadratic_form(b) == 0 for b in generator.basis),
            "roundtrip_recovers_ray": parallel,
        },
    }
    return report


def cmd_spin_check(args: argparse.Namespace) -> dict:
    sig = Signature(args.p, args.q, args.ordering)
    value = Multivector.from_text(sig, args.s)
    if not value.is_even():
        raise ValueError("spin candidates must be even elements")
    element = SpinElement(value)
    relation_report = check_relations(element)
    report: dict = {
        "norm": relation_report.norm,
        "residuals": [
            {"indices": list(indices), "value": res}
            for indices, res in relation_report.residuals
        ],
        "spin": relation_report.spin,
        "spin_plus": relation_report.spin_plus,
    }
    try:
        lipschitz = is_lipschitz(value)
    except ValueError:
        lipschitz = False
    report.update(
        {
            "p": args.p,
            "q": args.q,
            "ordering": args.ordering,
            "element": value.to_text(),
            "lipschitz": lipschitz,
            "is_spin": is_spin(element),
            "is_spin_plus": is_spin_plus(element),
            "verdicts": {
                "predicates_consistent": is_spin(element)
                == (lipschitz and report["spin"])
            },
        }
    )
    return report


def cmd_motion(args: argparse.Namespace) -> dict:
    if (args.s is None) == (args.seed is None):
        raise ValueError("provide exactly one of --s and --seed")
    if (args.x is None) == (args.a is None):
        raise ValueError("provide exactly one of --x and --a")
    sig = neutral_signature(args.n)
    if args.s is not None:
        element = SpinElement(Multivector.from_text(sig, args.s))
    else:
        element = random_spin_element(sig, args.seed, args.k, norm_plus=True)
    report: dict = {
        "n": args.n,
        "element": element.value.to_text(),
        "seed": args.seed,
    }
    verdicts: dict = {}
    if args.x is not None:
        x = _parse_coords(args.x, 2 * args.n + 1)
        y = motion_on_points(element, x)
        report["x"] = list(x)
        report["y"] = y
        verdicts["form_preserved"] = quadratic_form(y) == quadratic_form(x)
        if quadratic_form(x) == 0 and any(x):
            from .matrices import rep_even_element

            kernel_x = kernel_spinors(x)
            kernel_y = kernel_spinors(y)
            rep = rep_even_element(element, args.n)
            mapped = [linalg.mat_vec(rep, vec.values) for vec in kernel_x]
            verdicts["kernel_equivariance"] = linalg.same_row_space(
                mapped, [list(vec.values) for vec in kernel_y]
            )
    else:
        spinor = _parse_spinor(args.n, args.a)
        moved = motion_on_spinors(element, spinor)
        report["a"] = spinor.to_named()
        report["a_moved"] = moved.to_named()
        if spinor.satisfies_relations():
            verdicts["image_satisfies_relations"] = moved.satisfies_relations()
    report["verdicts"] = verdicts
    return report


# -- input parsing --------------------------------------------------------------


def _parse_coords(text: str, expected: int) -> list[Fraction]:
    try:
        values = [Fraction(token.strip()) for token in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse coordinates {text!r}: {exc}")
    if len(values) != expected:
        raise ValueError(f"expected {expected} coordinates, got {len(values)}")
    return values


def _parse_spinor(n: int, text: str) -> SpinorCoords:
    try:
        values = [Fraction(token.strip()) for token in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse spinor coordinates {text!r}: {exc}")
    full = 1 << n
    low = 1 + n + n * (n - 1) // 2
    if len(values) == full:
        return SpinorCoords(n, values)
    if len(values) == low != full:
        scalar = values[0]
        vector = values[1 : 1 + n]
        pairs = {}
        pos = 1 + n
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                pairs[(i, j)] = values[pos]
                pos += 1
        return SpinorCoords.from_low_grade(n, scalar, vector, pairs)
    raise ValueError(
        f"spinor for rank {n} needs {full} coordinates "
        f"(or {low} low-grade ones: scalar, singles, ordered pairs)"
    )


def _parallel(u: list[Fraction], v: list[Fraction]) -> bool:
    if all(x == 0 for x in u) or all(x == 0 for x in v):
        return False
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


# -- rendering --------------------------------------------------------------------


def _render(report: dict, args: argparse.Namespace) -> str:
    converted = _convert(report, args.mode, args.tol)
    if args.format == "json":
        return json.dumps(converted, indent=2, sort_keys=True) + "\n"
    if args.format == "csv":
        lines = ["key,value"]
        for key, value in _flatten(converted):
            lines.append(f"{key},{value}")
        return "\n".join(lines) + "\n"
    lines = [f"{key}: {value}" for key, value in _flatten(converted)]
    return "\n".join(lines) + "\n"


def _convert(value, mode: str, tol: float):
    if isinstance(value, Fraction):
        if mode == "float":
            approx = float(value)
            return 0.0 if abs(approx) < tol else approx
        return str(value)
    if isinstance(value, dict):
        return {k: _convert(v, mode, tol) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_convert(v, mode, tol) for v in value]
    return value


def _flatten(value, prefix: str = ""):
    if isinstance(value, dict):
        for key in sorted(value):
            yield from _flatten(value[key], f"{prefix}{key}.")
    elif isinstance(value, list):
        for idx, item in enumerate(value):
            yield from _flatten(item, f"{prefix}{idx}.")
    else:
        text = str(value)
        if "," in text:
            text = '"' + text.replace('"', '""') + '"'
        yield prefix.rstrip("."), text


if __name__ == "__main__":
    raise SystemExit(main())
