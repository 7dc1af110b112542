"""Command-line front end.

Subcommands: ``info`` (group data and Jacobian samples), ``bch``
(closed-form vs series products), ``transform`` (forward transform or
Fourier coefficient of an expression or builtin), ``character``
(class-coefficient fast path vs the shell prediction), ``poisson``
(both sides of the summation identity), and ``verify`` (the built-in
verification suites, JSON report, exit 1 on any failed case).

Reports are deterministic: fixed field order and shortest-roundtrip
float formatting (within 17 significant digits), so identical inputs
produce byte-identical output.  Exit codes: 0 success, 1 verification
failure, 2 operational error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
import time

import numpy as np

from . import expr as expr_mod
from .errors import NCFourierError, UnsupportedGroup
from .fourier import (
    PositionFunction,
    bump_position,
    character_position,
    character_shell_data,
    fourier_coeff,
    fourier_coeff_class,
    fourier_coeff_class_duflo,
    gaussian_position,
    inverse_series_nostar,
    ncft,
    parseval_gap,
    trig_poly_u1,
)
from .groups import character, group_from_name, make_group, spin_rep
from .lie import SeriesOutOfDomain, bch, bch_closed_form, bch_series, jacobian, jacobian_determinant_mode
from .poisson import poisson_sum
from .quadrature import QuadratureSpec
from .starprod import DUFLO, Scheme, planewave_eval, single_wave
from .waves import branch_average, invariant_wave_reduced

REPORT_VERSION = 1

_BUILTIN_RE = re.compile(r"^(gaussian|character|bump)\(([^)]*)\)$")


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _parse_vec(text, dim):
    vals = [float(t) for t in text.split(",")]
    if len(vals) != dim:
        raise UnsupportedGroup(f"expected {dim} comma-separated components, got {len(vals)}")
    return np.asarray(vals, dtype=float)


def _quad_from_args(args):
    return QuadratureSpec(
        radial_order=args.quad_radial,
        angular_orders=(args.quad_angular, args.quad_angular),
        box_orders=(2 * args.quad_radial,),
        cutoff_radius=args.cutoff,
    )


def build_function(group, spec_text, domain="whole-algebra"):
    """Resolve a --func argument: builtin family call or a DSL expression.

    Builtins (gaussian(sigma), character(two_lambda), bump(width)) carry
    their class-function flag; free-form expressions are treated as
    general functions of x, y, z, r.
    """
    m = _BUILTIN_RE.match(spec_text.strip())
    if m:
        name, arg = m.group(1), m.group(2)
        if name == "gaussian":
            return gaussian_position(group, float(arg), domain=domain)
        if name == "character":
            return character_position(int(arg))
        if name == "bump":
            return bump_position(group, float(arg))
    fn = expr_mod.compile_cartesian(spec_text, group.dim_n)
    decay = 12.0 if domain == "whole-algebra" else None
    return PositionFunction(group, fn, is_class_function=False, domain=domain, decay_radius=decay)


def _jnum(value):
    """JSON-ready rendering of floats/complex with roundtrip formatting."""
    if isinstance(value, complex):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def _emit(args, payload, rows=None):
    """Write the payload as JSON (or CSV rows) to --out or stdout."""
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        if rows is None:
            rows = [("key", "value")] + [(k, json.dumps(v)) for k, v in payload.items()]
        for row in rows:
            buf.write(",".join(str(c) for c in row) + "\n")
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_info(args):
    g = group_from_name(args.group)
    radii = np.linspace(0.0, min(g.principal_radius, 3.0), 7)[1:]
    samples = [
        {"r": float(r), "jacobian": float(jacobian(g, np.append(np.zeros(g.dim_n - 1), r)))}
        for r in radii
    ]
    payload = {
        "group": json.loads(g.to_json()),
        "jacobian_samples": samples,
    }
    _emit(args, payload)
    return 0


def cmd_bch(args):
    g = group_from_name(args.group)
    X = _parse_vec(args.x, g.dim_n)
    Y = _parse_vec(args.y, g.dim_n)
    closed = bch_closed_form(g, X, Y) if g.name in ("u1", "su2") or g.is_abelian else None
    try:
        series = bch_series(g, X, Y, order=args.order, tol=max(args.tol, 1e-8))
        series_note = None
    except SeriesOutOfDomain as exc:
        series = None
        series_note = str(exc)
    payload = {
        "group": g.name,
        "x": X.tolist(),
        "y": Y.tolist(),
        "closed_form": closed.tolist() if closed is not None else None,
        "series": series.tolist() if series is not None else None,
        "series_order": args.order,
        "series_note": series_note,
        "discrepancy": (
            float(np.linalg.norm(series - closed))
            if closed is not None and series is not None
            else None
        ),
    }
    _emit(args, payload)
    return 0


def cmd_transform(args):
    g = group_from_name(args.group)
    p = _parse_vec(args.p, g.dim_n)
    quad = _quad_from_args(args)
    if args.kind == "ncft":
        psi = build_function(g, args.func, domain="whole-algebra")
        value = ncft(psi, p, quad)
    else:
        psi = build_function(g, args.func, domain="principal-branch")
        value = fourier_coeff(psi, p, quad)
    payload = {
        "group": g.name,
        "kind": args.kind,
        "func": args.func,
        "p": p.tolist(),
        "value": _jnum(complex(value)),
    }
    _emit(args, payload)
    return 0


def cmd_character(args):
    quad = _quad_from_args(args)
    psi = character_position(args.two_lambda)
    p = args.p_norm
    computed = fourier_coeff_class(psi, p, quad)
    inside = args.two_lambda <= p < args.two_lambda + 2
    predicted = math.pi**2 / p if inside else 0.0
    payload = {
        "two_lambda": args.two_lambda,
        "p_norm": p,
        "computed": _jnum(complex(computed)),
        "predicted": predicted,
        "on_shell": inside,
        "residual": abs(complex(computed) - predicted),
    }
    _emit(args, payload)
    return 0


def cmd_poisson(args):
    g = group_from_name(args.group)
    X = _parse_vec(args.x, g.dim_n)
    quad = _quad_from_args(args)
    psi = build_function(g, args.func, domain="whole-algebra")
    result = poisson_sum(psi, X, quad=quad, window=args.window)
    payload = {
        "group": g.name,
        "func": args.func,
        "x": X.tolist(),
        "lhs": _jnum(result.lhs),
        "rhs": _jnum(result.rhs),
        "residual": result.gap,
    }
    _emit(args, payload)
    return 0


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def _case(case_id, ref, expected, computed, tolerance):
    residual = abs(complex(expected) - complex(computed))
    return {
        "id": case_id,
        "ref": ref,
        "expected": _jnum(expected),
        "computed": _jnum(complex(computed)),
        "residual": residual,
        "tolerance": tolerance,
        "passed": bool(residual <= tolerance),
    }


def _suite_core(quad, rng):
    su2 = make_group("su2")
    u1 = make_group("u1")
    cases = []

    half_pi = np.array([0.0, 0.0, math.pi / 2])
    cases.append(
        _case(
            "jacobian-su2-halfpi",
            "closed-form Haar Jacobian sin^2(r)/r^2 at r = pi/2",
            4.0 / math.pi**2,
            jacobian(su2, half_pi),
            1e-14,
        )
    )
    cases.append(
        _case(
            "jacobian-det-mode-agrees",
            "determinant mode det((1 - e^{-ad})/ad) vs closed form",
            jacobian(su2, np.array([0.4, -0.2, 0.9])),
            jacobian_determinant_mode(su2, np.array([0.4, -0.2, 0.9])),
            1e-12,
        )
    )

    X = rng.normal(size=3) * 0.12
    Y = rng.normal(size=3) * 0.12
    cases.append(
        _case(
            "bch-series-vs-closed",
            "BCH series at default order vs quaternion closed form",
            0.0,
            float(np.linalg.norm(bch_series(su2, X, Y) - bch_closed_form(su2, X, Y))),
            1e-10,
        )
    )
    B = bch(su2, X, Y)
    cases.append(
        _case(
            "bch-operator-level",
            "representation homomorphism rho(exp B(X,Y)) = rho(exp X) rho(exp Y)",
            0.0,
            float(np.max(np.abs(spin_rep(2, B) - spin_rep(2, X) @ spin_rep(2, Y)))),
            1e-10,
        )
    )

    psi = gaussian_position(u1, 1.0)
    res = poisson_sum(psi, np.array([0.3]), quad=quad)
    cases.append(
        _case(
            "u1-poisson-gaussian",
            "Abelian Poisson summation: lattice sum vs mode sum",
            res.lhs,
            res.rhs,
            1e-10,
        )
    )

    phi = trig_poly_u1(u1, {1: 1.0, -2: 0.5j})
    gap = parseval_gap(phi, phi, quad, n_max=8)
    cases.append(
        _case(
            "u1-parseval-trig",
            "U(1) isometry: Haar pairing vs reduced mode pairing",
            0.0,
            gap,
            1e-12,
        )
    )
    return cases


def _suite_su2(quad, rng):
    su2 = make_group("su2")
    cases = []

    chi1 = character_position(2)
    on = complex(fourier_coeff_class(chi1, 2.5, quad))
    off = complex(fourier_coeff_class(chi1, 5.5, quad))
    cases.append(
        _case("character-shell-on", "class coefficient pi^2/||p|| on the shell [2l, 2l+2)",
              math.pi**2 / 2.5, on, 1e-8)
    )
    cases.append(
        _case("character-shell-off", "class coefficient vanishes off the character shell",
              0.0, off, 1e-8)
    )

    data = character_shell_data(2)
    worst = 0.0
    for r in (0.7, 1.4, 2.1):
        X = np.array([0.0, 0.0, r])
        rec = inverse_series_nostar(data, X, Scheme(), quad)
        worst = max(worst, abs(rec - complex(character(2, r))) / abs(complex(character(2, r))))
    cases.append(
        _case("character-roundtrip", "shell data inverts back to the character", 0.0, worst, 1e-4)
    )

    X = np.array([0.0, 0.0, 1.1])
    p_on = np.array([0.3, 0.4, 2.0])  # <p, u_X> = 2, integer
    avg = branch_average(su2, X, p_on, 4000)
    exact = invariant_wave_reduced(su2, X, p_on)
    cases.append(
        _case("localization-on-support", "branch average converges to the invariant wave",
              exact, avg, 1e-10)
    )
    return cases


def _suite_duflo(quad, rng):
    su2 = make_group("su2")
    cases = []

    chi1 = character_position(2)
    shells = fourier_coeff_class_duflo(chi1, 6, quad)
    err = max(abs(shells.weights[k] - (1.0 if k == 3 else 0.0)) for k in shells.weights)
    cases.append(
        _case("duflo-character-shell", "Duflo class data of chi_1: single Kirillov shell k = 3",
              0.0, err, 1e-10)
    )

    worst = 0.0
    for r in (0.7, 1.4, 2.1):
        X = np.array([0.0, 0.0, r])
        rec = inverse_series_nostar(shells, X, Scheme(DUFLO), quad)
        worst = max(worst, abs(rec - complex(character(2, r))) / abs(complex(character(2, r))))
    cases.append(
        _case("duflo-character-roundtrip", "Duflo shell weights invert back to the character",
              0.0, worst, 1e-4)
    )

    X = np.array([0.4, -0.7, 0.2])
    p = np.array([1.3, 0.2, -0.5])
    sym = planewave_eval(single_wave(Scheme(), su2, X), p)
    duf = planewave_eval(single_wave(Scheme(DUFLO), su2, X), p)
    cases.append(
        _case("duflo-wave-factor", "Duflo plane wave equals symmetric wave / J^{1/2}",
              sym / math.sqrt(jacobian(su2, X)), duf, 1e-14)
    )
    return cases


SUITES = {"core": _suite_core, "su2": _suite_su2, "duflo": _suite_duflo}


def cmd_verify(args):
    quad = _quad_from_args(args)
    rng = np.random.default_rng(args.seed)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    cases = []
    wall = {}
    for name in names:
        t0 = time.perf_counter()
        cases.extend(SUITES[name](quad, rng))
        wall[name] = time.perf_counter() - t0
    # wall times go to stderr so the report itself stays byte-identical
    # across runs with the same inputs and flags
    for name, dt in wall.items():
        sys.stderr.write(f"suite {name}: {dt:.3f} s\n")
    payload = {
        "version": REPORT_VERSION,
        "suite": args.suite,
        "cases": cases,
        "meta": {
            "quadrature": {
                "radial_order": quad.radial_order,
                "angular_orders": list(quad.angular_orders),
                "cutoff_radius": quad.cutoff_radius,
            },
            "seed": args.seed,
        },
    }
    rows = [("id", "residual", "tolerance", "passed")] + [
        (c["id"], c["residual"], c["tolerance"], c["passed"]) for c in cases
    ]
    _emit(args, payload, rows=rows)
    return 0 if all(c["passed"] for c in cases) else 1


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser():
    def add_global_flags(target, suppress):
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        target.add_argument("--quad-radial", type=int, **(kw or {"default": 64}))
        target.add_argument("--quad-angular", type=int, **(kw or {"default": 32}))
        target.add_argument("--cutoff", type=float, **(kw or {"default": 12.0}))
        target.add_argument("--tol", type=float, **(kw or {"default": 1e-12}))
        target.add_argument("--format", choices=("json", "csv"), **(kw or {"default": "json"}))
        target.add_argument("--out", **(kw or {"default": None}))
        target.add_argument("--seed", type=int, **(kw or {"default": 0}))

    parser = argparse.ArgumentParser(
        prog="ncfourier",
        description="Noncommutative Fourier transforms on compact Lie groups",
    )
    add_global_flags(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    add_global_flags(shared, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="group data and Jacobian samples", parents=[shared])
    p.add_argument("group")
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("bch", help="closed-form and series products", parents=[shared])
    p.add_argument("group")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--order", type=int, default=14)
    p.set_defaults(fn=cmd_bch)

    p = sub.add_parser("transform", help="forward transform or Fourier coefficient", parents=[shared])
    p.add_argument("group")
    p.add_argument("--func", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--kind", choices=("ncft", "coeff"), default="ncft")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("character", help="class coefficient vs shell prediction", parents=[shared])
    p.add_argument("--two-lambda", type=int, required=True)
    p.add_argument("--p-norm", type=float, required=True)
    p.set_defaults(fn=cmd_character)

    p = sub.add_parser("poisson", help="both sides of the summation identity", parents=[shared])
    p.add_argument("group")
    p.add_argument("--func", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--window", type=int, default=8)
    p.set_defaults(fn=cmd_poisson)

    p = sub.add_parser("verify", help="run verification suites", parents=[shared])
    p.add_argument("--suite", choices=("all", "core", "su2", "duflo"), default="all")
    p.set_defaults(fn=cmd_verify)

    return parser


def run_command(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except NCFourierError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run_command(sys.argv[1:]))
