"""Command-line interface: JSON models in, JSON/CSV reports out.

A model document is either

    {"A": [[...]], "b": [...], "omega": [...]}            (matrix form)
    {"graph": {"vertices": m, "edges": [[k, j], ...]},
     "b": "zeros" | "ones" | [...], "K": 1.0,
     "omega": [...]}                                       (graph form)

with exactly one of "A"/"graph" present. Graph models use the reduced
incidence matrix and divide omega by the coupling K before any solve. All
floating-point output is printed with 17 significant digits so repeated
runs are byte identical for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import dynamics, discriminant as disc, posopt, variety
from .errors import (
    DegenerateJacobian,
    DimensionGuard,
    Disconnected,
    Inconclusive,
    InfeasibleSlice,
    InvalidGraph,
    LissvarError,
    NonIntegerShift,
    NotFullDimensional,
    NotHypersurface,
    NotUnivariate,
    RankDeficient,
    RootExtractionFailed,
    TooLarge,
    TooManyColumns,
    ZeroCoordinate,
)
from .gaussian import GaussianRational
from .graphs import graph_from_json, incidence
from .polynomials import PolynomialDense
from .polytope import discriminant_degree_bound

EXIT_BAD_INPUT = 2
EXIT_NOT_HYPERSURFACE = 3
EXIT_GUARD = 4
EXIT_NO_CONVERGENCE = 5

_INPUT_ERRORS = (InvalidGraph, Disconnected, RankDeficient, NotFullDimensional,
                 ZeroCoordinate, ValueError, KeyError, TypeError)
_GUARD_ERRORS = (DimensionGuard, TooManyColumns, TooLarge)
_SOLVER_ERRORS = (Inconclusive, RootExtractionFailed, DegenerateJacobian)


# ---------------------------------------------------------------------------
# deterministic JSON rendering (17 significant digits for floats)


def _format_float(x: float) -> str:
    if x != x:
        return '"nan"'
    if x == float("inf"):
        return '"inf"'
    if x == float("-inf"):
        return '"-inf"'
    return format(float(x), ".17g")


def render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {render_json(v, indent + 1)}'
            for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ", ".join(render_json(v, indent + 1) for v in obj)
        if len(inner) <= 72:
            return "[" + inner + "]"
        items = ",\n".join(f"{pad}  {render_json(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    return json.dumps(str(obj))


def _emit(doc) -> None:
    sys.stdout.write(render_json(doc) + "\n")


# ---------------------------------------------------------------------------
# model loading


def _shift_vector(spec, n: int):
    if spec == "zeros":
        return [0] * n
    if spec == "ones":
        return [1] * n
    if isinstance(spec, list):
        return spec
    raise ValueError(f'bad shift vector {spec!r}: need "zeros", "ones" or a list')


def load_model_document(path: str):
    """Returns (model, omega or None, graph or None, probe point or None)."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("model document must be a JSON object")
    has_A = "A" in doc
    has_graph = "graph" in doc
    if has_A == has_graph:
        raise ValueError('model document needs exactly one of "A" or "graph"')
    omega = doc.get("omega")
    if has_A:
        model = variety.build_model(doc["A"], doc["b"])
        graph = None
        if omega is not None:
            omega = np.asarray(omega, dtype=float)
    else:
        graph = graph_from_json(doc["graph"])
        _, reduced = incidence(graph)
        n = reduced.num_cols
        model = variety.build_model(reduced, _shift_vector(doc.get("b", "ones"), n))
        coupling = float(doc.get("K", 1.0))
        if coupling <= 0:
            raise ValueError("coupling K must be positive")
        if omega is not None:
            omega = np.asarray(omega, dtype=float) / coupling
    if omega is not None and omega.shape != (model.dim,):
        raise ValueError(f"omega must have length {model.dim}")
    probe = doc.get("x")
    return model, omega, graph, probe


def _require_omega(omega):
    if omega is None:
        raise ValueError('this subcommand needs an "omega" entry in the model')
    return omega


# ---------------------------------------------------------------------------
# polynomial serialization


def _coeff_jsonable(c):
    if isinstance(c, GaussianRational):
        if c.is_real:
            return int(c.re) if c.re.denominator == 1 else float(c.re)
        re = int(c.re) if c.re.denominator == 1 else float(c.re)
        im = int(c.im) if c.im.denominator == 1 else float(c.im)
        return [re, im]
    if isinstance(c, complex):
        if c.imag == 0:
            return c.real
        return [c.real, c.imag]
    return c


def poly_to_json(poly: PolynomialDense) -> dict:
    terms = {",".join(str(e) for e in expo): _coeff_jsonable(c)
             for expo, c in sorted(poly.terms.items(), reverse=True)}
    return {"num_vars": poly.num_vars, "terms": terms}


def pretty_univariate(poly: PolynomialDense, var: str = "w") -> str:
    parts = []
    for (k,), c in sorted(poly.terms.items(), reverse=True):
        mag = abs(c)
        if k == 0:
            body = f"{mag}"
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_analyze(model, omega, graph, probe, args):
    report = {
        "rank": model.dim,
        "num_coordinates": model.num_coords,
        "lattice_index": model.index,
        "circuits": [list(c) for c in model.circuits.circuits],
        "circuit_vectors": [list(v) for v in model.circuits.circuit_vectors],
        "coloops": list(model.circuits.coloops),
        "cl_count": model.circuits.cl_count,
        "genericity": list(variety.genericity_test(model)),
        "normalized_volume": model.normalized_volume(),
        "fiber_degree": variety.fiber_degree(model, seed=args.seed),
        "degree": variety.degree(model),
        "discriminant_degree_bound": discriminant_degree_bound(model.A),
    }
    if probe is not None:
        rep = variety.membership(model, np.asarray(probe, dtype=complex),
                                 tol=args.tol, max_n=args.max_n)
        report["membership"] = {
            "is_member": rep.is_member,
            "min_singular_value": rep.min_singular_value,
            "threshold_used": rep.threshold_used,
            "matrix_dim": rep.matrix_dim,
        }
    _emit(report)
    return 0


def _cmd_equation(model, omega, graph, probe, args):
    eq = variety.hypersurface_equation(model)
    _emit({
        "fiber_degree": eq.fiber_deg,
        "det": poly_to_json(eq.det_poly),
        "root": poly_to_json(eq.root_poly),
    })
    return 0


def _cmd_equilibria(model, omega, graph, probe, args):
    omega = _require_omega(omega)
    eqs = dynamics.find_equilibria(model, omega, seed=args.seed, tol=args.tol)
    _emit({
        "omega": list(map(float, omega)),
        "ceiling": eqs.ceiling,
        "count": len(eqs),
        "equilibria": [
            {
                "theta": [float(t) for t in e.theta],
                "residual": e.residual,
                "eigenvalues": [float(v) for v in e.eigenvalues],
                "stable": e.stable,
                "classification": e.classification,
            }
            for e in eqs.equilibria
        ],
    })
    return 0


def _cmd_positive(model, omega, graph, probe, args):
    omega = _require_omega(omega)
    try:
        res = posopt.solve_positive(model, omega, tol=args.tol)
    except InfeasibleSlice as exc:
        _emit({"status": "InfeasibleSlice", "detail": str(exc)})
        return 0
    if res.status == "MaxIterations":
        print("solver did not converge", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    doc = {"status": res.status}
    if res.status == "Optimal":
        doc.update({
            "x_star": [float(v) for v in res.x_star],
            "theta_star": [float(v) for v in res.theta_star],
            "objective_value": res.objective_value,
            "kkt_residual": res.kkt_residual,
        })
    elif res.kkt_residual is not None:
        doc["kkt_residual"] = res.kkt_residual
    _emit(doc)
    return 0


def _cmd_discriminant(model, omega, graph, probe, args):
    if model.dim == 1 and model.b_is_integral:
        result = disc.exact_discriminant_1d(model)
        _emit({
            "kind": result.kind,
            "degree_bound": result.degree_bound,
            "delta": poly_to_json(result.delta),
            "pretty": pretty_univariate(result.delta),
        })
        return 0
    result = disc.sample_discriminant(model, num_samples=args.samples,
                                      seed=args.seed)
    writer = sys.stdout
    d = model.dim
    writer.write(",".join([f"omega_{k+1}" for k in range(d)] + ["residual"]) + "\n")
    for sample in result.samples:
        row = [format(float(v), ".17g") for v in sample.omega]
        row.append(format(sample.residual, ".17g"))
        writer.write(",".join(row) + "\n")
    if result.empty_caveat:
        print("warning: empty cloud; the branch locus may have codimension > 1",
              file=sys.stderr)
    return 0


def _cmd_sample_curve(model, omega, graph, probe, args):
    d = model.dim
    n = model.num_coords
    writer = sys.stdout
    header = [f"t_{k+1}" for k in range(d)] + [f"x_{j+1}" for j in range(n)]
    writer.write(",".join(header) + "\n")
    axis = np.linspace(-np.pi, np.pi, args.grid)
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    flat = np.stack([m.ravel() for m in mesh], axis=1)
    for t in flat:
        x = variety.param_point(model, t)
        row = [format(float(v), ".17g") for v in t]
        row += [format(float(v), ".17g") for v in x]
        writer.write(",".join(row) + "\n")
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "equation": _cmd_equation,
    "equilibria": _cmd_equilibria,
    "positive": _cmd_positive,
    "discriminant": _cmd_discriminant,
    "sample-curve": _cmd_sample_curve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lissvar",
        description="degrees, equations, equilibria and discriminants of "
                    "trigonometrically parametrized varieties",
    )
    parser.add_argument("--seed", type=int, default=variety.DEFAULT_SEED,
                        help="seed for all randomized solvers")
    parser.add_argument("--tol", type=float, default=1e-8,
                        help="shared numeric tolerance")
    parser.add_argument("--max-n", type=int, default=12, dest="max_n",
                        help="membership matrix guard (matrices are 2^n)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "equation", "equilibria", "positive"):
        p = sub.add_parser(name)
        p.add_argument("model", help="path to a model JSON document")
    p = sub.add_parser("discriminant")
    p.add_argument("model")
    p.add_argument("--samples", type=int, default=200,
                   help="number of Newton starts for sampled clouds")
    p = sub.add_parser("sample-curve")
    p.add_argument("model")
    p.add_argument("--grid", type=int, default=40,
                   help="grid points per parameter axis")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        model, omega, graph, probe = load_model_document(args.model)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read model: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except _INPUT_ERRORS as exc:
        print(f"invalid model: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return _COMMANDS[args.command](model, omega, graph, probe, args)
    except (NotHypersurface, NotUnivariate, NonIntegerShift) as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_HYPERSURFACE
    except _GUARD_ERRORS as exc:
        print(f"size guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except _SOLVER_ERRORS as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except _INPUT_ERRORS as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except LissvarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
