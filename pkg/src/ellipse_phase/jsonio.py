"""JSON wire formats shared by the CLI and tests.

Numbers are serialized with 17 significant digits so every double round-trips
exactly.  Complex scalars travel as [re, im]; lattices as
{"p1": [re, im], "p2": [re, im]}; divisors as
{"zeros": [[re, im, mult], ...], "poles": [[re, im, mult], ...]}.
"""

from __future__ import annotations

import json
import math

from .divisor import Divisor, EllipticFunction, make_divisor
from .lattice import Lattice, make_lattice
from .synthesis import PhaseFunctionSpec, _finalize
from .verify import VerificationReport
from .weierstrass import SigmaEvaluator


def _format_float(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return '"nan"'
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats, insertion-ordered keys."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def complex_to_obj(z: complex) -> list[float]:
    return [z.real, z.imag]


def complex_from_obj(obj) -> complex:
    return complex(float(obj[0]), float(obj[1]))


def lattice_to_obj(lat: Lattice) -> dict:
    return {"p1": complex_to_obj(lat.p1), "p2": complex_to_obj(lat.p2)}


def lattice_from_obj(obj) -> Lattice:
    return make_lattice(complex_from_obj(obj["p1"]), complex_from_obj(obj["p2"]))


def divisor_to_obj(d: Divisor) -> dict:
    return {
        "zeros": [[p.real, p.imag, m] for p, m in d.zeros],
        "poles": [[p.real, p.imag, m] for p, m in d.poles],
    }


def divisor_from_obj(obj, lat: Lattice) -> Divisor:
    zeros = [(complex(e[0], e[1]), int(e[2]) if len(e) > 2 else 1) for e in obj.get("zeros", [])]
    poles = [(complex(e[0], e[1]), int(e[2]) if len(e) > 2 else 1) for e in obj.get("poles", [])]
    return make_divisor(zeros, poles, lat)


def elliptic_to_obj(g: EllipticFunction) -> dict:
    return {
        "zeros": [complex_to_obj(p) for p in g.zero_points],
        "poles": [complex_to_obj(p) for p in g.pole_points],
        "scale": complex_to_obj(complex(g.scale)),
    }


def elliptic_from_obj(obj, lat: Lattice) -> EllipticFunction:
    return EllipticFunction(
        lat,
        tuple(complex_from_obj(p) for p in obj["zeros"]),
        tuple(complex_from_obj(p) for p in obj["poles"]),
        complex_from_obj(obj.get("scale", [1.0, 0.0])),
    )


def spec_to_obj(spec: PhaseFunctionSpec) -> dict:
    return {
        "lattice": lattice_to_obj(spec.lattice),
        "xi0": complex_to_obj(spec.xi0),
        "a": complex_to_obj(spec.a),
        "alpha": [spec.alpha1, spec.alpha2],
        "m": [spec.m1, spec.m2],
        "g": elliptic_to_obj(spec.g),
        "divisor": divisor_to_obj(spec.divisor),
    }


def spec_from_obj(obj) -> PhaseFunctionSpec:
    """Rebuild a spec, re-deriving the cancelled evaluation form deterministically."""
    lat = lattice_from_obj(obj["lattice"])
    g = elliptic_from_obj(obj["g"], lat)
    d = divisor_from_obj(obj["divisor"], lat)
    ev = SigmaEvaluator(lat)
    return _finalize(
        lat,
        complex_from_obj(obj["xi0"]),
        complex_from_obj(obj["a"]),
        int(obj["m"][0]),
        int(obj["m"][1]),
        float(obj["alpha"][0]),
        float(obj["alpha"][1]),
        g,
        d,
        ev,
    )


def report_to_obj(report: VerificationReport) -> dict:
    return {
        "phase_residual_p1": report.phase_residual_p1,
        "phase_residual_p2": report.phase_residual_p2,
        "multiplier1": report.multiplier1,
        "multiplier2": report.multiplier2,
        "zero_count": report.zero_count,
        "pole_count": report.pole_count,
        "divisor_sum_mod_L": complex_to_obj(report.divisor_sum_mod_L),
        "xi0_recovered": complex_to_obj(report.xi0_recovered),
        "samples_used": report.samples_used,
        "contour_offset": complex_to_obj(report.contour_offset),
        "winding_distance": report.winding_distance,
        "reliable": report.reliable,
    }
