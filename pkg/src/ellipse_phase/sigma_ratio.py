"""The translation constant of the four-factor sigma ratio.

For any xi0 and either period p_j the ratio

    R_j(z) = [sigma(z) / sigma(z - xi0)] * [sigma(z - xi0 + p_j) / sigma(z + p_j)]

is independent of z and equals exp(v_j) with

    v_j = -3*xi0/p_j + xi0 * p_j^2 * sum_{lam in L \\ {0, -p_j}} 1/(lam (lam+p_j)^2).

Equivalently v_j = -eta_j * xi0 in terms of the quasi-period eta_j.  Both routes
are implemented: DirectSum evaluates the lattice sum literally (with the pairing
lam <-> -lam-p_j, which combines two O(1/|lam|^3) terms into one O(1/|lam|^4)
term, -p_j/(lam^2 (lam+p_j)^2), and turns the O(1/N) truncation tail into
O(1/N^2)); ViaEta reuses the theta-series quasi-period and is the accurate
default.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleOrZeroHit
from .lattice import Lattice, _shell_arrays, _unit_frame_distance
from .weierstrass import SNAP_TOL, SigmaEvaluator, sigma, wrap_angle


class VMethod(str, enum.Enum):
    DIRECT_SUM = "direct"
    VIA_ETA = "eta"


@dataclass(frozen=True)
class RatioConstant:
    """v_j for one (xi0, j), with the method and its a-priori error bound."""

    xi0: complex
    j: int
    v: complex
    method: VMethod
    shells_used: int
    error_bound: float


def _paired_term(lam: complex, pj: complex) -> complex:
    """Combined summand for the orbit {lam, -lam-p_j}: -p_j/(lam^2 (lam+p_j)^2)."""
    return -pj / (lam**2 * (lam + pj) ** 2)


def _direct_sum_tail(lat: Lattice, pj_abs: float, N: int) -> float:
    """Tail bound for the paired sum truncated at shell N.

    Shell k has 8k points with |lam| >= c*k and |lam + p_j| >= c*(k-1) (the
    shifted point keeps sup-norm >= k-1), each contributing half a paired term.
    Fully-outside orbits plus the boundary-straddling ring give O(1/N^2).
    """
    c = _unit_frame_distance(lat)
    tail = sum(
        8 * k * pj_abs / (2 * (c * k) ** 2 * (c * (k - 1)) ** 2)
        for k in range(N, N + 2000)
    )
    tail += 4 * pj_abs / (c**4 * (N + 2000) ** 2)
    return tail


def v_constant(
    lat: Lattice,
    xi0: complex,
    j: int,
    method: VMethod | str = VMethod.VIA_ETA,
    shells: int = 200,
) -> RatioConstant:
    """Translation constant v_j; linear in xi0 by either method."""
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    xi0 = complex(xi0)
    method = VMethod(method)
    pj = lat.p1 if j == 1 else lat.p2

    if method is VMethod.VIA_ETA:
        ev = SigmaEvaluator(lat)
        etaj = ev.eta1 if j == 1 else ev.eta2
        v = -etaj * xi0
        return RatioConstant(xi0, j, v, method, 0, 1e-13 * (1.0 + abs(v)))

    if shells < 2:
        raise ValueError("DirectSum needs shells >= 2")
    m, n = _shell_arrays(shells)
    lam = m * lat.p1 + n * lat.p2
    lam = lam[np.abs(lam + pj) > SNAP_TOL]
    # half of each paired term per orbit member; a fixed point of the pairing
    # (lam = -lam-p_j) would then enter with exactly its own weight
    s = complex(np.sum(-pj / (2.0 * lam**2 * (lam + pj) ** 2)))
    v = -3.0 * xi0 / pj + xi0 * pj**2 * s
    bound = abs(xi0) * abs(pj) ** 2 * _direct_sum_tail(lat, abs(pj), shells) * 1.2
    return RatioConstant(xi0, j, v, method, shells, bound)


def ratio_residual(ev: SigmaEvaluator, xi0: complex, j: int, z: complex) -> float:
    """|R_j(z) * exp(-v_j) - 1| with v_j from the quasi-period route.

    Raises PoleOrZeroHit when any of the four sigma arguments lies on the
    lattice; the caller should resample z.
    """
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    xi0 = complex(xi0)
    z = complex(z)
    pj = ev.lattice.p1 if j == 1 else ev.lattice.p2
    parts = [sigma(ev, w) for w in (z, z - xi0, z - xi0 + pj, z + pj)]
    if any(p.is_zero() for p in parts):
        raise PoleOrZeroHit("a sigma argument lies on the lattice")
    log_ratio = parts[0].log() - parts[1].log() + parts[2].log() - parts[3].log()
    etaj = ev.eta1 if j == 1 else ev.eta2
    v = -etaj * xi0
    delta = complex(log_ratio.real - v.real, wrap_angle(log_ratio.imag - v.imag))
    if delta.real > 300.0:
        return math.inf
    return abs(cmath.exp(delta) - 1.0)
