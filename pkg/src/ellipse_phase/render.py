"""Domain-coloring phase portraits written as binary PPM (P6) files.

Pixel hue encodes the phase, mapped linearly from (-pi, pi] onto the HSV hue
circle: hue = (phase + pi) / (2*pi), full saturation.  With modulus contours
enabled the value channel carries the fractional part of log|f|, dimmed into
[0.7, 1.0].  Zeros render black, poles white.  Bytes are fully deterministic:
channel = round(255 * component).
"""

from __future__ import annotations

import colorsys
import enum
import math
from dataclasses import dataclass

from .divisor import PoleValue
from .errors import IoFailure


class Coloring(str, enum.Enum):
    PHASE_HUE = "phase"
    PHASE_HUE_MODULUS = "phase-mod"


@dataclass(frozen=True)
class RenderSpec:
    """Rectangular region, pixel resolution, coloring mode, and output path."""

    center: complex
    width: float
    height: float
    width_px: int
    height_px: int
    coloring: Coloring = Coloring.PHASE_HUE
    output_path: str = "portrait.ppm"

    def __post_init__(self):
        if self.width_px < 1 or self.height_px < 1:
            raise ValueError("resolution must be >= 1 pixel in each dimension")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("region width and height must be positive")


def _pixel_rgb(value, coloring: Coloring) -> tuple[int, int, int]:
    if isinstance(value, PoleValue):
        return (255, 255, 255)
    if value.is_zero():
        return (0, 0, 0)
    hue = (value.phase + math.pi) / (2.0 * math.pi)
    v = 1.0
    if coloring is Coloring.PHASE_HUE_MODULUS and math.isfinite(value.log_mag):
        v = 0.7 + 0.3 * (value.log_mag - math.floor(value.log_mag))
    r, g, b = colorsys.hsv_to_rgb(hue % 1.0, 1.0, v)
    return (int(255 * r + 0.5), int(255 * g + 0.5), int(255 * b + 0.5))


def render_pixels(fval, spec: RenderSpec) -> bytes:
    """Row-major RGB bytes; row 0 holds the largest imaginary parts."""
    data = bytearray()
    for row in range(spec.height_px):
        y = spec.center.imag + spec.height / 2 - (row + 0.5) * spec.height / spec.height_px
        for col in range(spec.width_px):
            x = spec.center.real - spec.width / 2 + (col + 0.5) * spec.width / spec.width_px
            data.extend(_pixel_rgb(fval(complex(x, y)), spec.coloring))
    return bytes(data)


def render_phase_portrait(fval, spec: RenderSpec) -> None:
    """Evaluate fval on the pixel grid and write a P6 PPM to spec.output_path."""
    pixels = render_pixels(fval, spec)
    header = f"P6\n{spec.width_px} {spec.height_px}\n255\n".encode("ascii")
    try:
        with open(spec.output_path, "wb") as fh:
            fh.write(header)
            fh.write(pixels)
    except OSError as exc:
        raise IoFailure(f"cannot write {spec.output_path}: {exc}") from exc
