"""Piecewise algebraic/trigonometric boundary curves in the complex plane.

An :class:`Arc` is a parametric curve ``z(t), t in [a, b]`` given either as an
algebraic polynomial ``sum_j c_j t**j`` or as a trigonometric polynomial
``a_0 + sum_j (a_j cos(jt) + b_j sin(jt))``, all coefficients complex.
A :class:`Boundary` is an ordered union of arcs.

The module also holds the gallery of six test domains and a JSON document
format for user-defined boundaries.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import BoundaryParseError, DomainError, GeometryError

ALGEBRAIC = "algebraic"
TRIGONOMETRIC = "trigonometric"
ARC_KINDS = (ALGEBRAIC, TRIGONOMETRIC)

TWO_PI = 2.0 * math.pi
# trig intervals up to 2*pi are admissible; allow the rounding of "2*pi" itself
_PERIOD_SLACK = 1e-14


def _as_complex_tuple(values: Iterable) -> tuple[complex, ...]:
    return tuple(complex(v) for v in values)


@dataclass(frozen=True)
class Arc:
    """One parametric piece of a boundary.

    Use :meth:`algebraic` or :meth:`trigonometric` to build instances; the
    constructor validates the invariants (degree >= 1, nonzero top
    coefficient, ``b > a`` and ``b - a <= 2*pi`` for trigonometric arcs).

    Attributes
    ----------
    kind : str
        ``"algebraic"`` or ``"trigonometric"``.
    interval : tuple of float
        Parameter interval ``(a, b)``.
    coeffs : tuple of complex
        Algebraic coefficients ``c_0..c_k``; cosine coefficients ``a_0..a_k``
        for trigonometric arcs.
    sin_coeffs : tuple of complex
        Sine coefficients ``b_1..b_k`` (trigonometric arcs only, else empty).
    """

    kind: str
    interval: tuple[float, float]
    coeffs: tuple[complex, ...]
    sin_coeffs: tuple[complex, ...] = ()
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.kind not in ARC_KINDS:
            raise GeometryError(f"unknown arc kind {self.kind!r}; expected one of {ARC_KINDS}")
        a, b = (float(v) for v in self.interval)
        object.__setattr__(self, "interval", (a, b))
        object.__setattr__(self, "coeffs", _as_complex_tuple(self.coeffs))
        object.__setattr__(self, "sin_coeffs", _as_complex_tuple(self.sin_coeffs))
        if not (math.isfinite(a) and math.isfinite(b)) or not b > a:
            raise GeometryError(f"invalid parameter interval [{a}, {b}]: need finite b > a")
        coeffs = self.coeffs + self.sin_coeffs
        if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in coeffs):
            raise GeometryError("arc coefficients must be finite")

        if self.kind == ALGEBRAIC:
            if self.sin_coeffs:
                raise GeometryError("algebraic arcs take no sine coefficients")
            k = len(self.coeffs) - 1
            if k < 1:
                raise GeometryError("algebraic arc needs degree >= 1 (at least two coefficients)")
            if self.coeffs[k] == 0:
                raise GeometryError(f"top coefficient c_{k} of algebraic arc is zero")
        else:
            if b - a > TWO_PI * (1.0 + _PERIOD_SLACK):
                raise GeometryError(
                    f"trigonometric interval length {b - a!r} exceeds 2*pi"
                )
            k = len(self.coeffs) - 1
            if len(self.sin_coeffs) != k:
                raise GeometryError(
                    f"trigonometric arc has {len(self.coeffs)} cosine coefficients "
                    f"(a_0..a_k) but {len(self.sin_coeffs)} sine coefficients (b_1..b_k)"
                )
            if k < 1:
                raise GeometryError("trigonometric arc needs degree >= 1")
            if self.coeffs[k] == 0 and self.sin_coeffs[k - 1] == 0:
                raise GeometryError(f"top coefficients a_{k}, b_{k} of trigonometric arc are both zero")
        object.__setattr__(self, "degree", k)

    @classmethod
    def algebraic(cls, coeffs: Sequence[complex], interval=(0.0, 1.0)) -> "Arc":
        """Algebraic arc ``z(t) = sum_j coeffs[j] * t**j``."""
        return cls(ALGEBRAIC, tuple(interval), tuple(coeffs))

    @classmethod
    def trigonometric(cls, cos_coeffs: Sequence[complex], sin_coeffs: Sequence[complex],
                      interval=(0.0, TWO_PI)) -> "Arc":
        """Trigonometric arc ``z(t) = a_0 + sum_j a_j cos(jt) + b_j sin(jt)``."""
        return cls(TRIGONOMETRIC, tuple(interval), tuple(cos_coeffs), tuple(sin_coeffs))

    @property
    def is_trigonometric(self) -> bool:
        return self.kind == TRIGONOMETRIC

    def start(self) -> complex:
        return complex(eval_arc(self, self.interval[0]))

    def end(self) -> complex:
        return complex(eval_arc(self, self.interval[1]))

    def __call__(self, t):
        return eval_arc(self, t)


@dataclass(frozen=True)
class Boundary:
    """Ordered finite union of arcs, optionally labelled."""

    arcs: tuple[Arc, ...]
    label: str = ""

    def __post_init__(self):
        arcs = tuple(self.arcs)
        if not arcs:
            raise GeometryError("a boundary needs at least one arc")
        for j, arc in enumerate(arcs):
            if not isinstance(arc, Arc):
                raise GeometryError(f"boundary entry {j} is not an Arc")
        object.__setattr__(self, "arcs", arcs)

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)


def eval_arc(arc: Arc, t):
    """Evaluate ``z(t)`` on ``arc``.

    Accepts a scalar or an array of parameters; returns a Python ``complex``
    for scalars and a complex ndarray otherwise. Parameters outside the
    arc's interval raise :class:`DomainError`.
    """
    scalar = np.ndim(t) == 0
    tt = np.asarray(t, dtype=float)
    a, b = arc.interval
    if np.any(~np.isfinite(tt)) or np.any(tt < a) or np.any(tt > b):
        raise DomainError(f"parameter outside arc interval [{a!r}, {b!r}]")

    if arc.kind == ALGEBRAIC:
        # Horner
        z = np.full(tt.shape, arc.coeffs[-1], dtype=complex)
        for c in arc.coeffs[-2::-1]:
            z = z * tt + c
    else:
        z = np.full(tt.shape, arc.coeffs[0], dtype=complex)
        for j in range(1, arc.degree + 1):
            z = z + arc.coeffs[j] * np.cos(j * tt) + arc.sin_coeffs[j - 1] * np.sin(j * tt)
    return complex(z) if scalar else z


# ---------------------------------------------------------------------------
# arc builders

def segment(p: complex, q: complex) -> Arc:
    """Straight segment from ``p`` to ``q`` on ``t in [0, 1]``."""
    p, q = complex(p), complex(q)
    if p == q:
        raise GeometryError("degenerate segment: endpoints coincide")
    return Arc.algebraic((p, q - p), (0.0, 1.0))


def cubic_bezier(p0: complex, p1: complex, p2: complex, p3: complex) -> Arc:
    """Cubic Bezier piece converted to power form on ``t in [0, 1]``."""
    p0, p1, p2, p3 = (complex(v) for v in (p0, p1, p2, p3))
    return Arc.algebraic(
        (p0, 3 * (p1 - p0), 3 * (p0 - 2 * p1 + p2), p3 - 3 * p2 + 3 * p1 - p0),
        (0.0, 1.0),
    )


def circle_arc(center: complex, radius: float, t0: float = 0.0, t1: float = TWO_PI,
               clockwise: bool = False) -> Arc:
    """Arc of ``center + radius * exp(+-i t)`` for ``t in [t0, t1]``."""
    s = -1.0 if clockwise else 1.0
    return Arc.trigonometric((complex(center), complex(radius)), (s * 1j * radius,), (t0, t1))


def polygon(vertices: Sequence[complex], label: str = "") -> Boundary:
    """Closed polygon through ``vertices`` (last joined back to first)."""
    v = [complex(z) for z in vertices]
    return Boundary(tuple(segment(v[j], v[(j + 1) % len(v)]) for j in range(len(v))), label)


# ---------------------------------------------------------------------------
# gallery

GALLERY_VERSION = "1"

# Canonical "M" with 12 vertices in [-1, 1]^2, counterclockwise, symmetric about the imaginary axis.
M_POLYGON_VERTICES = (
    -1 - 1j, -0.6 - 1j, -0.6 + 0.2j, 0 - 0.5j, 0.6 + 0.2j, 0.6 - 1j,
    1 - 1j, 1 + 1j, 0.6 + 1j, 0 + 0.3j, -0.6 + 1j, -1 + 1j,
)

# Curvilinear polygon: straight bottom/top sides, cubic Bezier left/right sides,
# plus a straight notch on the top. Each entry is ("line", p, q) or ("cubic", p0, p1, p2, p3).
CURVPOLYGON_PIECES = (
    ("line", -1 - 1j, 1 - 1j),
    ("cubic", 1 - 1j, 1.6 - 0.4j, 0.7 + 0.4j, 1 + 1j),
    ("line", 1 + 1j, 0.3 + 1j),
    ("line", 0.3 + 1j, 0 + 0.6j),
    ("line", 0 + 0.6j, -0.3 + 1j),
    ("line", -0.3 + 1j, -1 + 1j),
    ("cubic", -1 + 1j, -0.5 + 0.5j, -1.5 - 0.3j, -1 - 1j),
)

LUNE_CENTERS = (-1.0, 1.0)
LUNE_RADIUS = 1.5
SUN_RAYS = 8
SUN_RAY_LENGTH = 0.5


def _m_polygon() -> Boundary:
    return polygon(M_POLYGON_VERTICES, "m_polygon")


def _curvpolygon() -> Boundary:
    arcs = []
    for piece in CURVPOLYGON_PIECES:
        if piece[0] == "line":
            arcs.append(segment(*piece[1:]))
        else:
            arcs.append(cubic_bezier(*piece[1:]))
    return Boundary(tuple(arcs), "curvpolygon")


def _sun() -> Boundary:
    arcs = [circle_arc(0.0, 1.0)]
    for j in range(SUN_RAYS):
        u = complex(math.cos(math.pi * j / 4), math.sin(math.pi * j / 4))
        arcs.append(segment(u, (1.0 + SUN_RAY_LENGTH) * u))
    return Boundary(tuple(arcs), "sun")


def _lune() -> Boundary:
    # B(-1, 1.5) minus B(1, 1.5); the circles cross where cos t = +-(distance/2)/radius
    cl, cr = LUNE_CENTERS
    r = LUNE_RADIUS
    alpha = math.acos((cr - cl) / 2 / r)           # arccos(2/3) on the left circle
    beta = math.acos(-(cr - cl) / 2 / r)           # arccos(-2/3) on the right circle
    outer = circle_arc(cl, r, alpha, TWO_PI - alpha)
    # right circle traversed clockwise so the two arcs chain into a closed curve
    inner = circle_arc(cr, r, beta, TWO_PI - beta, clockwise=True)
    return Boundary((outer, inner), "lune")


def _cardioid() -> Boundary:
    # cos t (1 - cos t) + i sin t (1 - cos t)
    #   = -1/2 + cos t + i sin t - 1/2 cos 2t - i/2 sin 2t
    return Boundary((Arc.trigonometric((-0.5, 1.0, -0.5), (1j, -0.5j)),), "cardioid")


def _torpedo() -> Boundary:
    # cos t cos 2t e^{it} = 1/4 + 1/2 cos 2t + 1/4 cos 4t + i/4 sin 4t
    return Boundary(
        (Arc.trigonometric((0.25, 0.0, 0.5, 0.0, 0.25), (0.0, 0.0, 0.0, 0.25j)),),
        "torpedo",
    )


_GALLERY = {
    "m_polygon": _m_polygon,
    "curvpolygon": _curvpolygon,
    "sun": _sun,
    "lune": _lune,
    "cardioid": _cardioid,
    "torpedo": _torpedo,
}

GALLERY_NAMES = tuple(_GALLERY)


def gallery(name: str) -> Boundary:
    """Return one of the six pinned test domains by name.

    Raises
    ------
    KeyError
        If ``name`` is unknown; the message lists the valid names.
    """
    try:
        return _GALLERY[name]()
    except KeyError:
        raise KeyError(
            f"unknown gallery domain {name!r}; valid names: {', '.join(GALLERY_NAMES)}"
        ) from None


# ---------------------------------------------------------------------------
# boundary document format (JSON)

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_complex(z: complex) -> str:
    return f"[{_fmt(z.real)}, {_fmt(z.imag)}]"


def _fmt_list(zs) -> str:
    return "[" + ", ".join(_fmt_complex(z) for z in zs) + "]"


def dumps_boundary(boundary: Boundary) -> str:
    """Serialize a boundary to the JSON document format.

    Numbers are written with 17 significant digits so a reload is
    bit-identical.
    """
    lines = ["{", f'  "label": {json.dumps(boundary.label)},', '  "arcs": [']
    for j, arc in enumerate(boundary.arcs):
        parts = [
            f'"kind": "{arc.kind}"',
            f'"degree": {arc.degree}',
            f'"interval": [{_fmt(arc.interval[0])}, {_fmt(arc.interval[1])}]',
        ]
        if arc.kind == ALGEBRAIC:
            parts.append(f'"coefficients": {_fmt_list(arc.coeffs)}')
        else:
            parts.append(
                f'"coefficients": {{"a": {_fmt_list(arc.coeffs)}, "b": {_fmt_list(arc.sin_coeffs)}}}'
            )
        sep = "," if j < len(boundary.arcs) - 1 else ""
        lines.append("    {" + ", ".join(parts) + "}" + sep)
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def save_boundary(boundary: Boundary, fp: IO[str] | str) -> None:
    text = dumps_boundary(boundary)
    if isinstance(fp, str):
        with open(fp, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        fp.write(text)


def _parse_complex(value, arc_index, field_name) -> complex:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        raise BoundaryParseError(f"complex numbers must be [re, im] pairs, got {value!r}",
                                 arc_index, field_name)
    return complex(float(value[0]), float(value[1]))


def _parse_complex_list(value, arc_index, field_name) -> tuple[complex, ...]:
    if not isinstance(value, list):
        raise BoundaryParseError("expected a list of [re, im] pairs", arc_index, field_name)
    return tuple(_parse_complex(v, arc_index, field_name) for v in value)


def _parse_arc(entry, j) -> Arc:
    if not isinstance(entry, dict):
        raise BoundaryParseError("arc entry must be an object", j)
    for key in ("kind", "degree", "interval", "coefficients"):
        if key not in entry:
            raise BoundaryParseError("missing field", j, key)
    kind = entry["kind"]
    if kind not in ARC_KINDS:
        raise BoundaryParseError(f"kind must be one of {ARC_KINDS}, got {kind!r}", j, "kind")
    interval = entry["interval"]
    if (not isinstance(interval, list) or len(interval) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in interval)):
        raise BoundaryParseError("interval must be [a, b]", j, "interval")
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise BoundaryParseError(f"interval [{a}, {b}] needs b > a", j, "interval")
    if kind == TRIGONOMETRIC and b - a > TWO_PI * (1.0 + _PERIOD_SLACK):
        raise BoundaryParseError(
            f"trigonometric interval length {b - a!r} exceeds 2*pi", j, "interval")

    coeffs = entry["coefficients"]
    if kind == ALGEBRAIC:
        c = _parse_complex_list(coeffs, j, "coefficients")
        s: tuple[complex, ...] = ()
        if len(c) >= 2 and c[-1] == 0:
            raise BoundaryParseError("top coefficient is zero", j, "coefficients")
    else:
        if not isinstance(coeffs, dict) or "a" not in coeffs or "b" not in coeffs:
            raise BoundaryParseError("trigonometric coefficients need 'a' and 'b' lists",
                                     j, "coefficients")
        c = _parse_complex_list(coeffs["a"], j, "coefficients.a")
        s = _parse_complex_list(coeffs["b"], j, "coefficients.b")
        if len(c) >= 2 and len(s) == len(c) - 1 and c[-1] == 0 and s[-1] == 0:
            raise BoundaryParseError("top coefficients a_k, b_k are both zero", j, "coefficients")
    try:
        arc = Arc(kind, (a, b), c, s)
    except GeometryError as exc:
        raise BoundaryParseError(str(exc), j, "coefficients") from exc
    degree = entry["degree"]
    if isinstance(degree, bool) or not isinstance(degree, int) or degree != arc.degree:
        raise BoundaryParseError(
            f"declared degree {degree!r} does not match coefficients (degree {arc.degree})",
            j, "degree")
    return arc


def loads_boundary(text: str | bytes) -> Boundary:
    """Parse a boundary document (see :func:`dumps_boundary`)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BoundaryParseError(f"malformed document: {exc}") from exc
    if not isinstance(doc, dict):
        raise BoundaryParseError("document must be an object with 'label' and 'arcs'")
    if "arcs" not in doc:
        raise BoundaryParseError("missing field", field="arcs")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise BoundaryParseError("label must be text", field="label")
    arcs = doc["arcs"]
    if not isinstance(arcs, list) or not arcs:
        raise BoundaryParseError("arcs must be a non-empty list", field="arcs")
    return Boundary(tuple(_parse_arc(entry, j) for j, entry in enumerate(arcs)), label)


def load_boundary(source) -> Boundary:
    """Load a boundary from a path, a text/binary stream, or raw bytes."""
    if isinstance(source, (bytes, bytearray)):
        return loads_boundary(bytes(source))
    if isinstance(source, (io.IOBase,)) or hasattr(source, "read"):
        return loads_boundary(source.read())
    with open(source, "rb") as fh:
        return loads_boundary(fh.read())
