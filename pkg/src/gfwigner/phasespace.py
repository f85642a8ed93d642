"""Geometry of the N x N phase-space grid over GF(2^n).

Points carry field-element coordinates (q, p).  A point also has a binary
form: q expanded in the canonical basis, p expanded in the rescaled dual
basis (see galois.GF2Field.p_to_bits).  Lines are the solution sets of
a q + b p = c and are stored normalized so the leading nonzero coefficient
is 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatch
from .galois import GF2Field

HORIZONTAL = "h"
VERTICAL = "v"


@dataclass(frozen=True)
class PhasePoint:
    q: int
    p: int


@dataclass(frozen=True)
class BinaryPoint:
    """A phase-space point in binary coordinates (qbits canonical, pbits dual)."""

    qbits: int
    pbits: int
    n: int

    @property
    def is_origin(self) -> bool:
        return self.qbits == 0 and self.pbits == 0


def to_binary(field: GF2Field, point: PhasePoint) -> BinaryPoint:
    return BinaryPoint(point.q, field.p_to_bits(point.p), field.n)


def from_binary(field: GF2Field, point: BinaryPoint) -> PhasePoint:
    return PhasePoint(point.qbits, field.bits_to_p(point.pbits))


@dataclass(frozen=True)
class Line:
    """The set {(q, p): a q + b p = c}, with (a, b) != (0, 0) and leading
    nonzero coefficient normalized to 1."""

    a: int
    b: int
    c: int

    def contains(self, field: GF2Field, point: PhasePoint) -> bool:
        return field.mul(self.a, point.q) ^ field.mul(self.b, point.p) == self.c

    def points(self, field: GF2Field) -> list[PhasePoint]:
        if self.a != 0:
            # q = a^-1 (c + b p), parametrized by p
            ainv = field.inv(self.a)
            return [
                PhasePoint(field.mul(ainv, self.c ^ field.mul(self.b, p)), p)
                for p in field.elements()
            ]
        binv = field.inv(self.b)
        return [PhasePoint(q, field.mul(binv, self.c)) for q in field.elements()]


def make_line(field: GF2Field, a: int, b: int, c: int) -> Line:
    """Normalize (a, b, c) so equal lines compare equal."""
    if a == 0 and b == 0:
        raise ValueError("(a, b) must be nonzero")
    scale = field.inv(a) if a != 0 else field.inv(b)
    return Line(field.mul(scale, a), field.mul(scale, b), field.mul(scale, c))


@dataclass(frozen=True)
class Striation:
    """N parallel lines covering the grid; label 'h', 'v' or the slope
    exponent of the ray p = w^label q.  The ray comes first."""

    label: object
    lines: tuple[Line, ...]

    @property
    def ray(self) -> Line:
        return self.lines[0]


def _direction(field: GF2Field, label) -> tuple[int, int]:
    """Normalized (a, b) of the striation: h is p=0, v is q=0, slope j is
    p = w^j q, i.e. w^j q + p = 0 scaled to (1, w^-j)."""
    if label == HORIZONTAL:
        return 0, 1
    if label == VERTICAL:
        return 1, 0
    return 1, field.pow_omega(-int(label))


def striation_labels(field: GF2Field) -> list:
    return [HORIZONTAL, VERTICAL] + list(range(field.order))


def striation(field: GF2Field, label) -> Striation:
    a, b = _direction(field, label)
    offsets = [0] + [field.pow_omega(j) for j in range(field.order)]
    return Striation(label, tuple(Line(a, b, c) for c in offsets))


def all_striations(field: GF2Field) -> list[Striation]:
    """All N + 1 striations; every line of the grid appears exactly once."""
    return [striation(field, label) for label in striation_labels(field)]


def label_of_line(field: GF2Field, line: Line):
    if line.a == 0:
        return HORIZONTAL
    if line.b == 0:
        return VERTICAL
    # normalized form (1, w^-j): slope j
    return (-field.log(line.b)) % field.order


def ray_through(field: GF2Field, point: PhasePoint):
    """Striation label of the ray containing a nonzero point."""
    if point.q == 0 and point.p == 0:
        raise ValueError("every ray passes through the origin")
    if point.p == 0:
        return HORIZONTAL
    if point.q == 0:
        return VERTICAL
    return (field.log(point.p) - field.log(point.q)) % field.order


def intersect(field: GF2Field, l1: Line, l2: Line):
    """None if parallel, the string "same" for equal lines, else the point."""
    if (l1.a, l1.b) == (l2.a, l2.b):
        return "same" if l1.c == l2.c else None
    # Solve the 2x2 system over the field by elimination.
    det = field.mul(l1.a, l2.b) ^ field.mul(l2.a, l1.b)
    dinv = field.inv(det)
    q = field.mul(dinv, field.mul(l1.c, l2.b) ^ field.mul(l2.c, l1.b))
    p = field.mul(dinv, field.mul(l1.a, l2.c) ^ field.mul(l2.a, l1.c))
    return PhasePoint(q, p)


def translate_line(field: GF2Field, line: Line, d: PhasePoint) -> Line:
    return Line(
        line.a,
        line.b,
        line.c ^ field.mul(line.a, d.q) ^ field.mul(line.b, d.p),
    )


def wedge(alpha: BinaryPoint, beta: BinaryPoint) -> int:
    """The symplectic exponent (q_a . p_b - q_b . p_a) mod 2."""
    if alpha.n != beta.n:
        raise FieldMismatch("points live in different fields")
    return ((alpha.qbits & beta.pbits).bit_count()
            ^ (beta.qbits & alpha.pbits).bit_count()) & 1


def wedge_field_form(field: GF2Field, a: PhasePoint, b: PhasePoint) -> int:
    """Basis-independent wedge: tr(s (q_a p_b - q_b p_a)) with s = ebar_0,
    the dual-basis scaling element (coordinates pair through the trace as
    q_a . p_b = tr(ebar_0 q_a p_b))."""
    cross = field.mul(a.q, b.p) ^ field.mul(b.q, a.p)
    return field.trace(field.mul(field.dual_scale, cross)) if cross else 0


def grid_axis(field: GF2Field) -> list[int]:
    """Axis labels in power ordering: 0, 1, w, w^2, ..."""
    return [0] + [field.pow_omega(j) for j in range(field.order)]


def axis_index(field: GF2Field, x: int) -> int:
    return 0 if x == 0 else field.log(x) + 1
