"""Proper rotations of physical space.

Rodrigues closed form, the axis-angle logarithm with its canonical cell
(angle in [0, pi]), and rotation action on Bloch vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan2, cos, isfinite, pi, sin, sqrt

from .bloch import BlochVector
from .errors import DomainError
from .matrix import DEFAULT_TOL

Z_AXIS = (0.0, 0.0, 1.0)

# Below this |sin alpha| the skew part of R no longer resolves the axis and
# extraction falls back to the symmetric part (only relevant near alpha = pi).
_SKEW_CUTOFF = 1e-4
_AXIS_NORM_TOL = 1e-12

Matrix3 = tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class AxisAngle:
    """Rotation axis (unit vector) and angle in radians.

    The angle lives in the closed interval [0, 2*pi]; the upper endpoint is
    produced only by the unitary logarithm at U = -I (see su2 module).
    """

    axis: tuple[float, float, float]
    angle: float

    def __post_init__(self) -> None:
        ax = tuple(float(c) for c in self.axis)
        if len(ax) != 3 or not all(isfinite(c) for c in ax):
            raise DomainError("axis must be a finite 3-vector")
        nrm = sqrt(ax[0] * ax[0] + ax[1] * ax[1] + ax[2] * ax[2])
        if abs(nrm - 1.0) > _AXIS_NORM_TOL:
            raise DomainError(f"axis must be a unit vector, got norm {nrm!r}")
        angle = float(self.angle)
        if not (isfinite(angle) and 0.0 <= angle <= 2.0 * pi):
            raise DomainError(f"angle must lie in [0, 2*pi], got {angle!r}")
        object.__setattr__(self, "axis", ax)
        object.__setattr__(self, "angle", angle)


@dataclass(frozen=True)
class Rotation3:
    """Real 3x3 matrix with R^T R = I and det R = +1 (within tolerance)."""

    matrix: Matrix3

    def __post_init__(self) -> None:
        rows = tuple(tuple(float(x) for x in row) for row in self.matrix)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise DomainError("rotation matrix must be 3x3")
        if any(not isfinite(x) for r in rows for x in r):
            raise DomainError("rotation entries must be finite")
        dev = orthogonality_deviation(rows)
        if dev > DEFAULT_TOL:
            raise DomainError(f"matrix is not orthogonal (deviation {dev:.3e})")
        d = _det3(rows)
        if abs(d - 1.0) > DEFAULT_TOL:
            raise DomainError(f"rotation must have det +1, got {d!r}")
        object.__setattr__(self, "matrix", rows)


def _det3(m: Matrix3) -> float:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def orthogonality_deviation(m: Matrix3) -> float:
    """Largest entrywise deviation of R^T R from the identity."""
    dev = 0.0
    for i in range(3):
        for j in range(3):
            s = sum(m[k][i] * m[k][j] for k in range(3))
            dev = max(dev, abs(s - (1.0 if i == j else 0.0)))
    return dev


def rotation_from_axis_angle(aa: AxisAngle) -> Rotation3:
    """Rodrigues form: cos a * I + (1 - cos a) n n^T + sin a [n]_x."""
    n1, n2, n3 = aa.axis
    ca = cos(aa.angle)
    sa = sin(aa.angle)
    k = 1.0 - ca
    return Rotation3(
        (
            (ca + n1 * n1 * k, n1 * n2 * k - n3 * sa, n1 * n3 * k + n2 * sa),
            (n2 * n1 * k + n3 * sa, ca + n2 * n2 * k, n2 * n3 * k - n1 * sa),
            (n3 * n1 * k - n2 * sa, n3 * n2 * k + n1 * sa, ca + n3 * n3 * k),
        )
    )


def axis_angle_from_rotation(rot: Rotation3) -> AxisAngle:
    """Canonical axis-angle of a rotation, angle in [0, pi].

    At angle 0 the axis is conventionally z-hat; at angle pi the axis sign is
    fixed by making its first nonzero component positive.
    """
    m = rot.matrix
    s1 = (m[2][1] - m[1][2]) / 2.0
    s2 = (m[0][2] - m[2][0]) / 2.0
    s3 = (m[1][0] - m[0][1]) / 2.0
    sn = sqrt(s1 * s1 + s2 * s2 + s3 * s3)
    tr = m[0][0] + m[1][1] + m[2][2]
    ca = min(1.0, max(-1.0, (tr - 1.0) / 2.0))
    angle = atan2(sn, ca)

    if sn >= _SKEW_CUTOFF or ca >= 0.0:
        if sn <= 1e-15:
            return AxisAngle(Z_AXIS, angle)
        axis = (s1 / sn, s2 / sn, s3 / sn)
    else:
        # Near angle = pi: recover n n^T from the symmetric part.
        k = 1.0 - ca
        diag = [(m[i][i] - ca) / k for i in range(3)]
        j = max(range(3), key=diag.__getitem__)
        nj = sqrt(max(diag[j], 0.0))
        comps = [0.0, 0.0, 0.0]
        for i in range(3):
            if i == j:
                comps[i] = nj
            else:
                comps[i] = (m[j][i] + m[i][j]) / (2.0 * k * nj)
        if sn > 1e-12:
            if comps[0] * s1 + comps[1] * s2 + comps[2] * s3 < 0.0:
                comps = [-c for c in comps]
        else:
            for c in comps:
                if abs(c) > 1e-12:
                    if c < 0.0:
                        comps = [-x for x in comps]
                    break
        axis = (comps[0], comps[1], comps[2])

    nrm = sqrt(axis[0] ** 2 + axis[1] ** 2 + axis[2] ** 2)
    return AxisAngle((axis[0] / nrm, axis[1] / nrm, axis[2] / nrm), angle)


def compose(ra: Rotation3, rb: Rotation3) -> Rotation3:
    a, b = ra.matrix, rb.matrix
    return Rotation3(
        tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
            for i in range(3)
        )
    )


def apply(rot: Rotation3, r: BlochVector) -> BlochVector:
    m = rot.matrix
    v = r.as_tuple()
    out = [sum(m[i][k] * v[k] for k in range(3)) for i in range(3)]
    return BlochVector(out[0], out[1], out[2])
