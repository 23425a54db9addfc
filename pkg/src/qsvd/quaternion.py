"""Scalar quaternion arithmetic: the Hamilton algebra everything else builds on."""

from __future__ import annotations

import math
from dataclasses import dataclass

_FIELDS = ("w", "x", "y", "z")


@dataclass(frozen=True)
class Quaternion:
    """A quaternion w + x*i + y*j + z*k with double-precision components.

    Values are immutable and every operation returns a new instance, so
    instances are safe to share freely across threads.  Construction rejects
    NaN and infinity; the algebra never has to cope with them downstream.
    """

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in _FIELDS:
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"non-finite quaternion component {name}={value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def zero(cls) -> "Quaternion":
        return cls(0.0, 0.0, 0.0, 0.0)

    @classmethod
    def one(cls) -> "Quaternion":
        return cls(1.0, 0.0, 0.0, 0.0)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        """Hamilton product, or componentwise scaling by a real number.

        The product is associative but NOT commutative: ij = k while ji = -k.
        """
        if isinstance(other, Quaternion):
            a0, a1, a2, a3 = self.w, self.x, self.y, self.z
            b0, b1, b2, b3 = other.w, other.x, other.y, other.z
            return Quaternion(
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            )
        if isinstance(other, (int, float)):
            return self.scale(float(other))
        return NotImplemented

    def __rmul__(self, other):
        # Real scalars commute with quaternions; quaternion*quaternion never
        # reaches here.
        if isinstance(other, (int, float)):
            return self.scale(float(other))
        return NotImplemented

    def scale(self, alpha: float) -> "Quaternion":
        """Componentwise scaling by a real number."""
        return Quaternion(alpha * self.w, alpha * self.x,
                          alpha * self.y, alpha * self.z)

    def conjugate(self) -> "Quaternion":
        """Conjugate: the scalar part kept, the i/j/k parts negated."""
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __abs__(self) -> float:
        """Modulus sqrt(w^2 + x^2 + y^2 + z^2).

        math.hypot scales by the largest component internally, so values near
        the floating-point maximum do not overflow.
        """
        return math.hypot(self.w, self.x, self.y, self.z)

    def norm_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> "Quaternion":
        """Multiplicative inverse conjugate(q) / |q|^2 of a nonzero quaternion."""
        n = abs(self)
        if n == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        # Two scalings by 1/n instead of one by 1/n^2 keep |q|^2 from
        # overflowing when the components are huge.
        inv = 1.0 / n
        return self.conjugate().scale(inv).scale(inv)
