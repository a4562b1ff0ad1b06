"""Outer automorphism classes of F_n ⋊ Z.

Every outer class is represented by a triple ``(ex, ey, d)`` acting by
``x0 -> x0^ex y^d`` and ``y -> y^ey``.  On free letters this gives

* ``x_i    -> x_{ey*i}^ex      * y^d``
* ``x_i^-1 -> x_{ey*i+d}^-ex   * y^-d``

and the image of a word interleaves these letter images with index shifts
accumulated from the ``y^d`` factors that get pushed right.

>>> from .words import parse
>>> phi = OuterAuto(1, 1, 4)
>>> str(apply_outer(phi, parse("x0 x2 y^2", 3)))
'x0 x1 y^10'
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ParameterError
from .words import (
    FreeLetter,
    FreeWord,
    GeodesicNF,
    identity,
    invert,
    multiply,
    reduce_codes,
)


@dataclass(frozen=True)
class OuterAuto:
    ex: int = 1
    ey: int = 1
    d: int = 0

    def __post_init__(self):
        if self.ex not in (1, -1) or self.ey not in (1, -1):
            raise ParameterError(f"ex and ey must be +1 or -1, got ({self.ex}, {self.ey})")

    @property
    def signs(self) -> tuple[int, int]:
        return (self.ex, self.ey)

    def with_d(self, d: int) -> "OuterAuto":
        return OuterAuto(self.ex, self.ey, d)

    def __str__(self):
        return f"({self.ex}, {self.ey}, {self.d})"


IDENTITY_OUTER = OuterAuto(1, 1, 0)


@dataclass(frozen=True)
class FullAuto:
    """The automorphism ``w -> g^-1 phi(w) g`` with ``g = inner``."""

    inner: GeodesicNF
    outer: OuterAuto

    def apply(self, w: GeodesicNF) -> GeodesicNF:
        return multiply(multiply(invert(self.inner), apply_outer(self.outer, w)), self.inner)

    @classmethod
    def from_outer(cls, phi: OuterAuto, n: int) -> "FullAuto":
        return cls(identity(n), phi)


# Letter images work on codes (2*index + negative flag) through 256-entry
# tables, one per (n, phi mod n).


@lru_cache(maxsize=4096)
def _image_table(n: int, ex: int, ey: int, dr: int) -> bytes:
    table = bytearray(256)
    for i in range(n):
        table[2 * i] = 2 * ((ey * i) % n) + (ex < 0)
        table[2 * i + 1] = 2 * ((ey * i + dr) % n) + (ex > 0)
    return bytes(table)


@lru_cache(maxsize=4096)
def _inverse_table(n: int, ex: int, ey: int, dr: int) -> bytes:
    table = bytearray(256)
    for i in range(n):
        for neg in (0, 1):
            r = -1 if neg else 1
            if ex * r == 1:
                table[2 * i + neg] = 2 * ((ey * i) % n)
            else:
                table[2 * i + neg] = 2 * ((ey * (i - dr)) % n) + 1
    return bytes(table)


def image_table(phi: OuterAuto, n: int) -> bytes:
    return _image_table(n, phi.ex, phi.ey, phi.d % n)


def inverse_table(phi: OuterAuto, n: int) -> bytes:
    return _inverse_table(n, phi.ex, phi.ey, phi.d % n)


def _check_letter(letter: FreeLetter, n: int):
    if not 0 <= letter.index < n:
        raise ParameterError(f"letter {letter} has index outside 0..{n - 1}")


def phi_F(letter: FreeLetter, phi: OuterAuto, n: int) -> FreeLetter:
    """Free part of the image of a single letter.

    >>> str(phi_F(FreeLetter(1, -1), OuterAuto(1, 1, 4), 3))
    'x2^-1'
    """
    _check_letter(letter, n)
    return FreeLetter.from_code(image_table(phi, n)[letter.code])


def phi_inv_F(letter: FreeLetter, phi: OuterAuto, n: int) -> FreeLetter:
    """Free part of the preimage of a single letter.

    The full preimage is this letter times ``y^(-ex*ey*sign*d)``.

    >>> str(phi_inv_F(FreeLetter(1, -1), OuterAuto(1, 1, 4), 3))
    'x0^-1'
    """
    _check_letter(letter, n)
    return FreeLetter.from_code(inverse_table(phi, n)[letter.code])


def _interleave(data: bytes, table: bytes, step: int, n: int) -> bytearray:
    # letter j is mapped through ``table`` and then shifted by Phi_{P_j*step},
    # P_j being the exponent sum of the letters before it
    out = bytearray(len(data))
    p = 0
    for j, c in enumerate(data):
        img = table[c]
        s = (p * step) % n
        out[j] = (2 * (((img >> 1) - s) % n) + (img & 1)) if s else img
        p += -1 if c & 1 else 1
    return out


def image_letters(phi: OuterAuto, w: FreeWord) -> list[FreeLetter]:
    """The letterwise image of ``w`` before any free reduction."""
    return [FreeLetter.from_code(c) for c in _interleave(w.data, image_table(phi, w.n), phi.d, w.n)]


def inverse_image_letters(phi: OuterAuto, w: FreeWord) -> list[FreeLetter]:
    step = -phi.ex * phi.ey * phi.d
    return [FreeLetter.from_code(c) for c in _interleave(w.data, inverse_table(phi, w.n), step, w.n)]


def free_image(phi: OuterAuto, w: FreeWord) -> FreeWord:
    """Free part of ``phi(w)`` for a free word ``w``.

    >>> from .words import word
    >>> str(free_image(OuterAuto(1, 1, 4), word("x0 x2^-1", 3)))
    'x0 x2^-1'
    """
    n = w.n
    return FreeWord(n, reduce_codes(_interleave(w.data, image_table(phi, n), phi.d, n)))


def free_image_inverse(phi: OuterAuto, w: FreeWord) -> FreeWord:
    """Free part of ``phi^-1(w)`` for a free word ``w``."""
    n = w.n
    step = -phi.ex * phi.ey * phi.d
    return FreeWord(n, reduce_codes(_interleave(w.data, inverse_table(phi, n), step, n)))


def apply_outer(phi: OuterAuto, u: GeodesicNF) -> GeodesicNF:
    sigma = u.free.exponent_sum()
    return GeodesicNF(free_image(phi, u.free), sigma * phi.d + phi.ey * u.t)


def apply_outer_inverse(phi: OuterAuto, u: GeodesicNF) -> GeodesicNF:
    sigma = u.free.exponent_sum()
    return GeodesicNF(
        free_image_inverse(phi, u.free), -phi.ex * phi.ey * sigma * phi.d + phi.ey * u.t
    )
