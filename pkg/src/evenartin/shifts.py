"""Moves inside a twisted conjugacy class.

Twisted conjugation by ``w`` sends ``u`` to ``phi(w)^-1 u w``.  Doing it by
``a`` and then by ``b`` is the same as doing it once by ``a*b``, so the
witnesses of a sequence of moves multiply left to right.

The moves provided here are

* cyclic reduction steps, which shorten the free part by two letters;
* y-shifts, twisted conjugation by ``y^lam``;
* BF x-shifts, moving a suffix of the free part to the front;
* FB x-shifts, moving a prefix of the free part to the back.

x-shifts keep the free length constant on phi-cyclically reduced elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .automorphism import (
    OuterAuto,
    apply_outer,
    apply_outer_inverse,
    free_image,
    free_image_inverse,
    image_table,
)
from .errors import InvariantError, ParameterError, PreconditionError
from .words import (
    FreeWord,
    GeodesicNF,
    ModularNF,
    invert,
    invert_codes,
    join_codes,
    modular,
    multiply,
    reduce_codes,
    shift_codes,
    to_modular,
)


@dataclass(frozen=True)
class ShiftMove:
    """One move ``source -> target`` together with the element that realizes it.

    ``kind`` is ``"y"``, ``"bf"``, ``"fb"`` or ``"cyclic"``; ``amount`` is the
    y-exponent for y-shifts and the letter count for x-shifts.
    """

    kind: str
    amount: int
    witness: GeodesicNF
    source: ModularNF
    target: ModularNF

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": {"amount": self.amount}, "witness": str(self.witness)}


def twisted_conjugate(
    u: ModularNF, w: GeodesicNF, phi: OuterAuto, cross_check: bool = False
) -> ModularNF:
    """``phi(w)^-1 * u * w`` in modular normal form.

    >>> from .words import parse, parse_modular
    >>> u = parse_modular("x0 x1^-1 y^2", 3)
    >>> twisted_conjugate(u, parse("x0", 3), OuterAuto(1, 1, 4)).describe()
    '(y, y^-3)'
    """
    g = multiply(multiply(invert(apply_outer(phi, w)), u.geodesic()), w)
    result = to_modular(g)
    if cross_check:
        other = twisted_conjugate_formula(u, w, phi)
        if other != result:
            raise InvariantError(f"twisted conjugation routes disagree: {result} vs {other}")
    return result


def twisted_conjugate_formula(u: ModularNF, w: GeodesicNF, phi: OuterAuto) -> ModularNF:
    """Same as :func:`twisted_conjugate`, assembled as ``a1 a2 a3 y^e``.

    With ``w = w1 y^lam`` and ``sigma`` the exponent sum of ``w1``:
    ``a1`` collects the inverted letter images of ``w1`` in reverse order,
    ``a2 = Phi_g(u1)`` and ``a3 = Phi_{g+alpha}(w1)`` where
    ``g = -(sigma*d + ey*lam)``.
    """
    n = u.n
    d, ey = phi.d, phi.ey
    w1 = w.free.data
    lam = w.t
    sigma = w.free.exponent_sum()
    table = image_table(phi, n)
    a1 = bytearray()
    suffix = 0  # exponent sum of the letters after position j
    for c in reversed(w1):
        img = table[c] ^ 1
        s = (-(suffix + (-1 if c & 1 else 1)) * d - ey * lam) % n
        a1.append(2 * (((img >> 1) - s) % n) + (img & 1))
        suffix += -1 if c & 1 else 1
    gamma = -(sigma * d + ey * lam)
    a2 = shift_codes(u.free.data, gamma, n)
    a3 = shift_codes(w1, gamma + u.t, n)
    data = join_codes(join_codes(reduce_codes(a1), a2), a3)
    return modular(FreeWord(n, data), gamma + u.t + lam)


def is_phi_cr(u: ModularNF, phi: OuterAuto) -> bool:
    """True when no single cyclic-reduction step applies.

    >>> from .words import parse_modular
    >>> is_phi_cr(parse_modular("x0 x2^-1 y^2", 3), OuterAuto(1, 1, 4))
    True
    >>> is_phi_cr(parse_modular("x0 x1^-1 y^2", 3), OuterAuto(1, 1, 4))
    False
    """
    return _reduction_letter(u, phi) is None


def _reduction_letter(u: ModularNF, phi: OuterAuto):
    """Code of the one-letter conjugator that shortens ``u``, or None."""
    data = u.free.data
    if len(data) < 2:
        return None
    n = u.n
    first, last = data[0], data[-1]
    p1 = -1 if first & 1 else 1
    pq = -1 if last & 1 else 1
    e = phi.ex * p1
    if pq != -e:
        return None
    i1, iq = first >> 1, last >> 1
    if e == 1:
        j = (phi.ey * i1) % n
    else:
        j = (phi.ey * (i1 - phi.d)) % n
    if iq != (j - u.c) % n:
        return None
    return 2 * j + (e < 0)


def reduction_steps(u: ModularNF, phi: OuterAuto) -> Iterator[tuple[ModularNF, int, int]]:
    """Yield ``(element, conjugator letter code, e)`` for each reduction step."""
    n = u.n
    while True:
        code = _reduction_letter(u, phi)
        if code is None:
            return
        e = -1 if code & 1 else 1
        interior = shift_codes(u.free.data[1:-1], -e * phi.d, n)
        u = modular(FreeWord(n, interior), u.t - e * phi.d)
        yield u, code, e


def cyclic_reduce(u: ModularNF, phi: OuterAuto) -> tuple[ModularNF, GeodesicNF]:
    """Reduce to a phi-cyclically reduced element; return it with the witness.

    >>> from .words import parse_modular
    >>> v, w = cyclic_reduce(parse_modular("x0 x1^-1 y^2", 3), OuterAuto(1, 1, 4))
    >>> v.describe(), str(w)
    ('(y, y^-3)', 'x0')
    """
    codes = bytearray()
    for u, code, _ in reduction_steps(u, phi):
        codes.append(code)
    return u, GeodesicNF(FreeWord(u.n, reduce_codes(codes)), 0)


# ------------------------------------------------------------------ shifts


def y_move(u: ModularNF, lam: int, phi: OuterAuto) -> ShiftMove:
    n = u.n
    free = FreeWord(n, shift_codes(u.free.data, -phi.ey * lam, n))
    target = modular(free, u.t + lam * (1 - phi.ey))
    return ShiftMove("y", lam, GeodesicNF(FreeWord(n), lam), u, target)


def y_shift(u: ModularNF, lam: int, phi: OuterAuto) -> ModularNF:
    """Twisted conjugation by ``y^lam``.

    >>> from .words import parse_modular
    >>> y_shift(parse_modular("x0 x2^-1 y^2", 3), 1, OuterAuto(1, 1, 4)).describe()
    '(x1 x0^-1 y^2, 1)'
    """
    return y_move(u, lam, phi).target


def _check_x_shift(u: ModularNF, count: int, phi: OuterAuto):
    if not 1 <= count <= len(u.free):
        raise ParameterError(f"letter count {count} outside 1..{len(u.free)}")
    if not is_phi_cr(u, phi):
        raise PreconditionError(f"{u.describe()} is not phi-cyclically reduced for {phi}")


def bf_move(u: ModularNF, count: int, phi: OuterAuto) -> ShiftMove:
    _check_x_shift(u, count, phi)
    n = u.n
    data = u.free.data
    head, tail = data[: len(data) - count], data[len(data) - count :]
    moved = FreeWord(n, shift_codes(tail, -u.c, n))
    sigma = moved.exponent_sum()
    front = free_image(phi, moved)
    free = FreeWord(n, join_codes(front.data, shift_codes(head, sigma * phi.d, n)))
    target = modular(free, u.t + sigma * phi.d)
    return ShiftMove("bf", count, GeodesicNF(moved.inverse(), 0), u, target)


def bf_x_shift(u: ModularNF, count: int, phi: OuterAuto) -> ModularNF:
    """Move the last ``count`` letters to the front.

    >>> from .words import parse_modular
    >>> bf_x_shift(parse_modular("x0 x2^-1 y^2", 3), 1, OuterAuto(1, 1, 4)).describe()
    '(x2^-1 x1 y, y^-3)'
    """
    return bf_move(u, count, phi).target


def fb_move(u: ModularNF, count: int, phi: OuterAuto) -> ShiftMove:
    _check_x_shift(u, count, phi)
    n = u.n
    data = u.free.data
    head = FreeWord(n, data[:count])
    sigma = head.exponent_sum()
    back = shift_codes(free_image_inverse(phi, head).data, u.c, n)
    free = FreeWord(n, join_codes(data[count:], back))
    target = modular(free, u.t - phi.ex * phi.ey * sigma * phi.d)
    witness = apply_outer_inverse(phi, GeodesicNF(head, 0))
    return ShiftMove("fb", count, witness, u, target)


def fb_x_shift(u: ModularNF, count: int, phi: OuterAuto) -> ModularNF:
    """Move the first ``count`` letters to the back."""
    return fb_move(u, count, phi).target


def bf_step(u: ModularNF, phi: OuterAuto) -> tuple[ModularNF, int]:
    """Single-letter BF shift of a phi-CR element without re-checking it.

    Returns the target and the sign of the moved letter, which is how much
    the d-coefficient of the Garside exponent changes.
    """
    n = u.n
    data = u.free.data
    last = data[-1]
    moved = shift_codes(bytes((last,)), -u.c, n)
    p = -1 if last & 1 else 1
    front = image_table(phi, n)[moved[0]]
    free = FreeWord(n, join_codes(bytes((front,)), shift_codes(data[:-1], p * phi.d, n)))
    return modular(free, u.t + p * phi.d), p


def bf_step_witness(u: ModularNF) -> GeodesicNF:
    n = u.n
    moved = shift_codes(u.free.data[-1:], -u.c, n)
    return GeodesicNF(FreeWord(n, invert_codes(moved)), 0)


def verify_move(move: ShiftMove, phi: OuterAuto) -> bool:
    return twisted_conjugate(move.source, move.witness, phi) == move.target


def verify_witness(u: ModularNF, v: ModularNF, w: GeodesicNF, phi: OuterAuto) -> bool:
    return twisted_conjugate(u, w, phi) == v

