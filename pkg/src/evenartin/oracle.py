"""Brute-force search for twisted conjugators.

This is a semi-decision procedure written directly from the definition and
shares no logic with the shift calculus beyond multiplication.  It is used
to cross-check the decision procedures.

Conjugators ``w1 y^lam`` are tried by increasing free length, then by
increasing ``|lam|`` (positive first), then lexicographically in ``w1``
(letters ordered ``x0 < x0^-1 < x1 < ...``), so the witness returned is
canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .automorphism import OuterAuto
from .errors import BudgetError, ParameterError
from .shifts import twisted_conjugate
from .words import FreeWord, GeodesicNF, to_geodesic, to_modular

DEFAULT_NODE_CAP = 5_000_000


@dataclass(frozen=True)
class SearchBudget:
    max_free_len: int = 4
    max_abs_y: int = 6
    node_cap: int = DEFAULT_NODE_CAP

    def __post_init__(self):
        if self.max_free_len < 0 or self.max_abs_y < 0:
            raise ParameterError("search budget bounds must be non-negative")

    def size(self, n: int) -> int:
        """Number of candidate conjugators the budget covers."""
        words = 1 + sum(2 * n * (2 * n - 1) ** (k - 1) for k in range(1, self.max_free_len + 1))
        return words * (2 * self.max_abs_y + 1)

    def check(self, n: int):
        size = self.size(n)
        if size > self.node_cap:
            raise BudgetError(f"search space of {size} conjugators exceeds cap {self.node_cap}")


def reduced_words(n: int, length: int) -> Iterator[bytes]:
    """All reduced words of a given length, in lexicographic code order."""
    if length == 0:
        yield b""
        return
    word = bytearray(length)

    def rec(pos: int):
        for code in range(2 * n):
            if pos and word[pos - 1] ^ 1 == code:
                continue
            word[pos] = code
            if pos + 1 == length:
                yield bytes(word)
            else:
                yield from rec(pos + 1)

    yield from rec(0)


def _lambda_order(bound: int) -> list[int]:
    out = [0]
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


def find_twisted_conjugator(
    u: GeodesicNF, v: GeodesicNF, phi: OuterAuto, budget: SearchBudget = SearchBudget()
) -> Optional[GeodesicNF]:
    """Smallest ``w`` in the budget with ``phi(w)^-1 u w = v``.

    >>> from .words import parse
    >>> str(find_twisted_conjugator(parse("1", 3), parse("y^-4", 3), OuterAuto(1, 1, 4)))
    'x0'
    """
    n = u.n
    budget.check(n)
    a, b = to_modular(u), to_modular(v)
    # free length parity never changes, and the exponent sum moves by
    # sigma(w1) * (1 - ex)
    if (len(a.free) - len(b.free)) % 2:
        return None
    gap = b.free.exponent_sum() - a.free.exponent_sum()
    if phi.ex == 1 and gap:
        return None
    if phi.ex == -1 and gap % 2:
        return None
    want_sigma = gap // 2 if phi.ex == -1 else None
    lams = _lambda_order(budget.max_abs_y)
    for length in range(budget.max_free_len + 1):
        if want_sigma is not None and (abs(want_sigma) > length or (length - want_sigma) % 2):
            continue
        for lam in lams:
            for data in reduced_words(n, length):
                w1 = FreeWord(n, data)
                if want_sigma is not None and w1.exponent_sum() != want_sigma:
                    continue
                w = GeodesicNF(w1, lam)
                if twisted_conjugate(a, w, phi) == b:
                    return w
    return None


def min_free_length_in_class(
    u: GeodesicNF, phi: OuterAuto, budget: SearchBudget = SearchBudget()
) -> int:
    """Shortest free part reachable from ``u`` with conjugators in the budget.

    y-powers in the conjugator only index-shift the free part, so only the
    free part of the conjugator is enumerated.
    """
    n = u.n
    budget.check(n)
    a = to_modular(u)
    best = len(a.free)
    for length in range(1, budget.max_free_len + 1):
        for data in reduced_words(n, length):
            got = len(twisted_conjugate(a, GeodesicNF(FreeWord(n, data), 0), phi).free)
            if got < best:
                best = got
                if best == 0:
                    return 0
    return best


def image_by_substitution(phi: OuterAuto, u: GeodesicNF) -> GeodesicNF:
    """``phi(u)`` computed by substituting generator images and renormalizing.

    ``x_i = y^-i x0 y^i`` maps to ``y^(-ey i) x0^ex y^d y^(ey i)`` and ``y`` to
    ``y^ey``; this avoids the letterwise formulas entirely.
    """
    n = u.n
    tokens = []
    for letter in u.free:
        i = letter.index
        image = [("y", 0, -phi.ey * i), ("x", 0, phi.ex), ("y", 0, phi.d), ("y", 0, phi.ey * i)]
        if letter.sign < 0:
            image = [(kind, idx, -e) for kind, idx, e in reversed(image)]
        tokens.extend(image)
    tokens.append(("y", 0, phi.ey * u.t))
    return to_geodesic(tokens, n)

