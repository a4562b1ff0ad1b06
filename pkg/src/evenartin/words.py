"""Elements of F_n ⋊ Z (the even dihedral Artin group of rank n = m/2).

The free generators are ``x0 .. x{n-1}`` and the stable letter is ``y`` with
``y^-1 x_i y = x_{i+1 mod n}``.  Pushing powers of ``y`` to the right gives
the rule ``y^s x_i = x_{i-s} y^s``, so every element is written uniquely as a
reduced free word followed by a single power of ``y``.

Free words are stored as ``bytes``: letter ``x_i^{+1}`` has code ``2*i`` and
``x_i^{-1}`` has code ``2*i + 1``.  Index shifts then become a single
``bytes.translate`` call, which keeps long words cheap to manipulate.

>>> g = parse("x0 y^4 x2 y^6", 3)
>>> str(g)
'x0 x1 y^10'
>>> to_modular(g)
ModularNF(free=FreeWord('x0 x1'), c=1, k=3)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError, WordParseError

MAX_RANK = 128  # two codes per generator must fit in a byte


@dataclass(frozen=True)
class GroupParams:
    """Rank ``n`` of the free part; the Artin parameter is ``m = 2n``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 2 <= self.n <= MAX_RANK:
            raise ParameterError(f"n must be an integer in [2, {MAX_RANK}], got {self.n!r}")

    @classmethod
    def from_m(cls, m: int) -> "GroupParams":
        if m < 4 or m % 2:
            raise ParameterError(f"m must be even and at least 4, got {m}")
        return cls(m // 2)

    @property
    def m(self) -> int:
        return 2 * self.n


def check_rank(n: int) -> int:
    return GroupParams(n).n


@dataclass(frozen=True, order=True)
class FreeLetter:
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ParameterError(f"letter sign must be +1 or -1, got {self.sign!r}")
        if self.index < 0:
            raise ParameterError(f"letter index must be non-negative, got {self.index}")

    @property
    def code(self) -> int:
        return 2 * self.index + (self.sign < 0)

    @staticmethod
    def from_code(code: int) -> "FreeLetter":
        return FreeLetter(code >> 1, -1 if code & 1 else 1)

    def inverse(self) -> "FreeLetter":
        return FreeLetter(self.index, -self.sign)

    def __str__(self):
        return f"x{self.index}" if self.sign > 0 else f"x{self.index}^-1"


@lru_cache(maxsize=None)
def _shift_table(n: int, s: int) -> bytes:
    table = bytearray(range(256))
    for i in range(n):
        j = (i - s) % n
        table[2 * i] = 2 * j
        table[2 * i + 1] = 2 * j + 1
    return bytes(table)


_NEGATIVE = bytes(c & 1 for c in range(256))
_INVERSE = bytes(c ^ 1 for c in range(256))


def shift_codes(data: bytes, s: int, n: int) -> bytes:
    """Apply the index shift ``x_i -> x_{i-s}`` to raw letter codes."""
    s %= n
    if not s or not data:
        return data
    return data.translate(_shift_table(n, s))


def invert_codes(data: bytes) -> bytes:
    return data[::-1].translate(_INVERSE)


def join_codes(left: bytes, right: bytes) -> bytes:
    """Concatenate two reduced code strings, cancelling at the seam."""
    i = 0
    limit = min(len(left), len(right))
    while i < limit and left[-1 - i] ^ 1 == right[i]:
        i += 1
    if not i:
        return left + right
    return left[: len(left) - i] + right[i:]


def reduce_codes(codes: Iterable[int]) -> bytes:
    out = bytearray()
    for c in codes:
        if out and out[-1] ^ 1 == c:
            out.pop()
        else:
            out.append(c)
    return bytes(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word over ``x0 .. x{n-1}``.

    The constructor trusts ``data`` to be reduced; build words from arbitrary
    letter sequences with :func:`free_reduce`.
    """

    n: int
    data: bytes = b""

    @classmethod
    def empty(cls, n: int) -> "FreeWord":
        return cls(n, b"")

    def __len__(self):
        return len(self.data)

    def __iter__(self) -> Iterator[FreeLetter]:
        return (FreeLetter.from_code(c) for c in self.data)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return FreeWord(self.n, self.data[key])
        return FreeLetter.from_code(self.data[key])

    @property
    def letters(self) -> tuple[FreeLetter, ...]:
        return tuple(self)

    def inverse(self) -> "FreeWord":
        return FreeWord(self.n, invert_codes(self.data))

    def shift(self, s: int) -> "FreeWord":
        return phi_shift(s, self)

    def exponent_sum(self) -> int:
        return len(self.data) - 2 * self.data.translate(_NEGATIVE).count(1)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.n, join_codes(self.data, other.data))

    def __str__(self):
        return format_free(self)

    def __repr__(self):
        return f"FreeWord({format_free(self)!r})"


def free_reduce(seq: Iterable[FreeLetter], n: int) -> FreeWord:
    """Freely reduce a sequence of letters.

    >>> str(free_reduce([FreeLetter(1), FreeLetter(2, -1), FreeLetter(2), FreeLetter(1)], 3))
    'x1^2'
    """
    check_rank(n)
    codes = []
    for letter in seq:
        if not 0 <= letter.index < n:
            raise ParameterError(f"letter {letter} has index outside 0..{n - 1}")
        codes.append(letter.code)
    return FreeWord(n, reduce_codes(codes))


def word(letters: Sequence[tuple[int, int]] | str, n: int) -> FreeWord:
    """Build a free word from ``(index, sign)`` pairs or from a string.

    >>> str(word([(0, 1), (2, -1)], 3))
    'x0 x2^-1'
    """
    if isinstance(letters, str):
        g = parse(letters, n)
        if g.t:
            raise ParameterError(f"{letters!r} is not a free word")
        return g.free
    return free_reduce((FreeLetter(i % n, s) for i, s in letters), n)


def phi_shift(s: int, w: FreeWord) -> FreeWord:
    """Index shift ``x_i^e -> x_{i-s}^e``; realizes conjugation by ``y^s``.

    >>> str(phi_shift(4, word("x2", 3)))
    'x1'
    """
    return FreeWord(w.n, shift_codes(w.data, s, w.n))


def exponent_sum(w: FreeWord) -> int:
    return w.exponent_sum()


@dataclass(frozen=True)
class GeodesicNF:
    """The element ``free * y^t``."""

    free: FreeWord
    t: int = 0

    @property
    def n(self) -> int:
        return self.free.n

    def __mul__(self, other: "GeodesicNF") -> "GeodesicNF":
        return multiply(self, other)

    def __str__(self):
        return format_element(self.free, self.t)

    def __repr__(self):
        return f"GeodesicNF({format_element(self.free, self.t)!r})"


@dataclass(frozen=True)
class ModularNF:
    """The element ``free * y^c * y^(k n)`` with ``0 <= c < n``.

    ``(free, c)`` is the image in the quotient by the central subgroup
    generated by ``y^n``; ``k n`` is the Garside exponent.
    """

    free: FreeWord
    c: int
    k: int

    @property
    def n(self) -> int:
        return self.free.n

    @property
    def t(self) -> int:
        return self.k * self.free.n + self.c

    @property
    def garside(self) -> int:
        return self.k * self.free.n

    @property
    def quotient(self) -> tuple[bytes, int]:
        return (self.free.data, self.c)

    def geodesic(self) -> GeodesicNF:
        return GeodesicNF(self.free, self.t)

    def describe(self) -> str:
        """Pair notation ``(free y^c, y^(kn))`` with ``1`` for trivial parts."""
        left = format_element(self.free, self.c)
        right = "1" if self.k == 0 else f"y^{self.garside}"
        return f"({left}, {right})"

    def __str__(self):
        return self.describe()

    def __repr__(self):
        return f"ModularNF(free={self.free!r}, c={self.c}, k={self.k})"


def modular(free: FreeWord, t: int) -> ModularNF:
    k, c = divmod(t, free.n)
    return ModularNF(free, c, k)


def to_modular(g: GeodesicNF) -> ModularNF:
    return modular(g.free, g.t)


def to_geodesic_nf(m: ModularNF) -> GeodesicNF:
    return GeodesicNF(m.free, m.t)


def identity(n: int) -> GeodesicNF:
    return GeodesicNF(FreeWord(n), 0)


def y_power(t: int, n: int) -> GeodesicNF:
    return GeodesicNF(FreeWord(n), t)


def free_element(w: FreeWord) -> GeodesicNF:
    return GeodesicNF(w, 0)


def multiply(u: GeodesicNF, v: GeodesicNF) -> GeodesicNF:
    """Product ``u1 y^t * v1 y^s = u1 Phi_t(v1) y^(t+s)``.

    >>> str(multiply(parse("x0 y", 3), parse("x0", 3)))
    'x0 x2 y'
    """
    n = u.n
    if v.n != n:
        raise ParameterError(f"elements of different groups (n={n} and n={v.n})")
    data = join_codes(u.free.data, shift_codes(v.free.data, u.t, n))
    return GeodesicNF(FreeWord(n, data), u.t + v.t)


def invert(u: GeodesicNF) -> GeodesicNF:
    """``(u1 y^t)^-1 = Phi_{-t}(u1^-1) y^-t``.

    >>> str(invert(parse("x0 y^2", 3)))
    'x2^-1 y^-2'
    """
    n = u.n
    return GeodesicNF(FreeWord(n, shift_codes(invert_codes(u.free.data), -u.t, n)), -u.t)


def power(u: GeodesicNF, e: int) -> GeodesicNF:
    if e < 0:
        u, e = invert(u), -e
    result = identity(u.n)
    while e:
        if e & 1:
            result = multiply(result, u)
        e >>= 1
        if e:
            u = multiply(u, u)
    return result


def product(elements: Iterable[GeodesicNF], n: int) -> GeodesicNF:
    result = identity(n)
    for g in elements:
        result = multiply(result, g)
    return result


# ---------------------------------------------------------------- parsing

Token = tuple[str, int, int]  # ("x", index, exponent) or ("y", 0, exponent)

_TERM = re.compile(r"(x(\d+)|y|a|b)(?:\^([+-]?\d+))?")
_SEP = re.compile(r"[\s*]+")
_IDENTITY = re.compile(r"\s*(1|e)?\s*")


def tokenize(text: str, n: int) -> list[Token]:
    """Split a word string into generator tokens.

    ``a`` is read as ``x0`` and ``b`` as ``y``.  An empty string or a lone
    ``1`` denotes the identity.

    >>> tokenize("x0 * y^-2 b", 3)
    [('x', 0, 1), ('y', 0, -2), ('y', 0, 1)]
    """
    check_rank(n)
    if _IDENTITY.fullmatch(text):
        return []
    tokens: list[Token] = []
    pos = 0
    m = _SEP.match(text, pos)
    if m:
        pos = m.end()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            bad = re.match(r"[^\s*]+", text[pos:])
            token = bad.group(0) if bad else text[pos]
            raise WordParseError(
                f"unexpected token {token!r} at position {pos}", token, pos
            )
        gen, idx, exp = m.group(1), m.group(2), m.group(3)
        e = int(exp) if exp is not None else 1
        if gen in ("y", "b"):
            tokens.append(("y", 0, e))
        else:
            i = 0 if gen == "a" else int(idx)
            if i >= n:
                raise WordParseError(
                    f"generator {m.group(0)!r} at position {pos} has index >= n={n}",
                    m.group(0),
                    pos,
                )
            tokens.append(("x", i, e))
        start = pos
        pos = m.end()
        if pos < len(text):
            s = _SEP.match(text, pos)
            if not s:
                bad = re.match(r"[^\s*]+", text[start:]).group(0)
                raise WordParseError(
                    f"unexpected token {bad!r} at position {start}", bad, start
                )
            pos = s.end()
    return tokens


def to_geodesic(raw: Iterable[Token], n: int) -> GeodesicNF:
    """Normalize a token sequence by pushing every ``y`` to the right.

    >>> str(to_geodesic([("y", 0, 1), ("y", 0, 1), ("x", 0, 1)], 3))
    'x1 y^2'
    """
    check_rank(n)
    out = bytearray()
    t = 0
    for kind, index, e in raw:
        if kind == "y":
            t += e
            continue
        if kind != "x" or not 0 <= index < n:
            raise WordParseError(f"invalid token {(kind, index, e)!r}", str((kind, index, e)))
        code = 2 * ((index - t) % n) + (e < 0)
        for _ in range(abs(e)):
            if out and out[-1] ^ 1 == code:
                out.pop()
            else:
                out.append(code)
    return GeodesicNF(FreeWord(n, bytes(out)), t)


def parse(text: str, n: int) -> GeodesicNF:
    return to_geodesic(tokenize(text, n), n)


def parse_modular(text: str, n: int) -> ModularNF:
    return to_modular(parse(text, n))


# ---------------------------------------------------------- serialization


def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def format_free(w: FreeWord) -> str:
    parts = []
    data = w.data
    i = 0
    while i < len(data):
        j = i
        while j < len(data) and data[j] == data[i]:
            j += 1
        e = (j - i) * (-1 if data[i] & 1 else 1)
        parts.append(_power(f"x{data[i] >> 1}", e))
        i = j
    return " ".join(parts)


def format_element(free: FreeWord, t: int) -> str:
    parts = [format_free(free)] if len(free) else []
    if t:
        parts.append(_power("y", t))
    return " ".join(parts) or "1"
