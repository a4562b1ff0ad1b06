"""Finite representative sets for twisted conjugacy classes.

Starting from a phi-cyclically reduced ``u0`` with nonempty free part, the
single-letter BF x-shift is iterated until the quotient element (free part
and residue ``c``) of ``u0`` comes back.  At that point the Garside exponent
has moved by the signed *twisted shift* ``S``.  Every chain element is then
y-shifted by ``0 .. n-1``.  The resulting members, taken modulo Garside
translations by ``S`` (and by ``2n`` when ``ey = -1``, since twisted
conjugation by the central ``y^n`` multiplies by ``y^(n(1-ey))``), cover
every phi-cyclically reduced element of the class.

In symbolic mode ``d`` is only fixed modulo ``n``: quotient elements are
computed at ``d = c`` and Garside exponents are carried as affine functions
of ``d``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Optional

from .automorphism import OuterAuto
from .errors import InvariantError, ParameterError, PreconditionError
from .shifts import bf_move, bf_step, fb_move, is_phi_cr, y_move
from .words import (
    FreeWord,
    GeodesicNF,
    ModularNF,
    format_element,
    invert_codes,
    modular,
    reduce_codes,
    shift_codes,
)


@dataclass(frozen=True, order=True)
class AffineExp:
    """The integer ``const + coef * d``."""

    const: int
    coef: int = 0

    def __call__(self, d: int) -> int:
        return self.const + self.coef * d

    def __add__(self, other):
        if isinstance(other, int):
            return AffineExp(self.const + other, self.coef)
        return AffineExp(self.const + other.const, self.coef + other.coef)

    def __sub__(self, other):
        if isinstance(other, int):
            return AffineExp(self.const - other, self.coef)
        return AffineExp(self.const - other.const, self.coef - other.coef)

    def __neg__(self):
        return AffineExp(-self.const, -self.coef)

    def __str__(self):
        if not self.coef:
            return str(self.const)
        lin = {1: "d", -1: "-d"}.get(self.coef, f"{self.coef}d")
        if not self.const:
            return lin
        sign = "-" if self.coef < 0 else "+"
        return f"{self.const} {sign} {lin.lstrip('-')}"


def _affine_at(value: int, coef: int, d: int) -> AffineExp:
    """Affine function with the given coefficient taking ``value`` at ``d``."""
    return AffineExp(value - coef * d, coef)


@dataclass(frozen=True)
class Member:
    """A member of a representative set.

    ``chain`` is the number of BF steps from the root and ``column`` the
    y-shift applied afterwards, so the member's witness is
    ``(chain prefix) * y^column``.
    """

    free: FreeWord
    c: int
    garside: AffineExp
    chain: int
    column: int

    def at(self, d: int) -> ModularNF:
        g = self.garside(d)
        n = self.free.n
        if g % n:
            raise InvariantError(f"Garside exponent {g} is not a multiple of {n}")
        return ModularNF(self.free, self.c, g // n)

    @property
    def quotient(self) -> tuple[bytes, int]:
        return (self.free.data, self.c)


@dataclass(frozen=True)
class Match:
    """How a query element sits in a representative set.

    The query equals member ``index`` translated by ``y^(lam*S + mu*n*(1-ey))``
    where ``S`` is the signed twisted shift.  ``d`` is the value of the
    automorphism parameter the match holds for.
    """

    index: int
    lam: int
    mu: int
    d: int


@dataclass
class RepSet:
    n: int
    phi: OuterAuto  # in symbolic mode phi.d is the residue c
    symbolic: bool
    members: list[Member]
    shift: AffineExp  # signed Garside displacement after one full chain
    step_codes: bytes  # conjugator letter of each chain step
    _index: Optional[dict] = field(default=None, repr=False, compare=False)

    @property
    def root(self) -> Member:
        return self.members[0]

    @property
    def chain_length(self) -> int:
        return len(self.step_codes)

    @property
    def base(self) -> list[ModularNF]:
        """Members as concrete elements at ``d = phi.d``."""
        return [m.at(self.phi.d) for m in self.members]

    @property
    def twisted_shift(self):
        """``|S|`` for a concrete set; the signed affine ``S`` for a symbolic one."""
        if self.symbolic:
            return self.shift
        return abs(self.shift(self.phi.d))

    @property
    def period(self) -> int:
        """Extra Garside period coming from conjugation by ``y^n``."""
        return self.n * (1 - self.phi.ey)

    def __len__(self):
        return len(self.members)

    def chain_witness(self, steps: Optional[int] = None) -> GeodesicNF:
        codes = self.step_codes if steps is None else self.step_codes[:steps]
        return GeodesicNF(FreeWord(self.n, reduce_codes(codes)), 0)

    def witness(self, index: int) -> GeodesicNF:
        """Element carrying the root to member ``index``."""
        m = self.members[index]
        w = self.chain_witness(m.chain)
        return GeodesicNF(w.free, m.column)

    def evaluate(self, d: int) -> "RepSet":
        """Concrete set at a particular ``d`` congruent to the stored residue."""
        if (d - self.phi.d) % self.n:
            raise ParameterError(f"d={d} is not congruent to {self.phi.d} mod {self.n}")
        seen = set()
        members = []
        for m in self.members:
            g = m.garside(d)
            key = (m.free.data, m.c, g)
            if key in seen:
                continue
            seen.add(key)
            members.append(Member(m.free, m.c, AffineExp(g), m.chain, m.column))
        return RepSet(
            self.n, self.phi.with_d(d), False, members, AffineExp(self.shift(d)), self.step_codes
        )

    def index_by_quotient(self) -> dict:
        if self._index is None:
            index: dict = {}
            for i, m in enumerate(self.members):
                index.setdefault(m.quotient, []).append(i)
            self._index = index
        return self._index

    def contains(self, v: ModularNF) -> bool:
        return member_match(v, self) is not None


# ---------------------------------------------------------------- building


def _chain_cap(n: int, q: int) -> int:
    return 2 * n * n * q + 1


def _build(u: ModularNF, phi: OuterAuto, coef: int, symbolic: bool) -> RepSet:
    if len(u.free) == 0:
        raise PreconditionError("representative sets need a nonempty free part")
    if not is_phi_cr(u, phi):
        raise PreconditionError(f"{u.describe()} is not phi-cyclically reduced for {phi}")
    n, q = u.n, len(u.free)
    d0 = phi.d
    chain: list[tuple[ModularNF, int]] = [(u, coef)]
    codes = bytearray()
    cur = u
    cap = _chain_cap(n, q)
    while True:
        moved = shift_codes(cur.free.data[-1:], -cur.c, n)
        codes.append(invert_codes(moved)[0])
        cur, p = bf_step(cur, phi)
        coef += p
        if cur.quotient == u.quotient:
            break
        chain.append((cur, coef))
        if len(chain) > cap:
            raise InvariantError(f"no BF recurrence within {cap} steps for {u.describe()}")
    if not symbolic:
        # concrete sets carry plain integers
        chain = [(elem, 0) for elem, _ in chain]
        coef = 0
    shift = _affine_at(cur.garside, coef, d0) - _affine_at(u.garside, chain[0][1], d0)
    if symbolic and shift.const:
        raise InvariantError(f"twisted shift {shift} has a constant term")

    members: list[Member] = []
    seen = set()
    for j, (elem, cf) in enumerate(chain):
        for k in range(n):
            target = y_move(elem, k, phi).target if k else elem
            g = _affine_at(target.garside, cf, d0)
            key = (target.free.data, target.c, g)
            if key in seen:
                continue
            seen.add(key)
            members.append(Member(target.free, target.c, g, j, k))
    return RepSet(n, phi, symbolic, members, shift, bytes(codes))


def build_rep_set(u: ModularNF, phi: OuterAuto) -> RepSet:
    """Representative set of a phi-cyclically reduced ``u`` with ``len(u.free) >= 1``.

    >>> from .words import parse_modular
    >>> r = build_rep_set(parse_modular("x0 x2 y^2", 3), OuterAuto(1, 1, 4))
    >>> len(r), r.twisted_shift
    (18, 24)
    """
    return _build(u, phi, 0, False)


def build_rep_set_symbolic(u: ModularNF, ex: int, ey: int, c: int, coef: int = 0) -> RepSet:
    """Representative set for every ``d`` congruent to ``c`` mod ``n`` at once.

    ``u`` is the element at ``d = c``; ``coef`` is the d-coefficient of its
    Garside exponent (zero when ``u`` does not depend on ``d``).
    """
    n = u.n
    if not 0 <= c < n:
        raise ParameterError(f"residue c={c} outside 0..{n - 1}")
    return _build(u, OuterAuto(ex, ey, c), coef, True)


# ---------------------------------------------------------------- matching


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_translation(delta: int, shift: int, period: int) -> Optional[tuple[int, int]]:
    """Find ``(lam, mu)`` with ``lam*shift + mu*period == delta``.

    ``period`` is 0 or positive.  Among all solutions the one with the
    smallest ``|lam|`` is returned.
    """
    if period == 0:
        if shift == 0:
            return (0, 0) if delta == 0 else None
        if delta % shift:
            return None
        return delta // shift, 0
    g, x, _ = _egcd(shift, period)
    if delta % g:
        return None
    lam = x * (delta // g)
    step = period // g
    lam %= step
    if lam > step // 2:
        lam -= step
    rest = delta - lam * shift
    if rest % period:
        raise InvariantError("translation solver produced an inexact split")
    return lam, rest // period


def _class_min(r: int, modulus: int) -> int:
    """Smallest-magnitude integer congruent to ``r``; ties go to the positive one."""
    r %= modulus
    return r if r <= modulus - r else r - modulus


def _divisors(a: int) -> list[int]:
    a = abs(a)
    small = [k for k in range(1, isqrt(a) + 1) if a % k == 0]
    ds = set(small) | {a // k for k in small}
    return sorted(ds)


def _symbolic_d(a: int, b: int, s1: int, c: int, n: int, period: int) -> Optional[int]:
    """Smallest-|d| solution ``d = c mod n`` of ``a + b d in s1 d Z + period Z``."""
    candidates = []
    if period:
        for r in (c, c + n):
            d = _class_min(r, period)
            g = gcd(s1 * d, period)
            if (a + b * d) % g == 0:
                candidates.append(d)
    elif s1 == 0:
        if b == 0:
            if a == 0:
                candidates.append(_class_min(c, n))
        elif a % b == 0 and (-a // b - c) % n == 0:
            candidates.append(-a // b)
    elif a == 0:
        if b % s1 == 0:
            candidates.append(_class_min(c, n))
        elif c == 0:
            candidates.append(0)
    else:
        for k in _divisors(a):
            for d in (k, -k):
                if (d - c) % n == 0 and (a // d + b) % s1 == 0:
                    candidates.append(d)
    if not candidates:
        return None
    return min(candidates, key=lambda d: (abs(d), d < 0))


def member_match(
    v: ModularNF, r: RepSet, coef: int = 0, d: Optional[int] = None
) -> Optional[Match]:
    """Locate ``v`` in ``r`` up to Garside translations.

    For a symbolic set ``v`` is the query at ``d = c`` and ``coef`` the
    d-coefficient of its Garside exponent.  The match with the smallest
    ``|d|`` is returned (ties broken by member order).  Passing ``d``
    restricts a symbolic set to that single value.
    """
    if v.n != r.n:
        raise ParameterError("query and representative set live in different groups")
    candidates = r.index_by_quotient().get(v.quotient, ())
    if not candidates:
        return None
    period = r.period
    best = None
    if not r.symbolic or d is not None:
        dd = r.phi.d if d is None else d
        if (dd - r.phi.d) % r.n:
            return None
        shift = r.shift(dd)
        target = _affine_at(v.garside, coef, r.phi.d)(dd)
        for i in candidates:
            sol = solve_translation(target - r.members[i].garside(dd), shift, period)
            if sol is not None:
                return Match(i, sol[0], sol[1], dd)
        return None
    c = r.phi.d
    query = _affine_at(v.garside, coef, c)
    s1 = r.shift.coef
    for i in candidates:
        diff = query - r.members[i].garside
        dd = _symbolic_d(diff.const, diff.coef, s1, c, r.n, period)
        if dd is None:
            continue
        if best is None or (abs(dd), dd < 0) < (abs(best[1]), best[1] < 0):
            best = (i, dd)
    if best is None:
        return None
    i, dd = best
    lam, mu = solve_translation((query - r.members[i].garside)(dd), r.shift(dd), period)
    return Match(i, lam, mu, dd)


# ------------------------------------------------------------ finite closure


@dataclass
class ClosureGraph:
    nodes: list[ModularNF]
    parent: list[Optional[tuple[int, GeodesicNF]]]
    edges: set  # (i, j, kind) with i < j and kind "x" or "y"

    def witness(self, index: int) -> GeodesicNF:
        from .words import identity, multiply

        chain = []
        while self.parent[index] is not None:
            index, w = self.parent[index]
            chain.append(w)
        result = identity(self.nodes[0].n)
        for w in reversed(chain):
            result = multiply(result, w)
        return result


def closure_applies(u: ModularNF, phi: OuterAuto) -> bool:
    """Whether the closure under all shifts is finite.

    With ``ey = 1`` the y-exponent only drifts through x-shifts, by
    ``sigma * d`` per full rotation; that drift vanishes when ``sigma = 0``
    or ``d = 0`` and alternates in sign when ``ex = -1``.
    """
    return phi.ey == 1 and (u.free.exponent_sum() == 0 or phi.ex == -1 or phi.d == 0)


def finite_closure_graph(u: ModularNF, phi: OuterAuto) -> ClosureGraph:
    """Breadth-first closure of ``u`` under all x-shifts and unit y-shifts."""
    if len(u.free) == 0:
        raise ParameterError("closure needs a nonempty free part")
    if not closure_applies(u, phi):
        raise ParameterError(
            f"closure is only finite when ey = 1 and one of sigma, d is 0 or ex = -1; got {phi}"
        )
    if not is_phi_cr(u, phi):
        raise PreconditionError(f"{u.describe()} is not phi-cyclically reduced for {phi}")
    n, q = u.n, len(u.free)
    cap = 2 * n * n * q * n
    nodes = [u]
    where = {u: 0}
    parent: list = [None]
    edges = set()
    todo = deque([0])
    while todo:
        i = todo.popleft()
        x = nodes[i]
        moves = [y_move(x, 1, phi), y_move(x, -1, phi)]
        for k in range(1, q + 1):
            moves.append(bf_move(x, k, phi))
            moves.append(fb_move(x, k, phi))
        for mv in moves:
            j = where.get(mv.target)
            if j is None:
                j = len(nodes)
                if j >= cap:
                    raise InvariantError(f"closure of {u.describe()} exceeds {cap} elements")
                where[mv.target] = j
                nodes.append(mv.target)
                parent.append((i, mv.witness))
                todo.append(j)
            if i != j:
                kind = "y" if mv.kind == "y" else "x"
                edges.add((min(i, j), max(i, j), kind, mv.kind, mv.amount))
    return ClosureGraph(nodes, parent, edges)


def enumerate_finite_closure(u: ModularNF, phi: OuterAuto) -> set[ModularNF]:
    """All phi-cyclically reduced elements in the class of ``u``, when finite.

    >>> from .words import parse_modular
    >>> len(enumerate_finite_closure(parse_modular("x0 x2^-1 y^2", 3), OuterAuto(1, 1, 4)))
    6
    """
    return set(finite_closure_graph(u, phi).nodes)


# ------------------------------------------------------------------ output


def rep_set_json(r: RepSet) -> dict:
    phi = {"ex": r.phi.ex, "ey": r.phi.ey, "d": r.phi.d}
    elements = []
    for i, m in enumerate(r.members):
        if r.symbolic:
            entry = {"free": str(m.free), "c": m.c, "garside": str(m.garside)}
        else:
            e = m.at(r.phi.d)
            entry = {"free": str(e.free), "c": e.c, "k": e.k}
        entry["witness"] = str(r.witness(i))
        elements.append(entry)
    shift = str(r.shift) if r.symbolic else r.twisted_shift
    return {"n": r.n, "phi": phi, "elements": elements, "twisted_shift": shift}


def rep_set_edges(r: RepSet) -> list[tuple[int, int, str]]:
    """Grid edges: BF steps down each column, unit y-shifts across each row."""
    d = r.phi.d
    base = r.base
    lookup = {(e.free.data, e.c, e.k): i for i, e in enumerate(base)}
    edges = []
    for i, (m, e) in enumerate(zip(r.members, base)):
        steps = []
        if m.column + 1 < r.n:
            steps.append(("y", y_move(e, 1, r.phi).target))
        if m.chain + 1 < r.chain_length:
            steps.append(("bf", bf_step(e, r.phi)[0]))
        for kind, target in steps:
            j = lookup.get((target.free.data, target.c, target.k))
            if j is not None and j != i:
                edges.append((i, j, kind))
    return edges


def _dot_label(e: ModularNF) -> str:
    left = format_element(e.free, e.c)
    right = "1" if e.k == 0 else f"y^{e.garside}"
    return f"({left}, {right})"


def rep_set_dot(r: RepSet, bf_color: str = "blue", y_color: str = "red") -> str:
    base = r.base
    lines = ["digraph repset {", "  node [shape=box];"]
    for i, (m, e) in enumerate(zip(r.members, base)):
        lines.append(f'  m{i} [label="{_dot_label(e)}", pos="{m.column},{-m.chain}!"];')
    for src, dst, kind in rep_set_edges(r):
        color = bf_color if kind == "bf" else y_color
        lines.append(f"  m{src} -> m{dst} [color={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def closure_dot(g: ClosureGraph, x_color: str = "red", y_color: str = "blue") -> str:
    lines = ["graph closure {", "  node [shape=box];"]
    for i, e in enumerate(g.nodes):
        lines.append(f'  m{i} [label="{_dot_label(e)}"];')
    for i, j, kind in closure_edges(g):
        color = y_color if kind == "y" else x_color
        lines.append(f"  m{i} -- m{j} [color={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def closure_edges(g: ClosureGraph) -> list[tuple[int, int, str]]:
    """Undirected edges from unit y-shifts and single-letter x-shifts."""
    return sorted({(i, j, kind) for i, j, kind, _, amount in g.edges if abs(amount) == 1})
