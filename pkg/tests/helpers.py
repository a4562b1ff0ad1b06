"""Shared generators and independent checks for the test suite."""

import random

from hypothesis import strategies as st

from evenartin.automorphism import (
    FullAuto,
    OuterAuto,
    apply_outer,
    apply_outer_inverse,
    free_image,
    free_image_inverse,
    image_letters,
    image_table,
    phi_F,
    phi_inv_F,
)
from evenartin.oracle import image_by_substitution
from evenartin.words import (
    FreeLetter,
    FreeWord,
    GeodesicNF,
    invert,
    multiply,
    phi_shift,
    shift_codes,
    y_power,
)

SIGNS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]

# Shared across the session: every positive verdict produced anywhere, and
# the acceptance summary lines printed at the end.
YES_RECORD = []
ACCEPTANCE = {}


def report(number: int, passed: bool, detail: str):
    ACCEPTANCE[number] = (passed, detail)


def random_reduced(rng: random.Random, n: int, length: int) -> FreeWord:
    """Uniform-ish reduced word of exactly ``length`` letters."""
    codes = bytearray()
    while len(codes) < length:
        c = rng.randrange(2 * n)
        if codes and codes[-1] ^ 1 == c:
            continue
        codes.append(c)
    return FreeWord(n, bytes(codes))


def random_word(rng, n, max_len):
    return random_reduced(rng, n, rng.randint(0, max_len))


def random_element(rng, n, max_len, max_t):
    return GeodesicNF(random_word(rng, n, max_len), rng.randint(-max_t, max_t))


def random_outer(rng, n, bound=None):
    bound = 2 * n if bound is None else bound
    return OuterAuto(rng.choice([1, -1]), rng.choice([1, -1]), rng.randint(-bound, bound))


@st.composite
def free_words(draw, n, max_len=8):
    length = draw(st.integers(0, max_len))
    codes = []
    for _ in range(length):
        options = [c for c in range(2 * n) if not codes or codes[-1] ^ 1 != c]
        codes.append(draw(st.sampled_from(options)))
    return FreeWord(n, bytes(codes))


@st.composite
def elements(draw, n, max_len=8, max_t=12):
    return GeodesicNF(draw(free_words(n, max_len)), draw(st.integers(-max_t, max_t)))


@st.composite
def outers(draw, n, bound=None):
    bound = 2 * n if bound is None else bound
    return OuterAuto(
        draw(st.sampled_from([1, -1])), draw(st.sampled_from([1, -1])), draw(st.integers(-bound, bound))
    )


ranks = st.integers(2, 5)


def independent_verify(u, v, w, phi: FullAuto) -> bool:
    """``phi(w)^-1 u w == v`` with the outer part applied by substitution."""
    image = image_by_substitution(phi.outer, w)
    image = multiply(multiply(invert(phi.inner), image), phi.inner)
    return multiply(multiply(invert(image), u), w) == v


# ------------------------------------------------------ automorphism identities
# Each check takes (rng, n, phi) and returns True when the identity holds on a
# freshly drawn random case.


def _letter(rng, n):
    return FreeLetter(rng.randrange(n), rng.choice([1, -1]))


def _single(letter, n):
    return GeodesicNF(FreeWord(n, bytes([letter.code])), 0)


def id_inverse_of_image(rng, n, phi):
    """phi^-1(phi_F(l)) = l y^(-ey r d) and phi(phi_F^-1(l)) = l y^(ex r d)."""
    l = _letter(rng, n)
    a = apply_outer_inverse(phi, _single(phi_F(l, phi, n), n))
    b = apply_outer(phi, _single(phi_inv_F(l, phi, n), n))
    return a == multiply(_single(l, n), y_power(-phi.ey * l.sign * phi.d, n)) and b == multiply(
        _single(l, n), y_power(phi.ex * l.sign * phi.d, n)
    )


def id_shift_commutes_letter(rng, n, phi):
    """Phi_s(phi_F^{+-1}(l)) = phi_F^{+-1}(Phi_{ey s}(l))."""
    l = _letter(rng, n)
    s = rng.randint(-3 * n, 3 * n)
    shifted = FreeLetter.from_code(shift_codes(bytes([l.code]), phi.ey * s, n)[0])
    ok = True
    for f in (phi_F, phi_inv_F):
        left = FreeLetter.from_code(shift_codes(bytes([f(l, phi, n).code]), s, n)[0])
        ok &= left == f(shifted, phi, n)
    return ok


def id_round_trip_free(rng, n, phi):
    """phi([phi^-1(w)]_F) = w y^(ex sigma d) and phi^-1([phi(w)]_F) = w y^(-ey sigma d)."""
    w = random_word(rng, n, 8)
    sigma = w.exponent_sum()
    a = apply_outer(phi, GeodesicNF(free_image_inverse(phi, w), 0))
    b = apply_outer_inverse(phi, GeodesicNF(free_image(phi, w), 0))
    return a == GeodesicNF(w, phi.ex * sigma * phi.d) and b == GeodesicNF(w, -phi.ey * sigma * phi.d)


def id_shift_commutes_word(rng, n, phi):
    """Phi_s([phi^{+-1}(w)]_F) = [phi^{+-1}(Phi_{ey s}(w))]_F."""
    w = random_word(rng, n, 8)
    s = rng.randint(-3 * n, 3 * n)
    return all(
        phi_shift(s, f(phi, w)) == f(phi, phi_shift(phi.ey * s, w))
        for f in (free_image, free_image_inverse)
    )


def id_inverse_word(rng, n, phi):
    """([phi(w)]_F)^-1 = Phi_{sigma d}([phi(w^-1)]_F)."""
    w = random_word(rng, n, 8)
    return free_image(phi, w).inverse() == phi_shift(
        w.exponent_sum() * phi.d, free_image(phi, w.inverse())
    )


def id_exponent_sums(rng, n, phi):
    """sigma([phi(w)]_F) = ex*sigma and sigma([phi(w^-1)]_F) = -ex*sigma."""
    w = random_word(rng, n, 8)
    sigma = w.exponent_sum()
    return (
        free_image(phi, w).exponent_sum() == phi.ex * sigma
        and free_image(phi, w.inverse()).exponent_sum() == -phi.ex * sigma
        and free_image_inverse(phi, w).exponent_sum() == phi.ex * sigma
    )


def id_image_formula(rng, n, phi):
    """Letterwise images agree with generator substitution, both directions."""
    g = GeodesicNF(random_word(rng, n, 8), rng.randint(-3 * n, 3 * n))
    forward = apply_outer(phi, g) == image_by_substitution(phi, g)
    backward = image_by_substitution(phi, apply_outer_inverse(phi, g)) == g
    return forward and backward


def id_homomorphism(rng, n, phi):
    a = random_element(rng, n, 6, 3 * n)
    b = random_element(rng, n, 6, 3 * n)
    return apply_outer(phi, multiply(a, b)) == multiply(apply_outer(phi, a), apply_outer(phi, b))


def id_split(rng, n, phi):
    """[phi(w1 w2)]_F = [phi(w1)]_F Phi_{sigma1 d}([phi(w2)]_F)."""
    w = random_word(rng, n, 10)
    cut = rng.randint(0, len(w))
    w1, w2 = w[:cut], w[cut:]
    right = free_image(phi, w1) * phi_shift(w1.exponent_sum() * phi.d, free_image(phi, w2))
    return free_image(phi, w) == right


def id_image_preimage(rng, n, phi):
    """[phi(w)]_F = v iff w = [phi^-1(v)]_F, both directions."""
    w = random_word(rng, n, 8)
    v = random_word(rng, n, 8)
    forward = free_image_inverse(phi, free_image(phi, w)) == w
    backward = free_image(phi, free_image_inverse(phi, v)) == v
    # a random v is almost never the image of a random w
    agree = (free_image(phi, w) == v) == (w == free_image_inverse(phi, v))
    return forward and backward and agree


def id_no_collapse(rng, n, phi):
    """The letterwise image of a reduced word is already reduced."""
    w = random_word(rng, n, 10)
    letters = image_letters(phi, w)
    reduced = all(a.index != b.index or a.sign == b.sign for a, b in zip(letters, letters[1:]))
    return reduced and len(free_image(phi, w)) == len(w)


def _iterate_letter(code, table, k):
    for _ in range(k):
        code = table[code]
    return code


def id_even_powers(rng, n, phi):
    """Closed forms for phi_F^(2k) in all four sign patterns."""
    l = _letter(rng, n)
    k = rng.randint(1, 2 * n)
    got = FreeLetter.from_code(_iterate_letter(l.code, image_table(phi, n), 2 * k))
    i, r, d = l.index, l.sign, phi.d
    if phi.signs == (1, 1):
        idx = i if r == 1 else i + 2 * k * d
    elif phi.signs == (-1, 1):
        idx = i + k * d
    elif phi.signs == (1, -1):
        idx = i
    else:
        idx = i + k * d if r == 1 else i - k * d
    return got == FreeLetter(idx % n, r)


def iterated_shift_coefficient(phi, k):
    """d-multiple, per unit of prefix exponent sum, in the k-fold image."""
    c = 0
    for j in range(k):
        c = phi.ex**j + phi.ey * c
    return c


def naive_shift_coefficient(phi, k):
    if phi.ex == 1:
        return k
    return 0 if k % 2 == 0 else 1


def iterated_image_formula(phi, w, k, coef):
    n = w.n
    table = image_table(phi, n)
    codes = bytearray()
    prefix = 0
    for letter in w:
        c = _iterate_letter(letter.code, table, k)
        codes += shift_codes(bytes([c]), coef * prefix * phi.d, n)
        prefix += letter.sign
    return FreeWord(n, bytes(codes))


def iterated_image(phi, w, k):
    g = GeodesicNF(w, 0)
    for _ in range(k):
        g = GeodesicNF(apply_outer(phi, g).free, 0)
    return g.free


def id_iterated_image(rng, n, phi):
    """k-fold free image = letterwise k-fold images with prefix shifts."""
    w = random_word(rng, n, 8)
    k = rng.randint(0, 2 * n)
    return iterated_image(phi, w, k) == iterated_image_formula(
        phi, w, k, iterated_shift_coefficient(phi, k)
    )


IDENTITIES = {
    "images match generator substitution": id_image_formula,
    "outer maps are homomorphisms": id_homomorphism,
    "letter round trips": id_inverse_of_image,
    "letter maps commute with index shifts": id_shift_commutes_letter,
    "word round trips": id_round_trip_free,
    "word images commute with index shifts": id_shift_commutes_word,
    "inverse of a word image": id_inverse_word,
    "exponent sums of images": id_exponent_sums,
    "image of a concatenation": id_split,
    "image and preimage are inverse": id_image_preimage,
    "images of reduced words stay reduced": id_no_collapse,
    "even powers of letter maps": id_even_powers,
    "iterated word images": id_iterated_image,
}


def run_identity(check, cases, seed):
    rng = random.Random(seed)
    failures = 0
    for _ in range(cases):
        n = rng.randint(2, 5)
        ex, ey = rng.choice(SIGNS)
        phi = OuterAuto(ex, ey, rng.randint(-2 * n, 2 * n))
        if not check(rng, n, phi):
            failures += 1
    return failures
