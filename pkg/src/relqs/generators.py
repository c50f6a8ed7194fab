"""Seeded random instances for the property suites and experiment scripts."""

from __future__ import annotations

import random
from fractions import Fraction

from . import steinberg
from .forms import GroupKind, Vector, sigma, tilde
from .rings import QQ, ZZ, Ideal, IdealElem, IntegersModN, Localized, Polynomial, Ring, RingElem
from .words import Absolute, Conjugate, Relative, Word, eval_word

KINDS = (GroupKind.LINEAR, GroupKind.SYMPLECTIC, GroupKind.ORTHOGONAL)


def small(rng: random.Random, R: Ring, bound: int = 3) -> RingElem:
    """A small random element: integer-like, or a short polynomial."""
    if isinstance(R, Polynomial):
        acc = R.zero
        for _ in range(rng.randint(1, 2)):
            term = R(small(rng, R.base, bound))
            for v in R.vars:
                if rng.random() < 0.4:
                    term = term * R.gen(v)
            acc = acc + term
        return acc
    if R == QQ:
        return R(Fraction(rng.randint(-bound, bound), rng.randint(1, 2)))
    return R(rng.randint(-bound, bound))


def nonzero_small(rng: random.Random, R: Ring, bound: int = 3) -> RingElem:
    for _ in range(20):
        x = small(rng, R, bound)
        if not x.is_zero():
            return x
    return R.one


def random_root(rng: random.Random, kind: GroupKind, n: int, both_ways: bool = False):
    while True:
        i, j = rng.randint(1, n), rng.randint(1, n)
        try:
            steinberg.validate(kind, n, i, j)
            if both_ways:
                steinberg.validate(kind, n, j, i)
        except ValueError:
            continue
        return i, j


def random_absolute_word(rng, R, kind, n, length, param=None) -> Word:
    param = param or (lambda: small(rng, R))
    fs = []
    for _ in range(length):
        i, j = random_root(rng, kind, n)
        fs.append((Absolute(i, j, param()), rng.choice((1, -1))))
    return Word(R, kind, n, tuple(fs))


def random_ideal_elem(rng, ideal: Ideal, bound: int = 2) -> IdealElem:
    return ideal.elem([small(rng, ideal.ring, bound) for _ in ideal.generators])


def random_relative_word(rng, ideal: Ideal, kind, n, length) -> Word:
    R = ideal.ring
    fs = []
    for _ in range(length):
        i, j = random_root(rng, kind, n, both_ways=True)
        if rng.random() < 0.7:
            g = Relative(i, j, small(rng, R), random_ideal_elem(rng, ideal))
        else:
            h = random_ideal_elem(rng, ideal)
            g = Absolute(i, j, h.value, h)
        fs.append((g, rng.choice((1, -1))))
    return Word(R, kind, n, tuple(fs))


def kernel_vector(rng, v: Vector, kind: GroupKind, ideal: Ideal) -> Vector:
    """``a (v~_j e_k - v~_k e_j)`` with ``a`` a witnessed ideal element; orthogonal to ``v``.

    For the orthogonal kind ``k != sigma(j)`` keeps the result isotropic.
    """
    n = len(v)
    left = v.entries if kind is GroupKind.LINEAR else tilde(v, kind)
    while True:
        j, k = rng.sample(range(1, n + 1), 2)
        if kind is GroupKind.ORTHOGONAL and k == sigma(j):
            continue
        break
    a = random_ideal_elem(rng, ideal)
    if a.value.is_zero():
        a = ideal.gen_elem(0)
    zero = ideal.zero_elem()
    ws = [zero] * n
    ws[k - 1] = a.scale(left[j - 1])
    ws[j - 1] = a.scale(-left[k - 1])
    return Vector.from_witnesses(ws)


def rank_one_setting(rng, which: int | None = None):
    """``(ring, ideal)``: ``(3) in ZZ``, ``(X) in QQ[X]`` or ``(Y) in QQ[Y]``."""
    which = rng.randint(0, 1) if which is None else which
    if which == 0:
        return ZZ, Ideal(ZZ, [3])
    R = Polynomial(QQ, ["X" if which == 1 else "Y"])
    return R, Ideal(R, [R.gens()[0]])


def rank_one_kind_size(rng):
    kind = rng.choice(KINDS)
    n = rng.choice((3, 4)) if kind is GroupKind.LINEAR else rng.choice((4, 6))
    return kind, n


def monomialize_instance(rng, length: int | None = None):
    """Rank-one data over ``ZZ`` (linear only) or ``QQ[Y]``; the new variable is ``X``."""
    kind = rng.choice(KINDS)
    n = {GroupKind.LINEAR: rng.choice((3, 4)), GroupKind.SYMPLECTIC: rng.choice((4, 6)),
         GroupKind.ORTHOGONAL: 6}[kind]
    length = rng.randint(0, 2) if length is None else length
    # conjugation rewriting divides by 2 for the symplectic and orthogonal kinds
    setting = rng.choice((0, 2)) if kind is GroupKind.LINEAR else 2
    return rank_one_instance(rng, kind, n, length, setting=setting)


def rank_one_instance(rng, kind=None, n=None, length=None, setting=None):
    if kind is None:
        kind, n = rank_one_kind_size(rng)
    R, ideal = rank_one_setting(rng, setting)
    length = rng.randint(0, 4) if length is None else length
    eps = random_relative_word(rng, ideal, kind, n, length)
    v = eval_word(eps, with_inverse=False).column(1)
    return eps, kernel_vector(rng, v, kind, ideal)


# -- conjugation rewriting over QQ[X, Y, Z] with I = (Y) -------------------------

XYZ = Polynomial(QQ, ["X", "Y", "Z"])
IY = Ideal(XYZ, [XYZ.gen("Y")])


def rewrite_kind_size(rng):
    kind = rng.choice(KINDS)
    if kind is GroupKind.LINEAR:
        return kind, rng.choice((3, 4))
    if kind is GroupKind.SYMPLECTIC:
        return kind, rng.choice((4, 6))
    return kind, 6


def overlap_root(rng, kind, n, inner, case: str):
    """A conjugating root that is disjoint from, shares an index with, or opposes ``inner``."""
    i, j = inner
    if case == "opposed":
        return j, i
    for _ in range(200):
        a, b = random_root(rng, kind, n)
        pats = {(r, c) for r, c, _ in steinberg.pattern(kind, a, b)}
        idx = {x for rc in pats for x in rc}
        inner_idx = {x for r, c, _ in steinberg.pattern(kind, i, j) for x in (r, c)}
        if steinberg.canonical(kind, a, b)[0] in (steinberg.canonical(kind, i, j)[0],
                                                  steinberg.opposite(kind, steinberg.canonical(kind, i, j)[0])):
            continue
        shared = bool(idx & inner_idx)
        if (case == "shared") == shared:
            return a, b
    return random_root(rng, kind, n)


def rewrite_instance(rng, r: int | None = None, case: str | None = None, m: int = 1, kind=None, n=None):
    if kind is None:
        kind, n = rewrite_kind_size(rng)
    r = rng.randint(0, 2) if r is None else r
    case = case or rng.choice(("disjoint", "shared", "opposed"))
    X, Y, Z = XYZ.gens()
    inner = random_root(rng, kind, n, both_ways=True)
    fs = []
    for t in range(r):
        root = overlap_root(rng, kind, n, inner, case) if t == r - 1 else random_root(rng, kind, n)
        fs.append((Absolute(root[0], root[1], small(rng, XYZ) + Z), rng.choice((1, -1))))
    eps = Word(XYZ, kind, n, tuple(fs))
    h = small(rng, XYZ) + 1
    coeff = X ** (2 ** r * m) * h
    return eps, inner, IY.elem([coeff]), m, case


# -- dilation over ZZ_s ------------------------------------------------------------


def dilation_setting(s: int):
    I_base = 3 if s == 2 else 2
    L = Localized(ZZ, s)
    RX = Polynomial(L, ["X"])
    return L, RX, Ideal(RX, [I_base])


def _loc_small(rng, L: Localized, RX: Polynomial, with_x: float = 0.3) -> RingElem:
    c = RX(L.fraction(rng.randint(-3, 3) or 1, rng.randint(0, 2)))
    if rng.random() < with_x:
        c = c * RX.gen("X")
    return c


def dilation_instance(rng, s: int | None = None, factors: int | None = None, kind=None, n=None):
    if kind is None:
        kind = rng.choice(KINDS)
        n = 3 if kind is GroupKind.LINEAR else rng.choice((4, 6))
        if kind is GroupKind.ORTHOGONAL:
            n = 6
    if s is None:
        # 2 must become a unit for the symplectic and orthogonal kinds
        s = rng.choice((2, 3)) if kind is GroupKind.LINEAR else 2
    L, RX, ideal = dilation_setting(s)
    X = RX.gen("X")
    out = []
    for _ in range(rng.randint(1, 2) if factors is None else factors):
        conj = []
        for _ in range(rng.randint(0, 2)):
            a, b = random_root(rng, kind, n)
            conj.append((Absolute(a, b, _loc_small(rng, L, RX)), rng.choice((1, -1))))
        i, j = random_root(rng, kind, n)
        h = ideal.elem([X * _loc_small(rng, L, RX)])
        out.append((Conjugate(tuple(conj), i, j, h) if conj else Absolute(i, j, h.value, h),
                    rng.choice((1, -1))))
    return Word(RX, kind, n, tuple(out)), s


# -- rings for the axiom suites ------------------------------------------------------


def excision_settings():
    ZX = Polynomial(ZZ, ["X"])
    X = ZX.gen("X")
    Z7 = IntegersModN(7)
    return [
        (ZZ, Ideal(ZZ, [3])),
        (Z7, Ideal(Z7, [3])),
        (ZX, Ideal(ZX, [X])),
        (ZX, Ideal(ZX, [2 * X + 1])),
    ]
