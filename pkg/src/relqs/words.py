"""Words in elementary generators, their evaluation, and the excision lift.

Three generator shapes are supported:

* :class:`Absolute` ``ge_ij(z)``, optionally carrying an ideal witness for ``z``;
* :class:`Relative` ``ge_ij(f) ge_ji(h) ge_ij(-f)`` with ``h`` witnessed;
* :class:`Conjugate` ``c ge_ij(h) c^-1`` for an arbitrary conjugating word ``c``
  (the shape produced by the rewriting lemmas).

Evaluation applies each elementary factor as a column operation, so a word of
length ``L`` costs ``O(L n)`` ring operations rather than ``L`` dense products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from . import steinberg
from . import tower
from .errors import NotInIdealError, RingMismatchError
from .forms import GroupKind, Matrix, check_size
from .rings import Excision, Ideal, IdealElem, Ring, RingElem


@dataclass(frozen=True)
class Absolute:
    i: int
    j: int
    z: RingElem
    witness: IdealElem | None = None

    shape = "absolute"

    def __post_init__(self):
        if self.witness is not None and self.witness.value != self.z:
            raise ValueError("witness does not match the parameter")


@dataclass(frozen=True)
class Relative:
    i: int
    j: int
    f: RingElem
    h: IdealElem

    shape = "relative"


@dataclass(frozen=True)
class Conjugate:
    conjugator: tuple
    i: int
    j: int
    h: IdealElem

    shape = "conjugate"


Generator = Union[Absolute, Relative, Conjugate]
Factor = tuple  # (Generator, exponent)


def absolute(kind: GroupKind, i: int, j: int, z: RingElem, witness: IdealElem | None = None) -> Absolute:
    """``ge_ij(z)`` stored under its canonical index pair."""
    (ci, cj), sign = steinberg.canonical(kind, i, j)
    if sign == 1:
        return Absolute(ci, cj, z, witness)
    return Absolute(ci, cj, -z, None if witness is None else -witness)


def _param_ring(g: Generator) -> Ring:
    if isinstance(g, Absolute):
        return g.z.ring
    if isinstance(g, Relative):
        return g.f.ring
    return g.h.ring


def _check_generator(kind: GroupKind, n: int, ring: Ring, g: Generator) -> None:
    steinberg.validate(kind, n, g.i, g.j)
    if isinstance(g, Relative):
        steinberg.validate(kind, n, g.j, g.i)
        if g.f.ring != ring or g.h.ring != ring:
            raise RingMismatchError("generator parameter over the wrong ring")
    elif isinstance(g, Absolute):
        if g.z.ring != ring:
            raise RingMismatchError("generator parameter over the wrong ring")
    else:
        if g.h.ring != ring:
            raise RingMismatchError("generator parameter over the wrong ring")
        for sub, e in g.conjugator:
            if e not in (1, -1):
                raise ValueError("exponents must be +1 or -1")
            _check_generator(kind, n, ring, sub)


@dataclass(frozen=True, eq=False)
class Word:
    ring: Ring
    kind: GroupKind
    n: int
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", GroupKind.parse(self.kind))
        object.__setattr__(self, "factors", tuple((g, int(e)) for g, e in self.factors))
        check_size(self.kind, self.n)
        for g, e in self.factors:
            if e not in (1, -1):
                raise ValueError("exponents must be +1 or -1")
            _check_generator(self.kind, self.n, self.ring, g)

    def __len__(self) -> int:
        return len(self.factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return (self.ring == other.ring and self.kind is other.kind and self.n == other.n
                and self.factors == other.factors)

    def __hash__(self) -> int:
        return hash((self.kind, self.n, len(self.factors)))

    def __mul__(self, other: "Word") -> "Word":
        _same_frame(self, other)
        return Word(self.ring, self.kind, self.n, self.factors + other.factors)

    def with_factors(self, factors: Iterable) -> "Word":
        return Word(self.ring, self.kind, self.n, tuple(factors))

    def __repr__(self) -> str:
        return f"Word({self.kind.value}, n={self.n}, {len(self.factors)} factors over {self.ring!r})"


def _same_frame(a: Word, b: Word) -> None:
    if a.ring != b.ring or a.kind is not b.kind or a.n != b.n:
        raise RingMismatchError("words over different rings, kinds or sizes")


def identity_word(ring: Ring, kind: GroupKind | str, n: int) -> Word:
    return Word(ring, GroupKind.parse(kind), n, ())


# ---------------------------------------------------------------------------
# Expansion into elementary operations and evaluation
# ---------------------------------------------------------------------------


def _ops(g: Generator, e: int) -> list[tuple[int, int, RingElem]]:
    """The factor as a product of ``(i, j, z)`` elementary factors."""
    if isinstance(g, Absolute):
        return [(g.i, g.j, g.z if e == 1 else -g.z)]
    if isinstance(g, Relative):
        h = g.h.value
        return [(g.i, g.j, g.f), (g.j, g.i, h if e == 1 else -h), (g.i, g.j, -g.f)]
    inner = []
    for sub, se in g.conjugator:
        inner.extend(_ops(sub, se))
    h = g.h.value
    back = [(i, j, -z) for i, j, z in reversed(inner)]
    return inner + [(g.i, g.j, h if e == 1 else -h)] + back


def expand(w: Word) -> list[tuple[int, int, RingElem]]:
    out = []
    for g, e in w.factors:
        out.extend(_ops(g, e))
    return out


def absolute_length(w: Word) -> int:
    return len(expand(w))


def _apply(R: Ring, kind: GroupKind, rows: list, i: int, j: int, z) -> None:
    """``rows <- rows * ge_ij(z)`` in place (payloads)."""
    if R.is_zero(z):
        return
    updates = []
    for r, c, k in steinberg.pattern(kind, i, j):
        coef = z if k == 1 else R.mul(R.from_int(k), z)
        updates.append((r - 1, c - 1, coef))
    new_cols = []
    for r, c, coef in updates:
        col = []
        for row in rows:
            a = row[r]
            col.append(None if R.is_zero(a) else R.mul(a, coef))
        new_cols.append((c, col))
    for c, col in new_cols:
        for row, d in zip(rows, col):
            if d is not None:
                row[c] = R.add(row[c], d)


def _run(R: Ring, kind: GroupKind, n: int, ops) -> list:
    rows = [[R.one_p if a == b else R.zero_p for b in range(n)] for a in range(n)]
    for i, j, z in ops:
        _apply(R, kind, rows, i, j, z.v)
    return rows


def eval_ops(ring: Ring, kind: GroupKind, n: int, ops, with_inverse: bool = True) -> Matrix:
    rows = _run(ring, kind, n, ops)
    m = Matrix(ring, [[RingElem(ring, x) for x in r] for r in rows], check_inverse=False)
    if with_inverse:
        inv_rows = _run(ring, kind, n, [(i, j, -z) for i, j, z in reversed(list(ops))])
        inv = Matrix(ring, [[RingElem(ring, x) for x in r] for r in inv_rows], check_inverse=False)
        inv.inverse = m
        m.inverse = inv
    return m


def eval_word(w: Word, with_inverse: bool = True) -> Matrix:
    """Left-to-right product; the result carries the inverse witness."""
    return eval_ops(w.ring, w.kind, w.n, expand(w), with_inverse)


def generator_matrix(kind: GroupKind | str, n: int, g: Generator, exponent: int = 1) -> Matrix:
    kind = GroupKind.parse(kind)
    ring = _param_ring(g)
    _check_generator(kind, n, ring, g)
    return eval_ops(ring, kind, n, _ops(g, exponent))


def invert_word(w: Word) -> Word:
    return w.with_factors((g, -e) for g, e in reversed(w.factors))


# ---------------------------------------------------------------------------
# Splitting, merging, shuffling
# ---------------------------------------------------------------------------


def split_parameter(kind: GroupKind | str, n: int, g: Absolute, x: RingElem, y: RingElem) -> Word:
    """``ge_ij(x + y) = ge_ij(x) ge_ij(y)``."""
    kind = GroupKind.parse(kind)
    if not isinstance(g, Absolute):
        raise ValueError("only absolute generators can be split")
    R = g.z.ring
    x, y = R(x), R(y)
    if x + y != g.z:
        raise ValueError("x + y does not equal the generator parameter")
    return Word(R, kind, n, ((Absolute(g.i, g.j, x), 1), (Absolute(g.i, g.j, y), 1)))


def _signed(kind: GroupKind, g: Absolute, e: int):
    (ci, cj), sign = steinberg.canonical(kind, g.i, g.j)
    s = sign * e
    z = g.z if s == 1 else -g.z
    wit = None
    if g.witness is not None:
        wit = g.witness if s == 1 else -g.witness
    return (ci, cj), z, wit


def merge_adjacent(w: Word) -> Word:
    """Collapse neighbouring factors on the same root; drop trivial factors."""
    stack: list = []
    for g, e in w.factors:
        if isinstance(g, Absolute):
            root, z, wit = _signed(w.kind, g, e)
            if stack and isinstance(stack[-1][0], Absolute):
                top, te = stack[-1]
                troot, tz, twit = _signed(w.kind, top, te)
                if troot == root:
                    stack.pop()
                    total = tz + z
                    if not total.is_zero():
                        nw = twit + wit if (twit is not None and wit is not None and twit.ideal == wit.ideal) else None
                        stack.append((Absolute(root[0], root[1], total, nw), 1))
                    continue
            if not z.is_zero():
                stack.append((g, e))
        elif not g.h.value.is_zero():
            stack.append((g, e))
    return w.with_factors(stack)


def shuffle(pairs: Sequence[tuple[Word, Word]]) -> Word:
    """``prod a_t b_t = prod (r_t b_t r_t^-1) * prod a_t`` with ``r_t = a_1 ... a_t``."""
    if not pairs:
        raise ValueError("shuffle needs at least one pair")
    frame = pairs[0][0]
    prefix: list = []
    conj: list = []
    tail: list = []
    for a, b in pairs:
        _same_frame(frame, a)
        _same_frame(frame, b)
        prefix.extend(a.factors)
        tail.extend(a.factors)
        if b.factors:
            r = frame.with_factors(prefix)
            conj.extend(r.factors + b.factors + invert_word(r).factors)
    return merge_adjacent(frame.with_factors(conj + tail))


def conjugate_factor(kind: GroupKind, conjugator: Sequence, i: int, j: int, h: IdealElem) -> Generator:
    """Build ``c ge_ij(h) c^-1`` in the simplest available shape."""
    conjugator = tuple(conjugator)
    if not conjugator:
        return absolute(kind, i, j, h.value, h)
    if len(conjugator) == 1:
        g, e = conjugator[0]
        if isinstance(g, Absolute):
            # ge_ji(f) ge_ij(h) ge_ji(-f) is the relative shape with indices swapped
            root, z, _ = _signed(kind, g, e)
            rev, sign = steinberg.canonical(kind, j, i)
            if root == rev:
                f = z if sign == 1 else -z
                return Relative(j, i, f, h)
    return Conjugate(conjugator, i, j, h)


# ---------------------------------------------------------------------------
# Lifting to R + I and projecting back
# ---------------------------------------------------------------------------


def _lift_r(E: Ring, g: Generator, e: int):
    """Lift a conjugating factor: absolute parameters become ``(z + 0)``."""
    if isinstance(g, Absolute):
        return (Absolute(g.i, g.j, tower.lift_elem(E, g.z)), e)
    if isinstance(g, Relative):
        return (Relative(g.i, g.j, tower.lift_elem(E, g.f), tower.lift_ideal_elem_witnessed(E, g.h)), e)
    return (Conjugate(tuple(_lift_r(E, s, se) for s, se in g.conjugator), g.i, g.j,
                      tower.lift_ideal_elem_witnessed(E, g.h)), e)


def lift_generator(g: Generator, ideal: Ideal, ring: Ring | None = None) -> Generator:
    """Move a relative generator to ``R + I``: ``f -> (f + 0)``, ``h -> (0 + h)``."""
    E = ring if ring is not None else Excision(ideal.ring, ideal)
    if isinstance(g, Absolute):
        if g.witness is None:
            raise NotInIdealError(f"unwitnessed parameter in ge_{g.i}{g.j}")
        h = tower.lift_ideal_elem_witnessed(E, g.witness)
        return Absolute(g.i, g.j, h.value, h)
    return _lift_r(E, g, 1)[0]


def lift_word(w: Word, ideal: Ideal) -> Word:
    if ideal.ring != w.ring:
        raise RingMismatchError("ideal and word live over different rings")
    E = Excision(w.ring, ideal)
    return Word(E, w.kind, w.n, tuple((lift_generator(g, ideal, E), e) for g, e in w.factors))


def lift_absolute_word(w: Word, ring: Ring) -> Word:
    """Lift an arbitrary word into a tower ring, every parameter as ``(z + 0)``."""
    return Word(ring, w.kind, w.n, tuple(_lift_r(ring, g, e) for g, e in w.factors))


def _project(g: Generator, e: int):
    if isinstance(g, Absolute):
        z = tower.phi_elem(g.z)
        wit = None
        if g.witness is not None:
            wit = tower.project_ideal_elem(g.witness) if tower.is_tower(g.witness.ring) and \
                g.witness.ideal == tower.lift_ideal(g.witness.ring) else None
        if wit is None and tower.psi_part(g.z).is_zero():
            wit = tower.ideal_witness(g.z)
        return (Absolute(g.i, g.j, z, wit), e)
    h = _project_h(g.h)
    if isinstance(g, Relative):
        return (Relative(g.i, g.j, tower.phi_elem(g.f), h), e)
    return (Conjugate(tuple(_project(s, se) for s, se in g.conjugator), g.i, g.j, h), e)


def _project_h(h: IdealElem) -> IdealElem:
    ring = h.ring
    if h.ideal == tower.lift_ideal(ring):
        return tower.project_ideal_elem(h)
    # fall back to reading the I-part of the value (needs psi-part zero)
    if not tower.psi_part(h.value).is_zero():
        raise NotInIdealError("ideal parameter has a non-zero R-part after lifting")
    return tower.ideal_witness(h.value)


def project_word(w: Word) -> Word:
    """Apply ``phi`` to every parameter."""
    P = tower.project_ring(w.ring)
    return Word(P, w.kind, w.n, tuple(_project(g, e) for g, e in w.factors))


def lift_matrix(alpha: Matrix, ideal: Ideal) -> Matrix:
    """``alpha = I + (a_ij)`` with witnessed ``a_ij`` becomes ``(1 + a_ii)``, ``(0 + a_ij)``."""
    from .forms import relative_witnesses

    wit = relative_witnesses(alpha, ideal)
    if wit is None:
        raise NotInIdealError("matrix is not congruent to the identity modulo the ideal")
    E = Excision(alpha.ring, ideal)
    n = alpha.n

    def build(wgrid):
        return Matrix(E, [[E.pair(1 if a == b else 0, wgrid[a][b]) for b in range(n)]
                          for a in range(n)], check_inverse=False)

    lifted = build(wit)
    if alpha.inverse is not None:
        inv_wit = relative_witnesses(alpha.inverse, ideal)
        if inv_wit is None:
            raise NotInIdealError("inverse witness is not congruent to the identity")
        inv = build(inv_wit)
        lifted.inverse = inv
        inv.inverse = lifted
    return lifted


def project_matrix(M: Matrix) -> Matrix:
    return M.map(tower.phi_elem, tower.project_ring(M.ring))
