"""Dense matrices, the standard alternating/hyperbolic forms, and group tests.

Indices in the public functions are 1-based, as in the usual matrix-unit
notation ``e_ij``; storage is 0-based.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import RingMismatchError, UndecidableError
from .rings import (
    Ideal,
    IdealElem,
    Membership,
    Ring,
    RingElem,
    decide_membership,
)


class GroupKind(enum.Enum):
    LINEAR = "linear"
    SYMPLECTIC = "symplectic"
    ORTHOGONAL = "orthogonal"

    @classmethod
    def parse(cls, value: "GroupKind | str") -> "GroupKind":
        if isinstance(value, GroupKind):
            return value
        return cls(value.lower())


def check_size(kind: GroupKind, n: int, strict: bool = False) -> None:
    """Reject odd sizes for the form-preserving kinds.

    With ``strict`` also enforce the usual lower bounds (``n >= 3`` linear,
    ``n >= 4`` otherwise).
    """
    if kind is not GroupKind.LINEAR and n % 2:
        raise ValueError(f"{kind.value} groups need even size, got {n}")
    if n < 1:
        raise ValueError("size must be positive")
    if strict:
        lower = 3 if kind is GroupKind.LINEAR else 4
        if n < lower:
            raise ValueError(f"{kind.value} rewriting needs n >= {lower}")


def warn_if_two_not_unit(ring: Ring, kind: GroupKind) -> None:
    if kind is not GroupKind.LINEAR and not ring.two_is_unit():
        warnings.warn(f"2 is not a unit in {ring!r}; {kind.value} results may be partial",
                      stacklevel=3)


def sigma(i: int) -> int:
    """The involution swapping ``2k-1`` and ``2k``."""
    if i < 1:
        raise ValueError("sigma is defined on positive indices")
    return i + 1 if i % 2 else i - 1


# ---------------------------------------------------------------------------
# Matrices and vectors
# ---------------------------------------------------------------------------


class Matrix:
    """Square matrix over one ring, optionally carrying a verified inverse."""

    __slots__ = ("ring", "rows", "inverse", "witnesses")

    def __init__(self, ring: Ring, rows: Iterable[Iterable], inverse: "Matrix | None" = None,
                 witnesses=None, check_inverse: bool = True):
        self.ring = ring
        self.rows = tuple(tuple(ring(x) for x in row) for row in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        self.inverse = inverse
        self.witnesses = witnesses
        if inverse is not None and check_inverse:
            eye = Matrix.identity(ring, n)
            if self.mul(inverse, keep_inverse=False) != eye or inverse.mul(self, keep_inverse=False) != eye:
                raise ValueError("inverse witness does not invert the matrix")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        one, zero = ring.one, ring.zero
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        m = cls(ring, rows)
        m.inverse = m
        return m

    @classmethod
    def zeros(cls, ring: Ring, n: int) -> "Matrix":
        return cls(ring, [[ring.zero] * n for _ in range(n)])

    @classmethod
    def unit(cls, ring: Ring, n: int, i: int, j: int, value=1) -> "Matrix":
        """``value * e_ij`` (1-based)."""
        rows = [[ring.zero] * n for _ in range(n)]
        rows[i - 1][j - 1] = ring(value)
        return cls(ring, rows)

    def __getitem__(self, ij: tuple[int, int]) -> RingElem:
        i, j = ij
        return self.rows[i][j]

    def entry(self, i: int, j: int) -> RingElem:
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def _same(self, other: "Matrix") -> None:
        if other.ring != self.ring:
            raise RingMismatchError(f"matrices over {self.ring!r} and {other.ring!r}")
        if other.n != self.n:
            raise ValueError("matrix size mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.n != self.n or other.ring != self.ring:
            return False
        eq = self.ring.eq
        return all(eq(a.v, b.v) for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    __hash__ = None

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix(self.ring, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix(self.ring, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        c = self.ring(c)
        return Matrix(self.ring, [[c * a for a in r] for r in self.rows])

    def mul(self, other: "Matrix", keep_inverse: bool = True) -> "Matrix":
        self._same(other)
        R = self.ring
        n = self.n
        cols = list(zip(*[[x.v for x in r] for r in other.rows]))
        out = []
        for row in self.rows:
            rv = [x.v for x in row]
            new = []
            for col in cols:
                acc = R.zero_p
                for a, b in zip(rv, col):
                    if not R.is_zero(a) and not R.is_zero(b):
                        acc = R.add(acc, R.mul(a, b))
                new.append(RingElem(R, acc))
            out.append(new)
        inv = None
        if keep_inverse and self.inverse is not None and other.inverse is not None:
            inv = other.inverse.mul(self.inverse, keep_inverse=False)
        m = Matrix(R, out, check_inverse=False)
        m.inverse = inv
        if inv is not None:
            inv.inverse = m
        return m

    __matmul__ = mul

    def apply(self, v: "Vector") -> "Vector":
        R = self.ring
        return Vector(R, [sum((a * b for a, b in zip(row, v.entries)), R.zero) for row in self.rows])

    def transpose(self) -> "Matrix":
        m = Matrix(self.ring, list(zip(*self.rows)))
        if self.inverse is not None:
            m.inverse = Matrix(self.ring, list(zip(*self.inverse.rows)))
        return m

    def map(self, fn: Callable[[RingElem], RingElem], ring: Ring) -> "Matrix":
        """Entrywise image under a ring map."""
        m = Matrix(ring, [[fn(x) for x in r] for r in self.rows])
        if self.inverse is not None:
            m.inverse = Matrix(ring, [[fn(x) for x in r] for r in self.inverse.rows])
        return m

    def column(self, j: int) -> "Vector":
        return Vector(self.ring, [r[j - 1] for r in self.rows])

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.ring, self.n)

    def with_inverse(self, inverse: "Matrix") -> "Matrix":
        return Matrix(self.ring, self.rows, inverse=inverse, witnesses=self.witnesses)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(repr(x) for x in r) for r in self.rows)
        return f"Matrix[{self.ring!r}]([{body}])"


@dataclass(frozen=True, eq=False)
class Vector:
    """Column vector; ``witnesses`` optionally certifies every entry in an ideal."""

    ring: Ring
    entries: tuple
    witnesses: tuple | None = None

    def __init__(self, ring: Ring, entries: Iterable, witnesses: Iterable[IdealElem] | None = None):
        ents = tuple(ring(x) for x in entries)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "entries", ents)
        if witnesses is not None:
            ws = tuple(witnesses)
            if len(ws) != len(ents):
                raise ValueError("one witness per entry is required")
            for w, x in zip(ws, ents):
                if w.value != x:
                    raise ValueError(f"witness {w!r} does not match entry {x!r}")
            object.__setattr__(self, "witnesses", ws)
        else:
            object.__setattr__(self, "witnesses", None)

    @classmethod
    def from_witnesses(cls, witnesses: Sequence[IdealElem]) -> "Vector":
        ring = witnesses[0].ring
        return cls(ring, [w.value for w in witnesses], witnesses)

    @classmethod
    def basis(cls, ring: Ring, n: int, i: int) -> "Vector":
        return cls(ring, [ring.one if k == i - 1 else ring.zero for k in range(n)])

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> RingElem:
        return self.entries[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, Vector) and self.entries == other.entries

    __hash__ = None

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(self.ring, [a + b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "Vector":
        c = self.ring(c)
        ws = None if self.witnesses is None else [w.scale(c) for w in self.witnesses]
        return Vector(self.ring, [c * a for a in self.entries], ws)

    def __repr__(self) -> str:
        return f"Vector({', '.join(map(repr, self.entries))})"


def outer(u: Sequence[RingElem], v: Sequence[RingElem], ring: Ring) -> Matrix:
    return Matrix(ring, [[a * b for b in v] for a in u])


# ---------------------------------------------------------------------------
# Forms and the bilinear gadgets
# ---------------------------------------------------------------------------


def form_matrix(kind: GroupKind | str, m: int, ring: Ring) -> Matrix:
    """``psi_m`` (alternating) or ``psi~_m`` (hyperbolic), of size ``2m``."""
    kind = GroupKind.parse(kind)
    if kind is GroupKind.LINEAR:
        raise ValueError("the linear group has no form matrix")
    if m < 1:
        raise ValueError("m must be positive")
    n = 2 * m
    lower = -1 if kind is GroupKind.SYMPLECTIC else 1
    rows = [[0] * n for _ in range(n)]
    for i in range(m):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = lower
    return Matrix(ring, rows)


def tilde(v: Vector, kind: GroupKind | str) -> tuple[RingElem, ...]:
    """The row vector ``v^t . form``."""
    kind = GroupKind.parse(kind)
    if kind is GroupKind.LINEAR:
        raise ValueError("tilde is defined for the symplectic and orthogonal kinds")
    n = len(v)
    if n % 2:
        raise ValueError("tilde needs even length")
    sign = -1 if kind is GroupKind.SYMPLECTIC else 1
    out = []
    for k in range(n):
        if k % 2 == 0:  # column 2i-1 picks up the lower entry of the block
            out.append(v.entries[k + 1] * sign)
        else:
            out.append(v.entries[k - 1])
    return tuple(out)


def _check_pair(v: Vector, w: Vector) -> None:
    if v.ring != w.ring:
        raise RingMismatchError("vectors over different rings")
    if len(v) != len(w):
        raise ValueError("vector length mismatch")


def inner(v: Vector, w: Vector, kind: GroupKind | str) -> RingElem:
    kind = GroupKind.parse(kind)
    _check_pair(v, w)
    left = v.entries if kind is GroupKind.LINEAR else tilde(v, kind)
    return sum((a * b for a, b in zip(left, w.entries)), v.ring.zero)


def m_update(v: Vector, w: Vector, kind: GroupKind | str) -> Matrix:
    """The rank-<=2 matrix ``M(v, w)``."""
    kind = GroupKind.parse(kind)
    _check_pair(v, w)
    R = v.ring
    if kind is GroupKind.LINEAR:
        return outer(v.entries, w.entries, R)
    first = outer(v.entries, tilde(w, kind), R)
    second = outer(w.entries, tilde(v, kind), R)
    return first + second if kind is GroupKind.SYMPLECTIC else first - second


# ---------------------------------------------------------------------------
# Membership tests
# ---------------------------------------------------------------------------


def determinant(M: Matrix) -> RingElem:
    """Division-free determinant (Laplace expansion with memoised minors)."""
    R = M.ring
    n = M.n
    rows = [[x.v for x in r] for r in M.rows]
    memo: dict = {}

    def det(start: int, cols: tuple) -> object:
        if start == n:
            return R.one_p
        key = cols
        if key in memo:
            return memo[key]
        acc = R.zero_p
        for pos, c in enumerate(cols):
            a = rows[start][c]
            if R.is_zero(a):
                continue
            minor = det(start + 1, cols[:pos] + cols[pos + 1:])
            term = R.mul(a, minor)
            acc = R.add(acc, term if pos % 2 == 0 else R.neg(term))
        memo[key] = acc
        return acc

    return RingElem(R, det(0, tuple(range(n))))


def check_group_membership(M: Matrix, kind: GroupKind | str) -> bool:
    kind = GroupKind.parse(kind)
    n = M.n
    if kind is GroupKind.LINEAR:
        if M.inverse is not None:
            eye = Matrix.identity(M.ring, n)
            return M.mul(M.inverse, keep_inverse=False) == eye and M.inverse.mul(M, keep_inverse=False) == eye
        return M.ring.is_unit(determinant(M).v)
    check_size(kind, n)
    psi = form_matrix(kind, n // 2, M.ring)
    return M.transpose().mul(psi, keep_inverse=False).mul(M, keep_inverse=False) == psi


def relative_witnesses(M: Matrix, ideal: Ideal) -> list[list[IdealElem]] | None:
    """Witnesses ``a_ij`` with ``M = I + (a_ij)``, or ``None`` if some entry fails.

    Raises :class:`UndecidableError` if membership cannot be decided.
    """
    if ideal.ring != M.ring:
        raise RingMismatchError("matrix and ideal live over different rings")
    if M.witnesses is not None:
        return [list(r) for r in M.witnesses]
    out = []
    for i, row in enumerate(M.rows):
        wrow = []
        for j, x in enumerate(row):
            target = x - 1 if i == j else x
            w = decide_membership(target, ideal)
            if w is Membership.NOT_MEMBER:
                return None
            if w is Membership.UNDECIDABLE:
                raise UndecidableError(f"cannot decide whether {target!r} lies in {ideal!r}")
            wrow.append(w)
        out.append(wrow)
    return out


def check_relative(M: Matrix, ideal: Ideal) -> bool:
    """``M == I_n`` modulo the ideal."""
    return relative_witnesses(M, ideal) is not None


def check_um_rel(v: Vector, ideal: Ideal, unit_witness: Sequence | None = None) -> bool:
    """Unimodular and congruent to ``e_1`` modulo the ideal."""
    R = v.ring
    if unit_witness is not None:
        if sum((R(u) * x for u, x in zip(unit_witness, v.entries)), R.zero) != R.one:
            return False
    else:
        unit_ideal = Ideal(R, v.entries)
        w = decide_membership(R.one, unit_ideal)
        if w is Membership.UNDECIDABLE:
            raise UndecidableError("cannot decide unimodularity without a witness")
        if w is Membership.NOT_MEMBER:
            return False
    for k, x in enumerate(v.entries):
        target = x - 1 if k == 0 else x
        w = decide_membership(target, ideal)
        if w is Membership.UNDECIDABLE:
            raise UndecidableError(f"cannot decide whether {target!r} lies in {ideal!r}")
        if w is Membership.NOT_MEMBER:
            return False
    return True


def is_isotropic(v: Vector, kind: GroupKind | str) -> bool:
    return inner(v, v, kind).is_zero()
