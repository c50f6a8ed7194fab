"""Elementary root patterns and commutator relations for all three kinds.

A generator ``ge_ij(z)`` is ``I + z*N_ij`` with ``N_ij`` nilpotent of square
zero:

* linear:      ``N_ij = e_ij``
* symplectic:  ``N_ij = e_ij`` if ``i = sigma(j)``, else
  ``e_ij - (-1)^(i+j) e_{sigma(j) sigma(i)}``
* orthogonal:  ``N_ij = e_ij - e_{sigma(j) sigma(i)}`` (``i != sigma(j)``)

For the two-term patterns ``ge_ij`` and ``ge_{sigma(j) sigma(i)}`` generate the
same root subgroup; :func:`canonical` picks the representative with ``i < j``.

Commutator relations ``[ge_a(s), ge_b(t)] = prod ge_c(k * s^p * t^q)`` are
derived once per pair by exact computation over ``ZZ[s, t]`` and peeling off
root elements degree by degree; every derived relation is re-multiplied and
compared before it is cached.
"""

from __future__ import annotations

import contextlib
from functools import lru_cache
from typing import Iterator

from .errors import RewriteFailure
from .forms import GroupKind, sigma
from .rings import ZZ, Polynomial

Root = tuple[int, int]
# (root, integer coefficient, power of s, power of t)
Term = tuple[Root, int, int, int]


def validate(kind: GroupKind, n: int, i: int, j: int) -> None:
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"invalid generator indices ({i}, {j}) for n={n}")
    if kind is not GroupKind.LINEAR:
        if n % 2:
            raise ValueError(f"{kind.value} generators need even n")
        if kind is GroupKind.ORTHOGONAL and i == sigma(j):
            raise ValueError(f"oe_{i}{j} is not defined (i = sigma(j))")


def pattern(kind: GroupKind, i: int, j: int) -> tuple[tuple[int, int, int], ...]:
    """Entries ``(row, col, coeff)`` of ``N_ij`` (1-based)."""
    if kind is GroupKind.LINEAR:
        return ((i, j, 1),)
    if kind is GroupKind.SYMPLECTIC:
        if i == sigma(j):
            return ((i, j, 1),)
        return ((i, j, 1), (sigma(j), sigma(i), -((-1) ** (i + j))))
    return ((i, j, 1), (sigma(j), sigma(i), -1))


def canonical(kind: GroupKind, i: int, j: int) -> tuple[Root, int]:
    """``(root, sign)`` with ``ge_ij(z) = ge_root(sign * z)``."""
    if kind is GroupKind.LINEAR or i < j or (kind is GroupKind.SYMPLECTIC and i == sigma(j)):
        return (i, j), 1
    if kind is GroupKind.SYMPLECTIC:
        return (sigma(j), sigma(i)), -((-1) ** (i + j))
    return (sigma(j), sigma(i)), -1


def opposite(kind: GroupKind, root: Root) -> Root:
    return canonical(kind, root[1], root[0])[0]


def roots(kind: GroupKind, n: int) -> list[Root]:
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or (kind is GroupKind.ORTHOGONAL and i == sigma(j)):
                continue
            r, _ = canonical(kind, i, j)
            if r == (i, j):
                out.append(r)
    return out


# ---------------------------------------------------------------------------
# Derivation of the commutator relations
# ---------------------------------------------------------------------------

_ST = Polynomial(ZZ, ("s", "t"))


def _size(*rts: Root) -> int:
    m = max(max(r) for r in rts)
    return m + (m % 2)


def _gen_rows(kind: GroupKind, n: int, root: Root, param: dict) -> list[list[dict]]:
    R = _ST
    rows = [[R.one_p if a == b else R.zero_p for b in range(n)] for a in range(n)]
    for r, c, k in pattern(kind, *root):
        rows[r - 1][c - 1] = R.add(rows[r - 1][c - 1], R.mul(R.from_int(k), param))
    return rows


def _matmul(A, B):
    R = _ST
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = R.zero_p
            for k in range(n):
                if A[i][k] and B[k][j]:
                    acc = R.add(acc, R.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def _mono(p: int, q: int, k: int = 1) -> dict:
    return {(p, q): k} if k else {}


def _product(kind: GroupKind, n: int, factors: list[tuple[Root, dict]]):
    R = _ST
    M = [[R.one_p if a == b else R.zero_p for b in range(n)] for a in range(n)]
    for root, param in factors:
        M = _matmul(M, _gen_rows(kind, n, root, param))
    return M


def _is_identity(M) -> bool:
    R = _ST
    n = len(M)
    return all(R.eq(M[a][b], R.one_p if a == b else R.zero_p) for a in range(n) for b in range(n))


@lru_cache(maxsize=None)
def derive_relation(kind: GroupKind, a: Root, b: Root) -> tuple[Term, ...]:
    """Exact Chevalley-type commutator formula for two canonical roots."""
    n = _size(a, b, (sigma(a[0]), sigma(a[1])), (sigma(b[0]), sigma(b[1])))
    s, t = _mono(1, 0), _mono(0, 1)
    neg_s, neg_t = _mono(1, 0, -1), _mono(0, 1, -1)
    C = _product(kind, n, [(a, s), (b, t), (a, neg_s), (b, neg_t)])
    terms: list[Term] = []
    R = _ST
    for _ in range(8):
        if _is_identity(C):
            break
        # lowest total degree monomial appearing off the identity
        best = None
        for r in range(n):
            for c in range(n):
                entry = C[r][c]
                if r == c:
                    entry = R.sub(entry, R.one_p)
                for (p, q), k in entry.items():
                    cand = (p + q, p, q, r, c, k)
                    if best is None or cand[:5] < best[:5]:
                        best = cand
        _, p, q, r, c, k = best
        if r == c:
            raise RewriteFailure(f"diagonal residue while deriving [{a}, {b}] ({kind.value})")
        root, sign = canonical(kind, r + 1, c + 1)
        coeff = sign * k
        # peel from the left: C = ge_root(coeff s^p t^q) * C'
        C = _matmul(_gen_rows(kind, n, root, _mono(p, q, -coeff)), C)
        terms.append((root, coeff, p, q))
    else:
        raise RewriteFailure(f"could not decompose [{a}, {b}] ({kind.value})")
    rebuilt = _product(kind, n, [(rt, _mono(p, q, k)) for rt, k, p, q in terms])
    target = _product(kind, n, [(a, s), (b, t), (a, neg_s), (b, neg_t)])
    if rebuilt != target:
        raise RewriteFailure(f"derived relation for [{a}, {b}] does not re-multiply ({kind.value})")
    return tuple(terms)


_MUTATIONS: dict = {}


def relation(kind: GroupKind, a: Root, b: Root) -> tuple[Term, ...]:
    """``[ge_a(s), ge_b(t)]`` as an ordered product of root elements."""
    terms = derive_relation(kind, a, b)
    mutated = _MUTATIONS.get((kind, a, b))
    return mutated if mutated is not None else terms


@contextlib.contextmanager
def flipped_relation(kind: GroupKind, a: Root, b: Root) -> Iterator[tuple[Term, ...]]:
    """Test fixture: flip the sign of the first coefficient of one relation."""
    terms = derive_relation(kind, a, b)
    if not terms:
        raise ValueError("cannot flip a trivial relation")
    (root, k, p, q), rest = terms[0], terms[1:]
    _MUTATIONS[(kind, a, b)] = ((root, -k, p, q),) + rest
    try:
        yield _MUTATIONS[(kind, a, b)]
    finally:
        del _MUTATIONS[(kind, a, b)]


@lru_cache(maxsize=None)
def split_root(kind: GroupKind, n: int, b: Root) -> tuple[Root, Root]:
    """Pick ``beta1, beta2`` with ``ge_b(k uv)`` the (1,1) term of their commutator.

    Preference: unit coefficient, fewest extra terms, auxiliary index outside
    ``{i, j, sigma(i), sigma(j)}``, smallest auxiliary index.
    """
    i, j = b
    taboo = {i, j} if kind is GroupKind.LINEAR else {i, j, sigma(i), sigma(j)}
    cands = []
    for k in range(1, n + 1):
        if k in (i, j):
            continue
        try:
            validate(kind, n, i, k)
            validate(kind, n, k, j)
        except ValueError:
            continue
        r1, _ = canonical(kind, i, k)
        r2, _ = canonical(kind, k, j)
        if r1 == r2 or opposite(kind, r1) == r2:
            continue
        for x, y in ((r1, r2), (r2, r1)):
            terms = derive_relation(kind, x, y)
            hit = [tm for tm in terms if tm[0] == b and tm[2] == 1 and tm[3] == 1]
            if not hit:
                continue
            coeff = hit[0][1]
            cands.append(((abs(coeff) != 1, len(terms), k in taboo, k, x, y), x, y, coeff))
    if not cands:
        raise RewriteFailure(
            f"no auxiliary index for {kind.value} root {b} at n={n} (size too small)"
        )
    cands.sort(key=lambda c: c[0])
    _, x, y, _ = cands[0]
    return x, y
