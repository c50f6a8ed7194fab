"""Constructive rewriting: rank-one factorization, conjugation with divisibility
tracking, monomialization, denominator clearing and dilation.

Every public entry point re-evaluates its output and compares it exactly with
the target before returning; a failed comparison raises :class:`RewriteFailure`.

Conjugation rewriting runs inside ``R + I`` (or a polynomial/localized tower over
it).  There a rewritten product's parameters may have a non-zero ``R``-part (the
commutator trick in the opposed case needs ``ge(X^m)`` factors), so the result
is relativized afterwards: each factor is split into its ``R``- and ``I``-parts,
the ``R``-parts are shuffled to the right where they multiply to the identity,
and ``phi`` maps the remaining conjugates back to ``R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from . import steinberg, tower
from .errors import NonzeroInnerProductError, NotInIdealError, RewriteFailure
from .forms import (
    GroupKind,
    Matrix,
    Vector,
    check_size,
    inner,
    m_update,
)
from .rings import (
    Excision,
    Ideal,
    IdealElem,
    Localized,
    Polynomial,
    Ring,
    RingElem,
    decide_membership,
    substitute,
)
from .words import (
    Absolute,
    Conjugate,
    Relative,
    Word,
    _ops,
    absolute_length,
    conjugate_factor,
    eval_ops,
    eval_word,
    expand,
    merge_adjacent,
    project_word,
)


@dataclass(frozen=True, eq=False)
class RewriteCertificate:
    operation: str
    input: dict
    word: Word
    target: Matrix
    checks: tuple
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


@dataclass(frozen=True, eq=False)
class DilationResult:
    b: RingElem
    l: int
    d: int
    word: Word
    checks: tuple


def _certify(operation: str, info: dict, word: Word, target: Matrix, checks: list,
             data: dict | None = None) -> RewriteCertificate:
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise RewriteFailure(f"{operation}: self-check failed ({', '.join(failed)})")
    return RewriteCertificate(operation, info, word, target, tuple(checks), data or {})


# ---------------------------------------------------------------------------
# Witness bookkeeping for conjugate-shaped factors
# ---------------------------------------------------------------------------


def factor_witnesses(kind: GroupKind, n: int, g, e: int) -> list[list[IdealElem]]:
    """Witnesses for ``factor - I``, read off ``C (h N) C^-1``."""
    if isinstance(g, Absolute):
        if g.witness is None:
            raise NotInIdealError(f"ge_{g.i}{g.j} carries no ideal witness")
        cops, (i, j), h = [], (g.i, g.j), g.witness
    elif isinstance(g, Relative):
        cops, (i, j), h = [(g.i, g.j, g.f)], (g.j, g.i), g.h
    else:
        cops = []
        for sub, se in g.conjugator:
            cops.extend(_ops(sub, se))
        (i, j), h = (g.i, g.j), g.h
    ring = h.ring
    if e == -1:
        h = -h
    C = eval_ops(ring, kind, n, cops)
    Ci = C.inverse
    pat = steinberg.pattern(kind, i, j)
    grid = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = ring.zero
            for r, c, k in pat:
                x = C[a, r - 1]
                y = Ci[c - 1, b]
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y * k
            row.append(h.scale(acc))
        grid.append(row)
    return grid


def _relative_congruence(w: Word, ideal: Ideal) -> bool:
    for g, e in w.factors:
        try:
            grid = factor_witnesses(w.kind, w.n, g, e)
        except NotInIdealError:
            return False
        M = eval_ops(w.ring, w.kind, w.n, _ops(g, e), with_inverse=False)
        for a in range(w.n):
            for b in range(w.n):
                wab = grid[a][b]
                if wab.ideal != ideal:
                    return False
                target = M[a, b] - 1 if a == b else M[a, b]
                if wab.value != target:
                    return False
    return True


def _ideal_params(w: Word):
    for g, e in w.factors:
        if isinstance(g, Absolute):
            yield g.witness, g.z
        else:
            yield g.h, g.h.value


def _witnessing(w: Word, ideal: Ideal) -> bool:
    return all(h is not None and h.ideal == ideal and h.value == z for h, z in _ideal_params(w))


def _all_params(w: Word):
    """Every parameter payload appearing anywhere in the word, with witnesses."""
    def walk(g):
        if isinstance(g, Absolute):
            yield g.z
            if g.witness is not None:
                yield from g.witness.coeffs
        elif isinstance(g, Relative):
            yield g.f
            yield g.h.value
            yield from g.h.coeffs
        else:
            for sub, _ in g.conjugator:
                yield from walk(sub)
            yield g.h.value
            yield from g.h.coeffs
    for g, _ in w.factors:
        yield from walk(g)


def _divisible(w: Word, var: str, m: int) -> bool:
    R = w.ring
    return all(R.var_valuation(x.v, var) >= m for x in _all_params(w))


# ---------------------------------------------------------------------------
# Rank-one updates
# ---------------------------------------------------------------------------


def _combine(ring: Ring, coeffs: Sequence[RingElem], ws: Sequence[IdealElem]) -> IdealElem:
    acc = None
    for c, w in zip(coeffs, ws):
        if c.is_zero():
            continue
        t = w.scale(c)
        acc = t if acc is None else acc + t
    return acc if acc is not None else ws[0].ideal.zero_elem()


def _rank_one_inners(kind: GroupKind, E: Matrix, w: Vector) -> list[tuple[int, int, IdealElem]]:
    """Inner generators ``(1, j, w1_j)`` with ``I + M(e1, w1) = prod ge_1j(...)``."""
    n = E.n
    R = E.ring
    ws = w.witnesses
    if kind is GroupKind.LINEAR:
        w1 = [_combine(R, [E[l, k] for l in range(n)], ws) for k in range(n)]
        return [(1, j + 1, w1[j]) for j in range(1, n) if not w1[j].value.is_zero()]
    Einv = E.inverse
    w1 = [_combine(R, [Einv[k, l] for l in range(n)], ws) for k in range(n)]
    sign = -1 if kind is GroupKind.SYMPLECTIC else 1
    t = [(w1[k + 1].scale(sign) if k % 2 == 0 else w1[k - 1]) for k in range(n)]
    z = {j + 1: t[j] for j in range(2, n)}
    # (1,2) entry: target minus the cross terms of prod_{j>=3} ge_1j(z_j)
    target12 = t[1] + w1[0] if kind is GroupKind.SYMPLECTIC else t[1] - w1[0]
    cross = None
    for i in range(2, n // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        term = z[a].scale(z[b].value)
        if kind is GroupKind.ORTHOGONAL:
            term = -term
        cross = term if cross is None else cross + term
    c = target12 if cross is None else target12 - cross
    out = []
    if not c.value.is_zero():
        if kind is GroupKind.ORTHOGONAL:
            raise NonzeroInnerProductError("w is not isotropic")
        out.append((1, 2, c))
    out.extend((1, j, z[j]) for j in range(3, n + 1) if not z[j].value.is_zero())
    return out


def _rank_one_word(eps: Word, w: Vector) -> Word:
    kind = eps.kind
    E = eval_word(eps)
    factors = []
    for i, j, h in _rank_one_inners(kind, E, w):
        factors.append((conjugate_factor(kind, eps.factors, i, j, h), 1))
    return eps.with_factors(factors)


def _check_rank_one_input(eps: Word, w: Vector) -> Vector:
    if w.witnesses is None:
        raise NotInIdealError("every entry of w needs an ideal witness")
    if w.ring != eps.ring or len(w) != eps.n:
        raise ValueError("w does not match the word's ring or size")
    v = eval_word(eps, with_inverse=False).column(1)
    if not inner(v, w, eps.kind).is_zero():
        raise NonzeroInnerProductError("<v, w> is not zero")
    if eps.kind is GroupKind.ORTHOGONAL and not inner(w, w, eps.kind).is_zero():
        raise NonzeroInnerProductError("w is not isotropic")
    return v


def _lift_any(ring: Ring, g, e: int):
    """Lift into a tower: witnessed parameters go to ``0 + I``, the rest to ``R + 0``."""
    if isinstance(g, Absolute):
        if g.witness is not None:
            h = tower.lift_ideal_elem_witnessed(ring, g.witness)
            return (Absolute(g.i, g.j, h.value, h), e)
        return (Absolute(g.i, g.j, tower.lift_elem(ring, g.z)), e)
    if isinstance(g, Relative):
        return (Relative(g.i, g.j, tower.lift_elem(ring, g.f),
                         tower.lift_ideal_elem_witnessed(ring, g.h)), e)
    return (Conjugate(tuple(_lift_any(ring, s, se) for s, se in g.conjugator), g.i, g.j,
                      tower.lift_ideal_elem_witnessed(ring, g.h)), e)


def lift_into(w: Word, ring: Ring) -> Word:
    return Word(ring, w.kind, w.n, tuple(_lift_any(ring, g, e) for g, e in w.factors))


def factor_rank_one(eps: Word, w: Vector) -> RewriteCertificate:
    """``I + M(v, w)`` with ``v = eps e_1`` as a product of conjugates ``eps ge_1j(.) eps^-1``."""
    if eps.kind is GroupKind.LINEAR:
        check_size(eps.kind, eps.n)
    v = _check_rank_one_input(eps, w)
    ideal = w.witnesses[0].ideal if w.witnesses else None
    direct = _rank_one_word(eps, w)
    target = Matrix.identity(eps.ring, eps.n) + m_update(v, w, eps.kind)

    # second route through R + I
    E = Excision(eps.ring, ideal)
    eps_l = lift_into(eps, E)
    w_l = Vector.from_witnesses([tower.lift_ideal_elem_witnessed(E, x) for x in w.witnesses]) \
        if len(w) else Vector(E, [])
    via = project_word(_rank_one_word(eps_l, w_l))

    got = eval_word(direct, with_inverse=False)
    checks = [
        ("evaluation-equality", got == target),
        ("relative-congruence", _relative_congruence(direct, ideal)),
        ("ideal-witnessing", _witnessing(direct, ideal)),
        ("excision-route-agreement", eval_word(via, with_inverse=False) == got),
    ]
    return _certify("factor", {"kind": eps.kind.value, "n": eps.n, "epsilon_length": len(eps)},
                    direct, target, checks, {"route_lengths": (len(direct), len(via))})


# ---------------------------------------------------------------------------
# Conjugation rewriting inside a tower over R + I
# ---------------------------------------------------------------------------


def _coef(W: Ring, k: int) -> RingElem:
    return RingElem(W, W.from_int(k))


def _conj_one(kind, n, W, var, a, Z, b, P, m, allow_opposed=True):
    """``ge_a(Z) ge_b(P) ge_a(-Z)`` as a list of ``(root, param)``."""
    if P.is_zero():
        return []
    if Z.is_zero() or a == b:
        return [(b, P)]
    if steinberg.opposite(kind, a) != b:
        out = []
        for c, k, p, q in steinberg.relation(kind, a, b):
            t = _coef(W, k) * Z ** p * P ** q
            if not t.is_zero():
                out.append((c, t))
        out.append((b, P))
        return out
    if not allow_opposed:
        raise RewriteFailure("nested opposed conjugation")
    if W.var_valuation(P.v, var) < 2 * m:
        raise RewriteFailure(f"parameter not divisible by {var}^{2 * m}")
    x, y = steinberg.split_root(kind, n, b)
    terms = steinberg.relation(kind, x, y)
    hit = [k for c, k, p, q in terms if c == b and p == 1 and q == 1]
    if not hit:
        raise RewriteFailure(f"relation for {x}, {y} lost its {b} term")
    kb = hit[0]
    inv = W.divide_exact(W.one_p, W.from_int(kb))
    if inv is None:
        raise RewriteFailure(f"{kb} is not invertible in {W!r}")
    u = RingElem(W, W.var_power(var, m))
    v = RingElem(W, W.divide_var_power(P.v, var, m)) * RingElem(W, inv)
    pieces = [(x, u), (y, v), (x, -u), (y, -v)]
    for c, k, p, q in terms:
        if c == b and p == 1 and q == 1:
            continue
        pieces.append((c, -(_coef(W, k) * u ** p * v ** q)))
    out = []
    for c, Q in pieces:
        out.extend(_conj_one(kind, n, W, var, a, Z, c, Q, m, allow_opposed=False))
    return out


def _peel(kind, n, W, var, eps_ops, inner, m):
    """Conjugate ``inner`` by ``eps``, innermost factor first, halving the budget."""
    L = list(inner)
    for t in reversed(range(len(eps_ops))):
        i, j, z = eps_ops[t]
        a, sign = steinberg.canonical(kind, i, j)
        Z = z if sign == 1 else -z
        mt = m * 2 ** t
        nxt = []
        for b, P in L:
            nxt.extend(_conj_one(kind, n, W, var, a, Z, b, P, mt))
        L = _merge_roots(nxt)
    return L


def _merge_roots(L):
    """Fuse neighbours with the same root: ``ge_a(x) ge_a(y) = ge_a(x + y)``."""
    out = []
    for b, P in L:
        if out and out[-1][0] == b:
            P = out.pop()[1] + P
        if not P.is_zero():
            out.append((b, P))
    return out


def relativize(w: Word) -> Word:
    """Turn a word over a tower with trivial ``R``-part into conjugates over ``R``.

    ``ge(r + i) = ge(r + 0) ge(0 + i)``, then
    ``prod a_t b_t = prod (r_t b_t r_t^-1) prod a_t`` and ``prod a_t = I``.
    """
    P = tower.project_ring(w.ring)
    kind, n = w.kind, w.n
    prefix = Word(P, kind, n, ())
    out = []
    for i, j, z in expand(w):
        r = tower.psi_part(z)
        if not r.is_zero():
            prefix = merge_adjacent(prefix.with_factors(
                prefix.factors + ((Absolute(i, j, tower.phi_elem(r)), 1),)))
        ip = tower.ideal_part(z)
        if not ip.is_zero():
            h = tower.ideal_witness(z)
            out.append((conjugate_factor(kind, prefix.factors, i, j, h), 1))
    if not eval_word(prefix, with_inverse=False).is_identity():
        raise RewriteFailure("R-parts do not cancel; the word is not relative")
    return Word(P, kind, n, tuple(out))


def _rewitness(h: IdealElem, var: str, e: int) -> IdealElem:
    """Witness whose coefficients are all divisible by ``var^e``."""
    R = h.ring
    if all(R.var_valuation(c.v, var) >= e for c in h.coeffs):
        return h
    val = h.value
    if R.var_valuation(val.v, var) < e:
        raise RewriteFailure(f"parameter is not divisible by {var}^{e}")
    q = RingElem(R, R.divide_var_power(val.v, var, e))
    w = decide_membership(q, h.ideal)
    if not isinstance(w, IdealElem):
        raise RewriteFailure(f"cannot witness parameter / {var}^{e} in the ideal")
    Xe = RingElem(R, R.var_power(var, e))
    return IdealElem(h.ideal, tuple(Xe * c for c in w.coeffs))


def word_conjugate_rewrite(eps: Word, i: int, j: int, param: IdealElem, m: int,
                           var: str = "X") -> RewriteCertificate:
    """``eps ge_ij(param) eps^-1`` with every parameter divisible by ``var^m``.

    ``eps`` has ``r`` elementary factors (after expansion) and ``param`` must be
    divisible by ``var^(2^r m)``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    R = eps.ring
    kind, n = eps.kind, eps.n
    check_size(kind, n, strict=True)
    steinberg.validate(kind, n, i, j)
    if param.ring != R:
        raise ValueError("parameter must live over the word's ring")
    if not R.has_var(var):
        raise ValueError(f"variable {var} does not occur in {R!r}")
    ideal = param.ideal
    ops = expand(eps)
    r = len(ops)
    need = 2 ** r * m
    param = _rewitness(param, var, need)

    W = Excision(R, ideal)
    eps_ops = [(a, b, tower.lift_elem(W, z)) for a, b, z in ops]
    root, sign = steinberg.canonical(kind, i, j)
    P = tower.lift_ideal_elem(W, param if sign == 1 else -param)
    L = _peel(kind, n, W, var, eps_ops, [(root, P)], m)
    lifted = Word(W, kind, n, tuple((Absolute(c[0], c[1], z), 1) for c, z in L))
    out = relativize(lifted)

    target = eval_ops(R, kind, n, ops + [(i, j, param.value)] +
                      [(a, b, -z) for a, b, z in reversed(ops)], with_inverse=False)
    checks = [
        ("evaluation-equality", eval_word(out, with_inverse=False) == target),
        ("relative-congruence", _relative_congruence(out, ideal)),
        ("divisibility-by-X^m", _divisible(out, var, m)),
        ("ideal-witnessing", _witnessing(out, ideal)),
    ]
    info = {"kind": kind.value, "n": n, "i": i, "j": j, "m": m, "r": r, "var": var}
    return _certify("rewrite", info, out, target, checks,
                    {"r": r, "m": m, "absolute_length": len(L)})


def conjugate_rewrite(kind: GroupKind | str, n: int, p: int, q: int, Z: RingElem,
                      i: int, j: int, param: IdealElem, m: int, var: str = "X") -> RewriteCertificate:
    """``ge_pq(Z) ge_ij(param) ge_pq(-Z)`` with parameters divisible by ``var^m``."""
    kind = GroupKind.parse(kind)
    R = param.ring
    eps = Word(R, kind, n, ((Absolute(p, q, R(Z)), 1),))
    return word_conjugate_rewrite(eps, i, j, param, m, var)


# ---------------------------------------------------------------------------
# Monomialization
# ---------------------------------------------------------------------------


def monomialize(eps: Word, w: Vector, d: int | None = None, var: str = "X") -> RewriteCertificate:
    """``I + X^d M(v, w)`` as a product of factors with parameters ``X h(X)``.

    ``d`` defaults to ``2^r`` with ``r`` the elementary length of ``eps``;
    any larger ``d`` is accepted.
    """
    R = eps.ring
    kind, n = eps.kind, eps.n
    if R.has_var(var):
        raise ValueError(f"{var} already occurs in {R!r}")
    v = _check_rank_one_input(eps, w)
    ideal = w.witnesses[0].ideal
    r = absolute_length(eps)
    bound = 2 ** r
    if d is None:
        d = bound
    if d < bound:
        raise ValueError(f"d must be at least 2^{r} = {bound}")

    RX = Polynomial(R, [var])
    IX = ideal.extend(RX)
    Xd = RingElem(RX, RX.var_power(var, d))
    wX = Vector.from_witnesses([IdealElem(IX, tuple(Xd * RX(c) for c in x.coeffs))
                                for x in w.witnesses])
    epsX = _embed_word(eps, RX)
    inners = _rank_one_inners(kind, eval_word(epsX), wX)

    T = Polynomial(Excision(R, ideal), [var])
    eps_T = lift_into(epsX, T)
    eps_ops = expand(eps_T)
    L = []
    for i, j, h in inners:
        if r == 0:
            L.append((steinberg.canonical(kind, i, j)[0],
                      tower.lift_ideal_elem(T, h if steinberg.canonical(kind, i, j)[1] == 1 else -h)))
            continue
        root, sign = steinberg.canonical(kind, i, j)
        P = tower.lift_ideal_elem(T, h if sign == 1 else -h)
        L.extend(_peel(kind, n, T, var, eps_ops, [(root, P)], 1))
    lifted = Word(T, kind, n, tuple((Absolute(c[0], c[1], z), 1) for c, z in L))
    out = relativize(lifted)

    vX = Vector(RX, [RX(x) for x in v.entries])
    target = Matrix.identity(RX, n) + m_update(vX, wX, kind)
    checks = [
        ("evaluation-equality", eval_word(out, with_inverse=False) == target),
        ("relative-congruence", _relative_congruence(out, IX)),
        ("divisibility-by-X^m", _divisible(out, var, 1)),
        ("ideal-witnessing", _witnessing(out, IX)),
    ]
    info = {"kind": kind.value, "n": n, "d": d, "r": r, "var": var}
    return _certify("monomialize", info, out, target, checks, {"d": d, "r": r})


def _embed_word(w: Word, ring: Ring) -> Word:
    def emb(g):
        if isinstance(g, Absolute):
            wit = None if g.witness is None else _embed_ie(g.witness, ring)
            return Absolute(g.i, g.j, ring(g.z), wit)
        if isinstance(g, Relative):
            return Relative(g.i, g.j, ring(g.f), _embed_ie(g.h, ring))
        return Conjugate(tuple((emb(s), se) for s, se in g.conjugator), g.i, g.j,
                         _embed_ie(g.h, ring))
    return Word(ring, w.kind, w.n, tuple((emb(g), e) for g, e in w.factors))


def _embed_ie(h: IdealElem, ring: Ring) -> IdealElem:
    return IdealElem(h.ideal.extend(ring), tuple(ring(c) for c in h.coeffs))


# ---------------------------------------------------------------------------
# Denominators and dilation
# ---------------------------------------------------------------------------


def _localized_poly(ring: Ring) -> tuple[Polynomial, Localized]:
    if not isinstance(ring, Polynomial) or not isinstance(ring.base, Localized):
        raise ValueError("expected a polynomial ring over a localized ring")
    return ring, ring.base


def _needed_l(ring: Polynomial, x: RingElem, var: str, extra: int) -> int:
    """Smallest ``l`` with ``x(s^l var)`` free of denominators (plus ``s^extra``)."""
    loc = ring.base
    k = ring.vars.index(var)
    need = 0
    for e, c in x.v.items():
        den = loc.denominator_exponent(c)
        if e[k] == 0:
            if den > 0:
                raise ValueError("a term without the scaling variable has a denominator")
            continue
        if den + extra > 0:
            need = max(need, math.ceil((den + extra) / e[k]))
    return need


def _clear(ring: Polynomial, target: Polynomial, x: RingElem, var: str, l: int) -> RingElem:
    """``x(s^l var)`` with the denominators cleared, over ``target``."""
    loc = ring.base
    base = loc.base
    k = ring.vars.index(var)
    out = {}
    for e, (num, den) in x.v.items():
        shift = l * e[k] - den
        if shift < 0:
            raise ValueError("scaling exponent too small")
        c = base.mul(num, loc.spow(shift))
        if not base.is_zero(c):
            out[e] = c
    return RingElem(target, out)


def clear_denominators(w: Word, var: str = "X", k: int | None = None):
    """Substitute ``var -> s^l var`` with the smallest ``l`` clearing every denominator.

    Returns ``(word over R[vars], l)``.  Witness coefficients of relative
    parameters are cleared too, so they count towards ``l``.
    """
    ring, loc = _localized_poly(w.ring)
    if not loc.base.is_domain and k is None:
        raise ValueError("base ring is not a domain; supply the injectivity exponent k")
    extra = 0 if k is None else k
    if var not in ring.vars:
        raise ValueError(f"{var} is not a variable of {ring!r}")
    target = Polynomial(loc.base, ring.vars)

    params = []

    def walk(g):
        if isinstance(g, Absolute):
            params.append(g.z)
            if g.witness is not None:
                params.extend(g.witness.coeffs)
        elif isinstance(g, Relative):
            params.append(g.f)
            params.extend(g.h.coeffs)
        else:
            for s, _ in g.conjugator:
                walk(s)
            params.extend(g.h.coeffs)

    for g, _ in w.factors:
        walk(g)
    l = max((_needed_l(ring, x, var, extra) for x in params), default=0)
    ideal_cache: dict = {}

    def tideal(h: IdealElem) -> Ideal:
        key = h.ideal
        if key not in ideal_cache:
            gens = []
            for gg in h.ideal.generators:
                if not ring.is_constant(gg.v) or loc.denominator_exponent(ring.constant_coeff(gg.v)):
                    raise ValueError("ideal generators must be constants of the base ring")
                gens.append(RingElem(target, target.const(loc.numerator(ring.constant_coeff(gg.v)).v)))
            ideal_cache[key] = Ideal(target, gens)
        return ideal_cache[key]

    def cl(x):
        return _clear(ring, target, x, var, l)

    def cie(h: IdealElem) -> IdealElem:
        return IdealElem(tideal(h), tuple(cl(c) for c in h.coeffs))

    def conv(g):
        if isinstance(g, Absolute):
            return Absolute(g.i, g.j, cl(g.z), None if g.witness is None else cie(g.witness))
        if isinstance(g, Relative):
            return Relative(g.i, g.j, cl(g.f), cie(g.h))
        return Conjugate(tuple((conv(s), se) for s, se in g.conjugator), g.i, g.j, cie(g.h))

    lifted = Word(target, w.kind, w.n, tuple((conv(g), e) for g, e in w.factors))
    return lifted, l


def localize_word(w: Word, ring: Ring) -> Word:
    """Image of a word over ``R[vars]`` in ``R_s[vars]``."""
    return _embed_word(w, ring)


def _substitute_word_params(w: Word, fn, target: Ring) -> Word:
    def conv_ie(h):
        return IdealElem(h.ideal.extend(target) if h.ideal.ring != target else h.ideal,
                         tuple(fn(c) for c in h.coeffs))

    def conv(g):
        if isinstance(g, Absolute):
            return Absolute(g.i, g.j, fn(g.z), None if g.witness is None else conv_ie(g.witness))
        if isinstance(g, Relative):
            return Relative(g.i, g.j, fn(g.f), conv_ie(g.h))
        return Conjugate(tuple((conv(s), se) for s, se in g.conjugator), g.i, g.j, conv_ie(g.h))
    return Word(target, w.kind, w.n, tuple((conv(g), e) for g, e in w.factors))


def _inner_of(g, e):
    """``(conjugator factors, i, j, h)`` of a relative factor."""
    if isinstance(g, Absolute):
        if g.witness is None:
            raise NotInIdealError(f"ge_{g.i}{g.j} carries no ideal witness")
        h = g.witness
        return (), g.i, g.j, (h if e == 1 else -h)
    if isinstance(g, Relative):
        return ((Absolute(g.i, g.j, g.f), 1),), g.j, g.i, (g.h if e == 1 else -g.h)
    return g.conjugator, g.i, g.j, (g.h if e == 1 else -g.h)


def dilate(w: Word, d: int | None = None, var: str = "X", tvar: str = "T") -> DilationResult:
    """From ``alpha(X)`` over ``R_s[X]`` to a word over ``R[X]`` for ``alpha(bX)``, ``b = s^(l d)``."""
    ring, loc = _localized_poly(w.ring)
    if ring.vars != (var,):
        raise ValueError(f"expected the ring R_s[{var}]")
    B = loc.base
    if not B.is_domain:
        raise ValueError("dilation needs a domain as base ring")
    kind, n = w.kind, w.n
    check_size(kind, n, strict=True)
    s = loc.s

    parts = [_inner_of(g, e) for g, e in w.factors]
    ideal = None
    for _, _, _, h in parts:
        ideal = h.ideal if ideal is None else ideal
        if h.ideal != ideal:
            raise ValueError("all factors must be witnessed in one ideal")
        if ring.var_valuation(h.value.v, var) < 1:
            raise RewriteFailure(f"inner parameter is not divisible by {var}")
    rs = [absolute_length(Word(ring, kind, n, c)) for c, _, _, _ in parts]
    bound = 2 ** max(rs, default=0)
    if d is None:
        d = bound
    if d < bound:
        raise ValueError(f"d must be at least {bound}")

    # base ideal I of R, read from the constant generators of the extended ideal
    base_ideal = _base_ideal(ideal, ring, loc) if ideal is not None else Ideal(B, [0])
    E = Excision(B, base_ideal)
    LE = Localized(E, E.pair(s))
    TW = Polynomial(LE, [var, tvar])
    PT = tower.project_ring(TW)                # R_s[X, T]
    XTd = RingElem(PT, PT.var_power(var, 1)) * RingElem(PT, PT.var_power(tvar, d))

    def sub(x: RingElem) -> RingElem:
        return substitute(x, {var: XTd}, PT)

    lifted = []
    for (conj, i, j, h), rt in zip(parts, rs):
        cw = Word(ring, kind, n, conj)
        c_ops = [(a, b, tower.lift_elem(TW, sub(z))) for a, b, z in expand(cw)]
        hT = IdealElem(tower.projected_ideal(TW), tuple(sub(c) for c in h.coeffs))
        hT = _rewitness(hT, tvar, d)
        root, sign = steinberg.canonical(kind, i, j)
        P = tower.lift_ideal_elem(TW, hT if sign == 1 else -hT)
        lifted.extend(_peel(kind, n, TW, tvar, c_ops, [(root, P)], 1))

    step_b = all(TW.var_valuation(z.v, tvar) >= 1 for _, z in lifted)
    if not step_b:
        raise RewriteFailure(f"a rewritten parameter is not divisible by {tvar}")

    # l: the largest denominator exponent
    l = 0
    for _, z in lifted:
        for c in z.v.values():
            l = max(l, c[1])
    # clear: T -> s^l T, then numerators over (R + I)[X, T], then T = 1
    EX = Polynomial(E, [var])
    tk = TW.vars.index(tvar)
    cleared = []
    for root, z in lifted:
        out = {}
        for e, (num, den) in z.v.items():
            shift = l * e[tk] - den
            if shift < 0:
                raise RewriteFailure("denominator survives the scaling")
            c = E.mul(num, _spow(E, E.pair(s).v, shift))
            ne = (e[0],)
            if ne in out:
                c = E.add(out[ne], c)
            if E.is_zero(c):
                out.pop(ne, None)
            else:
                out[ne] = c
        cleared.append((root, RingElem(EX, out)))
    out_word = relativize(Word(EX, kind, n, tuple((Absolute(c[0], c[1], z), 1) for c, z in cleared)))

    RX = out_word.ring
    b = RingElem(B, B.power(s.v, l * d))
    # checks: word(0) = I, and localization equals alpha(bX)
    zero_word = _substitute_word_params(out_word, lambda x: substitute(x, {var: 0}), RX)
    bX = RingElem(ring, ring.var_power(var, 1)) * ring(b)
    target = eval_word(Word(ring, kind, n, w.factors), with_inverse=False)
    target = target.map(lambda x: substitute(x, {var: bX}), ring)
    local = _substitute_word_params(out_word, lambda x: ring(x), ring)
    checks = (
        ("divisibility-by-T", step_b),
        ("word-at-zero-is-identity", eval_word(zero_word, with_inverse=False).is_identity()),
        ("localized-evaluation-equality", eval_word(local, with_inverse=False) == target),
        ("relative-congruence", _relative_congruence(out_word, base_ideal.extend(RX))),
    )
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise RewriteFailure(f"dilate: self-check failed ({', '.join(failed)})")
    return DilationResult(b, l, d, out_word, checks)


def _spow(E: Ring, s, k: int):
    return E.power(s, k)


def _base_ideal(ideal: Ideal, ring: Polynomial, loc: Localized) -> Ideal:
    gens = []
    for g in ideal.generators:
        if not ring.is_constant(g.v):
            raise ValueError("ideal generators must be constants of the base ring")
        c = ring.constant_coeff(g.v)
        if loc.denominator_exponent(c):
            raise ValueError("ideal generators must lie in the base ring")
        gens.append(loc.numerator(c))
    return Ideal(loc.base, gens)
