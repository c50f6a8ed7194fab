"""Rings built on top of ``R + I`` by adjoining variables and localizing.

A *tower* is an :class:`Excision` ring, possibly wrapped any number of times in
:class:`Polynomial` or :class:`Localized`.  Everything here works on payloads
recursively: ``phi`` (``r + i -> r + i``), the splitting of an element into
its ``R``-part and ``I``-part, the witness of the ``I``-part over the projected
ring, and the lift of an element of the projected ring back as ``(r + 0)``.
"""

from __future__ import annotations

from .errors import RingMismatchError
from .rings import Excision, Ideal, IdealElem, Localized, Polynomial, Ring, RingElem


def is_tower(ring: Ring) -> bool:
    while isinstance(ring, (Polynomial, Localized)):
        ring = ring.base
    return isinstance(ring, Excision)


def excision_of(ring: Ring) -> Excision:
    while isinstance(ring, (Polynomial, Localized)):
        ring = ring.base
    if not isinstance(ring, Excision):
        raise RingMismatchError(f"{ring!r} is not built on an excision ring")
    return ring


_PROJ: dict = {}


def project_ring(ring: Ring) -> Ring:
    """The ring obtained by replacing ``R + I`` with ``R``."""
    hit = _PROJ.get(ring)
    if hit is not None:
        return hit
    if isinstance(ring, Excision):
        out = ring.base
    elif isinstance(ring, Polynomial):
        out = Polynomial(project_ring(ring.base), ring.vars)
    elif isinstance(ring, Localized):
        out = Localized(project_ring(ring.base), phi_elem(ring.s))
    else:
        raise RingMismatchError(f"{ring!r} is not built on an excision ring")
    _PROJ[ring] = out
    return out


def projected_ideal(ring: Ring) -> Ideal:
    """The ideal ``I`` extended to :func:`project_ring`."""
    return excision_of(ring).ideal.extend(project_ring(ring))


def lift_ideal(ring: Ring) -> Ideal:
    """``0 + I`` as an ideal of the tower, one generator per generator of ``I``."""
    E = excision_of(ring)
    gens = []
    for k in range(E.k):
        g = E.pair(0, E.ideal.gen_elem(k))
        gens.append(ring(g) if ring != E else g)
    return Ideal(ring, gens)


# -- payload recursion -----------------------------------------------------


def _phi_p(ring: Ring, a):
    if isinstance(ring, Excision):
        return ring.phi(a)
    target = project_ring(ring)
    if isinstance(ring, Polynomial):
        out = {}
        for e, c in a.items():
            v = _phi_p(ring.base, c)
            if not target.base.is_zero(v):
                out[e] = v
        return out
    if isinstance(ring, Localized):
        return target.normalize(_phi_p(ring.base, a[0]), a[1])
    raise RingMismatchError(f"{ring!r} is not built on an excision ring")


def _split_p(ring: Ring, a):
    if isinstance(ring, Excision):
        z = ring.base.zero_p
        return (a[0], (z,) * ring.k, z), (z, a[1], a[2])
    if isinstance(ring, Polynomial):
        rp, ip = {}, {}
        B = ring.base
        for e, c in a.items():
            x, y = _split_p(B, c)
            if not B.is_zero(x):
                rp[e] = x
            if not B.is_zero(y):
                ip[e] = y
        return rp, ip
    if isinstance(ring, Localized):
        x, y = _split_p(ring.base, a[0])
        return (x, a[1]), (y, a[1])
    raise RingMismatchError(f"{ring!r} is not built on an excision ring")


def _witness_p(ring: Ring, a) -> list:
    """Coefficient payloads (over the projected ring) of the ``I``-part."""
    if isinstance(ring, Excision):
        return list(a[1])
    target = project_ring(ring)
    k = excision_of(ring).k
    if isinstance(ring, Polynomial):
        outs = [dict() for _ in range(k)]
        for e, c in a.items():
            for idx, w in enumerate(_witness_p(ring.base, c)):
                if not target.base.is_zero(w):
                    outs[idx][e] = w
        return outs
    if isinstance(ring, Localized):
        return [target.normalize(w, a[1]) for w in _witness_p(ring.base, a[0])]
    raise RingMismatchError(f"{ring!r} is not built on an excision ring")


def _lift_p(ring: Ring, x):
    """Payload of the projected ring -> payload of the tower with zero ``I``-part."""
    if isinstance(ring, Excision):
        z = ring.base.zero_p
        return (x, (z,) * ring.k, z)
    if isinstance(ring, Polynomial):
        return {e: _lift_p(ring.base, c) for e, c in x.items()}
    if isinstance(ring, Localized):
        return (_lift_p(ring.base, x[0]), x[1])
    raise RingMismatchError(f"{ring!r} is not built on an excision ring")


# -- element level -----------------------------------------------------------


def phi_elem(x: RingElem) -> RingElem:
    return RingElem(project_ring(x.ring), _phi_p(x.ring, x.v))


def psi_part(x: RingElem) -> RingElem:
    """The ``R``-part ``r + 0``, as an element of the tower."""
    return RingElem(x.ring, _split_p(x.ring, x.v)[0])


def ideal_part(x: RingElem) -> RingElem:
    """The ``I``-part ``0 + i``, as an element of the tower."""
    return RingElem(x.ring, _split_p(x.ring, x.v)[1])


def ideal_witness(x: RingElem) -> IdealElem:
    """The ``I``-part of ``x`` as a witnessed element of ``I`` over the projected ring."""
    P = project_ring(x.ring)
    ideal = projected_ideal(x.ring)
    return IdealElem(ideal, tuple(RingElem(P, w) for w in _witness_p(x.ring, x.v)))


def lift_elem(ring: Ring, x: RingElem) -> RingElem:
    """``x + 0`` in the tower ``ring``."""
    P = project_ring(ring)
    return RingElem(ring, _lift_p(ring, P(x).v))


def lift_ideal_elem(ring: Ring, w: IdealElem) -> RingElem:
    """``0 + w``: the witnessed element pushed into the tower."""
    P = project_ring(ring)
    ideal = projected_ideal(ring)
    if w.ideal != ideal:
        w = IdealElem(ideal, tuple(P(c) for c in w.coeffs))
    J = lift_ideal(ring)
    acc = ring.zero
    for c, g in zip(w.coeffs, J.generators):
        acc = acc + lift_elem(ring, c) * g
    return acc


def lift_ideal_elem_witnessed(ring: Ring, w: IdealElem) -> IdealElem:
    """Like :func:`lift_ideal_elem` but keep the witness over ``0 + I``."""
    P = project_ring(ring)
    J = lift_ideal(ring)
    return IdealElem(J, tuple(lift_elem(ring, P(c)) for c in w.coeffs))


def project_ideal_elem(w: IdealElem) -> IdealElem:
    """Inverse of :func:`lift_ideal_elem_witnessed` (coefficients through ``phi``)."""
    ring = w.ring
    return IdealElem(projected_ideal(ring), tuple(phi_elem(c) for c in w.coeffs))
