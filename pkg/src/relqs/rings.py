"""Exact commutative rings.

Supported: ``ZZ``, ``ZZ/n``, ``QQ``, multivariate polynomial rings over any of
these, the principal localization ``R_s`` and the excision ring ``R + I`` with
product ``(r + j)(s + i) = rs + (sj + ri + ij)``.

Rings work on raw *payloads* (ints, Fractions, dicts, tuples); :class:`RingElem`
wraps a payload with its ring and supplies operators. Payloads are never
mutated after construction.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Sequence

from .errors import NotInIdealError, RingMismatchError, UndecidableError

INF = float("inf")


def _bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """Return ``g, coeffs`` with ``g = gcd(values) = sum(c*v)`` and ``g >= 0``."""
    g, coeffs = 0, [0] * len(values)
    for idx, v in enumerate(values):
        # extended gcd of (g, v)
        old_r, r = g, v
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs]
        coeffs[idx] = old_t
        g = old_r
    return g, coeffs


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Base class. Subclasses implement the payload-level operations."""

    is_field = False
    is_domain = False

    # -- identity -----------------------------------------------------------
    def key(self) -> tuple:
        raise NotImplementedError

    def _cached_key(self) -> tuple:
        k = self.__dict__.get("_key")
        if k is None:
            k = self.__dict__["_key"] = self.key()
        return k

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Ring) and self._cached_key() == other._cached_key()

    def __hash__(self) -> int:
        return hash(self._cached_key())

    # -- payload arithmetic ----------------------------------------------------
    zero_p: Any = 0
    one_p: Any = 1

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero_p)

    def from_int(self, n: int):
        raise NotImplementedError

    def canon(self, a):
        """Hashable canonical form (used for hashing and sorting)."""
        return a

    def power(self, a, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = self.one_p, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def divide_exact(self, a, b):
        """Return some ``q`` with ``b*q == a``, or ``None`` if none is found."""
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inverse(self, a):
        q = self.divide_exact(self.one_p, a)
        if q is None:
            raise ZeroDivisionError(f"{self.format(a)} is not a unit in {self}")
        return q

    def random_p(self, rng: random.Random):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    # -- polynomial-variable helpers (overridden where variables live) --------
    def var_valuation(self, a, var: str) -> float:
        return INF if self.is_zero(a) else 0

    def divide_var_power(self, a, var: str, m: int):
        if m == 0 or self.is_zero(a):
            return a
        raise ValueError(f"variable {var} does not occur in {self}")

    def var_power(self, var: str, m: int):
        if m == 0:
            return self.one_p
        raise ValueError(f"variable {var} does not occur in {self}")

    def has_var(self, var: str) -> bool:
        return False

    # -- coercion -----------------------------------------------------------
    def embed(self, x: "RingElem"):
        raise RingMismatchError(f"cannot coerce element of {x.ring} into {self}")

    def __call__(self, x) -> "RingElem":
        if isinstance(x, RingElem):
            if x.ring == self:
                return x
            return RingElem(self, self.embed(x))
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return RingElem(self, self.from_int(x))
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return RingElem(self, self.from_int(x.numerator))
            num = self.from_int(x.numerator)
            den = self.from_int(x.denominator)
            q = self.divide_exact(num, den)
            if q is None:
                raise RingMismatchError(f"{x} does not lie in {self}")
            return RingElem(self, q)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    @property
    def zero(self) -> "RingElem":
        return RingElem(self, self.zero_p)

    @property
    def one(self) -> "RingElem":
        return RingElem(self, self.one_p)

    def random_element(self, rng: random.Random) -> "RingElem":
        return RingElem(self, self.random_p(rng))

    def two_is_unit(self) -> bool:
        try:
            return self.is_unit(self.from_int(2))
        except UndecidableError:
            return False


class RingElem:
    """An element of a :class:`Ring`."""

    __slots__ = ("ring", "v")

    def __init__(self, ring: Ring, v):
        self.ring = ring
        self.v = v

    def _co(self, other) -> "RingElem":
        if isinstance(other, RingElem) and other.ring is self.ring:
            return other
        return self.ring(other)

    def __add__(self, other):
        o = self._co(other)
        return RingElem(self.ring, self.ring.add(self.v, o.v))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        return RingElem(self.ring, self.ring.sub(self.v, o.v))

    def __rsub__(self, other):
        o = self._co(other)
        return RingElem(self.ring, self.ring.sub(o.v, self.v))

    def __mul__(self, other):
        o = self._co(other)
        return RingElem(self.ring, self.ring.mul(self.v, o.v))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.v))

    def __pow__(self, e: int):
        return RingElem(self.ring, self.ring.power(self.v, e))

    def __eq__(self, other) -> bool:
        try:
            o = self._co(other)
        except (RingMismatchError, TypeError):
            return NotImplemented
        return self.ring.eq(self.v, o.v)

    def __hash__(self) -> int:
        return hash((self.ring, self.ring.canon(self.v)))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.v)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.v)

    def inverse(self) -> "RingElem":
        return RingElem(self.ring, self.ring.inverse(self.v))

    def divide_exact(self, other) -> "RingElem | None":
        o = self._co(other)
        q = self.ring.divide_exact(self.v, o.v)
        return None if q is None else RingElem(self.ring, q)

    def __repr__(self) -> str:
        return self.ring.format(self.v)


# ---------------------------------------------------------------------------
# Base rings
# ---------------------------------------------------------------------------


class Integers(Ring):
    is_domain = True

    def key(self):
        return ("ZZ",)

    def __repr__(self):
        return "ZZ"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def sub(self, a, b):
        return a - b

    def from_int(self, n):
        return n

    def divide_exact(self, a, b):
        if b == 0:
            return 0 if a == 0 else None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def is_unit(self, a):
        return a in (1, -1)

    def random_p(self, rng):
        return rng.randint(-9, 9)


class IntegersModN(Ring):
    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.n = modulus
        self.is_domain = self.is_field = _is_prime(modulus)
        self.zero_p = 0
        self.one_p = 1

    def key(self):
        return ("ZZ/n", self.n)

    def __repr__(self):
        return f"ZZ/{self.n}"

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def from_int(self, n):
        return n % self.n

    def divide_exact(self, a, b):
        g = math.gcd(b, self.n)
        if a % g:
            return None
        n_g = self.n // g
        if n_g == 1:
            return 0
        return (a // g) * pow(b // g, -1, n_g) % n_g

    def is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def random_p(self, rng):
        return rng.randrange(self.n)


class Rationals(Ring):
    is_domain = True
    is_field = True
    zero_p = Fraction(0)
    one_p = Fraction(1)

    def key(self):
        return ("QQ",)

    def __repr__(self):
        return "QQ"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def sub(self, a, b):
        return a - b

    def from_int(self, n):
        return Fraction(n)

    def divide_exact(self, a, b):
        if b == 0:
            return Fraction(0) if a == 0 else None
        return a / b

    def is_unit(self, a):
        return a != 0

    def random_p(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


ZZ = Integers()
QQ = Rationals()


# ---------------------------------------------------------------------------
# Polynomial rings
# ---------------------------------------------------------------------------


class Polynomial(Ring):
    """Sparse multivariate polynomials; payload is ``{exponent tuple: coeff}``."""

    def __init__(self, base: Ring, variables: Iterable[str]):
        self.base = base
        self.vars = tuple(variables)
        if not self.vars or len(set(self.vars)) != len(self.vars):
            raise ValueError("polynomial ring needs distinct variable names")
        self.nvars = len(self.vars)
        self.is_domain = base.is_domain
        self._zexp = (0,) * self.nvars
        self.zero_p = {}
        self.one_p = {self._zexp: base.one_p}

    def key(self):
        return ("poly", self.base.key(), self.vars)

    def __repr__(self):
        return f"{self.base!r}[{','.join(self.vars)}]"

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        base = self.base
        for e, c in b.items():
            if e in out:
                s = base.add(out[e], c)
                if base.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return out

    def neg(self, a):
        return {e: self.base.neg(c) for e, c in a.items()}

    def mul(self, a, b):
        if not a or not b:
            return {}
        base = self.base
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = base.mul(c1, c2)
                if e in out:
                    out[e] = base.add(out[e], c)
                else:
                    out[e] = c
        return {e: c for e, c in out.items() if not base.is_zero(c)}

    def eq(self, a, b):
        if a.keys() != b.keys():
            return False
        return all(self.base.eq(c, b[e]) for e, c in a.items())

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        c = self.base.from_int(n)
        return {} if self.base.is_zero(c) else {self._zexp: c}

    def const(self, c):
        """Embed a base payload as a constant polynomial."""
        return {} if self.base.is_zero(c) else {self._zexp: c}

    def canon(self, a):
        return tuple(sorted((e, self.base.canon(c)) for e, c in a.items()))

    def embed(self, x):
        r = x.ring
        if isinstance(r, Polynomial) and set(r.vars) <= set(self.vars):
            idx = [self.vars.index(v) for v in r.vars]
            out: dict = {}
            for e, c in r.as_items(x.v):
                ne = [0] * self.nvars
                for k, p in zip(idx, e):
                    ne[k] = p
                cc = self.base(RingElem(r.base, c)).v
                if not self.base.is_zero(cc):
                    out[tuple(ne)] = cc
            return out
        return self.const(self.base(x).v)

    def as_items(self, a):
        return a.items()

    # -- structure ------------------------------------------------------------
    def gen(self, var: str) -> RingElem:
        return RingElem(self, self.var_power(var, 1))

    def gens(self) -> tuple[RingElem, ...]:
        return tuple(self.gen(v) for v in self.vars)

    def has_var(self, var):
        return var in self.vars or self.base.has_var(var)

    def var_power(self, var, m):
        if var in self.vars:
            e = [0] * self.nvars
            e[self.vars.index(var)] = m
            return {tuple(e): self.base.one_p}
        return self.const(self.base.var_power(var, m))

    def var_valuation(self, a, var):
        if not a:
            return INF
        if var in self.vars:
            k = self.vars.index(var)
            return min(e[k] for e in a)
        return min(self.base.var_valuation(c, var) for c in a.values())

    def divide_var_power(self, a, var, m):
        if m == 0:
            return a
        if var in self.vars:
            k = self.vars.index(var)
            out = {}
            for e, c in a.items():
                if e[k] < m:
                    raise ValueError(f"not divisible by {var}^{m}")
                ne = list(e)
                ne[k] -= m
                out[tuple(ne)] = c
            return out
        return {e: self.base.divide_var_power(c, var, m) for e, c in a.items()}

    def is_constant(self, a) -> bool:
        return not a or (len(a) == 1 and self._zexp in a)

    def constant_coeff(self, a):
        return a.get(self._zexp, self.base.zero_p)

    def degree(self, a, var: str) -> int:
        k = self.vars.index(var)
        return max((e[k] for e in a), default=-1)

    def _leading(self, a):
        e = max(a)
        return e, a[e]

    def divide_exact(self, a, b):
        if not b:
            return {} if not a else None
        if self.is_constant(b):
            c = b[self._zexp]
            out = {}
            for e, x in a.items():
                q = self.base.divide_exact(x, c)
                if q is None:
                    return None
                if not self.base.is_zero(q):
                    out[e] = q
            if not self.eq(self.mul(out, b), a):
                return None
            return out
        # lex division by a single divisor; exact iff the remainder vanishes
        lb, cb = self._leading(b)
        rem, quot = dict(a), {}
        steps = 0
        while rem:
            steps += 1
            if steps > 10_000:
                return None
            le, lc = self._leading(rem)
            de = tuple(x - y for x, y in zip(le, lb))
            if min(de) < 0:
                return None
            qc = self.base.divide_exact(lc, cb)
            if qc is None:
                return None
            term = {de: qc}
            quot = self.add(quot, term)
            rem = self.sub(rem, self.mul(term, b))
        return quot

    def is_unit(self, a):
        if self.is_constant(a):
            return bool(a) and self.base.is_unit(a[self._zexp])
        if self.base.is_domain:
            return False
        raise UndecidableError(f"unit test for non-constant polynomial over {self.base}")

    def random_p(self, rng, terms: int = 3, degree: int = 2):
        out: dict = {}
        for _ in range(rng.randint(0, terms)):
            e = tuple(rng.randint(0, degree) for _ in range(self.nvars))
            c = self.base.random_p(rng)
            if not self.base.is_zero(c):
                out = self.add(out, {e: c})
        return out

    def format(self, a):
        if not a:
            return "0"
        parts = []
        for e in sorted(a, reverse=True):
            mono = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(self.vars, e) if p
            )
            c = self.base.format(a[e])
            if not mono:
                parts.append(c)
            elif self.base.eq(a[e], self.base.one_p):
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    # -- homomorphisms ------------------------------------------------------
    def map_coefficients(self, a, fn, target: "Polynomial"):
        """Apply ``fn`` (base payload -> target.base payload) coefficientwise."""
        out = {}
        for e, c in a.items():
            cc = fn(c)
            if not target.base.is_zero(cc):
                out[e] = cc
        return out


def substitute(p: RingElem, bindings: dict, target: Ring | None = None) -> RingElem:
    """Ring homomorphism on a polynomial, fixing coefficients.

    ``bindings`` maps variable names to images (RingElem or int). Unbound
    variables map to the variable of the same name in ``target`` (default:
    the ring of ``p``). Coefficients are coerced into ``target``.
    """
    ring = p.ring
    if not isinstance(ring, Polynomial):
        raise RingMismatchError("substitute needs a polynomial")
    for var in bindings:
        if var not in ring.vars:
            raise ValueError(f"unknown variable {var!r}")
    target = ring if target is None else target
    images = []
    for var in ring.vars:
        if var in bindings:
            images.append(target(bindings[var]))
        elif isinstance(target, Polynomial) and var in target.vars:
            images.append(target.gen(var))
        else:
            images.append(None)
    result = target.zero
    cache: dict = {}
    for e, c in p.v.items():
        term = target(RingElem(ring.base, c))
        for k, power in enumerate(e):
            if power == 0:
                continue
            if images[k] is None:
                raise RingMismatchError(f"variable {ring.vars[k]} has no image in {target}")
            key = (k, power)
            if key not in cache:
                cache[key] = images[k] ** power
            term = term * cache[key]
        result = result + term
    return result


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: Ring
    generators: tuple

    def __init__(self, ring: Ring, generators: Iterable):
        gens = tuple(ring(g) for g in generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator; use [0] for the zero ideal")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)

    def key(self):
        return (self.ring.key(), tuple(self.ring.canon(g.v) for g in self.generators))

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"({', '.join(map(repr, self.generators))}) in {self.ring!r}"

    def __len__(self):
        return len(self.generators)

    def extend(self, ring: Ring) -> "Ideal":
        """The extension of this ideal to a ring that receives its generators."""
        return self if ring == self.ring else Ideal(ring, [ring(g) for g in self.generators])

    def elem(self, coeffs: Iterable) -> "IdealElem":
        return IdealElem(self, tuple(self.ring(c) for c in coeffs))

    def zero_elem(self) -> "IdealElem":
        return IdealElem(self, (self.ring.zero,) * len(self.generators))

    def gen_elem(self, k: int, coeff=1) -> "IdealElem":
        cs = [self.ring.zero] * len(self.generators)
        cs[k] = self.ring(coeff)
        return IdealElem(self, tuple(cs))

    def is_unit_ideal(self) -> bool:
        w = decide_membership(self.ring.one, self)
        return isinstance(w, IdealElem)

    def random_elem(self, rng: random.Random) -> "IdealElem":
        return IdealElem(self, tuple(self.ring.random_element(rng) for _ in self.generators))


class IdealElem:
    """An ideal element together with its witness ``sum c_k * g_k``."""

    __slots__ = ("ideal", "coeffs", "_value")

    def __init__(self, ideal: Ideal, coeffs: tuple):
        if len(coeffs) != len(ideal.generators):
            raise ValueError("witness length does not match generator count")
        self.ideal = ideal
        self.coeffs = tuple(coeffs)
        self._value = None

    @property
    def ring(self) -> Ring:
        return self.ideal.ring

    @property
    def value(self) -> RingElem:
        if self._value is None:
            ring = self.ideal.ring
            acc = ring.zero_p
            for c, g in zip(self.coeffs, self.ideal.generators):
                acc = ring.add(acc, ring.mul(c.v, g.v))
            self._value = RingElem(ring, acc)
        return self._value

    def __eq__(self, other) -> bool:
        # witnesses, not just values, must agree
        if not isinstance(other, IdealElem):
            return NotImplemented
        return self.ideal == other.ideal and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ideal, self.coeffs))

    def _check(self, other: "IdealElem"):
        if other.ideal != self.ideal:
            raise RingMismatchError("ideal elements belong to different ideals")

    def __add__(self, other: "IdealElem") -> "IdealElem":
        self._check(other)
        return IdealElem(self.ideal, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "IdealElem") -> "IdealElem":
        return self + (-other)

    def __neg__(self) -> "IdealElem":
        return IdealElem(self.ideal, tuple(-c for c in self.coeffs))

    def scale(self, r) -> "IdealElem":
        r = self.ring(r)
        return IdealElem(self.ideal, tuple(r * c for c in self.coeffs))

    def map(self, fn, ideal: Ideal) -> "IdealElem":
        """Push the witness through a ring map ``fn`` sending generators to ``ideal``'s."""
        return IdealElem(ideal, tuple(fn(c) for c in self.coeffs))

    def __repr__(self):
        terms = " + ".join(f"({c!r})*g{k + 1}" for k, c in enumerate(self.coeffs))
        return f"<{self.value!r} = {terms}>"


def ideal_elem_value(w: IdealElem) -> RingElem:
    return w.value


def ideal_elem_scale(r, w: IdealElem) -> IdealElem:
    return w.scale(r)


def ideal_elem_add(w1: IdealElem, w2: IdealElem) -> IdealElem:
    return w1 + w2


class Membership(enum.Enum):
    NOT_MEMBER = "not-member"
    UNDECIDABLE = "undecidable"


def decide_membership(x, ideal: Ideal) -> "IdealElem | Membership":
    """Witness for ``x in ideal``, or a :class:`Membership` verdict."""
    ring = ideal.ring
    x = ring(x)
    k = len(ideal.generators)
    if x.is_zero():
        return ideal.zero_elem()
    gens = ideal.generators

    if isinstance(ring, Integers):
        g, cs = _bezout([gg.v for gg in gens])
        if g == 0 or x.v % g:
            return Membership.NOT_MEMBER
        q = x.v // g
        return ideal.elem([c * q for c in cs])

    if isinstance(ring, IntegersModN):
        g, cs = _bezout([gg.v for gg in gens] + [ring.n])
        if x.v % g:
            return Membership.NOT_MEMBER
        q = x.v // g
        return ideal.elem([c * q for c in cs[:k]])

    if ring.is_field:
        for idx, gg in enumerate(gens):
            if not gg.is_zero():
                return ideal.gen_elem(idx, x * gg.inverse())
        return Membership.NOT_MEMBER

    if isinstance(ring, Polynomial) and ring.nvars == 1 and ring.base.is_field:
        # extended Euclid over all generators
        g, cs = ring.zero, [ring.zero] * k
        for idx, gg in enumerate(gens):
            r0, r1 = g, gg
            s0, s1 = ring.one, ring.zero
            t0, t1 = ring.zero, ring.one
            while not r1.is_zero():
                q = _poly_quotient(r0, r1)
                r0, r1 = r1, r0 - q * r1
                s0, s1 = s1, s0 - q * s1
                t0, t1 = t1, t0 - q * t1
            cs = [c * s0 for c in cs]
            cs[idx] = t0
            g = r0
        if g.is_zero():
            return Membership.NOT_MEMBER
        q = x.divide_exact(g)
        if q is None:
            return Membership.NOT_MEMBER
        return ideal.elem([c * q for c in cs])

    # fallback: trial division by single generators
    for idx, gg in enumerate(gens):
        if gg.is_zero():
            continue
        q = x.divide_exact(gg)
        if q is not None:
            return ideal.gen_elem(idx, q)
    if all(gg.is_zero() for gg in gens) and ring.is_domain:
        return Membership.NOT_MEMBER
    if isinstance(ring, Polynomial) and ring.base.is_field and ring.nvars == 1:
        return Membership.NOT_MEMBER
    return Membership.UNDECIDABLE


def _poly_quotient(a: RingElem, b: RingElem) -> RingElem:
    """Univariate division quotient over a field."""
    ring = a.ring
    q = ring.zero
    r = a
    db = ring.degree(b.v, ring.vars[0])
    lb = b.v[(db,)]
    while not r.is_zero():
        dr = ring.degree(r.v, ring.vars[0])
        if dr < db:
            break
        c = ring.base.divide_exact(r.v[(dr,)], lb)
        t = RingElem(ring, {(dr - db,): c})
        q = q + t
        r = r - t * b
    return q


def require_member(x, ideal: Ideal) -> IdealElem:
    w = decide_membership(x, ideal)
    if w is Membership.NOT_MEMBER:
        raise NotInIdealError(f"{x!r} is not in {ideal!r}")
    if w is Membership.UNDECIDABLE:
        raise UndecidableError(f"membership of {x!r} in {ideal!r} is undecidable here")
    return w


# ---------------------------------------------------------------------------
# Localization at one element
# ---------------------------------------------------------------------------


class Localized(Ring):
    """``R_s``: payload ``(numerator, k)`` denoting ``numerator / s^k``."""

    def __init__(self, base: Ring, s):
        s = base(s)
        self.base = base
        self.s = s
        _require_nonzerodivisor(base, s)
        self.is_domain = base.is_domain
        self.is_field = base.is_field
        self.zero_p = (base.zero_p, 0)
        self.one_p = (base.one_p, 0)
        self._spow = [base.one_p]

    def key(self):
        return ("loc", self.base.key(), self.base.canon(self.s.v))

    def __repr__(self):
        return f"{self.base!r}[1/{self.s!r}]"

    def spow(self, k: int):
        while len(self._spow) <= k:
            self._spow.append(self.base.mul(self._spow[-1], self.s.v))
        return self._spow[k]

    def normalize(self, num, k: int):
        base = self.base
        if base.is_zero(num):
            return (base.zero_p, 0)
        while k > 0:
            q = base.divide_exact(num, self.s.v)
            if q is None:
                break
            num, k = q, k - 1
        return (num, k)

    def add(self, a, b):
        (x, i), (y, j) = a, b
        k = max(i, j)
        base = self.base
        num = base.add(base.mul(x, self.spow(k - i)), base.mul(y, self.spow(k - j)))
        return self.normalize(num, k)

    def neg(self, a):
        return (self.base.neg(a[0]), a[1])

    def mul(self, a, b):
        return self.normalize(self.base.mul(a[0], b[0]), a[1] + b[1])

    def eq(self, a, b):
        (x, i), (y, j) = a, b
        base = self.base
        return base.eq(base.mul(x, self.spow(j)), base.mul(y, self.spow(i)))

    def is_zero(self, a):
        return self.base.is_zero(a[0])

    def from_int(self, n):
        return self.normalize(self.base.from_int(n), 0)

    def canon(self, a):
        return (self.base.canon(a[0]), a[1])

    def embed(self, x):
        return (self.base(x).v, 0)

    def fraction(self, num, k: int = 0) -> RingElem:
        return RingElem(self, self.normalize(self.base(num).v, k))

    def denominator_exponent(self, a) -> int:
        return a[1]

    def numerator(self, a) -> RingElem:
        return RingElem(self.base, a[0])

    def divide_exact(self, a, b):
        (x, i), (y, j) = a, b
        if self.base.is_zero(y):
            return self.zero_p if self.base.is_zero(x) else None
        base = self.base
        num = base.mul(x, self.spow(j))
        for extra in range(0, 12):
            q = base.divide_exact(base.mul(num, self.spow(extra)), y)
            if q is not None:
                return self.normalize(q, i + extra)
        return None

    def is_unit(self, a):
        num = a[0]
        if self.base.is_zero(num):
            return False
        if isinstance(self.base, Integers):
            n, s = abs(num), abs(self.s.v)
            g = math.gcd(n, s)
            while g > 1:
                while n % g == 0:
                    n //= g
                g = math.gcd(n, s)
            return n == 1
        try:
            if self.base.is_unit(num):
                return True
        except UndecidableError:
            pass
        if self.divide_exact(self.one_p, a) is not None:
            return True
        raise UndecidableError(f"unit test in {self}")

    def random_p(self, rng):
        return self.normalize(self.base.random_p(rng), rng.randint(0, 2))

    def format(self, a):
        if a[1] == 0:
            return self.base.format(a[0])
        return f"({self.base.format(a[0])})/({self.s!r})^{a[1]}"

    def has_var(self, var):
        return self.base.has_var(var)

    def var_power(self, var, m):
        return (self.base.var_power(var, m), 0)

    def var_valuation(self, a, var):
        return self.base.var_valuation(a[0], var)

    def divide_var_power(self, a, var, m):
        return (self.base.divide_var_power(a[0], var, m), a[1])


def _require_nonzerodivisor(base: Ring, s: RingElem) -> None:
    if s.is_zero():
        raise ValueError("cannot localize at zero")
    if base.is_domain:
        return
    if isinstance(base, IntegersModN):
        if base.n <= 10_000:
            if any(base.mul(s.v, x) == 0 for x in range(1, base.n)):
                raise ValueError(f"{s!r} is a zero divisor in {base}")
            return
        raise ValueError("zero-divisor test unavailable for large moduli")
    if isinstance(base, Excision):
        r, _, ival = s.v
        if base.base.is_zero(ival) and base.base.is_domain and not base.base.is_zero(r):
            return
        raise ValueError("only (s + 0) with s a non-zero-divisor is accepted in R + I")
    if isinstance(base, Polynomial) and base.is_constant(s.v):
        _require_nonzerodivisor(base.base, RingElem(base.base, base.constant_coeff(s.v)))
        return
    raise ValueError(f"cannot verify that {s!r} is a non-zero-divisor in {base}")


# ---------------------------------------------------------------------------
# The excision ring R + I
# ---------------------------------------------------------------------------


class Excision(Ring):
    """``R + I`` with payload ``(r, witness coefficients, value of i)``."""

    def __init__(self, base: Ring, ideal: Ideal):
        if ideal.ring != base:
            raise RingMismatchError("excision ideal must be an ideal of the base ring")
        self.base = base
        self.ideal = ideal
        self.k = len(ideal.generators)
        self._g = tuple(g.v for g in ideal.generators)
        z = base.zero_p
        self.zero_p = (z, (z,) * self.k, z)
        self.one_p = (base.one_p, (z,) * self.k, z)
        self.is_domain = False

    def key(self):
        return ("excision", self.base.key(), self.ideal.key())

    def __repr__(self):
        return f"({self.base!r} + {self.ideal!r})"

    def _val(self, coeffs):
        b = self.base
        acc = b.zero_p
        for c, g in zip(coeffs, self._g):
            acc = b.add(acc, b.mul(c, g))
        return acc

    def make(self, r, coeffs):
        return (r, tuple(coeffs), self._val(coeffs))

    def add(self, a, b):
        B = self.base
        return (
            B.add(a[0], b[0]),
            tuple(B.add(x, y) for x, y in zip(a[1], b[1])),
            B.add(a[2], b[2]),
        )

    def neg(self, a):
        B = self.base
        return (B.neg(a[0]), tuple(B.neg(x) for x in a[1]), B.neg(a[2]))

    def mul(self, a, b):
        # (r + j)(s + i) = rs + (s j + r i + i j)
        B = self.base
        r, cj, j = a
        s, ci, i = b
        si = B.add(s, i)
        coeffs = tuple(B.add(B.mul(si, x), B.mul(r, y)) for x, y in zip(cj, ci))
        ival = B.add(B.add(B.mul(s, j), B.mul(r, i)), B.mul(i, j))
        return (B.mul(r, s), coeffs, ival)

    def eq(self, a, b):
        return self.base.eq(a[0], b[0]) and self.base.eq(a[2], b[2])

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[2])

    def from_int(self, n):
        z = self.base.zero_p
        return (self.base.from_int(n), (z,) * self.k, z)

    def canon(self, a):
        return (self.base.canon(a[0]), self.base.canon(a[2]))

    def embed(self, x):
        z = self.base.zero_p
        return (self.base(x).v, (z,) * self.k, z)

    # -- public constructors -------------------------------------------------
    def pair(self, r, i: "IdealElem | None" = None) -> RingElem:
        """The element ``r + i``; ``i`` must be a witnessed element of the ideal."""
        r = self.base(r).v
        if i is None:
            return RingElem(self, (r, (self.base.zero_p,) * self.k, self.base.zero_p))
        if i.ideal != self.ideal:
            raise RingMismatchError("ideal component belongs to another ideal")
        return RingElem(self, self.make(r, tuple(c.v for c in i.coeffs)))

    def r_part(self, a) -> RingElem:
        return RingElem(self.base, a[0])

    def i_part(self, a) -> IdealElem:
        return IdealElem(self.ideal, tuple(RingElem(self.base, c) for c in a[1]))

    def phi(self, a):
        return self.base.add(a[0], a[2])

    def psi(self, a):
        return a[0]

    # -- divisibility ---------------------------------------------------------
    def divide_exact(self, a, b):
        B = self.base
        r, cs, i = b
        if B.is_zero(i):
            if B.is_zero(r):
                return self.zero_p if self.is_zero(a) else None
            # (r + 0) q = a  <=>  q = (a_r / r) + (a_i / r)
            qr = B.divide_exact(a[0], r)
            if qr is None:
                return None
            qcs = []
            for c in a[1]:
                q = B.divide_exact(c, r)
                if q is None:
                    break
                qcs.append(q)
            else:
                cand = self.make(qr, qcs)
                if self.eq(self.mul(cand, b), a):
                    return cand
            qi = B.divide_exact(a[2], r)
            if qi is None:
                return None
            w = decide_membership(RingElem(B, qi), self.ideal)
            if not isinstance(w, IdealElem):
                return None
            cand = self.make(qr, tuple(c.v for c in w.coeffs))
            return cand if self.eq(self.mul(cand, b), a) else None
        if self.is_unit(b):
            return self.mul(a, self.inverse(b))
        return None

    def is_unit(self, a):
        B = self.base
        return B.is_unit(a[0]) and B.is_unit(B.add(a[0], a[2]))

    def inverse(self, a):
        B = self.base
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{self.format(a)} is not a unit in {self}")
        rinv = B.inverse(a[0])
        tinv = B.inverse(B.add(a[0], a[2]))
        # (r + i)^{-1} = r^{-1} + j with j = -i / (r (r + i))
        f = B.neg(B.mul(rinv, tinv))
        coeffs = tuple(B.mul(f, c) for c in a[1])
        return self.make(rinv, coeffs)

    def random_p(self, rng):
        return self.make(self.base.random_p(rng), tuple(self.base.random_p(rng) for _ in range(self.k)))

    def format(self, a):
        return f"({self.base.format(a[0])} (+) {self.base.format(a[2])})"

    def has_var(self, var):
        return self.base.has_var(var)

    def var_power(self, var, m):
        z = self.base.zero_p
        return (self.base.var_power(var, m), (z,) * self.k, z)

    def var_valuation(self, a, var):
        B = self.base
        vals = [B.var_valuation(a[0], var)] + [B.var_valuation(c, var) for c in a[1]]
        return min(vals)

    def divide_var_power(self, a, var, m):
        B = self.base
        r = B.divide_var_power(a[0], var, m)
        cs = tuple(B.divide_var_power(c, var, m) for c in a[1])
        return self.make(r, cs)


def excision_mul(a: RingElem, b: RingElem) -> RingElem:
    if not isinstance(a.ring, Excision) or a.ring != b.ring:
        raise RingMismatchError("excision_mul needs two elements of one excision ring")
    return a * b


def phi(a: RingElem) -> RingElem:
    """The homomorphism ``R + I -> R``, ``r + i -> r + i``."""
    if not isinstance(a.ring, Excision):
        raise RingMismatchError("phi is defined on excision rings")
    return RingElem(a.ring.base, a.ring.phi(a.v))


def gcd_list(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)
