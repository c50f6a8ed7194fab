"""Canonical JSON for rings, elements, ideals, matrices, words and certificates.

Integers travel as decimal strings, rationals as ``"p/q"``, polynomials as
monomial lists sorted by exponent vector.  :func:`dumps` sorts keys so equal
documents are equal bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import SchemaError
from .forms import GroupKind, Matrix, Vector
from .rings import (
    QQ,
    ZZ,
    Excision,
    Ideal,
    IdealElem,
    Integers,
    IntegersModN,
    Localized,
    Polynomial,
    Rationals,
    Ring,
    RingElem,
)
from .words import Absolute, Conjugate, Relative, Word


def dumps(doc, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _int(s) -> int:
    if isinstance(s, bool):
        raise SchemaError("expected an integer string")
    if isinstance(s, int):
        return s
    try:
        return int(s)
    except (TypeError, ValueError):
        raise SchemaError(f"expected an integer string, got {s!r}") from None


# -- rings -------------------------------------------------------------------


def encode_ring(R: Ring) -> dict:
    if isinstance(R, Integers):
        return {"type": "ZZ"}
    if isinstance(R, IntegersModN):
        return {"type": "ZZ/n", "n": str(R.n)}
    if isinstance(R, Rationals):
        return {"type": "QQ"}
    if isinstance(R, Polynomial):
        return {"type": "poly", "base": encode_ring(R.base), "vars": list(R.vars)}
    if isinstance(R, Localized):
        return {"type": "localized", "base": encode_ring(R.base), "s": encode_elem(R.s)}
    if isinstance(R, Excision):
        return {"type": "excision", "base": encode_ring(R.base),
                "ideal": [encode_elem(g) for g in R.ideal.generators]}
    raise SchemaError(f"cannot encode ring {R!r}")


def decode_ring(doc) -> Ring:
    if not isinstance(doc, dict) or "type" not in doc:
        raise SchemaError("ring must be an object with a type")
    t = doc["type"]
    if t == "ZZ":
        return ZZ
    if t == "ZZ/n":
        return IntegersModN(_int(doc["n"]))
    if t == "QQ":
        return QQ
    if t == "poly":
        return Polynomial(decode_ring(doc["base"]), doc["vars"])
    if t == "localized":
        base = decode_ring(doc["base"])
        return Localized(base, decode_elem(base, doc["s"]))
    if t == "excision":
        base = decode_ring(doc["base"])
        return Excision(base, Ideal(base, [decode_elem(base, g) for g in doc["ideal"]]))
    raise SchemaError(f"unknown ring type {t!r}")


# -- elements ------------------------------------------------------------------


def _enc_p(R: Ring, a):
    if isinstance(R, (Integers, IntegersModN)):
        return str(a)
    if isinstance(R, Rationals):
        return str(a)
    if isinstance(R, Polynomial):
        return [[list(e), _enc_p(R.base, a[e])] for e in sorted(a)]
    if isinstance(R, Localized):
        return {"num": _enc_p(R.base, a[0]), "k": a[1]}
    if isinstance(R, Excision):
        return {"r": _enc_p(R.base, a[0]), "i": [_enc_p(R.base, c) for c in a[1]]}
    raise SchemaError(f"cannot encode elements of {R!r}")


def _dec_p(R: Ring, doc):
    if isinstance(R, Integers):
        return _int(doc)
    if isinstance(R, IntegersModN):
        return R.from_int(_int(doc))
    if isinstance(R, Rationals):
        try:
            return Fraction(str(doc))
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"bad rational {doc!r}") from None
    if isinstance(R, Polynomial):
        if not isinstance(doc, list):
            raise SchemaError("polynomial must be a list of [exponents, coefficient]")
        out: dict = {}
        for item in doc:
            if not isinstance(item, list) or len(item) != 2 or len(item[0]) != R.nvars:
                raise SchemaError(f"bad monomial {item!r}")
            e = tuple(int(x) for x in item[0])
            if min(e, default=0) < 0:
                raise SchemaError("negative exponent")
            out = R.add(out, {e: _dec_p(R.base, item[1])})
        return {e: c for e, c in out.items() if not R.base.is_zero(c)}
    if isinstance(R, Localized):
        if not isinstance(doc, dict):
            raise SchemaError("localized element must be {num, k}")
        k = int(doc.get("k", 0))
        if k < 0:
            raise SchemaError("negative denominator exponent")
        return R.normalize(_dec_p(R.base, doc["num"]), k)
    if isinstance(R, Excision):
        if not isinstance(doc, dict):
            raise SchemaError("excision element must be {r, i}")
        cs = [_dec_p(R.base, c) for c in doc["i"]]
        if len(cs) != R.k:
            raise SchemaError("witness length does not match the ideal")
        return R.make(_dec_p(R.base, doc["r"]), cs)
    raise SchemaError(f"cannot decode elements of {R!r}")


def encode_elem(x: RingElem):
    return _enc_p(x.ring, x.v)


def decode_elem(R: Ring, doc) -> RingElem:
    return RingElem(R, _dec_p(R, doc))


def encode_ideal(I: Ideal) -> list:
    return [encode_elem(g) for g in I.generators]


def decode_ideal(R: Ring, doc) -> Ideal:
    if not isinstance(doc, list) or not doc:
        raise SchemaError("ideal must be a non-empty list of generators")
    return Ideal(R, [decode_elem(R, g) for g in doc])


def encode_ideal_elem(h: IdealElem) -> list:
    return [encode_elem(c) for c in h.coeffs]


def decode_ideal_elem(ideal: Ideal, doc) -> IdealElem:
    if not isinstance(doc, list) or len(doc) != len(ideal.generators):
        raise SchemaError("witness must list one coefficient per ideal generator")
    return IdealElem(ideal, tuple(decode_elem(ideal.ring, c) for c in doc))


# -- matrices and vectors --------------------------------------------------------


def encode_matrix(M: Matrix) -> dict:
    return {"ring": encode_ring(M.ring), "rows": [[encode_elem(x) for x in r] for r in M.rows]}


def decode_rows(R: Ring, rows) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise SchemaError("matrix rows must be a list of lists")
    try:
        return Matrix(R, [[decode_elem(R, x) for x in r] for r in rows])
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def decode_matrix(doc) -> Matrix:
    return decode_rows(decode_ring(doc["ring"]), doc["rows"])


def encode_vector(v: Vector) -> dict:
    out = {"ring": encode_ring(v.ring), "entries": [encode_elem(x) for x in v.entries]}
    if v.witnesses is not None:
        out["witnesses"] = [encode_ideal_elem(w) for w in v.witnesses]
    return out


def decode_witnessed_vector(ideal: Ideal, doc) -> Vector:
    if not isinstance(doc, list):
        raise SchemaError("w must be a list of witnesses")
    return Vector.from_witnesses([decode_ideal_elem(ideal, c) for c in doc]) if doc else Vector(ideal.ring, [])


# -- words ---------------------------------------------------------------------


def _word_ideal(w: Word) -> Ideal | None:
    found = None

    def visit(g):
        nonlocal found
        hs = []
        if isinstance(g, Absolute):
            if g.witness is not None:
                hs.append(g.witness)
        else:
            hs.append(g.h)
            if isinstance(g, Conjugate):
                for s, _ in g.conjugator:
                    visit(s)
        for h in hs:
            if found is None:
                found = h.ideal
            elif h.ideal != found:
                raise SchemaError("all witnesses in a word must share one ideal")

    for g, _ in w.factors:
        visit(g)
    return found


def encode_factor(kind: GroupKind, n: int, g, e: int) -> dict:
    doc = {"shape": g.shape, "kind": kind.value, "n": n, "i": g.i, "j": g.j, "exponent": e}
    if isinstance(g, Absolute):
        doc["params"] = {"z": encode_elem(g.z),
                         "witness": None if g.witness is None else encode_ideal_elem(g.witness)}
    elif isinstance(g, Relative):
        doc["params"] = {"f": encode_elem(g.f), "h": encode_ideal_elem(g.h)}
    else:
        doc["params"] = {"conjugator": [encode_factor(kind, n, s, se) for s, se in g.conjugator],
                         "h": encode_ideal_elem(g.h)}
    return doc


def encode_word(w: Word) -> dict:
    ideal = _word_ideal(w)
    return {
        "ring": encode_ring(w.ring),
        "kind": w.kind.value,
        "n": w.n,
        "ideal": None if ideal is None else encode_ideal(ideal),
        "factors": [encode_factor(w.kind, w.n, g, e) for g, e in w.factors],
    }


def decode_factor(R: Ring, kind: GroupKind, n: int, ideal: Ideal | None, doc):
    if not isinstance(doc, dict):
        raise SchemaError("factor must be an object")
    for key in ("shape", "i", "j", "params"):
        if key not in doc:
            raise SchemaError(f"factor is missing {key!r}")
    if doc.get("kind", kind.value) != kind.value or int(doc.get("n", n)) != n:
        raise SchemaError("factor kind/size differs from the word")
    i, j, p = int(doc["i"]), int(doc["j"]), doc["params"]
    e = int(doc.get("exponent", 1))

    def need_ideal():
        if ideal is None:
            raise SchemaError("witnessed parameters need an ideal")
        return ideal

    shape = doc["shape"]
    if shape == "absolute":
        wit = p.get("witness")
        if wit is None:
            return Absolute(i, j, decode_elem(R, p["z"])), e
        h = decode_ideal_elem(need_ideal(), wit)
        z = decode_elem(R, p["z"]) if "z" in p else h.value
        if z != h.value:
            raise SchemaError("witness does not match the parameter")
        return Absolute(i, j, z, h), e
    if shape == "relative":
        return Relative(i, j, decode_elem(R, p["f"]), decode_ideal_elem(need_ideal(), p["h"])), e
    if shape == "conjugate":
        conj = tuple(decode_factor(R, kind, n, ideal, s) for s in p["conjugator"])
        return Conjugate(conj, i, j, decode_ideal_elem(need_ideal(), p["h"])), e
    raise SchemaError(f"unknown generator shape {shape!r}")


def decode_factors(R: Ring, kind: GroupKind, n: int, ideal: Ideal | None, docs) -> Word:
    if not isinstance(docs, list):
        raise SchemaError("factors must be a list")
    try:
        return Word(R, kind, n, tuple(decode_factor(R, kind, n, ideal, d) for d in docs))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed factor: {exc}") from None


def decode_word(doc) -> Word:
    R = decode_ring(doc["ring"])
    kind = GroupKind.parse(doc["kind"])
    ideal = None if doc.get("ideal") is None else decode_ideal(R, doc["ideal"])
    return decode_factors(R, kind, int(doc["n"]), ideal, doc.get("factors", []))


# -- results -------------------------------------------------------------------


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, RingElem):
        return encode_elem(x)
    return x


def encode_certificate(c) -> dict:
    return {
        "operation": c.operation,
        "input": _plain(c.input),
        "word": encode_word(c.word),
        "target": encode_matrix(c.target),
        "checks": [[name, ok] for name, ok in c.checks],
        "data": _plain(c.data),
    }


def encode_dilation(r) -> dict:
    return {
        "b": encode_elem(r.b),
        "l": r.l,
        "d": r.d,
        "word": encode_word(r.word),
        "checks": [[name, ok] for name, ok in r.checks],
    }
