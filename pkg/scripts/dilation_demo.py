"""Dilate a small word over ZZ_2[X] and show that the result lives over ZZ[X].

Builds g = E21(1/2) E12(X/2 * 3) E21(-1/2), clears the denominators, and
prints b, the integral word, and the check results.
"""

from relqs.forms import GroupKind
from relqs.generators import dilation_setting
from relqs.lemmas import dilate
from relqs.words import Absolute, Conjugate, Word, eval_word


def main() -> None:
    L, RX, ideal = dilation_setting(2)
    X = RX.gen("X")
    half = RX(L.fraction(1, 1))
    h = ideal.elem([X * half])
    w = Word(RX, GroupKind.LINEAR, 3, ((Conjugate(((Absolute(2, 1, half), 1),), 1, 2, h), 1),))

    print("input word over", RX)
    print(eval_word(w))
    res = dilate(w)
    print(f"\nb = {res.b}  (l = {res.l}, d = {res.d})")
    print("dilated word over", res.word.ring, "with", len(res.word), "factors:")
    print(eval_word(res.word))
    for name, ok in res.checks:
        print(f"  {'ok' if ok else 'FAIL'}  {name}")


if __name__ == "__main__":
    main()
