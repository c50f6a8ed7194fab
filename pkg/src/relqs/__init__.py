"""Exact elementary generators, the excision ring R + I and self-checking rewrites.

The public surface is spread over a few modules:

- :mod:`relqs.rings` for ZZ, ZZ/n, QQ, polynomials, principal localizations and R + I
- :mod:`relqs.forms` for matrices, vectors and the three bilinear forms
- :mod:`relqs.words` for generator words, evaluation, lifting and projection
- :mod:`relqs.lemmas` for factorization, conjugation rewriting, monomialization and dilation
- :mod:`relqs.cli` for the JSON front end and :mod:`relqs.selftest` for the seeded suites
"""

from .errors import (
    NonzeroInnerProductError,
    NotInIdealError,
    RelqsError,
    RewriteFailure,
    RingMismatchError,
    SchemaError,
    UndecidableError,
)
from .forms import GroupKind, Matrix, Vector
from .lemmas import (
    DilationResult,
    RewriteCertificate,
    clear_denominators,
    conjugate_rewrite,
    dilate,
    factor_rank_one,
    monomialize,
    word_conjugate_rewrite,
)
from .rings import QQ, ZZ, Excision, Ideal, IdealElem, IntegersModN, Localized, Polynomial
from .words import Absolute, Conjugate, Relative, Word, eval_word, lift_word, project_word

__version__ = "0.1.0"

__all__ = [
    "QQ", "ZZ", "Excision", "Ideal", "IdealElem", "IntegersModN", "Localized", "Polynomial",
    "GroupKind", "Matrix", "Vector",
    "Absolute", "Relative", "Conjugate", "Word", "eval_word", "lift_word", "project_word",
    "RewriteCertificate", "DilationResult", "factor_rank_one", "conjugate_rewrite",
    "word_conjugate_rewrite", "monomialize", "clear_denominators", "dilate",
    "RelqsError", "RingMismatchError", "NotInIdealError", "NonzeroInnerProductError",
    "UndecidableError", "RewriteFailure", "SchemaError",
]
