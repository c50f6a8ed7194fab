"""Exception hierarchy. Every error carries a machine-readable ``kind``."""


class RelqsError(Exception):
    kind = "error"


class RingMismatchError(RelqsError, TypeError):
    kind = "ring-mismatch"


class NotInIdealError(RelqsError, ValueError):
    kind = "not-in-ideal"


class NonzeroInnerProductError(RelqsError, ValueError):
    kind = "nonzero-inner-product"


class UndecidableError(RelqsError):
    kind = "undecidable"


class RewriteFailure(RelqsError):
    kind = "rewrite-failure"


class SchemaError(RelqsError, ValueError):
    kind = "schema-error"
