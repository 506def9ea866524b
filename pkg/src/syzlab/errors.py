"""Error taxonomy shared by all modules.

The CLI maps these onto exit codes: InvalidInput -> 1, LimitExceeded -> 2,
InternalInconsistency -> 3.
"""


class SyzlabError(Exception):
    pass


class InvalidInput(SyzlabError, ValueError):
    """Malformed problem data: bad schema, bad generators, bad catalog."""


class LimitExceeded(SyzlabError):
    """A configured computation limit (degree, group order, conductor) was hit."""


class InternalInconsistency(SyzlabError):
    """Two routes that must agree exactly did not.

    Raised when a proven statement fails on computed data: a differential
    that does not square to zero, a Molien/Reynolds dimension mismatch, a
    negative Schur multiplicity, or a proven bound that appears violated.
    Any of these means a bug, never new mathematics.
    """
