"""
Exception hierarchy for the Frattini toolkit.

Every error raised on purpose by the library derives from FrattiniError so the
CLI and the JSON API can map them to exit codes and HTTP responses in one
place. Errors caused by bad input also derive from ValueError.
"""


class FrattiniError(Exception):
    """Base class for all toolkit errors."""

    kind = 'error'


class CycleNotationError(FrattiniError, ValueError):
    """Malformed cycle notation or a point outside 1..degree."""

    kind = 'cycle-notation'


class DegreeMismatchError(FrattiniError, ValueError):
    """Two permutations (or a permutation and a group) act on different degrees."""

    kind = 'degree-mismatch'


class EnumerationCapError(FrattiniError, RuntimeError):
    """A closure or subgroup enumeration grew past its configured cap."""

    kind = 'cap-exceeded'


class NotASubgroupError(FrattiniError, ValueError):
    """A subgroup (or element) is not contained in the claimed parent."""

    kind = 'not-a-subgroup'


class NotNormalError(FrattiniError, ValueError):
    """The classical Frattini lemma was called without its normality hypothesis."""

    kind = 'not-normal'


class SylowError(FrattiniError, ValueError):
    """Invalid prime, or a prime not dividing the subgroup order."""

    kind = 'sylow'


class DecompositionError(FrattiniError, ValueError):
    """No factorisation g = a*b with a in N and b in K exists."""

    kind = 'decomposition'


class CertificateError(FrattiniError, ValueError):
    """A certificate could not be built, parsed or failed its own verification."""

    kind = 'certificate'


class EngineInvariantError(FrattiniError, RuntimeError):
    """A theorem-backed invariant failed. Always an engine bug."""

    kind = 'engine-invariant'


class CatalogError(FrattiniError, ValueError):
    """Unknown builtin group name or invalid constructor argument."""

    kind = 'catalog'


class GroupFileError(FrattiniError, ValueError):
    """Parse error in a group file, tagged with the offending line number."""

    kind = 'group-file'

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SweepError(FrattiniError, ValueError):
    """A selected sweep source violates the sweep limits."""

    kind = 'sweep'
