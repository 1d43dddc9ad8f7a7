"""Exception hierarchy. Every error carries a stable machine-parsable code."""


class FuzzyFifError(Exception):
    code = "error"


class GridMismatch(FuzzyFifError):
    code = "grid-mismatch"


class LengthMismatch(FuzzyFifError):
    code = "length-mismatch"


class NonNormal(FuzzyFifError):
    code = "non-normal"


class NonConvexLevels(FuzzyFifError):
    code = "non-convex-levels"


class UnboundedSupport(FuzzyFifError):
    code = "unbounded-support"


class DegenerateInterval(FuzzyFifError):
    code = "degenerate-interval"


class OutOfInterval(FuzzyFifError):
    code = "out-of-interval"


class OutOfDomain(FuzzyFifError):
    code = "out-of-domain"


class ScaleOutOfRange(FuzzyFifError):
    code = "scale-out-of-range"


class MatchingNotVerified(FuzzyFifError):
    code = "matching-not-verified"


class NoConvergence(FuzzyFifError):
    code = "no-convergence"


class InvalidTauChoice(FuzzyFifError):
    code = "invalid-tau-choice"


class InsufficientResolution(FuzzyFifError):
    code = "insufficient-resolution"


class ConfigParse(FuzzyFifError):
    code = "config-parse"


class SchemaViolation(FuzzyFifError):
    code = "schema-violation"
