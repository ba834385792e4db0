"""Exception types shared across the toolkit."""


class DiffAlgError(Exception):
    """Base class for all toolkit errors."""


class DivisionByZero(DiffAlgError):
    """Division by a zero field element or zero operator."""


class BadDerivation(DiffAlgError):
    """Derivation index outside the configured range."""


class ConfigMismatch(DiffAlgError):
    """Operands built over different field configurations or ranks."""


class UnsupportedForPartial(DiffAlgError):
    """Operation requires a single derivation (m = 1)."""


class ZeroElement(DiffAlgError):
    """The zero module element has no leader."""


class NotAntichain(DiffAlgError):
    """Exponent vectors are not pairwise incomparable."""


class OrderlyRequired(DiffAlgError):
    """Dimension computations require an orderly ranking."""


class PointNotOnVariety(DiffAlgError):
    """A supplied point does not annihilate every equation."""

    def __init__(self, equation_index, value):
        self.equation_index = equation_index
        self.value = value
        super().__init__(
            f"equation #{equation_index} does not vanish at the point "
            f"(value {value})"
        )


class ParseError(DiffAlgError):
    """Syntax error in an input file or expression."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
