"""Exception types raised by the library and the CLI."""


class SharelatError(Exception):
    """Base class for all errors raised by sharelat."""


class ParseError(SharelatError, ValueError):
    """Malformed term, substitution or scenario text."""

    def __init__(self, message, text="", pos=0, line=None):
        self.message = message
        self.text = text
        self.pos = pos
        self.line = line
        where = f"line {line}, " if line is not None else ""
        super().__init__(f"{where}col {pos + 1}: {message}")


class NotAFunction(SharelatError, ValueError):
    """A set of bindings binds the same variable twice."""


class CircularComposition(SharelatError, ValueError):
    """Composition produced a substitution outside rational solved form."""


class UnsatisfiableSubstitution(SharelatError, ValueError):
    """A substitution has no finite-tree solution but FT was requested."""


class UnsatisfiableInput(SharelatError, ValueError):
    """An equivalence query was given an FT-unsatisfiable substitution."""


class BottomQuery(SharelatError, ValueError):
    """A predicate that needs a non-bottom element was given bottom."""


class OutOfContext(SharelatError, ValueError):
    """A binding or term mentions variables outside the variables of interest."""


class ContextMismatch(SharelatError, ValueError):
    """Two abstract elements are defined over different variable sets."""


class CapExceeded(SharelatError, RuntimeError):
    """An enumeration would produce more items than the configured cap."""

    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"enumeration needs {count} items, cap is {cap}")
