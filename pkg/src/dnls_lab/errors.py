"""Exception types.  Everything a caller can trigger with valid I/O but bad
mathematical input derives from :class:`DomainError`."""


class DomainError(Exception):
    """Mathematically invalid request (CLI exit status 1)."""


class UnsupportedRegime(DomainError):
    """No nontrivial traveling wave exists for these parameters."""

    def __init__(self, params, what: str = ""):
        self.params = params
        omega, c = params.omega, params.c
        if 4.0 * omega < c * c:
            why = f"supercritical parameters 4*omega < c^2 ({4.0 * omega:g} < {c * c:g})"
        else:
            why = f"critical parameters 4*omega = c^2 with c <= 0 (c = {c:g})"
        msg = f"no nontrivial solitary wave exists for omega={omega:g}, c={c:g}: {why}"
        if what:
            msg = f"{what}: {msg}"
        super().__init__(msg)


class NoRoot(DomainError):
    """K(lambda f) = 0 has no root in (0, 1] because K(f) > 0."""


class ComplexInput(DomainError):
    """A real-valued field was required."""


class NotConverged(DomainError):
    """An iteration hit its budget; ``result`` holds the last iterate."""

    def __init__(self, msg, result=None):
        super().__init__(msg)
        self.result = result


class NotInKPlus(DomainError):
    """The field is not in the invariant set K+."""


class NonFinite(DomainError):
    """Time stepping produced NaN/Inf; ``trace`` holds everything up to the
    last finite snapshot."""

    def __init__(self, msg, trace=None, last_field=None):
        super().__init__(msg)
        self.trace = trace
        self.last_field = last_field


class FieldFormatError(OSError):
    """Malformed field-csv input (CLI exit status 2)."""
