from __future__ import annotations

from dataclasses import dataclass


class ValidationError(ValueError):
    """Raised when input data violates a structural invariant."""

    def __init__(self, message: str, locus: str = ""):
        super().__init__(f"{locus}: {message}" if locus else message)
        self.message = message
        self.locus = locus


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = ""
    locus: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.locus}: {self.message}" if self.locus else self.message

    def raise_for_error(self) -> None:
        if not self.ok:
            raise ValidationError(self.message, self.locus)


OK = ValidationReport(True)


def fail(message: str, locus: str = "") -> ValidationReport:
    return ValidationReport(False, message, locus)


def report_from(check) -> ValidationReport:
    """Run ``check()`` and turn a raised :class:`ValidationError` into a report."""
    try:
        check()
    except ValidationError as err:
        return fail(err.message, err.locus)
    return OK
