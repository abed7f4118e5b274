"""Error kinds shared across the package.

Every failure that is part of a documented contract raises :class:`IwkError`
with a stable machine-readable ``code``; the CLI surfaces these codes verbatim
and maps them to exit status 1.
"""

from __future__ import annotations


class IwkError(Exception):
    """An error with a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def err(code: str, message: str) -> IwkError:
    return IwkError(code, message)
