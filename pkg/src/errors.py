"""Exceptions raised by the approximation pipeline."""

from __future__ import annotations


class ApproxInputError(ValueError):
    """Input rejected by a domain check; the message names the constraint."""


class SelectionError(LookupError):
    """No solver iteration reached the requested number of terms."""

    def __init__(self, m: int, attained: list[int]):
        self.m = m
        self.attained = sorted(set(attained))
        super().__init__(
            f"no NNLS iteration has support size m={m}; "
            f"attained support sizes: {self.attained or 'none'}"
        )
