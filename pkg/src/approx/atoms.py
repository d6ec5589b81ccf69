"""Atom families phi(x, v).

Each FamilyKind maps to a BaseAtom instance. register_atom() swaps the
implementation behind one of the existing tags; it does not add tags.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from src.models import FamilyKind


class BaseAtom(ABC):
    """Abstract base for all parametric atoms."""

    # Smallest admissible abscissa
    domain_min: float = 0.0
    # Abscissa where a pinned atom vanishes; None for raw atoms
    pin_abscissa: float | None = None
    # Whether v = 0 (the boundary limit) is admissible
    allows_zero: bool = False

    @abstractmethod
    def raw(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Unpinned atom value, broadcasting x against v."""
        ...

    def pinned(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        """raw(x, v) - raw(pin, v). Subclasses override with a cancellation-free form."""
        return self.raw(x, v) - self.raw(np.full_like(x, self.pin_abscissa, dtype=float), v)

    def __call__(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.pin_abscissa is None:
            return self.raw(x, v)
        return self.pinned(x, v)


class RationalAtom(BaseAtom):
    def __init__(self, pinned: bool):
        self.pin_abscissa = 1.0 if pinned else None
        self.domain_min = 1.0 if pinned else 0.0
        self.allows_zero = not pinned

    def raw(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        return 1.0 / (1.0 + v * x)

    def pinned(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        # 1/(1+vx) - 1/(1+v) over a common denominator; (1 - x) is exact at x = 1
        return v * (1.0 - x) / ((1.0 + v * x) * (1.0 + v))


class ExponentialAtom(BaseAtom):
    def __init__(self, pinned: bool):
        self.pin_abscissa = 0.0 if pinned else None
        self.domain_min = 0.0
        self.allows_zero = not pinned

    def raw(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        # Underflows to 0 for large v * x, which is the right limit
        return np.exp(-v * x)

    def pinned(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.expm1(-v * x)


_ATOMS: dict[FamilyKind, BaseAtom] = {
    FamilyKind.RATIONAL_RAW: RationalAtom(pinned=False),
    FamilyKind.EXP_RAW: ExponentialAtom(pinned=False),
    FamilyKind.RATIONAL_PINNED: RationalAtom(pinned=True),
    FamilyKind.EXP_PINNED: ExponentialAtom(pinned=True),
}


def get_atom(kind: FamilyKind) -> BaseAtom:
    return _ATOMS[kind]


def register_atom(kind: FamilyKind, atom: BaseAtom) -> BaseAtom:
    """Use `atom` for an existing family tag and return the one it replaces.

    FamilyKind is a closed enum, so this swaps the implementation behind
    one of the four tags; it cannot add a new family.
    """
    previous = _ATOMS[kind]
    _ATOMS[kind] = atom
    return previous
