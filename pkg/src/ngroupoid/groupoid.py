"""Material groupoids over a finite point set.

An arrow is an invertible 3x3 matrix between two labelled points.  A
constituent groupoid is given generatively: one implant matrix per point
(absent where the constituent is defective) plus a finite symmetry group of
its archetype.  Every arrow set is then the finite coset

    P_XY = { K(Y) @ g @ inv(K(X)) : g in group }

which is empty as soon as either implant is missing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CompositionError, GroupValidationError, UnknownBasePointError
from .matrices import (
    DEFAULT_TOL,
    IDENTITY,
    as_matrix,
    check_invertible,
    matrices_close,
)

Label = str | int


@dataclass(frozen=True, eq=False)
class Arrow:
    source: Label
    target: Label
    weight: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "weight", check_invertible(self.weight, "arrow weight")
        )

    def __repr__(self):
        return f"Arrow({self.source!r} -> {self.target!r})"


def unit_arrow(point: Label) -> Arrow:
    return Arrow(point, point, IDENTITY.copy())


def inverse_arrow(a: Arrow) -> Arrow:
    return Arrow(a.target, a.source, np.linalg.inv(a.weight))


def compose_arrows(b: Arrow, a: Arrow) -> Arrow:
    """b after a; defined when a ends where b starts."""
    if a.target != b.source:
        raise CompositionError(
            f"cannot compose: first arrow ends at {a.target!r}, "
            f"second starts at {b.source!r}"
        )
    return Arrow(a.source, b.target, b.weight @ a.weight)


def arrows_close(a: Arrow, b: Arrow, tol: float = DEFAULT_TOL) -> bool:
    return (
        a.source == b.source
        and a.target == b.target
        and matrices_close(a.weight, b.weight, tol)
    )


def _preset_groups() -> dict[str, list[np.ndarray]]:
    ident = np.eye(3)
    rz90 = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    rz180 = rz90 @ rz90
    rz270 = rz90 @ rz180
    return {
        "trivial": [ident],
        "cyclic_z_2": [ident, rz180],
        "cyclic_z_4": [ident, rz90, rz180, rz270],
        "orthorhombic": [
            ident,
            np.diag([1.0, -1.0, -1.0]),
            np.diag([-1.0, 1.0, -1.0]),
            np.diag([-1.0, -1.0, 1.0]),
        ],
    }


SYMMETRY_PRESETS = tuple(sorted(_preset_groups()))


class SymmetryGroup:
    """Finite list of invertible 3x3 matrices forming a group.

    Validated on construction: contains the identity, is closed under
    product and inverse, and has no duplicate elements, all within the
    comparison tolerance.
    """

    def __init__(self, elements: Iterable[object], name: str = "",
                 tol: float = DEFAULT_TOL):
        self.name = name
        self.elements: tuple[np.ndarray, ...] = tuple(
            check_invertible(e, "group element") for e in elements
        )
        self._validate(tol)

    @classmethod
    def from_spec(cls, spec: object, tol: float = DEFAULT_TOL) -> "SymmetryGroup":
        """Accepts a preset name or an explicit element list."""
        if isinstance(spec, str):
            presets = _preset_groups()
            if spec not in presets:
                raise GroupValidationError(
                    f"unknown symmetry preset {spec!r}; "
                    f"known: {', '.join(SYMMETRY_PRESETS)}"
                )
            return cls(presets[spec], name=spec, tol=tol)
        if isinstance(spec, (list, tuple)):
            return cls(spec, tol=tol)
        raise GroupValidationError(
            f"symmetry must be a preset name or a matrix list, got {type(spec).__name__}"
        )

    def _validate(self, tol: float) -> None:
        elems = self.elements
        if not elems:
            raise GroupValidationError("symmetry group is empty")
        if not any(matrices_close(g, IDENTITY, tol) for g in elems):
            raise GroupValidationError("symmetry group lacks the identity")
        for i, g in enumerate(elems):
            for h in elems[i + 1:]:
                if matrices_close(g, h, tol):
                    raise GroupValidationError("duplicate group elements")
        for g in elems:
            if not self._contains(np.linalg.inv(g), tol):
                raise GroupValidationError("group not closed under inverse")
            for h in elems:
                if not self._contains(g @ h, tol):
                    raise GroupValidationError("group not closed under product")

    def _contains(self, m: np.ndarray, tol: float) -> bool:
        return any(matrices_close(m, g, tol) for g in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        label = self.name or f"{len(self.elements)} elements"
        return f"SymmetryGroup({label})"


@dataclass
class ConstituentGroupoid:
    """One constituent's material groupoid, given by implants and symmetries.

    ``implants`` maps a point label to the transplant matrix from the
    archetype; points absent from the map have empty arrow sets.
    """

    name: str
    base: tuple[Label, ...]
    implants: dict[Label, np.ndarray]
    group: SymmetryGroup
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        self.base = tuple(self.base)
        bad = [p for p in self.implants if p not in self.base]
        if bad:
            raise UnknownBasePointError(
                f"constituent {self.name!r}: implants at undeclared points {bad!r}"
            )
        self.implants = {
            p: check_invertible(k, f"implant at {p!r}")
            for p, k in self.implants.items()
        }

    def _check_point(self, p: Label) -> None:
        if p not in self.base:
            raise UnknownBasePointError(
                f"point {p!r} not in base of constituent {self.name!r}"
            )

    def arrow_set(self, X: Label, Y: Label) -> list[Arrow]:
        """All arrows X -> Y, in symmetry-group enumeration order.

        Empty when either implant is missing; deduplicated within tolerance
        (relevant when an implant commutes with part of the group).
        """
        self._check_point(X)
        self._check_point(Y)
        kx = self.implants.get(X)
        ky = self.implants.get(Y)
        if kx is None or ky is None:
            return []
        kx_inv = np.linalg.inv(kx)
        out: list[Arrow] = []
        for g in self.group:
            w = ky @ g @ kx_inv
            if not any(matrices_close(w, o.weight, self.tolerance) for o in out):
                out.append(Arrow(X, Y, w))
        return out

    def contains_arrow(self, a: Arrow, tol: float | None = None) -> bool:
        tol = self.tolerance if tol is None else tol
        for cand in self.arrow_set(a.source, a.target):
            if matrices_close(a.weight, cand.weight, tol):
                return True
        return False

    def is_transitive(self) -> bool:
        """True iff every ordered pair has a nonempty arrow set.

        Equivalent to the implant map being total.
        """
        if not self.base:
            raise ValueError(f"constituent {self.name!r} has an empty base")
        return all(p in self.implants for p in self.base)
