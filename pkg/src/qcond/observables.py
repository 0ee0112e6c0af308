"""Observables: finite effect-valued measures on a labelled outcome set.

A :class:`SubObservable` is a family of effects summing to at most the
identity; an :class:`Observable` sums to the identity exactly (within
tolerance).  Outcome labels are strings and keep their declared order, so
every derived quantity (distributions, stochastic operators, serialized
reports) is deterministic.  Real values live in a separate map
(:class:`RealValuedObservable`) so the same effect family can be re-valued
without rebuilding it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import math

import numpy as np

from .core import Violation, prob, validate_effect
from .errors import DimMismatchError, UnknownLabelError, ZeroProbabilityConditionError
from .linalg import DEFAULT_TOL, Tolerance, as_matrix, commutator, frobenius, trace_product
from .operations import MeasurementContext, apply

__all__ = [
    "EXTENSION_LABEL",
    "SubObservable",
    "Observable",
    "RealValuedObservable",
    "validate_subobservable",
    "validate_observable",
    "povm",
    "distribution",
    "stochastic_operator",
    "expectation",
    "conditional_expectation",
    "minimal_extension",
    "is_commuting",
    "jointly_commuting",
]

#: Outcome label reserved for the residual effect adjoined by minimal_extension.
EXTENSION_LABEL = "⊥"


@dataclass(frozen=True, eq=False)
class SubObservable:
    """Ordered outcome labels with one effect per label (sum <= I)."""

    outcomes: tuple[str, ...]
    effects: dict[str, np.ndarray] = field(repr=False)

    def __init__(self, outcomes: Sequence[str], effects: Mapping[str, np.ndarray]) -> None:
        labels = tuple(str(x) for x in outcomes)
        if len(set(labels)) != len(labels):
            raise ValueError("outcome labels must be unique")
        if set(labels) != set(effects.keys()):
            raise UnknownLabelError("effects must be keyed exactly by the outcome labels")
        mats = {x: as_matrix(effects[x]) for x in labels}
        dims = {m.shape[0] for m in mats.values()}
        if len(dims) != 1:
            raise DimMismatchError(f"effects have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "outcomes", labels)
        object.__setattr__(self, "effects", mats)

    @property
    def dim(self) -> int:
        return next(iter(self.effects.values())).shape[0]

    def effect(self, x: str) -> np.ndarray:
        if x not in self.effects:
            raise UnknownLabelError(f"unknown outcome label {x!r}")
        return self.effects[x]

    def total(self) -> np.ndarray:
        """Sum of all effects."""
        return sum(self.effects[x] for x in self.outcomes)


class Observable(SubObservable):
    """A sub-observable whose effects sum to the identity."""


@dataclass(frozen=True, eq=False)
class RealValuedObservable:
    """An observable with a real value attached to each outcome."""

    observable: Observable
    values: dict[str, float]

    def __init__(self, observable: Observable, values: Mapping[str, float]) -> None:
        vals = {str(x): float(values[x]) for x in observable.outcomes}
        for x, v in vals.items():
            if not math.isfinite(v):
                raise ValueError(f"value for outcome {x!r} is not finite")
        object.__setattr__(self, "observable", observable)
        object.__setattr__(self, "values", vals)

    @property
    def outcomes(self) -> tuple[str, ...]:
        return self.observable.outcomes

    @property
    def effects(self) -> dict[str, np.ndarray]:
        return self.observable.effects

    @property
    def dim(self) -> int:
        return self.observable.dim


def validate_subobservable(a: SubObservable, tol: Tolerance = DEFAULT_TOL) -> list[Violation]:
    """Each effect valid, and the total bounded by the identity."""
    out = []
    for x in a.outcomes:
        out += [Violation(f"effect[{x}].{v.invariant}", v.magnitude) for v in validate_effect(a.effects[x], tol)]
    total = a.total()
    w = np.linalg.eigvalsh((total + total.conj().T) / 2.0)
    if w[-1] > 1.0 + tol.psd_tol:
        out.append(Violation("total-below-identity", float(w[-1] - 1.0)))
    return out


def validate_observable(a: Observable, tol: Tolerance = DEFAULT_TOL) -> list[Violation]:
    """Each effect valid, and the total equal to the identity."""
    out = []
    for x in a.outcomes:
        out += [Violation(f"effect[{x}].{v.invariant}", v.magnitude) for v in validate_effect(a.effects[x], tol)]
    dev = frobenius(a.total() - np.eye(a.dim))
    if dev > tol.eq_tol:
        out.append(Violation("total-is-identity", dev))
    return out


def povm(a: SubObservable, delta: Iterable[str]) -> np.ndarray:
    """The effect of an event: sum of the effects over a set of labels."""
    labels = list(delta)
    for x in labels:
        if x not in a.effects:
            raise UnknownLabelError(f"unknown outcome label {x!r}")
    out = np.zeros((a.dim, a.dim), dtype=np.complex128)
    for x in labels:
        out += a.effects[x]
    return out


def distribution(rho, a: SubObservable, tol: Tolerance = DEFAULT_TOL) -> dict[str, float]:
    """Outcome probabilities in declared label order."""
    rho = as_matrix(rho)
    return {x: prob(rho, a.effects[x], tol) for x in a.outcomes}


def _unwrap(b) -> tuple[Observable, dict[str, float]]:
    if not isinstance(b, RealValuedObservable):
        raise TypeError("a real-valued observable is required here")
    return b.observable, b.values


def stochastic_operator(b: RealValuedObservable) -> np.ndarray:
    """The Hermitian operator sum_y y * B_y whose moments give B's statistics."""
    obs, values = _unwrap(b)
    out = np.zeros((obs.dim, obs.dim), dtype=np.complex128)
    for y in obs.outcomes:
        out += values[y] * obs.effects[y]
    return out


def expectation(rho, b: RealValuedObservable) -> float:
    """tr(rho Btilde)."""
    return trace_product(as_matrix(rho), stochastic_operator(b)).real


def conditional_expectation(
    rho, ctx: MeasurementContext, b: RealValuedObservable, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Expectation of b given ctx's outcome occurred: tr[op(rho) Btilde] / tr[rho a]."""
    p = prob(rho, ctx.effect, tol)
    if p <= tol.eq_tol:
        raise ZeroProbabilityConditionError(f"conditioning effect has probability {p:.3e}")
    return trace_product(apply(ctx.op, rho), stochastic_operator(b)).real / p


def minimal_extension(a: SubObservable, tol: Tolerance = DEFAULT_TOL) -> Observable:
    """Complete a sub-observable to an observable.

    If the residual I - total is negligible the family is already complete;
    otherwise the residual effect is adjoined under the reserved label.
    """
    residual = np.eye(a.dim) - a.total()
    if frobenius(residual) <= tol.eq_tol:
        return Observable(a.outcomes, a.effects)
    if EXTENSION_LABEL in a.outcomes:
        raise ValueError(f"label {EXTENSION_LABEL!r} is reserved for the extension outcome")
    effects = dict(a.effects)
    effects[EXTENSION_LABEL] = residual
    return Observable(a.outcomes + (EXTENSION_LABEL,), effects)


def is_commuting(a: SubObservable, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Do all effects of the family commute with each other?"""
    mats = [a.effects[x] for x in a.outcomes]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if frobenius(commutator(mats[i], mats[j])) > tol.eq_tol:
                return False
    return True


def jointly_commuting(observables: Sequence[SubObservable], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Do all effects across all the families commute pairwise?

    This subsumes each family being commuting on its own.
    """
    mats = [o.effects[x] for o in observables for x in o.outcomes]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if frobenius(commutator(mats[i], mats[j])) > tol.eq_tol:
                return False
    return True
