"""
Sufficient conditions under which a single sigmoid-type layer trained by
adaptive gradient descent memorizes its training set.

Each clause is a ``ClauseCheck``; ``AssumptionPipeline`` runs them all and
collects a report, so a failing clause never hides the others.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from memolab.linear_fc import TrainingSet

from .activation import Activation

logger = logging.getLogger(__name__)

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class ClauseResult:
    """Outcome of one clause; ``cases`` maps coordinate → matched shape case."""

    clause: str
    passed: bool
    detail: str
    failing_coordinates: tuple[int, ...] = ()
    cases: dict[int, str] = field(default_factory=dict)


@dataclass(frozen=True)
class AssumptionReport:
    clauses: tuple[ClauseResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def clause(self, name: str) -> ClauseResult:
        for result in self.clauses:
            if result.clause == name:
                return result
        raise KeyError(name)

    def failures(self) -> list[str]:
        return [f"({c.clause}) {c.detail}" for c in self.clauses if not c.passed]


class ClauseCheck(ABC):
    """One clause of the memorization assumption."""

    @abstractmethod
    def check(self, ts: TrainingSet, phi: Activation) -> ClauseResult:
        """
        Evaluate this clause on a training set.

        Args:
            ts: Training examples
            phi: Activation of the single layer

        Returns:
            The clause result, with failing coordinates when it fails
        """
        pass

    @abstractmethod
    def get_clause_name(self) -> str:
        """Return the clause label used in reports and logs."""
        pass


class OpenUnitCubeCheck(ClauseCheck):
    """Every coordinate of every example lies strictly inside (0, 1)."""

    def check(self, ts: TrainingSet, phi: Activation) -> ClauseResult:
        x = ts.examples
        bad = np.flatnonzero(np.any((x <= 0.0) | (x >= 1.0), axis=0))
        if bad.size:
            return ClauseResult(
                self.get_clause_name(),
                False,
                f"coordinates {bad.tolist()} leave the open interval (0, 1)",
                tuple(int(j) for j in bad),
            )
        return ClauseResult(self.get_clause_name(), True, "all entries in (0, 1)")

    def get_clause_name(self) -> str:
        return "a"


class OneSidedCoordinateCheck(ClauseCheck):
    """For each coordinate, all examples sit strictly on one side of φ(0)."""

    def check(self, ts: TrainingSet, phi: Activation) -> ClauseResult:
        pivot = phi.value_at_zero
        x = ts.examples
        below = np.all(x < pivot, axis=0)
        above = np.all(x > pivot, axis=0)
        bad = np.flatnonzero(~(below | above))
        if bad.size:
            return ClauseResult(
                self.get_clause_name(),
                False,
                f"coordinates {bad.tolist()} straddle or touch φ(0) = {pivot:g}",
                tuple(int(j) for j in bad),
            )
        return ClauseResult(self.get_clause_name(), True, f"one-sided around {pivot:g}")

    def get_clause_name(self) -> str:
        return "b"


class CurvatureCheck(ClauseCheck):
    """
    Shape of φ between 0 and the largest pre-image of each coordinate.

    For a positive pre-image φ must be strictly convex and decreasing or
    strictly concave and increasing on [0, p]; for a negative one, strictly
    convex and increasing or strictly concave and decreasing on [p, 0].
    Shape is read from first and second differences on a uniform grid.
    """

    def __init__(self, samples: int = 1000, tol: float = 1e-9):
        self.samples = samples
        self.tol = tol

    def _shape(self, phi: Activation, lo: float, hi: float) -> set[str]:
        grid = np.linspace(lo, hi, self.samples)
        h = grid[1] - grid[0]
        y = phi(grid)
        d1 = np.diff(y)
        curvature = np.diff(y, 2) / (h * h)
        floor = max(self.tol, 64.0 * EPS * float(np.max(np.abs(y))) / (h * h))
        shape = set()
        if np.all(d1 > 0.0):
            shape.add("increasing")
        if np.all(d1 < 0.0):
            shape.add("decreasing")
        if curvature.min() >= -floor and curvature.max() > floor:
            shape.add("convex")
        if curvature.max() <= floor and curvature.min() < -floor:
            shape.add("concave")
        return shape

    def check(self, ts: TrainingSet, phi: Activation) -> ClauseResult:
        failing: list[int] = []
        notes: list[str] = []
        cases: dict[int, str] = {}
        for j in range(ts.d):
            column = ts.examples[:, j]
            if not np.all(phi.in_range(column)):
                failing.append(j)
                notes.append(f"x_{j} outside the range of φ")
                continue
            pre = phi.inverse(column)
            p = float(pre[np.argmax(np.abs(pre))])
            if p == 0.0:
                failing.append(j)
                notes.append(f"x_{j} has a zero pre-image")
                continue
            shape = self._shape(phi, min(0.0, p), max(0.0, p))
            if p > 0.0:
                allowed = (("convex", "decreasing"), ("concave", "increasing"))
            else:
                allowed = (("convex", "increasing"), ("concave", "decreasing"))
            matched = next((c for c in allowed if set(c) <= shape), None)
            if matched is None:
                failing.append(j)
                notes.append(f"x_{j}: φ is {sorted(shape) or 'flat'} on the interval")
            else:
                cases[j] = "-".join(matched)
        if failing:
            return ClauseResult(
                self.get_clause_name(), False, "; ".join(notes), tuple(failing), cases
            )
        return ClauseResult(
            self.get_clause_name(), True, "curvature conditions hold", (), cases
        )

    def get_clause_name(self) -> str:
        return "c"


class AssumptionPipeline:
    """Runs every clause check and gathers the results into one report."""

    def __init__(self, checks: list[ClauseCheck]):
        self.checks = checks

    @classmethod
    def default(cls) -> "AssumptionPipeline":
        return cls([OpenUnitCubeCheck(), OneSidedCoordinateCheck(), CurvatureCheck()])

    def run_pipeline(self, ts: TrainingSet, phi: Activation) -> AssumptionReport:
        results = []
        for check in self.checks:
            result = check.check(ts, phi)
            logger.debug(
                "clause (%s): %s: %s",
                check.get_clause_name(),
                "pass" if result.passed else "fail",
                result.detail,
            )
            results.append(result)
        return AssumptionReport(tuple(results))


def check_assumption1(ts: TrainingSet, phi: Activation) -> AssumptionReport:
    """Evaluate all three clauses of the memorization assumption."""
    return AssumptionPipeline.default().run_pipeline(ts, phi)
