"""
Construction service: the operations behind each command
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple
import logging

from app.core.exceptions import BudgetExceededError
from app.models.class_table import ClassTable
from app.models.schemas import StepStats
from app.models.types import display, sort_key
from app.services.morphisms import STAGES, iterate, iterate_steps
from app.services.oracle import oracle_relation, oracle_subtype
from app.services.relation import (
    SubtypingRelation,
    closure,
    initial_subtyping,
    subclassing_relation,
)
from app.utils.parser import parse_program, parse_type

logger = logging.getLogger(__name__)

DEMO_PROGRAMS: Dict[int, Tuple[str, int]] = {
    1: ("// one generic class, types of rank 0, 1 and 2\nclass C<T> extends Object {}\n", 2),
    2: (
        "// two generic classes, types of rank 0 and 1\n"
        "class C<T> extends Object {}\n"
        "class D<T> extends Object {}\n",
        1,
    ),
}


@dataclass(frozen=True)
class Mismatch:
    iteration: int
    sub: str
    sup: str
    construction: str
    oracle: str

    def describe(self) -> str:
        if self.construction in ("present", "absent"):
            return (
                f"iteration {self.iteration}: type {self.sub}: "
                f"construction={self.construction} oracle={self.oracle}"
            )
        return (
            f"iteration {self.iteration}: {self.sub} <: {self.sup}: "
            f"construction={self.construction} oracle={self.oracle}"
        )


@dataclass(frozen=True)
class VerificationReport:
    iterations_checked: int
    mismatch: Optional[Mismatch] = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None


class ConstructionService:
    """Parses programs, runs the construction and cross-checks it with the oracle"""

    def __init__(self, budget: Optional[int] = None):
        self.budget = budget

    def load_table(self, path: Optional[Path]) -> ClassTable:
        if path is None:
            raise ValueError("an input declaration file is required (-i FILE)")
        source = Path(path).read_text(encoding="latin-1")
        return parse_program(source)

    def check_budget(self, table: ClassTable) -> None:
        rank0 = len(initial_subtyping(table))
        if self.budget is not None and self.budget < rank0:
            raise BudgetExceededError(0, rank0, self.budget)

    def build(self, table: ClassTable, n: int, stage: str = "jsm") -> SubtypingRelation:
        """The relation after ``n`` steps, or one morphism's output over iteration n-1"""
        self.check_budget(table)
        if stage == "jsm":
            return iterate(table, n, self.budget)
        # Single morphism over the previous iteration
        source = iterate(table, n - 1, self.budget)
        return STAGES[stage](table, source)

    def check(self, table: ClassTable, left: str, right: str) -> bool:
        s = parse_type(left, table)
        t = parse_type(right, table)
        verdict = oracle_subtype(table, s, t)
        logger.debug("Checked subtyping", extra={"sub": display(s), "sup": display(t), "verdict": verdict})
        return verdict

    def stats(self, table: ClassTable, n: int) -> List[StepStats]:
        self.check_budget(table)
        rows: List[StepStats] = []
        previous = 0
        for k, r in enumerate(iterate_steps(table, n, self.budget)):
            rows.append(StepStats(
                iteration=k,
                carrier_size=len(r),
                new_types=len(r) - previous,
                hasse_edges=len(r.edges),
            ))
            previous = len(r)
        return rows

    def verify(self, table: ClassTable, n: int) -> VerificationReport:
        """Compare the closure of every constructed iteration with the oracle's"""
        self.check_budget(table)
        for k, constructed in enumerate(iterate_steps(table, n, self.budget)):
            expected = oracle_relation(table, k, self.budget)
            mismatch = self._first_difference(k, constructed, expected)
            if mismatch is not None:
                logger.warning("Construction disagrees with oracle", extra={"iteration": k, "detail": mismatch.describe()})
                return VerificationReport(iterations_checked=k + 1, mismatch=mismatch)
            logger.info("Iteration verified", extra={"iteration": k, "carrier_size": len(constructed)})
        return VerificationReport(iterations_checked=n + 1)

    @staticmethod
    def _first_difference(k: int, constructed: SubtypingRelation, expected: SubtypingRelation) -> Optional[Mismatch]:
        # Carriers first, then closures
        missing_types = constructed.carrier ^ expected.carrier
        if missing_types:
            t = min(missing_types, key=sort_key)
            return Mismatch(
                iteration=k,
                sub=display(t),
                sup=display(t),
                construction="present" if t in constructed.carrier else "absent",
                oracle="present" if t in expected.carrier else "absent",
            )
        built, oracle = closure(constructed), closure(expected)
        differing = built ^ oracle
        if not differing:
            return None
        s, t = min(differing, key=lambda pair: (sort_key(pair[0]), sort_key(pair[1])))
        return Mismatch(
            iteration=k,
            sub=display(s),
            sup=display(t),
            construction=str((s, t) in built).lower(),
            oracle=str((s, t) in oracle).lower(),
        )

    def demo(self, selector: int) -> Dict[str, SubtypingRelation]:
        """
        Built-in examples and their figure set.

        The first entry is the main relation; the others are the
        subclassing relation, the rank-0 relation and the standalone
        copy/flip/flat outputs over it.
        """
        if selector not in DEMO_PROGRAMS:
            raise ValueError(f"unknown demo {selector}; choose 1 or 2")
        source, n = DEMO_PROGRAMS[selector]
        # Main relation first, then the standalone figures
        table = parse_program(source)
        rank0 = initial_subtyping(table)
        prefix = f"example{selector}"
        return {
            prefix: iterate(table, n, self.budget),
            f"{prefix}-subclassing": subclassing_relation(table),
            f"{prefix}-rank0": rank0,
            f"{prefix}-covariant": STAGES["copy"](table, rank0),
            f"{prefix}-contravariant": STAGES["flip"](table, rank0),
            f"{prefix}-invariant": STAGES["flat"](table, rank0),
        }
