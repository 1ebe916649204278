"""Running laws: seeded or exhaustive sweeps, optional worker processes, replay.

Case ``i`` of a seeded run is generated from ``derive(seed, i)`` alone, and
case ``i`` of an exhaustive run is the ``i``-th item of the law's
enumerator. Workers receive index ranges, rebuild their own cases and stop
at the first failure in their range; the report keeps the failure with the
smallest index. A run therefore gives the same report whatever the number
of workers.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .impl import Impl
from .registry import Case, Law, decode_case, encode_case, resolve
from .rng import SplitMix64, derive


@dataclass
class LawReport:
    law: str
    seed: int
    cases: int
    status: str
    counterexample: dict[str, Any] | None = None
    impl: str = "canonical"
    mode: str = "seeded"
    max_size: int | None = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict[str, Any]:
        return {"law": self.law, "seed": self.seed, "cases": self.cases, "status": self.status,
                "counterexample": self.counterexample, "impl": self.impl, "mode": self.mode,
                "max_size": self.max_size, "elapsed": round(self.elapsed, 4)}

    def summary(self) -> str:
        line = "%-24s %-4s %6d cases  %s  seed=%d  %.2fs" % (
            self.law, self.status, self.cases, self.mode, self.seed, self.elapsed)
        if self.counterexample is not None:
            line += "\n    case %d: %s" % (self.counterexample["case_index"],
                                          self.counterexample["detail"])
        return line


def case_at(lw: Law, seed: int, index: int, max_size: int | None = None) -> Case:
    """Case ``index`` of a seeded run."""
    return lw.gen(SplitMix64(derive(seed, index)), lw.bounds.with_max_size(max_size))


def check_case(lw: Law, case: Case, impl: Impl) -> str | None:
    """Run one check; an exception counts as a failure."""
    try:
        return lw.check(case, impl)
    except Exception as exc:  # noqa: BLE001 - any exception is a law failure
        return "raised %s: %s" % (type(exc).__name__, exc)


def _exhaustive_cases(lw: Law, max_size: int | None):
    if lw.exhaustive is None:
        raise ValueError("law %s has no exhaustive mode" % lw.id)
    bounds = lw.exhaustive_bounds or lw.bounds
    if max_size is not None and max_size < bounds.max_size:
        bounds = bounds.with_max_size(max_size)
    return lw.exhaustive(bounds)


def _scan(law_id: str, seed: int, start: int, stop: int | None, max_size: int | None,
          impl_name: str, exhaustive: bool) -> tuple[int, tuple[int, str, dict] | None]:
    """Check cases ``start..stop`` and return ``(count, first failure)``."""
    lw = resolve(law_id)
    impl = Impl(impl_name)
    if exhaustive:
        source = enumerate(itertools.islice(_exhaustive_cases(lw, max_size), start, stop), start)
    else:
        source = ((i, case_at(lw, seed, i, max_size)) for i in range(start, stop))
    count = 0
    for i, case in source:
        count += 1
        detail = check_case(lw, case, impl)
        if detail is not None:
            return count, (i, detail, encode_case(case))
    return count, None


def _count_exhaustive(lw: Law, max_size: int | None) -> int:
    return sum(1 for _ in _exhaustive_cases(lw, max_size))


def run_law(law_id: str, seed: int = 0, cases: int = 1000, max_size: int | None = None,
            impl: str = "canonical", exhaustive: bool = False, workers: int = 1) -> LawReport:
    """Run one law and report the first counterexample, if any.

    ``cases`` is ignored in exhaustive mode, which checks every enumerated
    case. ``max_size`` overrides the law's default size bound (and can only
    shrink an exhaustive sweep).
    """
    lw = resolve(law_id)
    Impl(impl)  # fail early on an unknown implementation name
    t0 = time.perf_counter()
    if exhaustive:
        total = _count_exhaustive(lw, max_size) if workers > 1 else None
    else:
        if cases < 0:
            raise ValueError("cases must be nonnegative")
        total = cases
    if workers <= 1 or total is None or total < 2 * workers:
        if total is None:
            count, failure = _scan(lw.id, seed, 0, None, max_size, impl, exhaustive)
        else:
            count, failure = _scan(lw.id, seed, 0, total, max_size, impl, exhaustive)
    else:
        chunk = -(-total // (workers * 4))
        bounds = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan, *zip(*[
                (lw.id, seed, s, e, max_size, impl, exhaustive) for s, e in bounds])))
        failures = [f for _, f in results if f is not None]
        failure = min(failures, key=lambda f: f[0]) if failures else None
        count = total
    if failure is not None:
        index, detail, inputs = failure
        count = index + 1
        cex = {"case_index": index, "inputs": inputs, "detail": detail}
    else:
        cex = None
    return LawReport(lw.id, seed, count, "fail" if failure else "pass", cex, impl,
                     "exhaustive" if exhaustive else "seeded", max_size,
                     time.perf_counter() - t0)


def replay(report: LawReport | dict[str, Any]) -> str | None:
    """Re-run a report's counterexample from its recorded inputs alone.

    Returns the failure description (``None`` if the case now passes).
    """
    doc = report.to_json() if isinstance(report, LawReport) else report
    cex = doc.get("counterexample")
    if cex is None:
        raise ValueError("the report has no counterexample to replay")
    lw = resolve(doc["law"])
    return check_case(lw, decode_case(cex["inputs"]), Impl(doc.get("impl", "canonical")))


def run_laws(law_ids, **kwargs) -> list[LawReport]:
    return [run_law(i, **kwargs) for i in law_ids]


__all__ = ["LawReport", "run_law", "run_laws", "replay", "case_at", "check_case"]
