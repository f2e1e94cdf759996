"""Verification reports, their accumulator and the JSON schema."""

from __future__ import annotations

import enum
import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence, TypeVar

from .config import DEFAULT_SAMPLE, DEFAULT_SEED, EXHAUSTIVE_LIMIT, MAX_COUNTEREXAMPLES
from .errors import PreconditionError

T = TypeVar("T")


class Route(str, enum.Enum):
    KERNEL = "Kernel"
    EXHAUSTIVE = "Exhaustive"
    SAMPLED = "Sampled"
    CONSTRUCTED = "Constructed"
    MIXED = "Mixed"


REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "params", "verdict", "route", "counters", "counterexamples", "seed", "ms"],
    "properties": {
        "command": {"type": "string"},
        "params": {"type": "object"},
        "verdict": {"enum": ["pass", "fail"]},
        "route": {"type": "string"},
        "counters": {"type": "object", "additionalProperties": {"type": "integer"}},
        "counterexamples": {"type": "array"},
        "seed": {"type": ["integer", "null"]},
        "ms": {"type": "integer"},
        "reports": {"type": "array", "items": {"$ref": "#"}},
        "data": {"type": "object"},
    },
}


@dataclass
class Tally:
    """Mergeable accumulator of counters and indexed counterexamples."""

    counters: Counter = field(default_factory=Counter)
    failures: list[tuple[int, Any]] = field(default_factory=list)

    def bump(self, name: str, n: int = 1) -> None:
        self.counters[name] += n

    def fail(self, index: int, payload: Any) -> None:
        self.failures.append((index, payload))

    def merge(self, other: Tally) -> Tally:
        return Tally(self.counters + other.counters, sorted(self.failures + other.failures, key=lambda f: f[0]))

    def to_report(self, command: str, params: dict, route: Route, seed: int | None = None) -> Report:
        failures = sorted(self.failures, key=lambda f: f[0])
        counters = {k: int(v) for k, v in self.counters.items()}
        counters["counterexamples_total"] = len(failures)
        return Report(
            command=command,
            params=params,
            route=route,
            counters=counters,
            counterexamples=[p for _, p in failures[:MAX_COUNTEREXAMPLES]],
            seed=seed,
        )


@dataclass
class Report:
    command: str
    params: dict
    route: Route
    counters: dict[str, int]
    counterexamples: list
    seed: int | None = None
    ms: int = 0
    reports: list[Report] | None = None
    data: dict | None = None

    def __post_init__(self) -> None:
        if (self.seed is not None) != (self.route is Route.SAMPLED):
            raise ValueError("a seed is recorded exactly when the route is Sampled")

    @property
    def passed(self) -> bool:
        if self.reports is not None and not all(r.passed for r in self.reports):
            return False
        return not self.counterexamples

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "params": self.params,
            "verdict": self.verdict,
            "route": self.route.value,
            "counters": dict(sorted(self.counters.items())),
            "counterexamples": self.counterexamples,
            "seed": self.seed,
            "ms": self.ms,
        }
        if self.reports is not None:
            out["reports"] = [r.to_dict() for r in self.reports]
        if self.data is not None:
            out["data"] = self.data
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"{self.command} {_fmt_params(self.params)}"]
        lines.append(f"  verdict: {self.verdict.upper()}   route: {self.route.value}")
        if self.seed is not None:
            lines.append(f"  seed: {self.seed}")
        for k, v in sorted(self.counters.items()):
            lines.append(f"  {k:<32} {v}")
        for k, v in sorted((self.data or {}).items()):
            lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
        for ce in self.counterexamples:
            lines.append(f"  counterexample: {json.dumps(ce, sort_keys=True)}")
        if self.ms:
            lines.append(f"  ms: {self.ms}")
        for r in self.reports or ():
            lines.extend("  " + line for line in r.to_text().splitlines())
        return "\n".join(lines)


def _fmt_params(params: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in sorted(params.items()))


def aggregate(command: str, params: dict, reports: Sequence[Report]) -> Report:
    counters = Counter()
    counters["reports"] = len(reports)
    counters["reports_passed"] = sum(r.passed for r in reports)
    failing = [{"command": r.command, "params": r.params} for r in reports if not r.passed]
    return Report(
        command=command,
        params=params,
        route=Route.MIXED,
        counters=dict(counters),
        counterexamples=failing[:MAX_COUNTEREXAMPLES],
        reports=list(reports),
    )


# ---------------------------------------------------------------------------
# sweep helpers


def resolve_route(route: str | Route | None, population: int, allowed: Iterable[Route]) -> Route:
    """Pick the sweep route; ``auto`` is exhaustive up to the fixed limit, sampled above."""
    allowed = tuple(allowed)
    if route in (None, "auto"):
        if Route.EXHAUSTIVE in allowed and population <= EXHAUSTIVE_LIMIT:
            return Route.EXHAUSTIVE
        if Route.SAMPLED in allowed:
            return Route.SAMPLED
        return allowed[0]
    r = Route(route.capitalize() if isinstance(route, str) else route)
    if r not in allowed:
        raise PreconditionError(
            f"route {r.value} not available here; choose from {', '.join(a.value for a in allowed)}"
        )
    return r


def population(n_bits: int, route: Route, seed: int | None, sample: int | None) -> list[int]:
    """All ``2**n_bits`` codes, or a seeded sorted sample of them."""
    total = 1 << n_bits
    if route is Route.EXHAUSTIVE:
        return list(range(total))
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    size = min(DEFAULT_SAMPLE if sample is None else sample, total)
    return sorted(rng.sample(range(total), size))


def group_by(items: Iterable[T], key: Callable[[T], Hashable]) -> list[list[T]]:
    """Group items by key, groups in order of first appearance."""
    groups: dict[Hashable, list[T]] = defaultdict(list)
    for it in items:
        groups[key(it)].append(it)
    return list(groups.values())


def group_pairs(groups: Iterable[list[T]]) -> Iterator[tuple[T, T]]:
    """Distinct unordered pairs inside each group."""
    for g in groups:
        for i in range(len(g)):
            for j in range(i + 1, len(g)):
                yield g[i], g[j]
