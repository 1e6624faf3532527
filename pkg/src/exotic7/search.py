"""Enumeration of parameter boxes and harvesting of homotopy spheres.

Validity is a per-triple condition, so the valid a-triples and b-triples
are listed separately and the box is their product.  Entries come out in
lexicographic order of (a1, a2, a3, b1, b2, b3) whatever the worker count:
chunks are evaluated in a process pool and merged in submission order.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import ConsistencyError, Exotic7Error, InvalidInput
from .invariants import (
    ManifoldParams,
    ParamTriple,
    classify,
    m_invariant,
    n_invariant,
    triple_violations,
    validate,
)

PARAM_NAMES = ("a1", "a2", "a3", "b1", "b2", "b3")
JOBS_ENV = "EXOTIC7_JOBS"


def residues_1_mod_4(lo: int, hi: int) -> range:
    """The integers in [lo, hi] congruent to 1 mod 4, ascending."""
    start = lo + (1 - lo) % 4
    return range(start, hi + 1, 4)


@dataclass(frozen=True)
class SearchSpec:
    """A box of parameters plus output filters.

    ``ranges`` maps each of a1..b3 to an inclusive ``(lo, hi)`` interval;
    missing names default to ``(1, 1)``.
    """

    ranges: dict = field(default_factory=dict)
    require_sphere: bool = False
    require_nonzero: bool = False
    target_classes: Optional[frozenset] = None
    limit: Optional[int] = None

    def __post_init__(self):
        unknown = set(self.ranges) - set(PARAM_NAMES)
        if unknown:
            raise InvalidInput(f"unknown parameter names: {sorted(unknown)}")
        for name in PARAM_NAMES:
            lo, hi = self.interval(name)
            if lo > hi:
                raise InvalidInput(f"empty range for {name}: {lo}..{hi}")
        if self.limit is not None and self.limit < 1:
            raise InvalidInput(f"limit must be at least 1, got {self.limit}")
        if self.target_classes is not None:
            object.__setattr__(self, "target_classes", frozenset(k % 28 for k in self.target_classes))

    def interval(self, name: str) -> tuple[int, int]:
        lo, hi = self.ranges.get(name, (1, 1))
        return int(lo), int(hi)

    def axis(self, name: str) -> range:
        return residues_1_mod_4(*self.interval(name))

    def box_size(self) -> int:
        size = 1
        for name in PARAM_NAMES:
            size *= len(self.axis(name))
        return size


def _valid_triples(spec: SearchSpec, side: str) -> list[tuple[int, int, int]]:
    axes = [spec.axis(f"{side}{i}") for i in (1, 2, 3)]
    return [c for c in itertools.product(*axes) if not triple_violations(c)]


def enumerate_valid(spec: SearchSpec) -> Iterator[ManifoldParams]:
    """Valid parameter pairs of the box, in lexicographic order."""
    bs = [ParamTriple(*c) for c in _valid_triples(spec, "b")]
    for a in _valid_triples(spec, "a"):
        pa = ParamTriple(*a)
        for pb in bs:
            yield ManifoldParams(pa, pb)


@dataclass(frozen=True)
class SearchEntry:
    a: tuple[int, int, int]
    b: tuple[int, int, int]
    n: int
    m: Fraction
    mu: Optional[Fraction] = None
    oriented_class: Optional[int] = None
    error: Optional[str] = None


@dataclass
class SearchStats:
    scanned: int = 0
    valid: int = 0
    nonzero_n: int = 0
    spheres: int = 0
    matched: int = 0
    emitted: int = 0
    errors: int = 0
    error_messages: list = field(default_factory=list)


@dataclass
class SearchResult:
    entries: list
    class_coverage: dict
    stats: SearchStats
    missing_classes: Optional[list] = None


def evaluate(p: ManifoldParams) -> SearchEntry:
    """n, m and (for n != 0) mu and the sphere class of one parameter pair."""
    a, b = p.a.as_tuple(), p.b.as_tuple()
    n = n_invariant(p)
    m = m_invariant(p)
    if n == 0:
        return SearchEntry(a, b, n, m)
    try:
        cls = classify(p)
    except Exotic7Error as exc:
        return SearchEntry(a, b, n, m, error=f"{type(exc).__name__}: {exc}")
    return SearchEntry(a, b, n, m, cls.mu, cls.oriented_class)


def _evaluate_chunk(pairs: list) -> list[SearchEntry]:
    return [evaluate(ManifoldParams(ParamTriple(*a), ParamTriple(*b))) for a, b in pairs]


def _matches(spec: SearchSpec, entry: SearchEntry) -> bool:
    if entry.error is not None:
        return False
    if spec.require_sphere and abs(entry.n) != 1:
        return False
    if spec.require_nonzero and entry.n == 0:
        return False
    if spec.target_classes is not None and entry.oriented_class not in spec.target_classes:
        return False
    return True


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise InvalidInput(f"{JOBS_ENV} must be an integer, got {raw!r}") from None
    return 1


def _chunks(spec: SearchSpec) -> list[list]:
    # one chunk per a-triple: its D(a) is computed once per worker
    bs = _valid_triples(spec, "b")
    return [[(a, b) for b in bs] for a in _valid_triples(spec, "a")]


def run_search(spec: SearchSpec, jobs: Optional[int] = None) -> SearchResult:
    """Evaluate every valid pair of the box and collect the matching entries.

    Per-entry failures are counted in ``stats`` and never abort the scan.
    The output does not depend on ``jobs``.
    """
    jobs = default_jobs() if jobs is None else max(1, jobs)
    chunks = _chunks(spec)
    if jobs == 1 or len(chunks) < 2:
        evaluated: Iterable[list] = map(_evaluate_chunk, chunks)
        return _collect(spec, evaluated)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return _collect(spec, pool.map(_evaluate_chunk, chunks))


def _collect(spec: SearchSpec, evaluated: Iterable[list]) -> SearchResult:
    stats = SearchStats(scanned=spec.box_size())
    entries: list[SearchEntry] = []
    coverage: dict[int, SearchEntry] = {}
    for chunk in evaluated:
        for entry in chunk:
            stats.valid += 1
            if entry.n != 0:
                stats.nonzero_n += 1
            if entry.error is not None:
                stats.errors += 1
                stats.error_messages.append(f"a={entry.a} b={entry.b}: {entry.error}")
                continue
            if abs(entry.n) == 1:
                stats.spheres += 1
            if not _matches(spec, entry):
                continue
            stats.matched += 1
            if entry.oriented_class is not None:
                coverage.setdefault(entry.oriented_class, entry)
            if spec.limit is None or len(entries) < spec.limit:
                entries.append(entry)
    stats.emitted = len(entries)
    missing = None
    if spec.target_classes is not None:
        missing = sorted(spec.target_classes - set(coverage))
    return SearchResult(
        entries=entries,
        class_coverage=dict(sorted(coverage.items())),
        stats=stats,
        missing_classes=missing,
    )


# -- the non-Milnor subfamily -----------------------------------------------

def corollary_params(k: int, l: int, r: int, s: int) -> ManifoldParams:
    """a = (-3, 12k - 3, 12l + 1), b = (1, 4r + 1, 4s + 1)."""
    return validate((-3, 12 * k - 3, 12 * l + 1), (1, 4 * r + 1, 4 * s + 1))


def corollary_table(r_values: Iterable[int]) -> list[tuple[int, int]]:
    """(r, 28 mu mod 28) along a = (-3, -3, 1), b = (1, 4r + 1, 4r + 1)."""
    rows = []
    for r in r_values:
        p = corollary_params(0, 0, r, r)
        cls = classify(p)
        if not cls.is_homotopy_sphere:
            raise ConsistencyError(f"r = {r}: expected |n| = 1, got n = {n_invariant(p)}")
        rows.append((r, cls.oriented_class))
    return rows
