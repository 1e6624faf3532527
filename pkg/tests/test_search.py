import itertools

import pytest
from hypothesis import given, strategies as st

from exotic7.errors import InvalidInput
from exotic7.invariants import NON_MILNOR_CLASSES, n_invariant, triple_violations, validate
from exotic7.search import (
    SearchSpec,
    corollary_params,
    corollary_table,
    default_jobs,
    enumerate_valid,
    residues_1_mod_4,
    run_search,
)

COROLLARY_R = (-3, -1, 1, 2, 4, 8, 11, 15)
COROLLARY_CLASSES = {-3: 16, -1: 9, 1: 26, 2: 19, 4: 2, 8: 12, 11: 23, 15: 5}


def corollary_oracle(r):
    """28 mu on the r-family by direct reduction: n = -1, m = 4r^2 + 2r + 1,
    D(-3,-3,1) = -1/28, D(1,*,*) = 0, so 28 mu = 9 (m^2 - 1) / 8 mod 28."""
    return (9 * r * (2 * r + 1) * (2 * r * r + r + 1) // 2) % 28


# -- enumeration ------------------------------------------------------------

@given(st.integers(-60, 60), st.integers(0, 40))
def test_residues(lo, width):
    hi = lo + width
    assert list(residues_1_mod_4(lo, hi)) == [v for v in range(lo, hi + 1) if v % 4 == 1]


def test_single_entry_box():
    out = list(enumerate_valid(SearchSpec()))
    assert [(p.a.as_tuple(), p.b.as_tuple()) for p in out] == [((1, 1, 1), (1, 1, 1))]


def test_box_without_residues_is_empty():
    assert list(enumerate_valid(SearchSpec({"a1": (3, 3)}))) == []


def test_gcd_failures_are_skipped():
    spec = SearchSpec({"a1": (5, 5), "a2": (1, 9), "a3": (1, 9)})
    got = [p.a.as_tuple() for p in enumerate_valid(spec)]
    assert (5, 1, 9) not in got
    expected = [c for c in itertools.product([5], [1, 5, 9], [1, 5, 9]) if not triple_violations(c)]
    assert got == expected


def test_enumeration_is_lexicographic_and_valid():
    spec = SearchSpec({"a1": (-3, 5), "a2": (-7, 5), "a3": (-3, 1), "b2": (-3, 5)})
    got = [(p.a.as_tuple(), p.b.as_tuple()) for p in enumerate_valid(spec)]
    assert got == sorted(got)
    for a, b in got:
        validate(a, b)


@pytest.mark.parametrize("kwargs", [
    {"ranges": {"a1": (5, 1)}},
    {"ranges": {"c1": (1, 1)}},
    {"limit": 0},
])
def test_bad_specs(kwargs):
    with pytest.raises(InvalidInput):
        SearchSpec(**kwargs)


# -- run_search -------------------------------------------------------------

BOX = {"a1": (-3, 1), "a2": (-7, 5), "a3": (-3, 5), "b2": (-3, 9), "b3": (-3, 5)}


def test_single_entry_search():
    result = run_search(SearchSpec(), jobs=1)
    assert len(result.entries) == 1
    e = result.entries[0]
    assert (e.n, e.m, e.mu, e.oriented_class) == (0, 0, None, None)
    assert result.stats.valid == 1 and result.stats.nonzero_n == 0


def test_search_is_deterministic_across_jobs():
    spec = SearchSpec(BOX, require_nonzero=True)
    serial = run_search(spec, jobs=1)
    parallel = run_search(spec, jobs=4)
    assert serial.entries == parallel.entries
    assert serial.class_coverage == parallel.class_coverage
    assert serial.stats == parallel.stats


def test_search_soundness():
    result = run_search(SearchSpec(BOX, require_nonzero=True), jobs=1)
    assert result.stats.errors == 0
    assert result.entries
    for e in result.entries:
        p = validate(e.a, e.b)
        assert e.n == n_invariant(p) != 0
        if e.oriented_class is not None:
            assert abs(e.n) == 1 and (28 * e.mu).denominator == 1
    for cls, witness in result.class_coverage.items():
        first = next(e for e in result.entries if e.oriented_class == cls)
        assert witness == first


def test_sphere_filter():
    spec = SearchSpec({"a2": (-3, -3), "b2": (-19, 21), "b3": (-19, 21)}, require_sphere=True)
    result = run_search(spec, jobs=1)
    assert result.entries and all(abs(e.n) == 1 for e in result.entries)
    # b = (1, l, l) always gives n = -1 against a = (1, -3, 1)
    diag = {e.b for e in result.entries if e.b[1] == e.b[2]}
    assert diag == {(1, l, l) for l in residues_1_mod_4(-19, 21)}


def test_limit_truncates_after_coverage():
    spec = SearchSpec(BOX, require_sphere=True)
    full = run_search(spec, jobs=1)
    limited = run_search(SearchSpec(BOX, require_sphere=True, limit=2), jobs=1)
    assert limited.entries == full.entries[:2]
    assert limited.class_coverage == full.class_coverage
    assert limited.stats.emitted == 2 and limited.stats.matched == full.stats.matched


def test_target_classes_and_missing():
    spec = SearchSpec(BOX, require_sphere=True, target_classes={0, 30})
    result = run_search(spec, jobs=1)
    assert spec.target_classes == {0, 2}
    assert all(e.oriented_class in {0, 2} for e in result.entries)
    assert set(result.missing_classes) == {0, 2} - set(result.class_coverage)


def test_jobs_environment(monkeypatch):
    monkeypatch.setenv("EXOTIC7_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("EXOTIC7_JOBS", "x")
    with pytest.raises(InvalidInput):
        default_jobs()
    monkeypatch.delenv("EXOTIC7_JOBS")
    assert default_jobs() == 1


# -- the non-Milnor subfamily -----------------------------------------------

def test_corollary_oracle_examples():
    assert corollary_oracle(0) == 0
    assert {r: corollary_oracle(r) for r in COROLLARY_R} == COROLLARY_CLASSES


def test_corollary_table():
    rows = dict(corollary_table(range(-3, 16)))
    assert rows[0] == 0 and rows[1] == 26
    for r, cls in rows.items():
        assert cls == corollary_oracle(r)
    assert {rows[r] for r in COROLLARY_R} == set(NON_MILNOR_CLASSES)


def test_corollary_coverage_by_search():
    spec = SearchSpec({"a1": (-3, -3), "a2": (-3, -3), "b2": (-11, 61), "b3": (-11, 61)},
                      require_sphere=True, target_classes=NON_MILNOR_CLASSES)
    result = run_search(spec, jobs=2)
    assert result.missing_classes == []


def test_corollary_params():
    p = corollary_params(1, -1, 2, 0)
    assert p.a.as_tuple() == (-3, 9, -11) and p.b.as_tuple() == (1, 9, 1)
