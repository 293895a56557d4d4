"""Acceptance criteria, one test per criterion, each at its fixed tolerance.

A summary line per criterion is printed at the end of the pytest run.
"""

import json
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from umeb import (
    BipartiteDims,
    ExternalLabel,
    StateSet,
    available_constructions,
    check_maximally_entangled,
    check_orthonormal,
    complement_product_kets,
    construct_prop1,
    construct_prop2,
    numerical_search,
    orthonormal_complement,
    verify_umeb,
)
from umeb.cli import main
from umeb.linalg import bell_basis, phase_distance
from umeb.tables import render_table

from conftest import rectangular_dims

GOLDEN = Path(__file__).parent / "golden"
COUNTING = {}


def sweep():
    for dims in rectangular_dims(8):
        for option in available_constructions(dims):
            yield dims, option


def tokens(text):
    return [line.split() for line in text.strip().splitlines()]


def rows_equal_up_to_sign(got, want):
    """Token grids equal, allowing a whole row to be negated (d = 2 only has +-1)."""
    if got[0] != want[0] or len(got) != len(want):
        return False
    flip = {"1": "-1", "-1": "1", "0": "0"}
    return all(g == w or [flip.get(t, t) for t in g] == w for g, w in zip(got[1:], want[1:]))


def test_criterion_1_golden_table_1(criterion):
    done = criterion(1, "golden table, prop1 (2,5), < 1 s")
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "umeb.cli", "construct", "--d", "2", "--dprime", "5",
         "--method", "prop1", "--format", "table"],
        capture_output=True, text=True,
    )
    elapsed = time.perf_counter() - start
    want = (GOLDEN / "prop1_2x5.txt").read_text()
    ok = proc.returncode == 0 and rows_equal_up_to_sign(tokens(proc.stdout), tokens(want)) and elapsed < 1.0
    done(ok, f"(byte-identical={proc.stdout == want}, {elapsed:.2f} s)")
    assert proc.returncode == 0
    assert rows_equal_up_to_sign(tokens(proc.stdout), tokens(want))
    assert len(tokens(proc.stdout)) == 9 and len(tokens(proc.stdout)[0]) == 10
    assert elapsed < 1.0


def test_criterion_2_golden_table_2(criterion):
    done = criterion(2, "golden table, prop2 (2,4) m=3")
    got = render_table(construct_prop2(BipartiteDims(2, 4), 3))
    want = (GOLDEN / "prop2_2x4_m3.txt").read_text()
    ok = rows_equal_up_to_sign(tokens(got), tokens(want)) and len(tokens(got)) == 7
    done(ok, f"(byte-identical={got == want})")
    assert ok


def test_criterion_3_golden_table_3(criterion):
    done = criterion(3, "golden table, prop2 (3,6) m=5")
    got = render_table(construct_prop2(BipartiteDims(3, 6), 5))
    want = (GOLDEN / "prop2_3x6_m5.txt").read_text()
    grid = tokens(got)
    entries = {t for row in grid[1:] for t in row}
    ok = got == want and entries <= {"0", "1", "w", "w^2"} and len(grid) == 16 and len(grid[0]) == 18
    done(ok, f"(entries {sorted(entries)})")
    assert ok


def test_criterion_4_sweep(criterion):
    done = criterion(4, "sweep 2 <= d < d' <= 8, every construction verifies, < 30 s")
    start = time.perf_counter()
    failures = []
    worst_orth = worst_me = 0.0
    count = 0
    for dims, option in sweep():
        report = verify_umeb(option.build(dims))
        count += 1
        worst_orth = max(worst_orth, report.orthonormal.residual)
        worst_me = max(worst_me, report.maximally_entangled.residual)
        if not (
            report.overall
            and report.orthonormal.residual < 1e-10
            and report.maximally_entangled.residual < 1e-10
            and report.decided_by == "structural"
            and report.structural.valid
        ):
            failures.append((dims, option))
    elapsed = time.perf_counter() - start
    done(
        not failures and elapsed < 30,
        f"({count} sets, max orth {worst_orth:.1e}, max dev {worst_me:.1e}, {elapsed:.2f} s)",
    )
    assert not failures
    assert elapsed < 30


@pytest.mark.parametrize("d", [3, 4, 5])
def test_criterion_5_counting(criterion, capsys, d):
    done = criterion(5, "d - 1 distinct sizes for d' = 2d, d in {3,4,5}")
    dp = 2 * d
    assert main(["enumerate", "--d", str(d), "--dprime", str(dp), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    expected = sorted(d * m for m in range(dp - d + 1, dp))
    ok = doc["distinct_sizes"] == expected and len(expected) == d - 1
    COUNTING[d] = ok
    done(all(COUNTING.values()), f"(checked d={sorted(COUNTING)})")
    assert ok


def test_criterion_6_member_counts(criterion):
    done = criterion(6, "member counts q*d^2 and d*m")
    checks = {
        "prop1 (2,5)": (len(construct_prop1(BipartiteDims(2, 5))), 8),
        "prop1 (3,7)": (len(construct_prop1(BipartiteDims(3, 7))), 18),
        "prop2 (3,6) m=4": (len(construct_prop2(BipartiteDims(3, 6), 4)), 12),
        "prop2 (3,6) m=5": (len(construct_prop2(BipartiteDims(3, 6), 5)), 15),
    }
    general = all(
        len(option.build(dims)) == (dims.q * dims.d**2 if option.method == "prop1" else dims.d * option.m_param)
        for dims, option in sweep()
    )
    ok = general and all(got == want for got, want in checks.values())
    done(ok)
    assert ok


def test_criterion_7_oracle_cross_check(criterion):
    done = criterion(7, "numerical oracle agrees with structural certificates; Bell positive control")
    worst = 0.0
    count = 0
    for dims, option in sweep():
        state_set = option.build(dims)
        report = verify_umeb(state_set)
        assert report.structural.valid
        cert = numerical_search(complement_product_kets(state_set), seed=0)
        worst = max(worst, cert.best_min_schmidt)
        count += 1
    bell = bell_basis()
    comp = orthonormal_complement(
        StateSet.imported(BipartiteDims(2, 2), bell[:3]).as_basis()
    )
    control = numerical_search(comp)
    dist = phase_distance(control.best_vector, bell[3])
    ok = worst <= 1e-6 and control.best_min_schmidt >= 1 / np.sqrt(2) - 1e-5 and dist <= 1e-4
    done(ok, f"({count} complements, max sigma_min {worst:.1e}; control {control.best_min_schmidt:.9f}, dist {dist:.1e})")
    assert worst <= 1e-6
    assert control.best_min_schmidt >= 1 / np.sqrt(2) - 1e-5
    assert dist <= 1e-4


def test_criterion_8_definition_properties(criterion):
    done = criterion(8, "removal keeps (i)(ii); appending a complement ket breaks (i)")
    sets = [option.build(dims) for dims in (BipartiteDims(2, 5), BipartiteDims(3, 6))
            for option in available_constructions(dims)]
    assert len(sets) == 4
    bad = []
    for s in sets:
        d = s.dims.d
        for k in range(len(s)):
            reduced = s.without(k)
            if not (check_orthonormal(reduced).passed and check_maximally_entangled(reduced).passed):
                bad.append(("remove", s.provenance, k))
        for ket in complement_product_kets(s):
            extended = s.with_state(ExternalLabel("ket"), ket)
            result = check_maximally_entangled(extended)
            if result.passed or abs(result.leading_deviation - (1 - 1 / np.sqrt(d))) > 1e-12:
                bad.append(("append", s.provenance, ket))
    done(not bad, f"({len(sets)} sets)")
    assert not bad
