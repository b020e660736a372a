"""Acceptance suite. Each test prints one PASS line on success; run with
``pytest tests/test_acceptance.py -v -s`` to see them."""

import json
import os
from pathlib import Path

import numpy as np
import pytest

from forbid.baselines import scaling_baseline
from forbid.cli import cli_main
from forbid.layout_io import load_layout, serialize_layout
from forbid.metrics import el_rsdd, gs_bb_iar, nm_dm_imse, oo_nni, sp_ch_a
from forbid.model import LayoutInstance, min_overlap_free_scale
from forbid.scan import brute_force_overlaps, find_overlaps
from forbid.sgd import relax_pair
from forbid.solver import SolverConfig, Variant, solve
from helpers import make_layout, pass_budget

SIZES = (10, 50, 100, 200)
INSTANCES_PER_SIZE = 100
SCALE_STEP = 0.1


def report(criterion: int, message: str) -> None:
    print(f"ACCEPTANCE {criterion}: PASS - {message}")


@pytest.fixture(scope="module")
def solver_corpus():
    """Criterion-1 corpus: both variants solved on every instance."""
    runs = []
    for n in SIZES:
        for i in range(INSTANCES_PER_SIZE):
            seed = n * 1000 + i
            layout = make_layout(seed, n)
            s_max = min_overlap_free_scale(layout)
            for variant in (Variant.FORBID, Variant.FORBID_PRIME):
                result = solve(
                    layout, SolverConfig(variant=variant, seed=seed)
                )
                runs.append((layout, s_max, variant, result))
    return runs


def test_criterion_1_overlap_removal_guarantee(solver_corpus):
    for layout, _, variant, result in solver_corpus:
        remaining = brute_force_overlaps(result.layout)
        assert len(remaining) == 0, (
            f"{variant} left {len(remaining)} overlaps on n={layout.n}"
        )
    report(1, f"zero overlaps on {len(solver_corpus)} runs "
              f"({INSTANCES_PER_SIZE} instances x {len(SIZES)} sizes x 2 variants)")


def test_criterion_2_scan_line_oracle_equivalence():
    rng = np.random.default_rng(20260810)
    checked = 0
    for trial in range(1000):
        n = int(rng.integers(2, 301))
        box_scale = float(rng.uniform(0.4, 4.0))
        layout = make_layout(90_000 + trial, n, box_scale)
        assert find_overlaps(layout).pairs == brute_force_overlaps(layout).pairs
        checked += 1
    report(2, f"find_overlaps == brute force on {checked} instances (N <= 300)")


def test_criterion_3_scale_and_pass_bounds(solver_corpus):
    for layout, s_max, variant, result in solver_corpus:
        assert result.final_scale <= s_max, (
            f"{variant} scaled past the uniform bound on n={layout.n}"
        )
        budget = pass_budget(s_max, SCALE_STEP)
        assert result.passes <= budget, (
            f"{variant} used {result.passes} passes, budget {budget}"
        )
    report(3, "final_scale <= s_max and pass count within the search budget "
              f"on all {len(solver_corpus)} runs")


def test_criterion_4_per_pair_contraction():
    rng = np.random.default_rng(4)
    for _ in range(100_000):
        xi = rng.uniform(-20, 20, 2)
        xj = rng.uniform(-20, 20, 2)
        delta = rng.uniform(0.05, 10.0)
        weight = rng.uniform(0.001, 5.0)
        eta = rng.uniform(0.001, 5.0)
        mu = min(weight * eta, 1.0)
        d0 = float(np.linalg.norm(xi - xj))
        ni, nj = relax_pair(xi, xj, delta, weight, eta)
        d1 = float(np.linalg.norm(ni - nj))
        expected = (1.0 - mu) * abs(d0 - delta)
        assert abs(d1 - delta) == pytest.approx(expected, rel=1e-9, abs=1e-12)
        mid0 = (xi + xj) / 2
        mid1 = (ni + nj) / 2
        assert abs(mid1[0] - mid0[0]) <= 1e-9 and abs(mid1[1] - mid0[1]) <= 1e-9
    report(4, "contraction identity and midpoint preservation over 1e5 draws")


def test_criterion_5_metric_self_test_via_scaling():
    rng = np.random.default_rng(5)
    for trial in range(100):
        n = int(rng.integers(5, 60))
        layout = make_layout(50_000 + trial, n, float(rng.uniform(1.0, 2.5)))
        result = scaling_baseline(layout)
        assert len(brute_force_overlaps(result.layout)) == 0
        s = result.final_scale
        assert abs(oo_nni(layout, result.layout)) <= 1e-9
        assert abs(gs_bb_iar(layout, result.layout) - 1.0) <= 1e-9
        assert abs(nm_dm_imse(layout, result.layout)) <= 1e-9
        assert abs(el_rsdd(layout, result.layout)) <= 1e-9
        assert sp_ch_a(layout, result.layout) == pytest.approx(s * s, rel=1e-6)
    report(5, "scaling baseline hits all five metric identities on 100 instances")


def test_criterion_6_variant_ordering():
    plain, prime = [], []
    seed = 0
    while len(plain) < 50:
        seed += 1
        layout = make_layout(60_000 + seed, 100, 1.45)
        if len(brute_force_overlaps(layout)) < 50:
            continue
        r_plain = solve(layout, SolverConfig(variant=Variant.FORBID, seed=seed))
        r_prime = solve(
            layout, SolverConfig(variant=Variant.FORBID_PRIME, seed=seed)
        )
        plain.append(nm_dm_imse(layout, r_plain.layout))
        prime.append(nm_dm_imse(layout, r_prime.layout))
    med_plain = float(np.median(plain))
    med_prime = float(np.median(prime))
    assert med_prime <= med_plain, (
        f"median nm_dm_imse: prime {med_prime} vs plain {med_plain}"
    )
    report(6, f"median nm_dm_imse {med_prime:.4f} (restart variant) <= "
              f"{med_plain:.4f} (default) over 50 crowded instances")


def test_criterion_7_convergence_trace_shape(solver_corpus):
    within_budget = 0
    for layout, _, variant, result in solver_corpus:
        if result.passes <= 10:
            within_budget += 1
        accepted = [r for r in result.trace if r.scale == result.final_scale]
        assert accepted, f"no trace records at the accepted scale ({variant})"
        last_pass = max(r.pass_index for r in accepted)
        final_records = [r for r in accepted if r.pass_index == last_pass]
        assert final_records[-1].overlap_count == 0, (
            f"{variant} accepted pass ends with overlaps on n={layout.n}"
        )
    share = within_budget / len(solver_corpus)
    assert share >= 0.95, f"only {share:.1%} of runs finished within 10 passes"
    report(7, f"{share:.1%} of runs took <= 10 passes; accepted passes all "
              "end overlap-free")


DATASET_DIR = os.environ.get("FORBID_DATASET_DIR", "")
DATASET_GRAPHS = ("badvoro", "mode", "root")


def _load_dataset_layout(name: str) -> LayoutInstance:
    base = Path(DATASET_DIR)
    for candidate in (base / f"{name}.json", base / name / f"{name}.json"):
        if candidate.exists():
            try:
                return load_layout(candidate, "native")
            except Exception:
                return load_layout(candidate, "agora")
    raise FileNotFoundError(name)


@pytest.mark.skipif(
    not DATASET_DIR, reason="reference dataset not supplied (FORBID_DATASET_DIR)"
)
def test_criterion_8_reference_dataset_soft_check():
    layouts = {}
    for name in DATASET_GRAPHS:
        try:
            layouts[name] = _load_dataset_layout(name)
        except FileNotFoundError:
            pytest.skip(f"dataset layout {name!r} not found under {DATASET_DIR}")
    results = {
        name: solve(layout, SolverConfig()).layout
        for name, layout in layouts.items()
    }
    assert gs_bb_iar(layouts["badvoro"], results["badvoro"]) <= 1.1
    assert oo_nni(layouts["badvoro"], results["badvoro"]) <= 0.05
    assert gs_bb_iar(layouts["mode"], results["mode"]) <= 1.15
    assert gs_bb_iar(layouts["root"], results["root"]) <= 1.15
    report(8, "reference layouts meet the aspect-ratio and ordering targets")


def test_criterion_9_cli_determinism(tmp_path):
    layout = make_layout(9, 60, 1.4)
    src = tmp_path / "in.json"
    src.write_bytes(serialize_layout(layout))
    artifacts = []
    for tag in ("first", "second"):
        out = tmp_path / f"{tag}_out.json"
        trace = tmp_path / f"{tag}_trace.csv"
        rep = tmp_path / f"{tag}_report.json"
        code = cli_main(
            ["remove", "--in", str(src), "--out", str(out),
             "--trace", str(trace), "--report", str(rep), "--seed", "123"]
        )
        assert code == 0
        artifacts.append((out.read_bytes(), trace.read_bytes(), rep.read_bytes()))
    assert artifacts[0][0] == artifacts[1][0]
    assert artifacts[0][1] == artifacts[1][1]
    assert artifacts[0][2] == artifacts[1][2]
    doc = json.loads(artifacts[0][2])
    assert doc["final_overlaps"] == 0
    report(9, "repeated remove invocations are byte-identical "
              "(layout, trace, report)")


def test_criterion_10_desk_scale_performance():
    import time

    layout = make_layout(10, 1000, 0.75)
    initial = len(brute_force_overlaps(layout))
    assert initial >= 5000, f"instance has only {initial} overlaps"
    t0 = time.perf_counter()
    result = solve(layout, SolverConfig(seed=10))
    elapsed = time.perf_counter() - t0
    assert len(brute_force_overlaps(result.layout)) == 0
    assert elapsed < 60.0, f"solve took {elapsed:.1f}s"
    report(10, f"N=1000 with {initial} initial overlaps solved in {elapsed:.1f}s")
