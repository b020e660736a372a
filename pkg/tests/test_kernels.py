"""Backend parity: the jit and fallback kernels must agree bit for bit."""

import numpy as np
import pytest

from forbid import kernels
from forbid.kernels import _numpy as np_backend
from forbid.model import LayoutInstance
from forbid.sgd import ConvergenceTrace, ScheduleParams, run_pass
from forbid.solver import SolverConfig, Variant, solve
from forbid.stress import StressParams
from helpers import make_layout

numba_missing = not kernels.numba_available()
if not numba_missing:
    from forbid.kernels import _numba as nb_backend

pytestmark = pytest.mark.skipif(numba_missing, reason="numba not importable")


@pytest.fixture(autouse=True)
def restore_backend():
    yield
    kernels.set_backend("auto")


def pair_setup(seed, n, box_scale=1.5):
    layout = make_layout(seed, n, box_scale)
    pi, pj = np.triu_indices(n, 1)
    return layout, pi, pj


class TestKernelParity:
    def test_pair_distances(self):
        layout, pi, pj = pair_setup(1, 40)
        a = nb_backend.pair_distances(layout.positions, pi, pj)
        b = np_backend.pair_distances(layout.positions, pi, pj)
        assert np.array_equal(a, b)

    def test_refresh_pair_targets(self):
        layout, pi, pj = pair_setup(2, 40)
        ref = make_layout(3, 40, 2.5)
        refdist = np_backend.pair_distances(ref.positions, pi, pj)
        for alpha, k in ((-2.0, 1.0), (-2.0, 2.5), (-1.3, 0.5)):
            da, wa, oa = nb_backend.refresh_pair_targets(
                layout.positions, layout.sizes, pi, pj, refdist, alpha, k
            )
            db, wb, ob = np_backend.refresh_pair_targets(
                layout.positions, layout.sizes, pi, pj, refdist, alpha, k
            )
            assert np.array_equal(da, db)
            assert np.array_equal(wa, wb)
            assert np.array_equal(oa, ob)

    def test_shuffled_order(self):
        for n in (0, 1, 2, 17, 1000):
            a = nb_backend.shuffled_order(n, 12345)
            b = np_backend.shuffled_order(n, 12345)
            assert np.array_equal(a, b)
            assert sorted(a.tolist()) == list(range(n))

    def test_relax_sweep(self):
        layout, pi, pj = pair_setup(4, 30)
        refdist = np_backend.pair_distances(layout.positions, pi, pj)
        delta, weight, _ = np_backend.refresh_pair_targets(
            layout.positions, layout.sizes, pi, pj, refdist, -2.0, 1.0
        )
        order = np_backend.shuffled_order(len(pi), 777)
        pos_a = layout.positions.copy()
        pos_b = layout.positions.copy()
        mov_a = nb_backend.relax_sweep(pos_a, pi, pj, delta, weight, 0.8, order, 99)
        mov_b = np_backend.relax_sweep(pos_b, pi, pj, delta, weight, 0.8, order, 99)
        assert np.array_equal(pos_a, pos_b)
        assert mov_a == mov_b

    def test_iteration_stats(self):
        layout, pi, pj = pair_setup(5, 35)
        refdist = np_backend.pair_distances(layout.positions, pi, pj)
        delta, weight, _ = np_backend.refresh_pair_targets(
            layout.positions, layout.sizes, pi, pj, refdist, -2.0, 1.0
        )
        sa, ca = nb_backend.iteration_stats(
            layout.positions, layout.sizes, pi, pj, delta, weight
        )
        sb, cb = np_backend.iteration_stats(
            layout.positions, layout.sizes, pi, pj, delta, weight
        )
        assert sa == sb
        assert ca == cb


class TestEndToEndParity:
    def test_run_pass_identical(self):
        layout = make_layout(6, 25, 1.4)
        outputs = []
        traces = []
        for name in ("numba", "numpy"):
            kernels.set_backend(name)
            trace = ConvergenceTrace()
            out = run_pass(
                layout, layout, StressParams(), ScheduleParams(), 13, trace
            )
            outputs.append(out.positions)
            traces.append(trace.records)
        assert np.array_equal(outputs[0], outputs[1])
        assert traces[0] == traces[1]

    @pytest.mark.parametrize("variant", [Variant.FORBID, Variant.FORBID_PRIME])
    def test_solve_identical(self, variant):
        layout = make_layout(7, 20, 1.3)
        results = []
        for name in ("numba", "numpy"):
            kernels.set_backend(name)
            results.append(solve(layout, SolverConfig(variant=variant, seed=3)))
        a, b = results
        assert np.array_equal(a.layout.positions, b.layout.positions)
        assert a.final_scale == b.final_scale
        assert a.passes == b.passes
        assert a.trace.records == b.trace.records


class TestBackendSelection:
    def test_set_backend_names(self):
        kernels.set_backend("numpy")
        assert kernels.backend_name() == "numpy"
        kernels.set_backend("numba")
        assert kernels.backend_name() == "numba"
        kernels.set_backend("auto")
        assert kernels.backend_name() in ("numba", "numpy")

    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError):
            kernels.set_backend("fortran")

    def test_env_flag_forces_fallback(self):
        import os
        import subprocess
        import sys

        env = dict(os.environ, FORBID_DISABLE_NUMBA="1")
        out = subprocess.run(
            [sys.executable, "-c",
             "from forbid import kernels; print(kernels.backend_name())"],
            env=env,
            capture_output=True,
            text=True,
        )
        assert out.stdout.strip() == "numpy"
