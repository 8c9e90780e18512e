"""End-to-end acceptance gate.

Each test covers one release criterion and prints a single verdict line
(visible even under capture) so a plain `pytest` run shows the tally.
"""
import contextlib
import itertools
import json
import time

import numpy as np
import pytest

from ngroupoid import (
    HypercubeSkeleton,
    compose,
    core_arrows,
    count_faces,
    identity_deviation,
    inverse_axis,
    is_conservative,
    load_mixture,
    random_composable_chain,
    random_conservative,
    random_interchange_quadruple,
    source_facet,
    target_facet,
    theorem_sweep,
    unit_skeleton,
)
from ngroupoid.analysis import circuit_steps, path_weight
from ngroupoid.matrices import matrices_close
from ngroupoid.skeleton import interchange_check


@pytest.fixture
def verdict(capsys):
    @contextlib.contextmanager
    def announce(label):
        t0 = time.monotonic()
        ok = False
        try:
            yield
            ok = True
        finally:
            tag = "PASS" if ok else "FAIL"
            elapsed = time.monotonic() - t0
            with capsys.disabled():
                print(f"[acceptance] {label}: {tag} ({elapsed:.1f}s)")

    return announce


def test_face_counts(verdict):
    with verdict("1/9 face counts"):
        t0 = time.monotonic()
        for n in range(1, 9):
            skel = HypercubeSkeleton(n)
            for h in range(n):
                assert count_faces(n, h) == len(skel.faces(h))
            assert count_faces(n, n - 1) == 2 * n
            assert len(skel.edges()) == n * 2 ** (n - 1)
        assert count_faces(3, 1) == 12
        assert count_faces(3, 0) == 8
        assert time.monotonic() - t0 < 5.0


def test_checker_agreement(verdict):
    with verdict("2/9 checker agreement on 600 instances"):
        t0 = time.monotonic()
        total = 0
        worst = 0.0
        for n, seed in ((2, 101), (3, 102), (4, 103)):
            sweep = theorem_sweep(n, trials=100, seed=seed)
            assert sweep["agree_conservative"] == 100
            assert sweep["agree_perturbed"] == 100
            total += sweep["agree_conservative"] + sweep["agree_perturbed"]
            worst = max(worst, sweep["max_deviation_conservative"])
        assert total == 600
        assert worst < 1e-8
        assert time.monotonic() - t0 < 30.0


def test_circuit_identity(verdict):
    with verdict("3/9 circuit identity, n=3 exhaustive"):
        t0 = time.monotonic()
        skel = HypercubeSkeleton(3)
        cycles = skel.simple_cycles()
        assert len(cycles) == 28
        for k in range(100):
            T = random_conservative(3, seed=5000 + k)
            for cycle in cycles:
                total = path_weight(T, circuit_steps(T.skel, cycle))
                assert identity_deviation(total) < 1e-8
        assert time.monotonic() - t0 < 30.0


def test_composition_laws(verdict):
    with verdict("4/9 composition laws, 50 triples per axis"):
        for n in (2, 3):
            for axis in range(1, n + 1):
                for k in range(50):
                    seed = n * 100000 + axis * 1000 + k
                    A, B, C = random_composable_chain(n, axis, 3, seed=seed)
                    left = compose(C, compose(B, A, axis), axis)
                    right = compose(compose(C, B, axis), A, axis)
                    assert left.close_to(right, 1e-9)

                    AB = compose(B, A, axis)
                    assert source_facet(AB, axis) == source_facet(A, axis)
                    assert target_facet(AB, axis) == target_facet(B, axis)

                    u_src = unit_skeleton(source_facet(A, axis), axis)
                    u_tgt = unit_skeleton(target_facet(A, axis), axis)
                    assert compose(A, u_src, axis).close_to(A, 1e-9)
                    assert compose(u_tgt, A, axis).close_to(A, 1e-9)

                    inv = inverse_axis(A, axis)
                    assert compose(inv, A, axis).close_to(u_src, 1e-9)
                    assert compose(A, inv, axis).close_to(u_tgt, 1e-9)


def test_interchange(verdict):
    with verdict("5/9 interchange, 50 quadruples per axis pair"):
        for n in (2, 3):
            for i, j in itertools.combinations(range(1, n + 1), 2):
                for k in range(50):
                    seed = n * 100000 + i * 10000 + j * 1000 + k
                    quad = random_interchange_quadruple(n, i, j, seed=seed)
                    assert interchange_check(*quad, i, j, tol=1e-9)


def test_conservativity_closure(verdict):
    with verdict("6/9 conservativity closure, 50 pairs per axis"):
        for n in (2, 3):
            for axis in range(1, n + 1):
                for k in range(50):
                    seed = n * 100000 + axis * 1000 + k
                    A, B = random_composable_chain(n, axis, 2, seed=seed)
                    assert is_conservative(A).verdict
                    assert is_conservative(B).verdict
                    assert is_conservative(compose(B, A, axis)).verdict


def test_mixture_verdicts(verdict, run_cli, data_dir):
    with verdict("7/9 mixture verdicts, exit codes 0/1/0"):
        assert run_cli("uniformity", data_dir / "mixture_identical.json")[0] == 0

        code, out = run_cli("uniformity", data_dir / "mixture_rotated.json")
        assert code == 1
        assert "constituent alpha: transitive" in out
        assert "constituent beta: transitive" in out
        assert "core: not transitive" in out

        code, _ = run_cli("uniformity", data_dir / "mixture_rotated_cyclic.json")
        assert code == 0


def test_core_algebra(verdict, data_dir):
    with verdict("8/9 core algebra on all point triples"):
        mix = load_mixture(str(data_dir / "mixture_core4.json"))
        points = mix.base_points
        cores = {
            (x, y): core_arrows(mix, x, y).arrows
            for x in points
            for y in points
        }

        def member(m, arrows):
            return any(matrices_close(m, c, 1e-9) for c in arrows)

        for x in points:
            for y in points:
                assert cores[(x, y)], f"empty core {x}->{y}"
                for a in cores[(x, y)]:
                    assert member(np.linalg.inv(a), cores[(y, x)])
                for z in points:
                    for b in cores[(y, z)]:
                        for a in cores[(x, y)]:
                            assert member(b @ a, cores[(x, z)])


def test_determinism(verdict, run_cli, tmp_path, data_dir):
    with verdict("9/9 determinism and byte-stable reports"):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run_cli("generate", "--n", 3, "--seed", 9, "--out", a)[0] == 0
        assert run_cli("generate", "--n", 3, "--seed", 9, "--out", b)[0] == 0
        assert a.read_bytes() == b.read_bytes()

        r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
        run_cli("check", a, "--out", r1)
        run_cli("check", a, "--out", r2)
        assert r1.read_bytes() == r2.read_bytes()
        assert json.loads(r1.read_text())["verdict"] is True

        u1, u2 = tmp_path / "u1.json", tmp_path / "u2.json"
        run_cli("uniformity", data_dir / "mixture_rotated.json", "--out", u1)
        run_cli("uniformity", data_dir / "mixture_rotated.json", "--out", u2)
        assert u1.read_bytes() == u2.read_bytes()

        out1 = run_cli("verify-theorem", "--n", 2, "--trials", 5, "--seed", 4)[1]
        out2 = run_cli("verify-theorem", "--n", 2, "--trials", 5, "--seed", 4)[1]
        assert out1 == out2
