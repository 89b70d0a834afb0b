import math

import numpy as np
import pytest

import rmlens as rl
from rmlens.solver import SolverConfig, _newton_run
from rmlens.errors import DomainError


def hausdorff(set_a, set_b):
    if not set_a and not set_b:
        return 0.0
    if not set_a or not set_b:
        return math.inf
    d_ab = max(min(abs(a - b) for b in set_b) for a in set_a)
    d_ba = max(min(abs(a - b) for a in set_a) for b in set_b)
    return max(d_ab, d_ba)


def test_config_invariants():
    with pytest.raises(DomainError):
        SolverConfig(newton_tol=1e-9)
    with pytest.raises(DomainError):
        SolverConfig(dedup_radius=1e-13)


def test_residual_probes():
    model = rl.gaussian_model(1.0, 1.0)
    exact = 2j / math.sqrt(5)
    assert rl.residual(model, 0.0, exact) < 1e-12
    assert rl.residual(model, 0.0, exact + 1e-3) > 1e-5
    assert 0.0 < rl.residual(model, 0.3 + 0.2j, 1.7 + 0.9j) < math.inf


def test_dim_images_matches_closed_form():
    model = rl.gaussian_model(1.0, 0.25)
    ims = rl.dim_images(model, 0.3)
    assert len(ims.images) == 1
    assert abs(ims.images[0].z - 0.6) < 1e-12


def test_dim_images_two_cut_excludes_origin():
    model = rl.quartic_model(-1.45, 1.0)
    zs = sorted(im.z.real for im in rl.dim_images(model, 0.0).images)
    target = math.sqrt(2.45)
    assert len(zs) == 2
    assert abs(zs[0] + target) < 1e-10
    assert abs(zs[1] - target) < 1e-10


def test_dim_images_complex_source_empty():
    model = rl.gaussian_model(1.0, 1.0)
    assert not rl.dim_images(model, 5.0 + 5.0j).images


def test_numeric_einstein_cross():
    model = rl.gaussian_model(1.0, 1.0)
    ims = rl.bright_images_numeric(model, 0.0)
    zs = [im.z for im in ims.images]
    targets = [2j / math.sqrt(5), -2j / math.sqrt(5), 2 / math.sqrt(3), -2 / math.sqrt(3)]
    assert hausdorff(zs, targets) < 1e-10


def test_numeric_two_cut_origin_bright_set():
    model = rl.quartic_model(-1.45, 1.0)
    ims = rl.bright_images_numeric(model, 0.0)
    x2 = math.sqrt(2.95)
    y2 = math.sqrt(0.05)
    targets = [0.0 + 0.0j, x2, -x2, 1j * y2, -1j * y2]
    assert hausdorff([im.z for im in ims.images], targets) < 1e-9


def test_numeric_on_discriminant_curve_pairing():
    # a double image splits by at most ~1e-6 at a curve point located to
    # machine precision; the solver must resolve exactly the paired pattern
    beta = rl.curve_beta_at_alpha(0.55)
    params = rl.GaussianParams.from_strength(1.0, 0.5)
    model = params.model()
    ims = rl.bright_images_numeric(model, complex(0.55, beta))
    zs = [im.z for im in ims.images if not im.boundary]
    gaps = sorted(
        abs(zs[i] - zs[j]) for i in range(len(zs)) for j in range(i + 1, len(zs))
    )
    assert gaps[0] < 1e-6  # the merged pair
    if len(gaps) > 1:
        assert gaps[1] > 1e-3  # everything else is genuinely separate


def test_oracle_equivalence_sample():
    # numeric vs analytic on a modest random sample (the acceptance suite
    # runs the full hundred)
    rng = np.random.default_rng(200)
    for p in (0.5, 2.0):
        params = rl.GaussianParams.from_strength(1.0, p)
        model = params.model()
        done = 0
        while done < 15:
            w = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            analytic = rl.bright_images_gaussian(params, w)
            if any(im.boundary for im in analytic.images):
                continue
            if any(
                1.0 - abs(rl.joukowski_inverse(1.0, im.z)) < 1e-4
                for im in analytic.images
            ):
                continue
            numeric = rl.bright_images_numeric(model, w)
            assert hausdorff(
                [im.z for im in analytic.images],
                [im.z for im in numeric.images if not im.boundary],
            ) < 1e-8
            done += 1


def test_image_count_respects_degree_bound():
    rng = np.random.default_rng(201)
    model = rl.quartic_model(0.5, 1.0)  # degree 2p = 4, bound 4 p**2 = 16
    for _ in range(5):
        w = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        ims = rl.bright_images_numeric(model, w)
        assert len(ims.images) <= 16


def test_solutions_near_cut_are_flagged():
    model = rl.gaussian_model(1.0, 1.0)
    ims = rl.bright_images_numeric(model, 0.0)
    for im in ims.images:
        if not im.boundary:
            assert model.cuts.distance(im.z) > 1e-6


def test_newton_run_skips_singular_seeds():
    model = rl.gaussian_model(1.0, 1.0)
    # a seed exactly at a point where |f'| = 1 can stall; the run must not raise
    out = _newton_run(model, 0.0, np.array([0.9 + 0.9j, 2.0 + 0.1j]), SolverConfig())
    assert out.shape == (2,)
