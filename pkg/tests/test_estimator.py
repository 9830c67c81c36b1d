import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from tl1denoise import TL1Denoiser, denoise
from tl1denoise.admm import SolverParams
from tl1denoise.imageio import NoiseSpec, add_gaussian_noise, make_phantom


@pytest.fixture(scope="module")
def pair():
    clean = make_phantom(64, 64)
    return clean, add_gaussian_noise(clean, NoiseSpec(0.1, 3))


def test_get_set_params_and_clone():
    est = TL1Denoiser(mu=5.0, lam=2.0, a=0.3)
    params = est.get_params()
    assert params["mu"] == 5.0 and params["method"] == "tl1"
    other = clone(est).set_params(lam=7.0)
    assert other.lam == 7.0 and est.lam == 2.0


def test_transform_requires_fit(pair):
    with pytest.raises(NotFittedError):
        TL1Denoiser().transform(pair[1])


def test_transform_matches_function(pair):
    _, noisy = pair
    est = TL1Denoiser(mu=20, lam=30, a=0.3).fit()
    u, _ = denoise(noisy, SolverParams(mu=20, lam=30, a=0.3))
    np.testing.assert_array_equal(est.transform(noisy), u)
    assert len(est.reports_) == 1


def test_stack_and_clamp(pair):
    _, noisy = pair
    stack = np.stack([noisy, noisy[::-1]])
    out = TL1Denoiser(mu=20, lam=30, a=0.3, clamp=True).fit_transform(stack)
    assert out.shape == stack.shape
    assert out.min() >= 0 and out.max() <= 1


def test_score_and_pipeline(pair):
    clean, noisy = pair
    est = TL1Denoiser(mu=20, lam=30, a=0.1).fit()
    assert est.score(noisy, clean) > 0.9
    psnr_est = TL1Denoiser(mu=20, lam=30, a=0.1, scoring="psnr").fit()
    assert psnr_est.score(noisy, clean) > 30
    pipe = make_pipeline(TL1Denoiser(mu=20, lam=30, a=0.1))
    assert pipe.fit_transform(noisy).shape == noisy.shape


@pytest.mark.parametrize("kw", [dict(mu=-1), dict(method="mcp"), dict(scoring="mae")])
def test_invalid_params_raise_on_fit(kw):
    with pytest.raises(ValueError):
        TL1Denoiser(**kw).fit()


def test_rejects_1d():
    with pytest.raises(ValueError):
        TL1Denoiser().fit().transform(np.zeros(10))
