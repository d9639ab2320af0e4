import pytest

from modules.dist import GenIIParams, GenIParams, RngStream

GEN1_GRID = [
    GenIParams(nu, delta, lam)
    for nu in (0.3, 0.5, 0.8, 1.0)
    for delta in (0.5, 1.0, 2.0)
    for lam in (0.5, 1.0)
]

GEN2_GRID = [
    GenIIParams(nu, gamma, lam)
    for nu in (0.3, 0.5, 0.8, 1.0)
    for gamma in (-1.0, -0.5, 0.5, 1.0, 5.0)
    for lam in (0.5, 1.0)
]


@pytest.fixture
def stream():
    """A fresh stream factory; equal arguments give equal draws."""

    def make(seed=12345, *keys):
        return RngStream.substream(seed, *keys) if keys else RngStream(seed)

    return make


@pytest.fixture(autouse=True)
def _no_seed_env(monkeypatch):
    monkeypatch.delenv("FPP_SEED", raising=False)


@pytest.fixture(params=GEN1_GRID, ids=lambda p: f"nu{p.nu}-delta{p.delta}-lam{p.lam}")
def gen1_params(request):
    return request.param


@pytest.fixture(params=GEN2_GRID, ids=lambda p: f"nu{p.nu}-gamma{p.gamma_exp}-lam{p.lam}")
def gen2_params(request):
    return request.param
