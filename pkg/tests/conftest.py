import pytest
from hypothesis import settings

from semiconfined.model import OscillatorParams

# derandomized so repeated runs draw the same examples
settings.register_profile("repo", deadline=None, derandomize=True, max_examples=40)
settings.load_profile("repo")


@pytest.fixture
def unit():
    return OscillatorParams(m0=1.0, omega=1.0, hbar=1.0, a=1.0)


@pytest.fixture(params=[1.0, 2.0, 5.0], ids=lambda a: f"a={a:g}")
def confined(request):
    """lambda0 = 1 with alpha in {2, 8, 50}."""
    return OscillatorParams(a=request.param)
