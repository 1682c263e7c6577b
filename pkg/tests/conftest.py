import numpy as np
import pytest

from lorcat import (
    ADMISSIBLE_CELLS,
    CatenoidSpec,
    CausalCharacter,
    ProfileCurve,
    ProfileFamily,
    RotationClass,
)
from lorcat.geometry import regular_mask

CELLS = sorted(ADMISSIBLE_CELLS.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value))


def random_admissible_spec(rng: np.random.Generator) -> CatenoidSpec:
    (rotation, causal), family = CELLS[rng.integers(0, len(CELLS))]
    a = float(np.exp(rng.uniform(np.log(0.05), np.log(5.0))))
    b = float(rng.uniform(-3.0, 3.0))
    if family in (ProfileFamily.CUBIC_PLUS, ProfileFamily.CUBIC_MINUS):
        profile = ProfileCurve(family, a=a, b=b)
    else:
        sign = 1.0 if family is not ProfileFamily.COSH_OVER_A else float(rng.choice([-1.0, 1.0]))
        profile = ProfileCurve(family, a=sign * a, b=b)
    return CatenoidSpec(rotation=rotation, causal=causal, profile=profile)


def regular_sample_points(spec: CatenoidSpec, n_s: int = 10, n_t: int = 10):
    """Deterministic (s, t) grid away from the singular exclusion zones."""
    candidates = np.linspace(-2.0, 2.0, 41 * n_s)
    keep = candidates[regular_mask(spec, candidates, margin=1e-3)]
    assert keep.size >= n_s
    idx = np.linspace(0, keep.size - 1, n_s).astype(int)
    s = keep[idx][:, None]
    if spec.rotation is RotationClass.ELLIPTIC:
        t = np.linspace(0.0, 2.0 * np.pi, n_t, endpoint=False)[None, :]
    else:
        t = np.linspace(-1.5, 1.5, n_t)[None, :]
    return s, t


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
