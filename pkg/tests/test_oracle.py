import pytest

from cghz_toolkit.core.analysis import oracle_enumerate
from cghz_toolkit.core.errors import ResourceCapError
from cghz_toolkit.core.models import CghzParams
from cghz_toolkit.core.protocol import analytic_success, simulate_stages


def test_pair_oracle(pair_params):
    result = oracle_enumerate(pair_params)
    assert result.success_probability == pytest.approx(0.1152, abs=1e-12)
    assert result.raw_terms_per_copy == 2 * (2 ** 3) ** 2
    assert result.measured == ("a2", "c2", "b2", "d2")
    assert len(result.pattern_probabilities) == 16
    for prob in result.pattern_probabilities.values():
        assert prob == pytest.approx(0.1152 / 16)


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 2)])
@pytest.mark.parametrize("alpha", [0.1, 0.6, 0.9])
def test_oracle_matches_engine(m, n, alpha):
    params = CghzParams.from_alpha(m, n, alpha)
    oracle = oracle_enumerate(params)
    stages = simulate_stages(params)
    engine = {tuple(s.value for s in r.pattern.signs_for(oracle.measured)): r.probability for r in stages.measurements}
    assert set(engine) == set(oracle.pattern_probabilities)
    for key, prob in engine.items():
        assert prob == pytest.approx(oracle.pattern_probabilities[key], abs=1e-10)
    assert oracle.success_probability == pytest.approx(analytic_success(params), abs=1e-10)


def test_oracle_cap():
    with pytest.raises(ResourceCapError):
        oracle_enumerate(CghzParams.from_alpha(3, 3, 0.6))
    assert oracle_enumerate(CghzParams.from_alpha(2, 2, 0.6), max_mn=4).surviving_pairs > 0
