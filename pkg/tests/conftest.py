import pytest

from schottky import PrimeContext, sample_group


@pytest.fixture(scope="session")
def ctx5():
    return PrimeContext(5, 16)


@pytest.fixture(scope="session")
def g5():
    return sample_group(5, 2)


@pytest.fixture(scope="session")
def sample_groups():
    # the worked p=5 group plus three more across primes and multipliers
    return [
        sample_group(5, 2),
        sample_group(3, 2, multiplier_exponent=4),
        sample_group(5, 2, multiplier_exponent=4),
        sample_group(7, 2, multiplier_exponent=2),
    ]
