import pytest

import helpers


@pytest.fixture
def weather():
    return helpers.weather_base()


@pytest.fixture
def support():
    return helpers.support_base()
