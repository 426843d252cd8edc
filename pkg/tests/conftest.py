import pytest

import narragraph as ng


@pytest.fixture(scope="session")
def story():
    return ng.bundled_story()


@pytest.fixture(scope="session")
def unified(story):
    return ng.integrate(story)
