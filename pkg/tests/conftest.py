import pytest

from dsmseq import Dsm


@pytest.fixture
def dsm3() -> Dsm:
    """Three activities: d(1,2)=0.5, d(1,3)=0.2, d(2,3)=0.4, rest zero."""
    return Dsm.from_rows([[0, 0.5, 0.2], [0, 0, 0.4], [0, 0, 0]])


@pytest.fixture
def dsm4() -> Dsm:
    """The three-activity instance embedded with an isolated activity 4."""
    return Dsm.from_rows(
        [
            [0, 0.5, 0.2, 0],
            [0, 0, 0.4, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
        ]
    )


@pytest.fixture
def zero6() -> Dsm:
    return Dsm.from_rows([[0.0] * 6 for _ in range(6)])
