import numpy as np
import pytest

from shared.utils import print_progress


class FixedDraw:
    """ Stand-in generator whose random() always returns the same number, used to force a MeasureZ result """

    def __init__(self, value):
        self.value = value

    def random(self):
        return self.value


@pytest.fixture
def force_result():
    """ force_result(1) makes MeasureZ return 1 whenever |1> has any weight, force_result(0) returns 0 unless
        |1> is certain
    """
    return lambda result: FixedDraw(0.0 if result == 1 else np.nextafter(1.0, 0.0))


@pytest.fixture(autouse=True)
def quiet_progress():
    print_progress.quiet = True
    yield
    print_progress.quiet = False
