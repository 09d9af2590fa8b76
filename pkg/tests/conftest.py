import pytest

from scalewise import Registry

# Reading -> reference map x_ref = p + q x; Fahrenheit from C = (F - 32) * 5/9.
F_OFFSET, F_FACTOR = -160 / 9, 5 / 9


def build_registry() -> Registry:
    reg = Registry()
    reg.register_family("temperature", "affine")
    reg.register_scale("C", "temperature")
    reg.register_scale("F", "temperature", F_OFFSET, F_FACTOR)
    reg.register_scale("K", "temperature", -273.15, 1)
    reg.register_family("time", "affine")
    reg.register_scale("s", "time")
    reg.register_scale("min", "time", 0, 60)
    reg.register_family("mass", "linear")
    reg.register_scale("kg", "mass")
    reg.register_scale("lb", "mass", 0, 0.45359237)
    reg.register_family("count", "absolute")
    return reg


@pytest.fixture
def reg() -> Registry:
    return build_registry()


def rel_close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b), 1.0)


def approx(x, rel=1e-9):
    return pytest.approx(x, rel=rel, abs=1e-12)


TEMPS = """\
family temperature kind affine
scale C of temperature
scale F of temperature offset -160/9 factor 5/9
"""


# acceptance criteria report one line each at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
