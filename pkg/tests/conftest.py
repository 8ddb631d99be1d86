import numpy as np
import pytest

from nsdecay.spectral_core import GridSpec, SpectralField, VelocityField, leray_project

# measured acceptance verdicts, echoed after the run so capture cannot eat them
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_velocity(grid: GridSpec, rng, scale: float = 1.0) -> VelocityField:
    """Divergence-free random field with dealiased, Hermitian spectrum."""
    n = grid.n
    w1 = rng.standard_normal((n, n)) * scale
    w2 = rng.standard_normal((n, n)) * scale
    c1 = np.fft.fft2(w1) / n**2
    c2 = np.fft.fft2(w2) / n**2
    mask = grid.dealias_mask
    f1 = SpectralField(grid, np.where(mask, c1, 0.0))
    f2 = SpectralField(grid, np.where(mask, c2, 0.0))
    return leray_project(f1, f2)
