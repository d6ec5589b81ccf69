import hypothesis
import pytest

hypothesis.settings.register_profile("fast", max_examples=5)
hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.load_profile("ci")


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False,
        help="run full-size benchmarks (5000x1000 systems)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size benchmark, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def make_system():
    """DesignSystem wrapping plain arrays; grid and dictionary are placeholders."""
    import numpy as np

    from src.approx.grid import build_grid
    from src.models import BasisFamily, CandidateSet, DesignSystem, FamilyKind, TargetFunction, TargetKind

    def _make(A, b):
        A = np.asarray(A, dtype=float)
        n, l = A.shape  # noqa: E741
        return DesignSystem(
            matrix=A,
            rhs=np.asarray(b, dtype=float),
            grid=build_grid(0.0, 1.0, n),
            candidates=CandidateSet(values=np.arange(1.0, l + 1.0), c=1.0, d=float(l)),
            family=BasisFamily(tag=FamilyKind.EXP_RAW),
            target=TargetFunction(tag=TargetKind.STRETCHED_EXP, alpha=0.5),
        )

    return _make
