import pytest

from wirepoly.graph import Junction, LineSegment, Wireframe


def make_wireframe(points, pairs):
    return Wireframe(
        [Junction(i, p) for i, p in enumerate(points)],
        [LineSegment(i, e) for i, e in enumerate(pairs)],
    )


@pytest.fixture
def triangle():
    return make_wireframe([(0.1, 0.1), (0.9, 0.1), (0.5, 0.8)], [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def square_diag():
    # unit-ish square with one diagonal: V=4, E=5
    return make_wireframe(
        [(0.1, 0.1), (0.9, 0.1), (0.9, 0.9), (0.1, 0.9)],
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
    )


@pytest.fixture
def grid4():
    """4 x 4 junction grid (3 x 3 cells)."""
    return grid_wireframe(4)


def grid_wireframe(n, lo=0.1, hi=0.9):
    step = (hi - lo) / (n - 1)
    pts = [(lo + i * step, lo + j * step) for j in range(n) for i in range(n)]
    pairs = []
    for j in range(n):
        for i in range(n):
            k = j * n + i
            if i + 1 < n:
                pairs.append((k, k + 1))
            if j + 1 < n:
                pairs.append((k, k + n))
    return make_wireframe(pts, pairs)


ACCEPTANCE_LOG: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def acceptance():
    def record(n, title, ok, detail):
        ACCEPTANCE_LOG[n] = (title, ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LOG):
        title, ok, detail = ACCEPTANCE_LOG[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}: {detail}")
