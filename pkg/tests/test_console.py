import io
from concurrent.futures import ThreadPoolExecutor

from src.domain.events.simulation_events import ReplicateCompleted, ReplicateFailed
from src.presentation.console import ConsoleView, ProgressReporter


def test_progress_reporter_counts_failures():
    reporter = ProgressReporter()
    reporter(ReplicateCompleted(0, 10, {0.9: True}))
    reporter(ReplicateFailed(3, "singular"))
    assert reporter.failures == 1


def test_progress_reporter_counts_failures_across_threads():
    reporter = ProgressReporter()
    with ThreadPoolExecutor(max_workers=8) as pool:
        list(pool.map(lambda i: reporter(ReplicateFailed(i, "singular")), range(2000)))
    assert reporter.failures == 2000


def test_rates_table():
    stream = io.StringIO()
    ConsoleView(stream).show_rates({
        "rows": [{"n": 100, "h": 0.2, "median_error": 0.05, "gamma_n": 0.3, "delta_n": 0.01}],
        "slope": -0.35, "slope_ci": (-0.4, -0.3), "target_slope": -0.353,
    })
    text = stream.getvalue()
    assert "100" in text
    assert "slope -0.3500" in text


def test_diagnostics_summary():
    stream = io.StringIO()
    ConsoleView(stream).show_diagnostics({
        "equivalence": {"medians": {"100": 0.2, "400": 0.1}, "strictly_decreasing": True},
        "sup_law": {"medians": {"100": 0.3, "400": 0.4}, "strictly_decreasing": False},
    })
    lines = stream.getvalue().splitlines()
    assert lines[0].endswith("(decreasing)")
    assert lines[1].endswith("(not decreasing)")
