import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    entry = _criteria.setdefault(num, {"text": text, "passed": True, "seconds": 0.0})
    entry["seconds"] += call.duration
    if call.excinfo is not None:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(f"AC{num:<2} {status}  {e['text']}  ({e['seconds']:.2f}s)")
