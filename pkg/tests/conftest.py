import functools

from gross_sha.heckechar import grossencharacters
from gross_sha.numerics import PrecisionContext
from gross_sha.pipeline import compute

P50 = PrecisionContext(50)

SEVEN_MOD_8 = (7, 23, 31, 47, 71, 79)
THREE_MOD_8 = (11, 19, 43, 59, 67, 83)
ACCEPTANCE_QS = SEVEN_MOD_8 + THREE_MOD_8


@functools.lru_cache(maxsize=None)
def cached_compute(q: int, digits: int = 50):
    return compute(q, PrecisionContext(digits))


@functools.lru_cache(maxsize=None)
def cached_rhos(q: int, digits: int = 50, pick: int = 0):
    return grossencharacters(q, PrecisionContext(digits), pick=pick)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number, title: str, passed, detail: str = "") -> str:
    status = passed if isinstance(passed, str) else ("PASS" if passed else "FAIL")
    line = f"criterion {number}: {status}  {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def pytest_addoption(parser):
    parser.addoption("--run-stretch", action="store_true", help="run the full q <= 4663 sweep (hours)")
