import sympy
from hypothesis import settings

from tauforge.algebra import Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def to_sympy(p: Poly):
    """Independent reading of the canonical text by sympy."""
    return sympy.sympify(str(p).replace("^", "**"))


def from_sympy(expr) -> Poly:
    from tauforge.algebra import parse_poly

    return parse_poly(str(sympy.expand(expr)).replace("**", "^"))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
