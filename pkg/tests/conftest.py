import pytest

from bcalatin import BipermutiveRule, TruthTable


def table_of(arity, fn):
    """Tabulate a lambda directly, independent of the library's own helpers."""
    bits = 0
    for v in range(1 << arity):
        xs = [(v >> (arity - 1 - i)) & 1 for i in range(arity)]
        bits |= (fn(*xs) & 1) << v
    return TruthTable(arity, bits)


# g(x1, x2, x3, x4) = x1 ^ x3 ^ x1 x4, the diameter-6 example rule
FIG3_G = table_of(4, lambda a, b, c, d: a ^ c ^ (a & d))
CHI = table_of(3, lambda a, b, c: a ^ b ^ (b & c))


@pytest.fixture
def fig3_rule():
    return BipermutiveRule(6, FIG3_G)


@pytest.fixture
def rule150():
    return BipermutiveRule(3, TruthTable(1, 0b10))


@pytest.fixture
def rule90():
    return BipermutiveRule(3, TruthTable(1, 0))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
