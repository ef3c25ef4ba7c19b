import pytest

from bcalatin import ContractError
from bcalatin.verify import verify_closure, verify_lemma1, verify_theorem1


def test_lemma1_d3():
    r = verify_lemma1(3)
    assert r.passed and r.checked == 256


def test_theorem1_d4():
    r = verify_theorem1(4)
    assert r.passed and r.checked == 16


def test_theorem1_fault_injection():
    r = verify_theorem1(4, invertibility=lambda g: True)
    assert not r.passed
    assert r.counterexample == "generator 0"
    assert r.lines()[-1] == "counterexample: generator 0"


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_closure(d):
    assert verify_closure(d).passed


@pytest.mark.parametrize("suite, d", [(verify_lemma1, 5), (verify_theorem1, 6), (verify_closure, 7)])
def test_scale_limits(suite, d):
    with pytest.raises(ContractError):
        suite(d)
