import itertools

import pytest
from hypothesis import given, strategies as st

from bcalatin import (
    BipermutiveRule,
    ContractError,
    DegreeClass,
    NotBipermutiveError,
    TruthTable,
    WolframCode,
    anf,
    degree_class,
    eval_table,
    expand,
    extract_generator,
    is_bipermutive,
    parse_anf,
)
from bcalatin.rule import moebius

from conftest import FIG3_G, table_of

R30, R90, R150, R165 = (TruthTable(3, c) for c in (30, 90, 150, 165))


def tables(max_arity=5):
    return st.integers(0, max_arity).flatmap(
        lambda k: st.builds(TruthTable, st.just(k), st.integers(0, (1 << (1 << k)) - 1))
    )


class TestEval:
    def test_rule90(self):
        assert eval_table(R90, (1, 0, 1)) == 0

    def test_rule90_matches_formula(self):
        for xs in itertools.product((0, 1), repeat=3):
            assert eval_table(R90, xs) == xs[0] ^ xs[2]

    def test_zero(self):
        assert all(eval_table(TruthTable(3, 0), xs) == 0
                   for xs in itertools.product((0, 1), repeat=3))

    def test_rule150(self):
        assert eval_table(R150, (1, 1, 1)) == 1

    def test_length_mismatch(self):
        with pytest.raises(ContractError):
            eval_table(R90, (1, 0))

    def test_call_syntax(self):
        assert R90(0, 1, 1) == 1


class TestSerialization:
    def test_hex(self):
        assert R90.to_hex() == "5a"
        assert TruthTable.from_hex("5a", 3) == R90
        assert TruthTable.from_hex("0x5A", 3) == R90

    def test_wolfram(self):
        assert R90.wolfram == WolframCode(90, 3)
        assert str(R90.wolfram) == "90"
        assert WolframCode(150, 3).to_table() == R150

    def test_out_of_range(self):
        with pytest.raises(ContractError):
            TruthTable(3, 256)
        with pytest.raises(ContractError):
            WolframCode(4, 1)
        with pytest.raises(ContractError):
            TruthTable(9, 0)


class TestBipermutive:
    @pytest.mark.parametrize("table, expected", [(R150, True), (R90, True), (R30, False)])
    def test_examples(self, table, expected):
        assert is_bipermutive(table) is expected

    def test_arity_too_small(self):
        with pytest.raises(ContractError):
            is_bipermutive(TruthTable(1, 1))

    def test_census_arity3(self):
        # exhaustive scan against the explicit form x1 ^ h(x2) ^ x3
        accepted = {c for c in range(256) if is_bipermutive(TruthTable(3, c))}
        explicit = {
            table_of(3, lambda a, b, c, h=h: a ^ ((h >> b) & 1) ^ c).bits
            for h in range(4)
        }
        assert accepted == explicit
        assert len(accepted) == 4

    def test_census_arity4(self):
        assert sum(is_bipermutive(TruthTable(4, c)) for c in range(1 << 16)) == 16


class TestGenerator:
    def test_extract_150(self):
        rule = extract_generator(R150)
        assert rule.diameter == 3
        assert rule.generator.values() == [0, 1]

    def test_extract_90(self):
        assert extract_generator(R90).generator == TruthTable(1, 0)

    def test_extract_165(self):
        assert extract_generator(R165).generator == TruthTable.constant(1, 1)

    def test_extract_names_side(self):
        with pytest.raises(NotBipermutiveError) as err:
            extract_generator(R30)
        # rule 30 = x1 ^ (x2 | x3) is left-permutive only
        assert err.value.side == "right"

    def test_expand(self):
        assert expand(BipermutiveRule(3, TruthTable(1, 0b10))) == R150
        assert expand(BipermutiveRule(3, TruthTable(1, 0))) == R90

    def test_expand_fig3(self):
        f = expand(BipermutiveRule(6, FIG3_G))
        oracle = table_of(6, lambda x1, x2, x3, x4, x5, x6: x1 ^ x2 ^ x4 ^ (x2 & x5) ^ x6)
        assert f == oracle
        assert is_bipermutive(f)

    def test_diameter_two(self):
        f = expand(BipermutiveRule(2, TruthTable(0, 0)))
        assert f == table_of(2, lambda a, b: a ^ b)
        assert extract_generator(f).generator == TruthTable(0, 0)

    def test_generator_arity_checked(self):
        with pytest.raises(ContractError):
            BipermutiveRule(4, TruthTable(1, 0))

    def test_round_trip_from_tables(self):
        for d in range(2, 6):
            for code in range(1 << (1 << d)) if d <= 4 else range(0, 1 << 32, 65537 * 7):
                t = TruthTable(d, code)
                if is_bipermutive(t):
                    assert expand(extract_generator(t)) == t

    def test_round_trip_from_generators(self):
        for k in range(0, 5):
            for code in range(1 << (1 << k)):
                rule = BipermutiveRule(k + 2, TruthTable(k, code))
                assert extract_generator(expand(rule)) == rule


class TestAnf:
    def test_rule90(self):
        form = anf(R90)
        assert sorted(form.monomials()) == [(1,), (3,)]
        assert form.degree == 1

    def test_constant_one(self):
        form = anf(TruthTable.constant(3, 1))
        assert form.coefficients == 1
        assert form.degree == 0

    def test_fig3(self):
        form = anf(FIG3_G)
        assert sorted(form.monomials()) == [(1,), (1, 4), (3,)]
        assert form.degree == 2

    def test_zero_degree(self):
        assert anf(TruthTable(4, 0)).degree == 0

    @given(tables())
    def test_involution(self, t):
        assert moebius(moebius(t.bits, t.arity), t.arity) == t.bits
        assert anf(t).to_table() == t

    @given(tables(4))
    def test_moebius_matches_subset_sum(self, t):
        # c[m] = XOR of f[u] over u subset of m
        coeffs = anf(t).coefficients
        for m in range(t.size):
            acc = 0
            for u in range(t.size):
                if u & ~m == 0:
                    acc ^= t[u]
            assert (coeffs >> m) & 1 == acc


class TestDegreeClass:
    @pytest.mark.parametrize("table, cls", [
        (FIG3_G, DegreeClass.NONLINEAR),
        (TruthTable(3, 0), DegreeClass.CONSTANT),
        (table_of(2, lambda a, b: a ^ b ^ 1), DegreeClass.AFFINE),
        (table_of(2, lambda a, b: a ^ b), DegreeClass.LINEAR),
    ])
    def test_examples(self, table, cls):
        assert degree_class(table) is cls

    def test_two_variable_partition(self):
        counts = {c: 0 for c in DegreeClass}
        for code in range(16):
            counts[degree_class(TruthTable(2, code))] += 1
        # enumerated by hand: {0, 1}; {x1, x2, x1^x2}; those plus 1; the 8 with x1x2
        assert counts == {
            DegreeClass.CONSTANT: 2,
            DegreeClass.LINEAR: 3,
            DegreeClass.AFFINE: 3,
            DegreeClass.NONLINEAR: 8,
        }


class TestParseAnf:
    def test_fig3(self):
        assert parse_anf("x1^x3^x1x4", 4) == FIG3_G
        assert parse_anf("x1 + x3 + x1*x4", 4) == FIG3_G

    def test_constants(self):
        assert parse_anf("0", 2) == TruthTable(2, 0)
        assert parse_anf("1", 0) == TruthTable(0, 1)
        assert parse_anf("x1^1", 1) == TruthTable(1, 0b01)

    def test_cancellation(self):
        assert parse_anf("x1^x1", 2) == TruthTable(2, 0)

    @pytest.mark.parametrize("bad", ["", "x5", "y1", "x1^^x2", "2"])
    def test_rejects(self, bad):
        with pytest.raises(ContractError):
            parse_anf(bad, 4)

    @given(tables(4))
    def test_round_trip_through_str(self, t):
        assert parse_anf(str(anf(t)), t.arity) == t
