import pytest

from qaoa_lie.cost import DEFAULT_COST_TABLE, CostModel
from qaoa_lie.hamiltonians import Kind
from qaoa_lie.synthesis import bound_table, derive_zix, extend_step, synthesize_long_range


class TestTable:
    def test_default_text_parses_to_default(self):
        assert CostModel.from_text(DEFAULT_COST_TABLE) == CostModel()

    def test_roundtrip(self):
        m = CostModel.from_text("Y_site = 7\ncommutator_overhead = 2  # comment\n")
        assert m.primitive(Kind.Y_site) == 7
        assert CostModel.from_text(m.to_text()) == m

    def test_unknown_key(self):
        with pytest.raises(ValueError):
            CostModel.from_text("W_site = 3")

    def test_negative(self):
        with pytest.raises(ValueError):
            CostModel.from_text("X_site = -1")


class TestCounts:
    def test_zix(self):
        m = CostModel()
        dv = derive_zix(6)
        assert m.stage_cost(dv) == 3
        assert m.alternations(dv) == 3

    def test_extension_is_t(self):
        m = CostModel()
        assert m.iteration_constant() == 12
        assert m.stage_cost(extend_step(derive_zix(6), 6)) == 12

    def test_total_closed_form(self):
        for n in range(3, 12):
            assert synthesize_long_range(n, 1, n - 1).total_alternations == 3 + 12 * (n - 3)

    def test_scaled_rule_stays_affine(self):
        m = CostModel(commutator_scale=2, commutator_overhead=1)
        table = bound_table(4, 10, m)
        assert table.affine
        assert table.slope == m.iteration_constant()

    def test_pulse_count_grows(self):
        counts = [synthesize_long_range(n, 1, n - 1).pulse_count for n in (4, 5, 6)]
        assert counts[0] < counts[1] < counts[2]
