import pytest

from qaoa_lie.cost import CostModel
from qaoa_lie.errors import (
    BoundaryError,
    MalformedDerivationError,
    SiteIndexError,
    UnsupportedSizeError,
    ZeroCouplingError,
)
from qaoa_lie.hamiltonians import GeneratorSpec, Kind
from qaoa_lie.pauli import PauliString, PauliSum
from qaoa_lie.synthesis import (
    Commutator,
    Leaf,
    Selection,
    commutator_stages,
    decompose_cnot,
    derive_zix,
    echo_partner,
    extend_step,
    literal_closer,
    nearest_neighbor_zx,
    reevaluate,
    synthesize_long_range,
    with_gammas,
    zx_target,
)


def target(n, k, d):
    return PauliSum.from_string(zx_target(n, k, d))


class TestDecompose:
    def test_terms(self):
        s = decompose_cnot(3, 1, 2)
        assert {p.label(compact=True): c for p, c in s.items()} == \
            {"I": 0.5, "Z1": 0.5, "X3": 0.5, "Z1 X3": -0.5}

    @pytest.mark.parametrize("k,d", [(0, 1), (2, 2), (1, 0)])
    def test_bad_indices(self, k, d):
        with pytest.raises(SiteIndexError):
            decompose_cnot(3, k, d)


class TestZix:
    @pytest.mark.parametrize("n", range(3, 10))
    @pytest.mark.parametrize("gammas", [(1.0, 1.0), (2.0, 3.0), (-1.5, 0.5)])
    def test_value(self, n, gammas):
        for k in range(1, n - 1):
            assert derive_zix(n, *gammas, k=k).value == target(n, k, 2)

    def test_stage_structure(self):
        dv = derive_zix(5)
        assert commutator_stages(dv) == 3
        assert dv.checkpoint
        assert isinstance(dv, Selection)  # neighbour Z3 X4 Z5 also reacts to X2 Y3
        assert not isinstance(derive_zix(4), Selection)

    def test_reevaluate_matches(self):
        dv = derive_zix(7, 2.0, 3.0, 3)
        assert reevaluate(dv) == dv.value

    def test_literal_closer_vanishes(self):
        for n in range(3, 8):
            for k in range(1, n - 1):
                assert not literal_closer(n, 1.0, 1.0, k)

    def test_zero_coupling(self):
        with pytest.raises(ZeroCouplingError):
            derive_zix(5, 0.0, 1.0)

    def test_small_n(self):
        with pytest.raises(UnsupportedSizeError):
            derive_zix(2)

    def test_selection_rejects_stray_keys(self):
        dv = derive_zix(4)
        with pytest.raises(MalformedDerivationError):
            Selection(dv, [PauliString.single(4, 2, "Y").key], pattern="Y2")

    def test_echo_partner_flips_cross_terms(self):
        dv = derive_zix(5)
        sel = next(node for node in dv.walk() if isinstance(node, Selection) and node.label == "H_zxz")
        partner = echo_partner(sel)
        assert partner is not None
        assert (sel.parent.value - partner.value).scale(0.5) == sel.value

    def test_with_gammas_keeps_normalizers(self):
        # the ZXZ group carries g_AB * g_BA and nothing renormalizes it
        dv = with_gammas(derive_zix(5), 2.0, 3.0)
        assert dv.value == target(5, 1, 2).scale(6)


class TestExtension:
    def test_one_step(self):
        dv = extend_step(derive_zix(5), 5)
        assert dv.value == target(5, 1, 3)
        assert isinstance(dv, Commutator) and dv.checkpoint

    def test_boundary(self):
        with pytest.raises(BoundaryError):
            extend_step(derive_zix(3), 3)

    def test_malformed(self):
        leaf = Leaf(GeneratorSpec(Kind.Y_site, 4, site=2))
        with pytest.raises(MalformedDerivationError):
            extend_step(leaf, 4)

    def test_nearest_neighbour(self):
        assert nearest_neighbor_zx(4, 2).value == target(4, 2, 1)


class TestReport:
    @pytest.mark.parametrize("n,k,d", [(3, 1, 2), (6, 1, 5), (8, 2, 5), (5, 4, 1), (12, 1, 11)])
    def test_value_and_bound(self, n, k, d):
        r = synthesize_long_range(n, k, d)
        assert r.value == target(n, k, d)
        assert r.bound_ok
        assert r.cnot == decompose_cnot(n, k, d)

    def test_text_has_steps(self):
        text = synthesize_long_range(6, 1, 5).to_text(CostModel())
        for head in ("Step 1", "Step 2", "Step 3"):
            assert head in text
