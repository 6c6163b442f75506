import pytest

from qaoa_lie.errors import SiteIndexError, UnsupportedSizeError
from qaoa_lie.hamiltonians import (
    GeneratorSpec,
    Kind,
    build,
    build_h_yz,
    build_h_zxz,
    build_second_commutator_display,
    parse_spec,
    x_sublattice,
)
from qaoa_lie.pauli import PauliSum


def labels(s: PauliSum) -> dict[str, complex]:
    return {p.label(compact=True): c for p, c in s.items()}


class TestBuild:
    def test_sublattice_bonds(self):
        assert set(labels(build(GeneratorSpec(Kind.H_AB, 5)))) == {"Z2 Z3", "Z4 Z5"}
        assert set(labels(build(GeneratorSpec(Kind.H_BA, 5)))) == {"Z1 Z2", "Z3 Z4"}

    def test_h_z2_weights(self):
        h = labels(build(GeneratorSpec(Kind.H_z2, 4, 2.0, 3.0)))
        assert h == {"Z1 Z2": 3, "Z2 Z3": 2, "Z3 Z4": 3}

    def test_full_problem_hamiltonian(self):
        h = labels(build(GeneratorSpec(Kind.H_z_full, 3)))
        assert h == {"Z1": 1, "Z2": 2, "Z3": 3, "Z1 Z2": 1, "Z2 Z3": 1}

    def test_mixer(self):
        assert labels(build(GeneratorSpec(Kind.H_x_full, 3))) == {"X1": 1, "X2": 1, "X3": 1}

    def test_parity_sums(self):
        assert set(labels(x_sublattice(5, 0))) == {"X2", "X4"}
        assert set(labels(build(GeneratorSpec(Kind.X_odd, 4)))) == {"X1", "X3"}

    def test_pairs(self):
        assert labels(build(GeneratorSpec(Kind.YZ_pair, 4, site=2))) == {"Y2 Z3": 1}
        assert labels(build(GeneratorSpec(Kind.XY_pair, 4, site=3))) == {"X3 Y4": 1}

    @pytest.mark.parametrize("kind,site", [(Kind.X_site, 0), (Kind.Z_site, 5), (Kind.ZY_pair, 4)])
    def test_site_range(self, kind, site):
        with pytest.raises(SiteIndexError):
            GeneratorSpec(kind, 4, site=site)


class TestPrintedSums:
    def test_h_yz_odd(self):
        assert labels(build_h_yz(5, 2, 3)) == {"Y2 Z3": 2, "Y4 Z5": 2, "Z1 Y2": 3, "Z3 Y4": 3}

    def test_h_yz_even(self):
        assert labels(build_h_yz(4, 2, 3)) == {"Z2 Y3": 2, "Y1 Z2": 3, "Y3 Z4": 3}

    def test_h_zxz(self):
        assert labels(build_h_zxz(5, 2, 3)) == {"Z1 X2 Z3": 12, "Z3 X4 Z5": 12}

    def test_shift_only_for_even(self):
        with pytest.raises(UnsupportedSizeError):
            build_second_commutator_display(5, 1, 1, shift_zxz=True)
        shifted = labels(build_second_commutator_display(6, 1, 1, shift_zxz=True))
        assert "Z2 X3 Z4" in shifted and "Z1 X2 Z3" not in shifted

    def test_small_n(self):
        with pytest.raises(UnsupportedSizeError):
            build_h_yz(2, 1, 1)


class TestParse:
    def test_roundtrip(self):
        spec = parse_spec("Hz2(n=5,gab=2,gba=3)")
        assert spec.kind is Kind.H_z2 and spec.num_qubits == 5
        assert (spec.gamma_ab, spec.gamma_ba) == (2, 3)
        assert parse_spec(spec.to_text()) == spec

    def test_site_forms(self):
        assert parse_spec("Y(3)", n=4).site == 3
        assert parse_spec("ZY(3,4)", n=4).kind is Kind.ZY_pair

    def test_weights(self):
        assert parse_spec("Hz(n=3,w=1:2:3)").weights == (1, 2, 3)

    @pytest.mark.parametrize("text", ["Q(3)", "Hz2(", "ZY(3,5)"])
    def test_bad(self, text):
        with pytest.raises(ValueError):
            parse_spec(text, n=5)
