import pytest

from qaoa_lie.errors import UnsupportedSizeError, ZeroCouplingError
from qaoa_lie.identities import randomized_coupling_check, verify_identities


def statuses(n, a=1.0, b=1.0):
    return {c.name: c.status for c in verify_identities(n, a, b)}


class TestIdentities:
    @pytest.mark.parametrize("n", range(3, 12))
    @pytest.mark.parametrize("gammas", [(1.0, 1.0), (2.0, 3.0)])
    def test_no_failures(self, n, gammas):
        assert "FAIL" not in statuses(n, *gammas).values()

    def test_odd_statuses(self):
        s = statuses(5)
        assert s["[H_z2, X_even] = H_yz"] == "CORRECTED"
        assert s["separate H_zxz = 2 g_AB g_BA sum Z X Z"] == "PASS"
        assert s["(1/2i)[[H_zxz, X2], Y3] = Z1 I2 X3"] == "CORRECTED"

    def test_even_statuses(self):
        s = statuses(6, 2.0, 3.0)
        assert s["X_odd site parity"] == "AMBIGUOUS"
        assert s["separate H_zxz = 2 g_AB g_BA sum Z X Z"] == "AMBIGUOUS"

    def test_scalar_reported(self):
        first = next(c for c in verify_identities(7) if c.name.startswith("[H_z2"))
        assert first.scalar == pytest.approx(2j)

    def test_guards(self):
        with pytest.raises(UnsupportedSizeError):
            verify_identities(2)
        with pytest.raises(ZeroCouplingError):
            verify_identities(5, 0.0, 1.0)

    @pytest.mark.parametrize("n", [3, 4, 9])
    def test_random_couplings(self, n):
        check = randomized_coupling_check(n, seed=11)
        assert check.status == "PASS"
        assert check.to_json() == randomized_coupling_check(n, seed=11).to_json()
