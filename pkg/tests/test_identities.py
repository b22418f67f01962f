"""Identity catalog checks: hand-verified base cases plus full-range runs on
the parameter grid.  Reconciled identities must pass with the repair pinned
in the notes, never silently."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dops.families import HypParams, LagParams, MLParams, hyp_laguerre, ml_by_recurrence, ml_q_sequence
from dops.identities import (
    VerificationReport,
    Witness,
    ratio_power_closed_form,
    verify_de,
    verify_hyp_lincomb,
    verify_laguerre_structure,
    verify_moment_recursion,
    verify_nccd,
    verify_sr2_general,
    verify_sr_block,
    verify_sz4,
    verify_sz5,
)
from dops.polynomials import Poly, shift

X = Poly.x()

CLASSICAL = MLParams(1, 1, -1)

ML_GRID = [
    CLASSICAL,
    MLParams(1, 2, F(1, 2)),
    MLParams(1, 0, -1),
    MLParams(1, 1, 0),
    MLParams(2, 1, -1, [1]),
    MLParams(2, 2, F(1, 2), [F(-1, 3)]),
    MLParams(2, 0, -1, [F(1, 2)]),
    MLParams(2, 1, 0, [F(1, 2)]),
    MLParams(3, 1, -1, [1, F(1, 2)]),
    MLParams(3, 2, F(1, 2), [F(-1, 3), F(1, 5)]),
    MLParams(3, 0, -1, [F(1, 2), -1]),
]


class TestReportInvariants:
    def test_witness_iff_fail(self):
        with pytest.raises(ValueError):
            VerificationReport("x", {}, 0, 1, "fail", witness=None)
        with pytest.raises(ValueError):
            VerificationReport("x", {}, 0, 1, "pass",
                               witness=Witness(0, Poly.one(), Poly.zero()))

    def test_serialization_shape(self):
        rep = verify_nccd(CLASSICAL, 5)
        data = rep.to_dict()
        assert data["identity"] == "nccd"
        assert data["status"] == "pass"
        assert data["witness"] is None
        assert data["range"] == [0, 4]


class TestNccd:
    def test_classical_hand_case(self):
        # P_2 = x^2 equals (x^2+2x+2) - 2(x+1)
        polys = ml_by_recurrence(CLASSICAL, 3)
        q = ml_q_sequence(polys, 2)
        assert polys[2] == q[2] - q[1] * 2

    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_grid(self, p):
        assert verify_nccd(p, 13).status == "pass"

    def test_appell_note(self):
        rep = verify_nccd(MLParams(1, 0, -1), 6)
        assert rep.status == "pass"
        assert any("alpha = 0" in note for note in rep.notes)


class TestSrBlock:
    def test_classical_hand_cases(self):
        polys = ml_by_recurrence(CLASSICAL, 3)
        q = ml_q_sequence(polys, 2)
        assert shift(polys[2], 2) == q[2] + q[1] * 2           # shift identity at n=2
        assert q[2] * 2 == shift(polys[2], 2) + polys[2]       # cross identity at n=2

    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_grid_all_pass(self, p):
        reports = verify_sr_block(p, 13)
        assert {r.identity for r in reports} == {"sr3", "sr4", "sr4-alt", "sr5", "sr6", "sr7"}
        for rep in reports:
            assert rep.status == "pass", (rep.identity, rep.witness)

    def test_sr6_pins_repair_for_generic_parameters(self):
        reports = {r.identity: r for r in verify_sr_block(CLASSICAL, 8)}
        assert any("repaired form pinned" in note for note in reports["sr6"].notes)

    def test_sr6_trivial_base_case(self):
        # At n = 0 the relation (x-c)Q_0 = P_1 - (c+b_0)P_0 holds for any c.
        p = MLParams(2, 2, F(1, 2), [F(3, 4)])
        polys = ml_by_recurrence(p, 1)
        for c in (F(0), F(7, 5), F(-3)):
            assert (X - Poly.const(c)) * Poly.one() == polys[1] - Poly.const(c + p.b(0))


class TestImpliedIdentities:
    """The cross identity is an algebraic consequence of the shift identity
    and the two-term connection; the harness must see the implication."""

    @given(st.fractions(min_value=-5, max_value=5, max_denominator=6),
           st.fractions(min_value=-5, max_value=5, max_denominator=6),
           st.integers(min_value=0, max_value=10),
           st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4),
                    min_size=1, max_size=4).map(Poly),
           st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4),
                    min_size=1, max_size=4).map(Poly))
    def test_cross_identity_is_forced(self, alpha, beta, n, u, v):
        # With u, v standing for Q_n, Q_{n-1}: substituting the shift identity
        # and the connection into alpha*P_n(x+w) - beta*P_n leaves exactly
        # (alpha - beta) u, whatever u and v are.
        lhs = (u - v * (n * beta)) * alpha - (u - v * (n * alpha)) * beta
        assert lhs == u * (alpha - beta)

    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_consequence_holds_on_reports(self, p):
        reports = {r.identity: r for r in verify_sr_block(p, 10)}
        nccd = verify_nccd(p, 10)
        if nccd.status == "pass" and reports["sr5"].status == "pass":
            assert reports["sr3"].status == "pass"


class TestSr2:
    @pytest.mark.parametrize("p", [p for p in ML_GRID if p.d >= 2 and p.alpha != 0], ids=str)
    def test_grid(self, p):
        rep = verify_sr2_general(p, 13)
        assert rep.status == "pass", rep.witness
        assert any("repaired form pinned" in note for note in rep.notes)

    def test_not_applicable_below_d2(self):
        assert verify_sr2_general(CLASSICAL, 8).status == "not-applicable"

    def test_not_applicable_at_alpha_zero(self):
        rep = verify_sr2_general(MLParams(2, 0, -1, [F(1, 2)]), 8)
        assert rep.status == "not-applicable"
        assert "alpha = 0" in rep.notes[0]


class TestDifferenceEquations:
    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_de2_grid(self, p):
        assert verify_de(p, 13, "de2").status == "pass"

    @pytest.mark.parametrize("p", [p for p in ML_GRID if p.d >= 2], ids=str)
    def test_de1_all_depths(self, p):
        for k in range(0, p.d + 1):
            rep = verify_de(p, 12, ("de1", k))
            assert rep.status == "pass", (k, rep.witness)

    def test_de1_depth_one_exists_for_d1(self):
        assert verify_de(CLASSICAL, 10, ("de1", 1)).status == "pass"

    def test_inadmissible_depth(self):
        rep = verify_de(CLASSICAL, 10, ("de1", 2))
        assert rep.status == "not-applicable"

    def test_out_of_range_note(self):
        rep = verify_de(MLParams(3, 1, -1, [1, F(1, 2)]), 12, "de2")
        assert any("out-of-range" in note for note in rep.notes)


class TestClosedForms:
    def test_sz5_symmetric(self):
        rep = verify_sz5(1, -1, 6)
        assert rep.status == "pass"
        assert any("repaired form pinned" in note for note in rep.notes)

    def test_sz5_single_binomial_edge(self):
        assert verify_sz5(1, 0, 6).status == "pass"
        assert verify_sz5(0, -1, 6).status == "pass"

    def test_sz5_closed_form_values(self):
        # w = 2: first coefficients of exp(x artanh t)
        assert ratio_power_closed_form(1, -1, 0) == Poly.one()
        assert ratio_power_closed_form(1, -1, 1) == X
        assert ratio_power_closed_form(1, -1, 2) == Poly([0, 0, 1])
        assert ratio_power_closed_form(1, -1, 3) == Poly([0, 2, 0, 1])

    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_sz4_grid(self, p):
        rep = verify_sz4(p, 8)
        assert rep.status == "pass", rep.witness
        assert any("pinned" in note or "stated form verified" in note for note in rep.notes)

    def test_sz4_low_degrees(self):
        # n = 0 gives 1 on both sides, n = 1 gives x + c_1.
        p = MLParams(2, 1, -1, [F(2, 7)])
        polys = ml_by_recurrence(p, 1)
        assert polys[0] == Poly.one()
        assert polys[1] == X + Poly.const(F(2, 7))
        assert ratio_power_closed_form(1, -1, 1) + Poly.const(F(2, 7)) == polys[1]


class TestHypLincomb:
    def test_hand_case(self):
        # 2 L_1^{(1)} - L_0^{(1)} = 1 - x = L_1^{(0)}
        p1 = HypParams(1, [1])
        p0 = HypParams(1, [0])
        lhs = hyp_laguerre(p1, 1) * 2 - hyp_laguerre(p1, 0)
        assert lhs == Poly([1, -1]) == hyp_laguerre(p0, 1)

    @pytest.mark.parametrize("d,l", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_grid(self, d, l):
        p = HypParams(d, [F(1, 2), F(4, 3)][:d])
        rep = verify_hyp_lincomb(p, F(1, 5), l, 8)
        assert rep.status == "pass", rep.witness
        assert any("lemma verified" in note for note in rep.notes)
        if d >= 2:
            assert any("repaired form pinned" in note for note in rep.notes)
        else:
            assert any("stated l-term window" in note for note in rep.notes)

    def test_degenerate_parameters_rejected(self):
        with pytest.raises(Exception):
            verify_hyp_lincomb(HypParams(1, [1]), F(-2), 1, 4)


class TestLaguerreStructure:
    def test_classical_case(self):
        # d = 1 with no exponential corrections reduces to the classical
        # derivative relation x P'_n = n P_n - n(n+alpha) P_{n-1}.
        rep = verify_laguerre_structure(LagParams(1, 1, -1), 10)
        assert rep.status == "pass"
        assert "stated form verified" in rep.notes

    def test_d2_with_corrections(self):
        rep = verify_laguerre_structure(LagParams(2, F(1, 2), F(-3, 2), 0, [1, F(1, 3)]), 10)
        assert rep.status == "pass"

    def test_theta_shift_repair(self):
        rep = verify_laguerre_structure(LagParams(2, 1, -2, F(1, 2), [0, 1]), 8)
        assert rep.status == "pass"
        assert any("x + a*theta" in note for note in rep.notes)

    def test_trivial_base_case(self):
        from dops.families import laguerre_type_by_recurrence
        from dops.polynomials import derivative
        polys = laguerre_type_by_recurrence(LagParams(1, 1, -1), 1)
        assert X * derivative(polys[0]) == Poly.zero()


class TestMomentRecursion:
    @pytest.mark.parametrize("p", ML_GRID, ids=str)
    def test_grid(self, p):
        rep = verify_moment_recursion(p, 8)
        assert rep.status == "pass", rep.witness
        assert any("vanishing pattern" in note for note in rep.notes)

    def test_d1_collapse(self):
        # With no exponential corrections the left side collapses to the
        # Kronecker case n = r.
        rep = verify_moment_recursion(CLASSICAL, 8)
        assert rep.status == "pass"

    def test_repair_pinned_for_d2(self):
        rep = verify_moment_recursion(MLParams(2, 1, -1, [1]), 8)
        assert any("repaired form pinned" in note for note in rep.notes)
