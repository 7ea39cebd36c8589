import pytest

from k3div.catalog import (
    ALLOWED_N,
    IMPOSSIBLE,
    IMPOSSIBLE_EXTERNAL,
    REALIZABLE,
    TABLE1,
    CatalogError,
    LedgerError,
    apply_criterion,
    check_decomposition,
    example12_check,
    fibration_witness,
    formula_ledger,
    impossibility_sigma10,
    n12_basechange_certificate,
    negative_control,
    nonreduced_witness,
    orthogonal_roots,
    realizability_matrix,
    root_system,
    sigma1_n20_filter,
    table1_rows,
    table2_rows,
    verify_all,
    verify_row,
)
from k3div.fibration import ito_sigma
from k3div.lattice import build_lattice


@pytest.fixture(scope="module")
def matrix():
    return realizability_matrix()


# --- Table 1 ------------------------------------------------------------------------


def test_table1_data():
    rows = table1_rows()
    assert [r.sigma for r in rows] == list(range(10, 0, -1))
    assert set(TABLE1[10]) == {"U(2)+~A1^20", "U(2)+E8(2)+~A1^12"}
    assert TABLE1[1] == ("U+D4+E8^2",)
    assert len(TABLE1[5]) == 3 and "U+D4^5" in TABLE1[5]


@pytest.mark.parametrize("row", table1_rows(), ids=lambda r: f"sigma{r.sigma}")
def test_table1_rows_verify(row):
    rep = verify_row(row)
    assert rep.passed, rep.failures
    for c in rep.checks:
        assert c.length == 2 * row.sigma and c.type_I and c.rank == 22 and c.signature == (1, 21)


def test_sigma9_lengths():
    (row,) = [r for r in table1_rows() if r.sigma == 9]
    assert len(row.decompositions) == 4
    assert all(check_decomposition(e, 9).length == 18 for e in row.decompositions)


def test_negative_control_fails():
    rep = negative_control()
    assert not rep.passed
    assert any("length 18 != 20" in f for f in rep.failures)


def test_wrong_rank_is_reported():
    c = check_decomposition("U+E8", 1)
    assert any("rank" in f for f in c.failures)


# --- criterion ------------------------------------------------------------------------


def test_criterion_examples():
    res = apply_criterion("U(2)+~A1^20")
    w = res.witness_for(20)
    assert res.applicable and w.verified and w.u_summand == "U(2)"
    assert apply_criterion("U(2)+E8(2)+~A1^12").witness_for(12).verified
    res = apply_criterion("U+D4+E8^2")
    assert not res.applicable and "~A1" in res.reason
    assert not apply_criterion("E8+~A1^8").applicable


def test_criterion_rejects_sizes_not_divisible():
    # ~A1^4 alone: n = 4 is not an allowed size
    res = apply_criterion("U+~A1^4+E8^2")
    assert res.applicable and res.witnesses == ()


# --- sigma = 10 traces ----------------------------------------------------------------------


def test_sigma10_traces():
    t8 = impossibility_sigma10(8)
    assert t8.verified and "(1,13)" in t8.steps[1].statement
    t16 = impossibility_sigma10(16)
    assert t16.verified and "(1,5)" in t16.steps[1].statement
    assert [s.label for s in t8.steps] == ["setup", "a", "b", "c"]
    with pytest.raises(CatalogError):
        impossibility_sigma10(12)


def test_sigma10_step_b_arithmetic():
    # recompute the inequalities independently: l(Pic) <= (n - 2) + (22 - n) - m = 20 - m
    for n in (8, 16):
        st = impossibility_sigma10(n).steps[2].statement
        for m in range(1, min(n - 2, 22 - n) + 1):
            assert f"m={m}: {20 - m} < 20" in st


# --- base change ------------------------------------------------------------------------------


@pytest.mark.parametrize("r", range(1, 10))
def test_basechange(r):
    c = n12_basechange_certificate(r)
    assert c.verified and c.p_selfint == -2 and c.rank == 13 + r
    assert (c.n_C, c.n_theta) == (12 - r, r)


def test_basechange_range():
    with pytest.raises(CatalogError):
        n12_basechange_certificate(10)


# --- other witnesses ------------------------------------------------------------------------------


def test_fibration_witnesses():
    assert fibration_witness(0, 20, "x").verified
    assert fibration_witness(1, 16, "x").verified
    assert fibration_witness(1, 20, "x").verified


def test_nonreduced_witnesses():
    assert nonreduced_witness(8, "x").verified
    assert nonreduced_witness(16, "x").verified
    assert nonreduced_witness(16, "x", "U+D4^5").verified


def test_sigma1_filter():
    tr = sigma1_n20_filter()
    assert tr.verified and tr.n == 20 and tr.sigma == 1
    assert any("ell=5 -> r=4" in s.statement for s in tr.steps)


# --- the matrix ----------------------------------------------------------------------------------


def test_matrix_pattern(matrix):
    assert matrix.passed
    assert matrix.impossible == [(8, 10), (16, 10), (20, 1)]
    assert matrix.cell(20, 1).status == IMPOSSIBLE_EXTERNAL
    assert matrix.cell(8, 10).status == IMPOSSIBLE == matrix.cell(16, 10).status
    for sigma in range(1, 11):
        assert matrix.cell(12, sigma).status == REALIZABLE
    assert all(c.verified for c in matrix.cells.values())


def test_matrix_preference(matrix):
    # criterion first, then fibration, non-reduced fibers, base change
    assert matrix.cell(20, 10).kind == "criterion"
    assert matrix.cell(20, 9).kind == "criterion"
    assert matrix.cell(20, 5).kind == "fibration"
    assert matrix.cell(20, 2).kind == "fibration"
    assert matrix.cell(12, 1).kind == "basechange"
    assert matrix.cell(8, 1).kind == "nonreduced"


def test_matrix_grid(matrix):
    g = matrix.grid().splitlines()
    assert len(g) == 5
    assert g[-1].split()[1] == "x"  # (20, 1)


# --- ledger, strata, example -------------------------------------------------------------------


def test_formula_ledger():
    got = {n: formula_ledger(n) for n in ALLOWED_N}
    assert (got[8].chi, got[8].eta_iso_degree, got[8].conductrix_selfint, got[8].h1) == (2, 8, None, 0)
    assert (got[12].chi, got[12].eta_iso_degree, got[12].conductrix_selfint, got[12].h1) == (1, 0, 0, 1)
    assert (got[16].chi, got[16].eta_iso_degree, got[16].conductrix_selfint, got[16].h1) == (0, None, 2, 2)
    assert (got[20].chi, got[20].eta_iso_degree, got[20].conductrix_selfint, got[20].h1) == (-1, None, 4, 3)
    assert got[12].cases == ("A empty", "A nonempty")
    for n, led in got.items():
        assert 1 - led.h1 + 1 == led.chi == 4 - n // 4
    with pytest.raises(LedgerError, match="8, 12, 16, 20"):
        formula_ledger(4)


def test_table2():
    rows = table2_rows()
    assert len(rows) == 5
    assert (rows[0].sigma, rows[0].n_III, rows[0].r) == ((9,), 20, (1,))
    assert (rows[3].sigma, rows[3].n_III, rows[3].n_I0star) == ((6,), 8, 3)
    assert rows[4].r == tuple(5 - s for s in rows[4].sigma)
    for row in rows:
        for s, r in zip(row.sigma, row.r):
            assert s + r + row.ell == 10 == ito_sigma(row.ell, r) + r + row.ell


def test_root_systems():
    assert len(root_system(build_lattice("D4"))) == 24
    assert len(root_system(build_lattice("E8"))) == 240
    assert len(orthogonal_roots(build_lattice("E8"), 8)) == 8
    assert orthogonal_roots(build_lattice("A2"), 2) is None


def test_example12():
    ex = example12_check()
    assert ex.passed
    assert ex.d4_q_values == (1, 1, 1) and ex.d_selfint == -24 and ex.q_half == 0


def test_verify_all_cell():
    rep = verify_all(cell=(20, 1))
    assert rep["passed"] and rep["cell"]["status"] == IMPOSSIBLE_EXTERNAL
    assert "Shimada" in rep["cell"]["evidence"]["external"]
