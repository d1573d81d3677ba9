import pytest

from quadgor.field import GF
from quadgor.grid import build_witness, grid_status, render_grid, status_grid
from quadgor.koszul import koszul_certificate

YES_EXTRA = {(5, 3)}
UNKNOWN = {(6, 3), (7, 3), (8, 3)}


def expected_status(c, r):
    if c < r or (r <= 1 and c != r):
        return None
    if c == r or r == 2 or c == r + 1 or (c, r) in YES_EXTRA:
        return "Yes"
    if (c, r) in UNKNOWN:
        return "Unknown"
    return "No"


@pytest.mark.parametrize("c", range(12))
@pytest.mark.parametrize("r", range(12))
def test_fill_pattern(c, r):
    assert grid_status(c, r).status == expected_status(c, r)


@pytest.mark.parametrize("c,r,status,witness", [
    (6, 4, "No", "I_G"),
    (5, 4, "Yes", None),
    (7, 3, "Unknown", None),
    (9, 3, "No", None),
    (9, 6, "No", "I_F(c=7) (x) CI(2 squares)"),
    (8, 5, "No", "I_F(c=7) (x) CI(1 squares)"),
])
def test_named_cells(c, r, status, witness):
    cell = grid_status(c, r)
    assert cell.status == status
    assert cell.witness_text() == witness


def test_witnesses_have_the_cell_invariants():
    for cell in status_grid(9, 6):
        if cell.witness is None:
            continue
        h = build_witness(cell).hilbert().h
        assert h[1] == cell.c and len(h) - 1 == cell.r and h == h[::-1]


def test_small_tensor_witness_is_not_koszul():
    I = build_witness(grid_status(7, 5))
    assert koszul_certificate(I, 3, 1).is_not_koszul


def test_render_grid():
    text = render_grid(status_grid(4, 3), 4, 3)
    lines = text.splitlines()
    assert lines[0].split("|")[1].split() == [".", ".", ".", "Y", "Y"]
    assert lines[1].split("|")[1].split() == [".", ".", "Y", "Y", "Y"]


def test_negative_cells_rejected():
    with pytest.raises(ValueError):
        grid_status(-1, 0)
    with pytest.raises(ValueError):
        build_witness(grid_status(5, 4))
