"""Status grid: is every quadratic Gorenstein ring of codimension c and regularity r Koszul?

Cells are ``Yes`` (a structure result applies), ``No`` (a non-Koszul example
exists; constructed here when possible) or ``Unknown``.  Cells that cannot
occur (c < r, or r <= 1 with c != r) have status ``None``.

No-witnesses with r >= 4 are built from a regularity-4 base ring of
codimension c - (r - 4) tensored with r - 4 squares: the base is I_G when that
codimension is 6 and I_F otherwise.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .field import Field, GF

UNKNOWN_CELLS = {(6, 3), (7, 3), (8, 3)}
CITED_YES = {(5, 3): "codimension-5 Gorenstein rings with quadratic relations are Koszul (cited)"}
CITED_NO_R3 = 9  # regularity 3, codimension >= 9: non-Koszul examples are known (cited)


@dataclass(frozen=True)
class GridCell:
    c: int
    r: int
    status: str | None
    reason: str
    witness: tuple | None = None  # ("G" | "F", base codim, number of squares)

    def to_json(self) -> dict:
        return {"c": self.c, "r": self.r, "status": self.status, "reason": self.reason,
                "witness": self.witness_text()}

    def witness_text(self) -> str | None:
        if self.witness is None:
            return None
        kind, base, squares = self.witness
        name = "I_G" if kind == "G" else f"I_F(c={base})"
        return name if squares == 0 else f"{name} (x) CI({squares} squares)"


def grid_status(c: int, r: int) -> GridCell:
    if c < 0 or r < 0:
        raise ValueError("codimension and regularity are nonnegative")
    if c < r or (r <= 1 and c != r):
        return GridCell(c, r, None, "no quadratic Gorenstein ring with these invariants")
    if c == r:
        return GridCell(c, r, "Yes", "complete intersection of quadrics")
    if r == 2:
        return GridCell(c, r, "Yes", "regularity 2: h = (1, c, 1)")
    if c == r + 1:
        return GridCell(c, r, "Yes", "deviation two: Pfaffian structure, Koszul")
    if (c, r) in CITED_YES:
        return GridCell(c, r, "Yes", CITED_YES[(c, r)])
    if (c, r) in UNKNOWN_CELLS:
        return GridCell(c, r, "Unknown", "open")
    if r == 3:
        if c >= CITED_NO_R3:
            return GridCell(c, r, "No", "regularity-3 counterexample (cited, not constructed)")
        return GridCell(c, r, "Unknown", "open")
    base = c - (r - 4)
    kind = "G" if base == 6 else "F"
    return GridCell(c, r, "No", "non-Koszul base of regularity 4 tensored with squares",
                    (kind, base, r - 4))


def status_grid(c_max: int = 11, r_max: int = 11):
    """Cells for 0 <= c <= c_max, 0 <= r <= r_max, ordered by r then c."""
    return [grid_status(c, r) for r in range(r_max + 1) for c in range(c_max + 1)]


def build_witness(cell: GridCell, field: Field | None = None):
    """The exhibiting ideal of a constructed No cell."""
    from .construct import squares_ci, tensor_product
    from .inverse import annihilator, example_G, family_F
    if cell.witness is None:
        raise ValueError(f"cell ({cell.c}, {cell.r}) has no constructed witness")
    fld = field if field is not None else GF()
    kind, base, squares = cell.witness
    if kind == "G":
        I = annihilator(example_G(fld))
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            I = annihilator(family_F(base, fld))
    if squares:
        I = tensor_product(I, squares_ci(squares, fld))
    return I


def render_grid(cells, c_max: int, r_max: int) -> str:
    """Text grid: rows r from high to low, columns c; Y / N / ? and '.' for impossible cells."""
    sym = {"Yes": "Y", "No": "N", "Unknown": "?", None: "."}
    lookup = {(x.c, x.r): x for x in cells}
    w = max(2, len(str(c_max)))
    lines = []
    for r in range(r_max, -1, -1):
        row = [sym[lookup[(c, r)].status].rjust(w) for c in range(c_max + 1)]
        lines.append(f"{r:>{w}} |" + " ".join(row))
    lines.append(" " * w + "  " + "-" * ((w + 1) * (c_max + 1)))
    lines.append(" " * w + "  " + " ".join(str(c).rjust(w) for c in range(c_max + 1)) + "   (c)")
    return "\n".join(lines)
