"""Independent brute-force oracles used to pin expected values.

The line-bundle cohomology oracle computes Cech cohomology of O(k) on
P^1 from an explicit truncated two-chart complex by integer matrix rank,
and the surface-level graded Homs are assembled from the two-row second
page whose differentials vanish for column reasons.  None of this shares
code with the closed forms under test.
"""

from fractions import Fraction


def _rank_rational(rows):
    """Row rank of a small integer matrix, by fraction-exact elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    pivot_row = 0
    for c in range(cols):
        pr = None
        for r in range(pivot_row, len(mat)):
            if mat[r][c] != 0:
                pr = r
                break
        if pr is None:
            continue
        mat[pivot_row], mat[pr] = mat[pr], mat[pivot_row]
        pv = mat[pivot_row][c]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][c] != 0:
                f = mat[r][c] / pv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank


def cech_line_cohomology(k: int, cutoff: int = 8) -> tuple[int, int]:
    """(h^0, h^1) of O(k) on P^1 from the two-chart Cech complex.

    Chart sections: U0 contributes monomials u^0..u^N, U1 contributes
    u^(k-N)..u^k; the overlap window spans u^(k-N)..u^N and the boundary
    map is (f, g) |-> f - g.  For N >= |k| the truncation is stable and
    kernel/cokernel ranks give the sheaf cohomology.
    """
    n = max(cutoff, abs(k) + 2)
    u0_exps = list(range(0, n + 1))
    u1_exps = list(range(k - n, k + 1))
    window = list(range(k - n, n + 1))
    cols = {e: i for i, e in enumerate(window)}
    rows = []
    for e in u0_exps:
        row = [0] * len(window)
        row[cols[e]] = 1
        rows.append(row)
    for e in u1_exps:
        row = [0] * len(window)
        row[cols[e]] = -1
        rows.append(row)
    boundary_rank = _rank_rational(rows)
    h0 = len(u0_exps) + len(u1_exps) - boundary_rank
    h1 = len(window) - boundary_rank
    return h0, h1


def surface_hom_dims_oracle(s: int, t: int) -> tuple[int, int, int]:
    """Graded Hom dims between O_Z(s) and O_Z(t) from the two-row page.

    Rows q = 0, 1 hold the base cohomology of O(d) and O(d-2); every
    second-page differential leaves the two-column strip, so totals are
    plain sums along the diagonals.
    """
    d = t - s
    h0_top, h1_top = cech_line_cohomology(d)
    h0_bot, h1_bot = cech_line_cohomology(d - 2)
    return (h0_top, h1_top + h0_bot, h1_bot)
