"""Integer homology of truncated simplicial sets: normalized chains, Smith
normal form and homology-based comparisons of simplicial sets and maps.

All arithmetic uses Python integers, so nothing overflows.  A simplicial set
truncated at level ``N`` has trustworthy homology in degrees ``0..N-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import BoundaryCompositionNonzero, RangeExceedsValidity

PROXY_NOTE = "homology-proxy: integer homology isomorphism, weaker than weak equivalence"


# -- Smith normal form -------------------------------------------------------------

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] if Bt else [0] * cols for row in A]


def smith_normal_form(M):
    """Return ``(D, U, V)`` with ``D = U M V``, ``D`` diagonal with each
    diagonal entry dividing the next, and ``U``, ``V`` unimodular.

    Pivots are chosen with minimal absolute value to limit coefficient growth.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(map(int, row)) for row in M]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        if k:
            D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        if k:
            for row in D:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if not done:
                # move the smallest remainder into the pivot position
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    if D[i][t] and abs(D[i][t]) < best[0]:
                        best = (abs(D[i][t]), i, t)
                for j in range(t + 1, n):
                    if D[t][j] and abs(D[t][j]) < best[0]:
                        best = (abs(D[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # the pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    return D, U, V


def snf_diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def determinant(M):
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, r)) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_unimodular(M) -> bool:
    return abs(determinant(M)) == 1


def invariant_factors_sparse(rows, ncols):
    """Nonzero invariant factors of a sparse integer matrix given as a list of
    ``{col: value}`` row dicts.  Unit pivots are eliminated sparsely first; the
    (usually tiny) remainder goes through the dense Smith normal form."""
    rows = [dict(r) for r in rows if r]
    cols = {}
    for r, row in enumerate(rows):
        for c in row:
            cols.setdefault(c, set()).add(r)
    alive = set(range(len(rows)))
    units = 0
    while True:
        best = None
        for r in alive:
            row = rows[r]
            for c, v in row.items():
                if v in (1, -1):
                    cost = (len(row) - 1) * (len(cols[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, r, c = best
        prow = rows[r]
        pv = prow[c]
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            k = row2[c] * pv  # pv is a unit so this clears column c
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - k * v
                if nv:
                    if c2 not in row2:
                        cols[c2].add(r2)
                    row2[c2] = nv
                else:
                    if c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
            if not row2:
                alive.discard(r2)
        for c2 in prow:
            cols[c2].discard(r)
        alive.discard(r)
        del cols[c]
        units += 1
    rest_rows = [rows[r] for r in sorted(alive) if rows[r]]
    rest_cols = sorted({c for row in rest_rows for c in row})
    factors = [1] * units
    if rest_rows:
        pos = {c: k for k, c in enumerate(rest_cols)}
        dense = [[0] * len(rest_cols) for _ in rest_rows]
        for i, row in enumerate(rest_rows):
            for c, v in row.items():
                dense[i][pos[c]] = v
        D, _, _ = smith_normal_form(dense)
        factors.extend(abs(x) for x in snf_diagonal(D))
    return sorted(factors)


# -- chain complexes --------------------------------------------------------------------

@dataclass
class ChainComplex:
    """Free abelian groups on ``basis[n]`` for ``n <= top`` with sparse
    boundaries ``boundary[n]`` (a list of ``{row: value}`` columns, one per
    basis element of degree ``n``, rows indexing degree ``n - 1``)."""

    basis: list
    boundary: list
    top: int
    index: list = field(default_factory=list)

    def rank(self, n) -> int:
        return len(self.basis[n]) if 0 <= n <= self.top else 0

    def valid_range(self):
        return (0, self.top - 1)

    def matrix(self, n):
        """Dense matrix of ``d_n`` (rows degree ``n-1``)."""
        rows, cols = self.rank(n - 1), self.rank(n)
        M = [[0] * cols for _ in range(rows)]
        if 1 <= n <= self.top:
            for j, col in enumerate(self.boundary[n]):
                for i, v in col.items():
                    M[i][j] = v
        return M

    def row_dicts(self, n):
        """``d_n`` as a list of row dicts over columns (degree ``n`` basis)."""
        rows = [dict() for _ in range(self.rank(n - 1))]
        if 1 <= n <= self.top:
            for j, col in enumerate(self.boundary[n]):
                for i, v in col.items():
                    rows[i][j] = v
        return rows

    def check_square_zero(self):
        for n in range(2, self.top + 1):
            for j, col in enumerate(self.boundary[n]):
                acc = {}
                for i, v in col.items():
                    for k, w in self.boundary[n - 1][i].items():
                        acc[k] = acc.get(k, 0) + v * w
                if any(acc.values()):
                    raise BoundaryCompositionNonzero(f"d{n - 1} d{n} != 0 on basis element {self.basis[n][j]!r}")
        return True


def nondegenerate(X, n):
    """Nondegenerate ``n``-simplices of ``X`` in level order."""
    if n == 0:
        return list(X.level(0))
    degen = set()
    for y in X.level(n - 1):
        for i in range(n):
            degen.add(X.degen(i, n - 1, y))
    return [x for x in X.level(n) if x not in degen]


def normalized_chains(X, check=True) -> ChainComplex:
    """Normalized chain complex: nondegenerate simplices, alternating face sums
    with degenerate faces dropped."""
    N = X.dim
    basis = [nondegenerate(X, n) for n in range(N + 1)]
    index = [{x: k for k, x in enumerate(b)} for b in basis]
    boundary = [[{} for _ in basis[0]]]
    for n in range(1, N + 1):
        cols = []
        for x in basis[n]:
            col = {}
            for i in range(n + 1):
                k = index[n - 1].get(X.face(i, n, x))
                if k is not None:
                    col[k] = col.get(k, 0) + (-1) ** i
            cols.append({k: v for k, v in col.items() if v})
        boundary.append(cols)
    C = ChainComplex(basis, boundary, N, index)
    if check:
        C.check_square_zero()
    return C


@dataclass
class HomologyGroups:
    """``betti[k]`` and ``torsion[k]`` for ``k`` in ``0..valid_top``."""

    betti: list
    torsion: list
    valid_top: int

    def degree(self, k):
        if k > self.valid_top or k < 0:
            raise RangeExceedsValidity(f"degree {k} outside valid range 0..{self.valid_top}")
        return self.betti[k], self.torsion[k]

    def restricted(self, top):
        if top > self.valid_top:
            raise RangeExceedsValidity(f"range 0..{top} exceeds valid range 0..{self.valid_top}")
        return [(self.betti[k], tuple(self.torsion[k])) for k in range(top + 1)]

    def report(self):
        return [{"degree": k, "betti": self.betti[k], "torsion": list(self.torsion[k]),
                 "valid_range": [0, self.valid_top]} for k in range(self.valid_top + 1)]

    def is_acyclic(self, top=None) -> bool:
        """Homology of a point through degree ``top``."""
        top = self.valid_top if top is None else top
        return self.restricted(top) == [(1, ())] + [(0, ())] * top

    def __str__(self):
        parts = []
        for k in range(self.valid_top + 1):
            t = "".join(f"+Z/{d}" for d in self.torsion[k])
            parts.append(f"H{k}={'Z^%d' % self.betti[k] if self.betti[k] else '0'}{t}")
        return ", ".join(parts)


def homology_groups(C: ChainComplex) -> HomologyGroups:
    C.check_square_zero()
    top = C.top - 1
    factors = {n: invariant_factors_sparse(C.row_dicts(n), C.rank(n)) for n in range(1, C.top + 1)}
    betti, torsion = [], []
    for k in range(top + 1):
        rk_k = len(factors.get(k, []))
        rk_k1 = len(factors.get(k + 1, []))
        betti.append(C.rank(k) - rk_k - rk_k1)
        torsion.append([d for d in factors.get(k + 1, []) if d > 1])
    return HomologyGroups(betti, torsion, top)


def homology(X) -> HomologyGroups:
    return homology_groups(normalized_chains(X))


def homology_equal(X, Y, top=None) -> dict:
    """Compare Betti numbers and torsion of ``X`` and ``Y`` in degrees ``0..top``."""
    hx, hy = homology(X), homology(Y)
    limit = min(hx.valid_top, hy.valid_top)
    top = limit if top is None else top
    if top > limit:
        raise RangeExceedsValidity(f"range 0..{top} exceeds the shared valid range 0..{limit}")
    equal = hx.restricted(top) == hy.restricted(top)
    return {"equal": equal, "range": [0, top], "left": hx.restricted(top), "right": hy.restricted(top),
            "note": PROXY_NOTE}


# -- chain maps ----------------------------------------------------------------------

def chain_map(f, CX: ChainComplex | None = None, CY: ChainComplex | None = None):
    """The normalized chain map of a simplicial map: ``f_n`` as a list of
    ``{row: value}`` columns (nondegenerate images kept, degenerate ones dropped)."""
    CX = CX or normalized_chains(f.source)
    CY = CY or normalized_chains(f.target)
    top = min(CX.top, CY.top)
    cols = []
    for n in range(top + 1):
        level = []
        for x in CX.basis[n]:
            k = CY.index[n].get(f(n, x))
            level.append({} if k is None else {k: 1})
        cols.append(level)
    return cols, CX, CY


def mapping_cone(f) -> ChainComplex:
    """``Cone(f)_n = Y_n + X_(n-1)`` with ``d(y, x) = (dy + f x, -dx)``."""
    fm, CX, CY = chain_map(f)
    top = min(CX.top, CY.top)
    basis, boundary = [], []
    for n in range(top + 1):
        ys = [("y", b) for b in CY.basis[n]]
        xs = [("x", b) for b in CX.basis[n - 1]] if n >= 1 else []
        basis.append(ys + xs)
        cols = []
        ny = CY.rank(n - 1) if n >= 1 else 0
        if n >= 1:
            for j in range(len(ys)):
                cols.append(dict(CY.boundary[n][j]))
            for j in range(len(xs)):
                col = {i: v for i, v in fm[n - 1][j].items()}
                if n >= 2:
                    for i, v in CX.boundary[n - 1][j].items():
                        col[ny + i] = -v
                cols.append(col)
        else:
            cols = [{} for _ in ys]
        boundary.append(cols)
    C = ChainComplex(basis, boundary, top)
    C.check_square_zero()
    return C


def is_homology_isomorphism(f) -> dict:
    """``f_*`` is an isomorphism in degrees ``k <= top - 2`` (and onto in
    degree ``top - 1``) when the mapping cone is acyclic through ``top - 1``."""
    C = mapping_cone(f)
    H = homology_groups(C)
    zero = all(H.betti[k] == 0 and not H.torsion[k] for k in range(H.valid_top + 1))
    return {"isomorphism": zero, "iso_range": [0, H.valid_top - 1], "epi_degree": H.valid_top,
            "cone": H.restricted(H.valid_top), "note": PROXY_NOTE}


def _kernel_basis(M, ncols):
    """Integral basis of ``ker M`` (columns) via the Smith normal form."""
    if not M:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    D, _, V = smith_normal_form(M)
    r = len(snf_diagonal(D))
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def _in_image(M, v) -> bool:
    """Is ``v`` an integral combination of the columns of ``M``?"""
    if not any(v):
        return True
    if not M or not M[0]:
        return False
    D, U, _ = smith_normal_form(M)
    w = [sum(a * b for a, b in zip(row, v)) for row in U]
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(len(D))]
    for wi, d in zip(w, diag):
        if d == 0:
            if wi != 0:
                return False
        elif wi % d:
            return False
    return True


def induced_maps_equal(f, g, top=None) -> dict:
    """Do ``f`` and ``g`` induce the same map on homology in degrees ``0..top``?
    Tested as ``(f - g)(Z_k) <= B_k`` with integral kernel bases."""
    if f.source is not g.source or f.target is not g.target:
        from .errors import Mismatch
        raise Mismatch("maps must be parallel")
    fm, CX, CY = chain_map(f)
    gm, _, _ = chain_map(g, CX, CY)
    limit = min(CX.top, CY.top) - 1
    top = limit if top is None else top
    if top > limit:
        raise RangeExceedsValidity(f"range 0..{top} exceeds valid range 0..{limit}")
    for k in range(top + 1):
        Mk = CX.matrix(k) if k >= 1 else []
        Z = _kernel_basis(Mk, CX.rank(k))
        B = CY.matrix(k + 1)
        for z in Z:
            diff = [0] * CY.rank(k)
            for j, c in enumerate(z):
                if c:
                    for i, v in fm[k][j].items():
                        diff[i] += c * v
                    for i, v in gm[k][j].items():
                        diff[i] -= c * v
            if not _in_image(B, diff):
                return {"equal": False, "degree": k, "range": [0, top], "note": PROXY_NOTE}
    return {"equal": True, "range": [0, top], "note": PROXY_NOTE}


def euler_characteristic(C: ChainComplex, top: int) -> int:
    return sum((-1) ** k * C.rank(k) for k in range(top + 1))


def gcd_list(xs):
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
