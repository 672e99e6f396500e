"""Exact integer linear algebra for chain complexes.

Boundary operators, Smith normal form with unimodular transforms, integral
and mod-2 homology, homology generators with a projection onto chosen
coordinates, and a chain-level Mayer-Vietoris exactness checker.  All
arithmetic is over Python's arbitrary-precision integers; nothing here may
touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadCoverError


class IntegerMatrix:
    """Dense integer matrix that remembers its shape even when degenerate."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[0] * cols for _ in range(rows)]
        self.entries = entries

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def copy(self):
        return IntegerMatrix(self.rows, self.cols, [row[:] for row in self.entries])

    def transpose(self):
        return IntegerMatrix(
            self.cols, self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def mul(self, other):
        assert self.cols == other.rows
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.entries[i]
            acc = out[i]
            for k, a in enumerate(row):
                if a:
                    brow = other.entries[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
        return IntegerMatrix(self.rows, other.cols, out)

    def times_vector(self, v):
        assert self.cols == len(v)
        return [sum(a * x for a, x in zip(row, v) if a and x) for row in self.entries]

    def column(self, j):
        return [row[j] for row in self.entries]

    def is_zero(self):
        return all(all(a == 0 for a in row) for row in self.entries)

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "entries": self.entries}

    def __eq__(self, other):
        return (
            isinstance(other, IntegerMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols})"


def boundary_matrix(c, p):
    """Boundary operator from p-chains to (p-1)-chains, signs by omitted vertex.

    Out-of-range degrees give an empty matrix of the correct shape.
    """
    rows = c.simplices_of_dim(p - 1) if p >= 1 else []
    cols = c.simplices_of_dim(p) if p >= 0 else []
    m = IntegerMatrix(len(rows), len(cols))
    row_index = {s: i for i, s in enumerate(rows)}
    for j, s in enumerate(cols):
        if len(s) == 1:
            continue
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            m.entries[row_index[face]][j] = -1 if i % 2 else 1
    return m


def augmentation_matrix(c):
    """The map sending every vertex to 1; replaces the degree-0 boundary."""
    n = len(c.simplices_of_dim(0))
    return IntegerMatrix(1, n, [[1] * n])


@dataclass
class SnfDecomposition:
    """U * A * V = S with U, V unimodular and S diagonal, d_i | d_{i+1}."""

    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix
    Uinv: IntegerMatrix
    Vinv: IntegerMatrix
    rank: int

    @property
    def diagonal(self):
        k = min(self.S.rows, self.S.cols)
        return [self.S.entries[i][i] for i in range(k)]


def smith_normal_form(a, transforms=True):
    """Diagonalize by unimodular row and column operations.

    Pivots always take the smallest available absolute value, which keeps
    coefficient growth tame at this scale.
    """
    m, n = a.rows, a.cols
    s = [row[:] for row in a.entries]
    if transforms:
        u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        if transforms:
            u[i], u[j] = u[j], u[i]
            for row in uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in v:
                row[i], row[j] = row[j], row[i]
            vinv[i], vinv[j] = vinv[j], vinv[i]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        if transforms:
            u[i] = [-x for x in u[i]]
            for row in uinv:
                row[i] = -row[i]

    def add_row(i, j, coef):
        # row_i += coef * row_j
        si, sj = s[i], s[j]
        for k in range(n):
            if sj[k]:
                si[k] += coef * sj[k]
        if transforms:
            ui, uj = u[i], u[j]
            for k in range(m):
                if uj[k]:
                    ui[k] += coef * uj[k]
            for row in uinv:
                if row[i]:
                    row[j] -= coef * row[i]

    def add_col(i, j, coef):
        # col_i += coef * col_j
        for row in s:
            if row[j]:
                row[i] += coef * row[j]
        if transforms:
            for row in v:
                if row[j]:
                    row[i] += coef * row[j]
            vi, vj = vinv[i], vinv[j]
            for k in range(n):
                if vi[k]:
                    vj[k] -= coef * vi[k]

    def pivot_search(k):
        best = None
        best_val = None
        for i in range(k, m):
            row = s[i]
            for j in range(k, n):
                x = row[j]
                if x and (best_val is None or abs(x) < best_val):
                    best, best_val = (i, j), abs(x)
                    if best_val == 1:
                        return best
        return best

    def nearest_quotient(a, b):
        # q minimizing |a - q*b|; keeps remainders at most |b|/2
        q, r = divmod(a, b)
        if 2 * abs(r) > abs(b):
            q += 1
        return q

    k = 0
    limit = min(m, n)
    while k < limit:
        if pivot_search(k) is None:
            break
        while True:
            # always work from the smallest entry of the block; this is what
            # keeps coefficient growth in check
            i0, j0 = pivot_search(k)
            if i0 != k:
                swap_rows(k, i0)
            if j0 != k:
                swap_cols(k, j0)
            piv = s[k][k]
            for i in range(k + 1, m):
                if s[i][k]:
                    q = nearest_quotient(s[i][k], piv)
                    if q:
                        add_row(i, k, -q)
            for j in range(k + 1, n):
                if s[k][j]:
                    q = nearest_quotient(s[k][j], piv)
                    if q:
                        add_col(j, k, -q)
            if any(s[i][k] for i in range(k + 1, m)) or any(
                s[k][j] for j in range(k + 1, n)
            ):
                continue  # a remainder smaller than the pivot is promoted next
            # pivot must divide the remaining block for the divisor chain
            piv = s[k][k]
            dirty = None
            for i in range(k + 1, m):
                row = s[i]
                for j in range(k + 1, n):
                    if row[j] % piv:
                        dirty = i
                        break
                if dirty is not None:
                    break
            if dirty is None:
                break
            add_row(k, dirty, 1)
        if s[k][k] < 0:
            negate_row(k)
        k += 1
    rank = sum(1 for i in range(limit) if s[i][i])
    mat_s = IntegerMatrix(m, n, s)
    if not transforms:
        ident_m = IntegerMatrix.identity(m)
        ident_n = IntegerMatrix.identity(n)
        return SnfDecomposition(ident_m, mat_s, ident_n, ident_m, ident_n, rank)
    return SnfDecomposition(
        IntegerMatrix(m, m, u),
        mat_s,
        IntegerMatrix(n, n, v),
        IntegerMatrix(m, m, uinv),
        IntegerMatrix(n, n, vinv),
        rank,
    )


def determinant(a):
    """Bareiss fraction-free determinant; exact."""
    n = a.rows
    assert n == a.cols
    if n == 0:
        return 1
    mat = [row[:] for row in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if mat[i][k]), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


def rank_mod2(a):
    """Rank over the field with two elements via bitset elimination."""
    rows = []
    for row in a.entries:
        bits = 0
        for j, x in enumerate(row):
            if x & 1:
                bits |= 1 << j
        if bits:
            rows.append(bits)
    rank = 0
    while rows:
        pivot = rows.pop()
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
    return rank


# ---------------------------------------------------------------------------
# homology groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    rank: int
    torsion: tuple = ()

    def to_json(self):
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion)}


def homology(c, coefficients="Z", reduced=False):
    """Homology groups per degree 0..dim; mod-2 answers report dimensions."""
    dim = c.dim
    if dim < 0:
        return []
    mats = {}
    for p in range(dim + 2):
        if p == 0:
            mats[0] = augmentation_matrix(c) if reduced else boundary_matrix(c, 0)
        else:
            mats[p] = boundary_matrix(c, p)
    out = []
    if coefficients == "Z":
        snfs = {p: smith_normal_form(m, transforms=False) for p, m in mats.items()}
        for p in range(dim + 1):
            n_p = mats[p].cols
            rank = n_p - snfs[p].rank - snfs[p + 1].rank
            torsion = tuple(d for d in snfs[p + 1].diagonal if d > 1)
            out.append(HomologyGroup(p, rank, torsion))
        return out
    if coefficients == "Z2":
        ranks = {p: rank_mod2(m) for p, m in mats.items()}
        for p in range(dim + 1):
            n_p = mats[p].cols
            out.append(HomologyGroup(p, n_p - ranks[p] - ranks[p + 1]))
        return out
    raise ValueError(f"unsupported coefficients {coefficients!r}")


def betti_numbers(c, coefficients="Z", reduced=False):
    return [g.rank for g in homology(c, coefficients, reduced)]


def chain_basis(c, p, reduced=False, dual=False):
    """Homology of one degree with explicit generators and a projection.

    Returns ker/im of the boundary pair at degree p (the coboundary pair
    when `dual`).  `generators[i]` is a cycle vector over the canonical
    p-simplex list whose class has order `orders[i]` (0 meaning infinite);
    `project` writes any cycle in these coordinates, reducing torsion
    coordinates modulo their orders.
    """
    if dual:
        a = boundary_matrix(c, p + 1).transpose()
        b = boundary_matrix(c, p).transpose()
    else:
        a = augmentation_matrix(c) if (p == 0 and reduced) else boundary_matrix(c, p)
        b = boundary_matrix(c, p + 1)
    return ChainBasis(c.simplices_of_dim(p), a, b)


class ChainBasis:
    """ker(a) / im(b) with generators expressed over the ambient chain basis."""

    def __init__(self, basis, a, b):
        n = a.cols
        snf_a = smith_normal_form(a)
        r = snf_a.rank
        vinv_tail = snf_a.Vinv.entries[r:]
        kernel_cols = [snf_a.V.column(j) for j in range(r, n)]
        k = len(kernel_cols)
        # boundaries written in kernel coordinates
        y = IntegerMatrix(
            k, b.cols, [[sum(row[i] * b.entries[i][j] for i in range(n) if row[i])
                         for j in range(b.cols)] for row in vinv_tail],
        )
        head = snf_a.Vinv.entries[:r]
        for j in range(b.cols):
            col = b.column(j)
            for row in head:
                assert sum(x * w for x, w in zip(row, col)) == 0, (
                    "boundary column is not a cycle"
                )
        snf_y = smith_normal_form(y)
        diag = snf_y.diagonal
        orders = []
        kept = []
        for i in range(k):
            d = diag[i] if i < len(diag) else 0
            if d == 1:
                continue
            kept.append(i)
            orders.append(d if d else 0)
        generators = []
        for i in kept:
            coef = snf_y.Uinv.column(i)
            vec = [0] * n
            for col, cval in zip(kernel_cols, coef):
                if cval:
                    for t in range(n):
                        if col[t]:
                            vec[t] += cval * col[t]
            generators.append(vec)
        self.basis = basis
        self.generators = generators
        self.orders = orders
        self._vinv_head = head
        self._vinv_tail = vinv_tail
        self._uy = snf_y.U
        self._kept = kept
        self._diag = [diag[i] if i < len(diag) else 0 for i in range(k)]

    def group(self, degree):
        rank = sum(1 for d in self.orders if d == 0)
        torsion = tuple(d for d in self.orders if d >= 2)
        return HomologyGroup(degree, rank, torsion)

    def project(self, vec):
        for row in self._vinv_head:
            assert (
                sum(a * x for a, x in zip(row, vec) if a and x) == 0
            ), "vector is not a cycle"
        y = [
            sum(a * x for a, x in zip(row, vec) if a and x) for row in self._vinv_tail
        ]
        u = self._uy.times_vector(y)
        coords = []
        for i in self._kept:
            d = self._diag[i]
            coords.append(u[i] % d if d >= 2 else u[i])
        return coords


# ---------------------------------------------------------------------------
# lattices of integer vectors
# ---------------------------------------------------------------------------


def lattice_contains(gens, vec):
    """Is `vec` an integer combination of `gens`?"""
    dim = len(vec)
    if not gens:
        return all(x == 0 for x in vec)
    a = IntegerMatrix(dim, len(gens), [[g[i] for g in gens] for i in range(dim)])
    snf = smith_normal_form(a)
    w = snf.U.times_vector(vec)
    for i, x in enumerate(w):
        d = snf.S.entries[i][i] if i < min(a.rows, a.cols) else 0
        if d == 0:
            if x != 0:
                return False
        elif x % d:
            return False
    return True


def lattice_subset(gens1, gens2):
    return all(lattice_contains(gens2, v) for v in gens1)


def lattices_equal(gens1, gens2):
    return lattice_subset(gens1, gens2) and lattice_subset(gens2, gens1)


def kernel_generators(columns, n_cols_total=None):
    """Generators of {x : M x = 0} for M given by columns over Z."""
    if n_cols_total is None:
        n_cols_total = len(columns)
    if n_cols_total == 0:
        return []
    dim = len(columns[0]) if columns else 0
    a = IntegerMatrix(dim, n_cols_total, [[col[i] for col in columns] for i in range(dim)])
    snf = smith_normal_form(a)
    return [snf.V.column(j) for j in range(snf.rank, n_cols_total)]


def relation_vectors(orders):
    """Lattice generators of the relations of a presented group."""
    out = []
    for i, d in enumerate(orders):
        if d:
            vec = [0] * len(orders)
            vec[i] = d
            out.append(vec)
    return out


def preimage_kernel(matrix_cols, dst_orders):
    """Generators of {x : M x lies in the relation lattice of the target}."""
    k = len(matrix_cols)
    if k == 0:
        return []
    rels = relation_vectors(dst_orders)
    block = list(matrix_cols) + rels
    gens = kernel_generators(block)
    return [g[:k] for g in gens]


def image_lattice(matrix_cols, dst_orders):
    return list(matrix_cols) + relation_vectors(dst_orders)


def map_is_injective(matrix_cols, src_orders, dst_orders):
    ker = preimage_kernel(matrix_cols, dst_orders)
    return lattice_subset(ker, relation_vectors(src_orders))


# ---------------------------------------------------------------------------
# Mayer-Vietoris
# ---------------------------------------------------------------------------


def _transport(vec, child, parent, p):
    """Re-index a chain vector from a subcomplex into the ambient complex."""
    out = [0] * len(parent.simplices_of_dim(p))
    if not vec:
        return out
    index = {s: i for i, s in enumerate(parent.simplices_of_dim(p))}
    for val, s in zip(vec, child.simplices_of_dim(p)):
        if val:
            out[index[s]] = val
    return out


def _restrict_chain(vec, parent, child, p, strict=True):
    """Chain vector of the subcomplex from one over the ambient complex."""
    index = {s: i for i, s in enumerate(parent.simplices_of_dim(p))}
    own = child.simplices_of_dim(p)
    out = [vec[index[s]] for s in own]
    if strict:
        covered = {index[s] for s in own}
        assert all(
            x == 0 for i, x in enumerate(vec) if i not in covered
        ), "chain leaves the subcomplex"
    return out


def mayer_vietoris_check(w, a_name, b_name):
    """Exactness of the long sequence of the cover {A, B} of `w`.

    The connecting morphism is evaluated on explicit chain representatives:
    a cycle of the total space is split over the cover and the boundary of
    the A-half is read in the intersection.  The report also records, per
    degree, whether H_p(A cap B) -> H_p(A) + H_p(B) is injective.
    """
    part_a = w.named_part(a_name)
    part_b = w.named_part(b_name)
    if part_a | part_b != w.simplices:
        raise BadCoverError(f"{a_name!r} and {b_name!r} do not cover the complex")
    sub_a = w.subcomplex(a_name)
    sub_b = w.subcomplex(b_name)
    sub_y = w.subcomplex(part_a & part_b)
    n = w.dim

    bases = {}
    for label, cx in (("Y", sub_y), ("A", sub_a), ("B", sub_b), ("W", w)):
        for p in range(n + 2):
            bases[label, p] = chain_basis(cx, p)

    def alpha_columns(p):
        cols = []
        for gen in bases["Y", p].generators:
            in_a = bases["A", p].project(_transport(gen, sub_y, sub_a, p))
            in_b = bases["B", p].project(_transport(gen, sub_y, sub_b, p))
            cols.append(in_a + [-x for x in in_b])
        return cols

    def beta_columns(p):
        cols = []
        for gen in bases["A", p].generators:
            cols.append(bases["W", p].project(_transport(gen, sub_a, w, p)))
        for gen in bases["B", p].generators:
            cols.append(bases["W", p].project(_transport(gen, sub_b, w, p)))
        return cols

    def connecting_columns(p):
        """H_p(W) -> H_{p-1}(Y) on chain representatives."""
        if p == 0:
            return [[] for _ in bases["W", 0].generators]
        cols = []
        in_a = set(part_a)
        bmat = boundary_matrix(w, p)
        for gen in bases["W", p].generators:
            simps = w.simplices_of_dim(p)
            a_half = [x if s in in_a else 0 for x, s in zip(gen, simps)]
            da = bmat.times_vector(a_half)
            y_vec = _restrict_chain(da, w, sub_y, p - 1)
            cols.append(bases["Y", p - 1].project(y_vec))
        return cols

    report = {"cover": [a_name, b_name], "degrees": {}, "pass": True}
    for p in range(n + 1):
        oy = bases["Y", p].orders
        oa = bases["A", p].orders + bases["B", p].orders
        ow = bases["W", p].orders
        oy_prev = bases["Y", p - 1].orders if p else []
        m_alpha = alpha_columns(p)
        m_beta = beta_columns(p)
        m_conn = connecting_columns(p)
        m_conn_up = connecting_columns(p + 1)
        exact_sum = lattices_equal(
            image_lattice(m_alpha, oa), image_lattice(preimage_kernel(m_beta, ow), oa)
        )
        exact_total = lattices_equal(
            image_lattice(m_beta, ow),
            image_lattice(preimage_kernel(m_conn, oy_prev), ow),
        )
        exact_inter = lattices_equal(
            image_lattice(m_conn_up, oy),
            image_lattice(preimage_kernel(m_alpha, oa), oy),
        )
        injective = map_is_injective(m_alpha, oy, oa)
        report["degrees"][p] = {
            "exact_at_pair": exact_sum,
            "exact_at_total": exact_total,
            "exact_at_intersection": exact_inter,
            "injective": injective,
        }
        if not (exact_sum and exact_total and exact_inter):
            report["pass"] = False
    return report
