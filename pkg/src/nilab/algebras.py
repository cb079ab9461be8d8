"""Split matrix realizations of the classical simple Lie algebras.

Families and realizations (all with integer structure constants):

  A_r : sl(r+1), traceless matrices.
  B_r : so(2r+1) and D_r : so(2r), cut out by x^T S + S x = 0 with S the
        antidiagonal-ones form.
  C_r : sp(2r), cut out by x^T J + J x = 0 with J antidiagonal, +1 above
        the center and -1 below.

The antidiagonal ("split") forms make the Borel subalgebra literally upper
triangular, so nilpotent elements, triples and gradings stay rational.

Basis order is row-major over matrix positions and documented in each
builder, fixed once so that coordinates and reports are reproducible.

The invariant pairing is the defining-representation trace form tr(xy)
(optionally rescaled); it is a nonzero multiple of the Killing form, with
the per-family ratio recorded on the realization.  Ranks, vanishing
patterns and the index are insensitive to this rescaling.
"""

from __future__ import annotations

import math

from ._scalar import ONE, Rat, ZERO, rat_str
from .errors import (
    ContractError,
    GraduationError,
    ShapeError,
    UnsupportedAlgebraError,
)
from .linalg import Mat, inverse, rank_kernel, rref

_FACTORIALS = [math.factorial(k) for k in range(40)]


def _zero_rows(n):
    return [[ZERO] * n for _ in range(n)]


def _mul_rows(a, b):
    n = len(a)
    m = len(b[0])
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t, v in enumerate(ai):
            if v:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += v * bt[j]
    return out


def _sl_basis(n):
    # Row-major over positions (i, j): off-diagonal (i, j) gives E_ij;
    # diagonal (i, i) with i < n-1 gives E_ii - E_{i+1,i+1}; (n-1, n-1) skipped.
    basis = []
    for i in range(n):
        for j in range(n):
            if i == j:
                if i < n - 1:
                    m = _zero_rows(n)
                    m[i][i] = ONE
                    m[i + 1][i + 1] = -ONE
                    basis.append(m)
            else:
                m = _zero_rows(n)
                m[i][j] = ONE
                basis.append(m)
    return basis


def _so_basis(n):
    # x in so(n) iff x_{ij} = -x_{s(j) s(i)} with s(i) = n-1-i (0-based);
    # representatives are the lexicographically smaller member of each
    # orbit pair {(i,j), (s(j),s(i))}, scanned row-major; antidiagonal
    # positions (j = s(i)) are forced to zero and skipped.
    basis = []
    for i in range(n):
        for j in range(n):
            if i + j == n - 1:
                continue
            pi, pj = n - 1 - j, n - 1 - i
            if (pi, pj) < (i, j):
                continue
            m = _zero_rows(n)
            m[i][j] = ONE
            m[pi][pj] = -ONE
            basis.append(m)
    return basis


def _sp_basis(n):
    # x in sp(n) iff x_{ij} = -eps(i) eps(j) x_{s(j) s(i)}, eps = +1 on the
    # first half, -1 on the second; antidiagonal positions are free.
    half = n // 2
    basis = []
    for i in range(n):
        for j in range(n):
            pi, pj = n - 1 - j, n - 1 - i
            if (pi, pj) == (i, j):
                m = _zero_rows(n)
                m[i][j] = ONE
                basis.append(m)
                continue
            if (pi, pj) < (i, j):
                continue
            ei = 1 if i < half else -1
            ej = 1 if j < half else -1
            m = _zero_rows(n)
            m[i][j] = ONE
            m[pi][pj] = Rat(-ei * ej)
            basis.append(m)
    return basis


def _form_matrix(family, n):
    if family in ("B", "D"):
        m = _zero_rows(n)
        for i in range(n):
            m[i][n - 1 - i] = ONE
        return Mat.from_rows(m)
    if family == "C":
        half = n // 2
        m = _zero_rows(n)
        for i in range(n):
            m[i][n - 1 - i] = ONE if i < half else -ONE
        return Mat.from_rows(m)
    return None


class AlgebraRealization:
    """A classical simple Lie algebra as N x N rational matrices.

    Built through build_algebra; immutable afterwards and safe to share.
    """

    def __init__(self, family, rank_r, *, form_scale=ONE):
        family = family.upper()
        if family == "A":
            if rank_r < 1:
                raise UnsupportedAlgebraError("A_r needs r >= 1")
            n = rank_r + 1
            basis = _sl_basis(n)
            degrees = list(range(2, n + 1))
            kinds = ["trace"] * rank_r
            killing_ratio = Rat(2 * n)
            simple = True
            name = f"sl({n})"
        elif family == "B":
            if rank_r < 1:
                raise UnsupportedAlgebraError("B_r needs r >= 1")
            n = 2 * rank_r + 1
            basis = _so_basis(n)
            degrees = [2 * k for k in range(1, rank_r + 1)]
            kinds = ["trace"] * rank_r
            killing_ratio = Rat(n - 2)
            simple = True
            name = f"so({n})"
        elif family == "C":
            if rank_r < 1:
                raise UnsupportedAlgebraError("C_r needs r >= 1")
            n = 2 * rank_r
            basis = _sp_basis(n)
            degrees = [2 * k for k in range(1, rank_r + 1)]
            kinds = ["trace"] * rank_r
            killing_ratio = Rat(n + 2)
            simple = True
            name = f"sp({n})"
        elif family == "D":
            if rank_r < 2:
                raise UnsupportedAlgebraError("D_r needs r >= 2")
            n = 2 * rank_r
            basis = _so_basis(n)
            pairs = [(2 * k, "trace") for k in range(1, rank_r)] + [(rank_r, "pfaffian")]
            pairs.sort(key=lambda dk: (dk[0], 0 if dk[1] == "trace" else 1))
            degrees = [d for d, _ in pairs]
            kinds = [k for _, k in pairs]
            killing_ratio = Rat(n - 2)
            simple = rank_r != 2  # D_2 = so(4) is semisimple, not simple
            name = f"so({n})"
        else:
            raise UnsupportedAlgebraError(f"unknown family {family!r}")

        self.family = family
        self.rank_r = rank_r
        self.matrix_size_N = n
        self.name = name
        self.simple = simple
        self.form = _form_matrix(family, n)
        self.form_scale = Rat(form_scale)
        if self.form_scale == 0:
            raise ContractError("form_scale must be nonzero")
        self.killing_ratio = killing_ratio
        self.generator_degrees = tuple(degrees)
        self.generator_kinds = tuple(kinds)
        self.exponents = tuple(d - 1 for d in degrees)
        self.distinct_exponents = len(set(self.exponents)) == rank_r
        self._basis_rows = basis
        self.basis = [Mat.from_rows(rows) for rows in basis]
        self.dim = len(basis)
        self._basis_sparse = [
            [(i, j, rows[i][j]) for i in range(n) for j in range(n) if rows[i][j]]
            for rows in basis
        ]
        self._upper_indices = tuple(
            k
            for k, entries in enumerate(self._basis_sparse)
            if all(i < j for i, j, _ in entries)
        )
        self._init_coordinatizer()
        self._init_gram()
        self._struct = None

    def _init_coordinatizer(self):
        n2 = self.matrix_size_N * self.matrix_size_N
        vecs = [[row for line in rows for row in line] for rows in self._basis_rows]
        work = [list(v) for v in vecs]
        pivots = rref(work, n2)
        if len(pivots) != self.dim:
            raise ContractError("basis matrices are not linearly independent")
        self._pivots = tuple(pivots)
        sub = Mat(self.dim, self.dim, [vecs[k][p] for p in pivots for k in range(self.dim)])
        self._solve_inv = inverse(sub)
        pivot_set = set(pivots)
        self._nonpivot = tuple(q for q in range(n2) if q not in pivot_set)
        self._basis_vecs = vecs

    def _init_gram(self):
        data = []
        for a in range(self.dim):
            for b in range(self.dim):
                acc = ZERO
                for i, j, v in self._basis_sparse[a]:
                    for p, q, w in self._basis_sparse[b]:
                        if j == p and q == i:
                            acc += v * w
                data.append(acc * self.form_scale)
        self.gram = Mat(self.dim, self.dim, data)
        self._gram_inv = None

    @property
    def gram_inverse(self) -> Mat:
        if self._gram_inv is None:
            self._gram_inv = inverse(self.gram)
        return self._gram_inv

    @property
    def structure_constants(self):
        """Sparse bracket tensor: struct[a][b] = {k: coefficient} with
        [b_a, b_b] = sum coefficient * b_k.  Computed once on demand."""
        if self._struct is None:
            table = []
            for a in range(self.dim):
                row = []
                for b in range(self.dim):
                    prod = _commutator_rows(
                        self._basis_rows[a], self._basis_rows[b], self.matrix_size_N
                    )
                    coords = self.coords_of_rows(prod)
                    row.append({k: c for k, c in enumerate(coords) if c})
                table.append(row)
            self._struct = table
        return self._struct

    def coords_of_rows(self, rows):
        """Coordinates of an N x N matrix (given as row lists) in the basis.

        Raises ContractError when the matrix is not in the span.
        """
        n = self.matrix_size_N
        vec = [rows[p // n][p % n] for p in self._pivots]
        coords = self._solve_inv.mul_vec(vec)
        for q in self._nonpivot:
            acc = ZERO
            for k, c in enumerate(coords):
                if c:
                    acc += c * self._basis_vecs[k][q]
            if acc != rows[q // n][q % n]:
                raise ContractError("matrix does not lie in the algebra")
        return coords

    def element(self, coords) -> "Element":
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, [ZERO] * self.dim)

    def basis_element(self, k) -> "Element":
        coords = [ZERO] * self.dim
        coords[k] = ONE
        return Element(self, coords)

    def from_matrix(self, mat) -> "Element":
        rows = mat.as_rows() if isinstance(mat, Mat) else [list(r) for r in mat]
        if len(rows) != self.matrix_size_N:
            raise ShapeError("matrix size does not match the realization")
        return Element(self, self.coords_of_rows([[Rat(v) for v in r] for r in rows]))

    def full_space(self) -> "Subspace":
        return Subspace.from_coord_rows(
            self, [self.basis_element(k).coords for k in range(self.dim)]
        )

    def random_element(self, rng, bound: int = 3) -> "Element":
        return Element(self, [Rat(rng.randint(-bound, bound)) for _ in range(self.dim)])

    def random_upper_nilpotent(self, rng, bound: int = 2) -> "Element":
        """Random combination of the strictly-upper-triangular basis matrices
        (ad-nilpotent by construction); resampled once if it comes out zero."""
        for _ in range(8):
            coords = [ZERO] * self.dim
            for k in self._upper_indices:
                coords[k] = Rat(rng.randint(-bound, bound))
            el = Element(self, coords)
            if not el.is_zero():
                return el
        return Element(self, coords)

    def describe(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank_r,
            "matrix_size": self.matrix_size_N,
            "dim": self.dim,
            "name": self.name,
            "simple": self.simple,
            "generator_degrees": list(self.generator_degrees),
            "generator_kinds": list(self.generator_kinds),
            "exponents": list(self.exponents),
            "distinct_exponents": self.distinct_exponents,
            "killing_to_trace_ratio": rat_str(self.killing_ratio),
            "form_scale": rat_str(self.form_scale),
        }

    def __repr__(self) -> str:
        return f"AlgebraRealization({self.name}, dim={self.dim})"


def build_algebra(family: str, rank_r: int, *, form_scale=ONE) -> AlgebraRealization:
    """Split realization of A/B/C/D at the given rank.

    D_2 and D_3 are allowed for testing although D_2 is not simple (the
    realization records this via the `simple` flag).
    """
    return AlgebraRealization(family, rank_r, form_scale=form_scale)


def _commutator_rows(a, b, n):
    ab = _mul_rows(a, b)
    ba = _mul_rows(b, a)
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]


class Element:
    """A vector of the algebra, stored as exact coordinates in the basis."""

    __slots__ = ("algebra", "coords", "_rows")

    def __init__(self, algebra: AlgebraRealization, coords):
        coords = tuple(Rat(c) for c in coords)
        if len(coords) != algebra.dim:
            raise ContractError("coordinate length does not match the algebra dimension")
        self.algebra = algebra
        self.coords = coords
        self._rows = None

    def matrix_rows(self):
        if self._rows is None:
            n = self.algebra.matrix_size_N
            rows = _zero_rows(n)
            for k, c in enumerate(self.coords):
                if c:
                    for i, j, v in self.algebra._basis_sparse[k]:
                        rows[i][j] += c * v
            self._rows = rows
        return self._rows

    def matrix(self) -> Mat:
        return Mat.from_rows(self.matrix_rows())

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_nilpotent(self) -> bool:
        n = self.algebra.matrix_size_N
        power = self.matrix_rows()
        for _ in range(n - 1):
            if all(v == 0 for row in power for v in row):
                return True
            power = _mul_rows(power, self.matrix_rows())
        return all(v == 0 for row in power for v in row)

    def __add__(self, other: "Element") -> "Element":
        _same_algebra(self, other)
        return Element(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Element") -> "Element":
        _same_algebra(self, other)
        return Element(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Element":
        return Element(self.algebra, [-c for c in self.coords])

    def scale(self, c) -> "Element":
        c = Rat(c)
        return Element(self.algebra, [c * v for v in self.coords])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"Element({self.algebra.name}, [{', '.join(str(c) for c in self.coords)}])"


def _same_algebra(x: Element, y: Element):
    if x.algebra is not y.algebra:
        raise ContractError("elements belong to different algebra realizations")


def bracket(x: Element, y: Element) -> Element:
    """Lie bracket [x, y] = xy - yx, back in basis coordinates."""
    _same_algebra(x, y)
    alg = x.algebra
    prod = _commutator_rows(x.matrix_rows(), y.matrix_rows(), alg.matrix_size_N)
    return Element(alg, alg.coords_of_rows(prod))


def trace_form(x: Element, y: Element):
    """Invariant pairing tr(xy), times the realization's form_scale."""
    _same_algebra(x, y)
    a = x.matrix_rows()
    b = y.matrix_rows()
    n = x.algebra.matrix_size_N
    acc = ZERO
    for i in range(n):
        ai = a[i]
        for j in range(n):
            if ai[j]:
                acc += ai[j] * b[j][i]
    return acc * x.algebra.form_scale


def ad_matrix(x: Element) -> Mat:
    """Matrix of ad(x): column k holds the coordinates of [x, basis_k]."""
    alg = x.algebra
    dim = alg.dim
    cols = []
    for k in range(dim):
        prod = _commutator_rows(x.matrix_rows(), alg._basis_rows[k], alg.matrix_size_N)
        cols.append(alg.coords_of_rows(prod))
    data = [cols[k][i] for i in range(dim) for k in range(dim)]
    return Mat(dim, dim, data)


class Subspace:
    """A subspace of the algebra, stored as a deterministic echelon basis.

    The rows are the reduced row echelon form of the generating coordinate
    vectors, so equal subspaces have equal row lists.
    """

    __slots__ = ("algebra", "rows", "pivots", "_basis")

    def __init__(self, algebra: AlgebraRealization, rows, pivots):
        self.algebra = algebra
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)
        self._basis = None

    @classmethod
    def from_coord_rows(cls, algebra, rows) -> "Subspace":
        work = [list(map(Rat, r)) for r in rows]
        pivots = rref(work, algebra.dim)
        return cls(algebra, work[: len(pivots)], pivots)

    @classmethod
    def from_elements(cls, algebra, elements) -> "Subspace":
        return cls.from_coord_rows(algebra, [e.coords for e in elements])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self):
        if self._basis is None:
            self._basis = [Element(self.algebra, r) for r in self.rows]
        return self._basis

    def reduce(self, coords):
        """Residual of a coordinate vector after reduction by the basis;
        zero exactly when the vector lies in the subspace."""
        residual = list(coords)
        for r, c in enumerate(self.pivots):
            f = residual[c]
            if f:
                row = self.rows[r]
                residual = [a - f * b for a, b in zip(residual, row)]
        return residual

    def contains(self, element: Element) -> bool:
        return all(v == 0 for v in self.reduce(element.coords))

    def coords_of(self, element: Element):
        """Coefficients of element in this basis, or None if not a member."""
        residual = list(element.coords)
        out = []
        for r, c in enumerate(self.pivots):
            f = residual[c]
            out.append(f)
            if f:
                row = self.rows[r]
                residual = [a - f * b for a, b in zip(residual, row)]
        if any(v != 0 for v in residual):
            return None
        return tuple(out)

    def same_space(self, other: "Subspace") -> bool:
        return self.rows == other.rows

    def is_bracket_closed(self) -> bool:
        for a in self.basis:
            for b in self.basis:
                if not self.contains(bracket(a, b)):
                    return False
        return True

    def __repr__(self) -> str:
        return f"Subspace({self.algebra.name}, dim={self.dim})"


def centralizer(x: Element) -> Subspace:
    """z(x) = {y : [x, y] = 0}, the kernel of ad(x)."""
    adx = ad_matrix(x)
    _, kernel = rank_kernel(adx)
    return Subspace.from_coord_rows(x.algebra, [k.column(0) for k in kernel])


def center_of(s: Subspace) -> Subspace:
    """{c in s : [c, u] = 0 for every basis vector u of s}.

    s must be closed under the bracket (checked; ContractError otherwise).
    """
    if not s.is_bracket_closed():
        raise ContractError("center_of requires a subalgebra")
    k = s.dim
    if k == 0:
        return Subspace.from_coord_rows(s.algebra, [])
    dim = s.algebra.dim
    cols = []
    for a in range(k):
        col = []
        for u in s.basis:
            col.extend(bracket(s.basis[a], u).coords)
        cols.append(col)
    m = Mat(k * dim, k, [cols[a][i] for i in range(k * dim) for a in range(k)])
    _, kernel = rank_kernel(m)
    elements = []
    for vec in kernel:
        coeffs = vec.column(0)
        acc = s.algebra.zero()
        for a, c in enumerate(coeffs):
            if c:
                acc = acc + s.basis[a].scale(c)
        elements.append(acc)
    return Subspace.from_elements(s.algebra, elements)


def normalizer_of(s: Subspace) -> Subspace:
    """{y : [y, u] in s for every u in s.basis}, as the kernel of the
    stacked map y -> ([y, u] mod s)_u."""
    alg = s.algebra
    dim = alg.dim
    if s.dim == 0:
        return alg.full_space()
    blocks = []
    for u in s.basis:
        adu = ad_matrix(u)
        # columns of adu are [u, b_k]; sign is irrelevant for the kernel
        reduced_cols = [s.reduce(adu.column(k)) for k in range(dim)]
        blocks.append(reduced_cols)
    rows_total = len(blocks) * dim
    data = []
    for block in blocks:
        for i in range(dim):
            for k in range(dim):
                data.append(block[k][i])
    m = Mat(rows_total, dim, data)
    _, kernel = rank_kernel(m)
    return Subspace.from_coord_rows(alg, [k.column(0) for k in kernel])


def h_graduation(h: Element, s: Subspace):
    """Eigenspace decomposition of s under ad(h).

    Requires s to be ad(h)-stable and the restriction to be diagonalizable
    with rational eigenvalues (always true for the h of an sl(2)-triple);
    raises GraduationError otherwise.  Pieces come back sorted by ascending
    eigenvalue and their dimensions sum to dim s.
    """
    k = s.dim
    if k == 0:
        return []
    cols = []
    for b in s.basis:
        c = s.coords_of(bracket(h, b))
        if c is None:
            raise GraduationError("subspace is not stable under ad(h)")
        cols.append(c)
    den = math.lcm(*(int(cols[b][a].denominator) for a in range(k) for b in range(k)))
    scaled = [[cols[b][a] * den for b in range(k)] for a in range(k)]
    bound = max(int(sum(abs(v) for v in row)) for row in scaled)
    pieces = []
    total = 0
    for mu in range(-bound, bound + 1):
        work = [list(row) for row in scaled]
        for i in range(k):
            work[i][i] -= mu
        _, kernel = rank_kernel(Mat.from_rows(work))
        if not kernel:
            continue
        elements = []
        for vec in kernel:
            coeffs = vec.column(0)
            acc = s.algebra.zero()
            for a, c in enumerate(coeffs):
                if c:
                    acc = acc + s.basis[a].scale(c)
            elements.append(acc)
        pieces.append((Rat(mu, den), Subspace.from_elements(s.algebra, elements)))
        total += len(kernel)
        if total == k:
            break
    if total != k:
        raise GraduationError(
            "ad(h) restriction is not diagonalizable with rational eigenvalues"
        )
    return pieces


def unipotent_ad(n: Element) -> Mat:
    """Exact exp(ad n) for ad-nilpotent n, as a dim x dim matrix.

    This is the adjoint action of the unipotent group element exp(n),
    usable for group-level invariance checks without leaving the rationals.
    """
    alg = n.algebra
    a = ad_matrix(n)
    result = Mat.identity(alg.dim)
    term = a
    k = 1
    while not term.is_zero():
        if k > alg.dim:
            raise ContractError("element is not ad-nilpotent")
        result = result + term.scale(Rat(1, _FACTORIALS[k]))
        term = term * a
        k += 1
    return result
