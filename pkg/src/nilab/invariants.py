"""Invariant generator functions, their gradient fields, and exact
higher directional derivatives.

A generator is tr(x^d) for the trace-power kind, or the Pfaffian of the
form-twisted matrix S x for the one degree-r generator of the D family.
Its gradient field P is defined against the realization's trace form:
<dp(x), y> = T(P(x), y).  Gradients are evaluated in closed form (matrix
powers plus projection, or Pfaffian entry-minors plus the inverse Gram
matrix), and every higher derivative is extracted by exact interpolation
of the field along lines or small planes: P is polynomial of degree equal
to the generator's exponent, so integer nodes 0..m determine it.

The suite functions at the bottom verify, exactly and sample by sample,
the invariance identities the fields satisfy: equivariance, Taylor
exchange symmetry, the bracket propagation rule for derivatives,
membership of P(x) in the center of the centralizer, invariance under
unipotent adjoint action, and the sl(2) eigenvector relations attached to
a triple.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field

from ._scalar import ONE, Rat, ZERO
from .algebras import (
    AlgebraRealization,
    Element,
    Subspace,
    _mul_rows,
    bracket,
    center_of,
    centralizer,
    h_graduation,
    trace_form,
    unipotent_ad,
)
from .errors import ContractError, IdentityError, InternalError, NilabError
from .linalg import interpolate_vector_poly
from .reports import CheckReport
from .triples import Triplet, principal_triplet


@dataclass(frozen=True)
class InvariantGenerator:
    """One homogeneous generator of the invariant polynomials."""

    index_j: int  # 1-based position, ascending degree
    degree: int
    exponent: int
    kind: str  # "trace" or "pfaffian"


def generators(alg: AlgebraRealization):
    return tuple(
        InvariantGenerator(i + 1, d, d - 1, k)
        for i, (d, k) in enumerate(zip(alg.generator_degrees, alg.generator_kinds))
    )


def _generator(alg: AlgebraRealization, j: int) -> InvariantGenerator:
    if not 1 <= j <= alg.rank_r:
        raise ContractError(f"generator index {j} out of range 1..{alg.rank_r}")
    return generators(alg)[j - 1]


def _pfaffian(rows, idx, memo):
    if not idx:
        return ONE
    cached = memo.get(idx)
    if cached is not None:
        return cached
    i0 = idx[0]
    total = ZERO
    sign = 1
    for k in range(1, len(idx)):
        a = rows[i0][idx[k]]
        if a:
            rest = idx[1:k] + idx[k + 1 :]
            total += sign * a * _pfaffian(rows, rest, memo)
        sign = -sign
    memo[idx] = total
    return total


def pfaffian(rows):
    """Exact Pfaffian of an antisymmetric matrix given as row lists."""
    n = len(rows)
    if n % 2:
        return ZERO
    return _pfaffian(rows, tuple(range(n)), {})


def _twisted_rows(alg: AlgebraRealization, x_rows):
    """S x, antisymmetric whenever x is in the orthogonal realization."""
    s = alg.form.as_rows()
    return _mul_rows(s, x_rows)


def eval_generator(alg: AlgebraRealization, j: int, x: Element):
    """Value of the j-th generator at x: tr(x^degree), or Pf(S x)."""
    gen = _generator(alg, j)
    if gen.kind == "trace":
        rows = x.matrix_rows()
        power = rows
        for _ in range(gen.degree - 1):
            power = _mul_rows(power, rows)
        n = alg.matrix_size_N
        return sum((power[i][i] for i in range(n)), ZERO)
    return pfaffian(_twisted_rows(alg, x.matrix_rows()))


def _project_to_algebra(alg: AlgebraRealization, rows):
    """Trace-form-orthogonal projection of a matrix power onto the algebra.

    For sl(n) that subtracts the trace part; odd powers of so/sp elements
    already lie in the algebra, so the projection is the identity there.
    """
    n = alg.matrix_size_N
    if alg.family == "A":
        tr = sum((rows[i][i] for i in range(n)), ZERO)
        if tr:
            shift = tr / n
            rows = [
                [rows[i][j] - shift if i == j else rows[i][j] for j in range(n)]
                for i in range(n)
            ]
    return rows


def _gradient_raw(alg: AlgebraRealization, j: int, x: Element) -> Element:
    gen = _generator(alg, j)
    if gen.kind == "trace":
        rows = x.matrix_rows()
        power = [list(r) for r in rows]  # exponent >= 1: degrees start at 2
        for _ in range(gen.exponent - 1):
            power = _mul_rows(power, rows)
        projected = _project_to_algebra(alg, power)
        coords = alg.coords_of_rows(projected)
        factor = Rat(gen.degree) / alg.form_scale
        return Element(alg, [factor * c for c in coords])
    # Pfaffian kind: entrywise partials of Pf at A = S x, then convert the
    # resulting functional to an algebra element through the Gram matrix.
    a_rows = _twisted_rows(alg, x.matrix_rows())
    n = alg.matrix_size_N
    full = tuple(range(n))
    memo = {}
    partial = {}
    for a in range(n):
        for b in range(a + 1, n):
            minor = tuple(i for i in full if i != a and i != b)
            value = _pfaffian(a_rows, minor, memo)
            if value:
                partial[(a, b)] = value if (a + b) % 2 else -value
    rhs = []
    for k in range(alg.dim):
        acc = ZERO
        for i0, j0, v in alg._basis_sparse[k]:
            a, c = n - 1 - i0, j0  # entry of S b_k
            if a < c and (a, c) in partial:
                acc += partial[(a, c)] * v
        rhs.append(acc)
    return Element(alg, alg.gram_inverse.mul_vec(rhs))


def directional_scalar_derivative(alg, j, x, y):
    """<dp_j(x), y>, extracted from scalar values of p_j along x + t y."""
    gen = _generator(alg, j)
    samples = []
    for t in range(gen.degree + 1):
        point = x + y.scale(t)
        samples.append((Rat(t), [eval_generator(alg, j, point)]))
    coeffs = interpolate_vector_poly(samples, gen.degree)
    return coeffs[1][0]


def gradient(alg: AlgebraRealization, j: int, x: Element, *, check: bool = True) -> Element:
    """Gradient field of the j-th generator at x.

    With check=True (the default) the defining pairing <dp_j(x), y> =
    T(P_j(x), y) is re-derived from scalar values of p_j on five seeded
    directions and compared exactly; a mismatch raises InternalError.
    """
    value = _gradient_raw(alg, j, x)
    if check:
        rng = random.Random(f"gradient-check:{alg.family}:{alg.rank_r}:{j}")
        for _ in range(5):
            y = alg.random_element(rng, 2)
            lhs = directional_scalar_derivative(alg, j, x, y)
            if lhs != trace_form(value, y):
                raise InternalError("gradient does not match the scalar derivative")
    return value


@dataclass(frozen=True)
class TaylorTerms:
    """Coefficients of P_j along a line: terms[k] = d^k P_j(x).y^(k) / k!."""

    j: int
    base: Element
    direction: Element
    terms: tuple


def taylor_terms(alg: AlgebraRealization, j: int, x: Element, y: Element) -> TaylorTerms:
    gen = _generator(alg, j)
    m = gen.exponent
    samples = []
    for t in range(m + 1):
        point = x + y.scale(t)
        samples.append((Rat(t), list(_gradient_raw(alg, j, point).coords)))
    coeffs = interpolate_vector_poly(samples, m)
    terms = tuple(Element(alg, c) for c in coeffs)
    if terms[0] != _gradient_raw(alg, j, x):
        raise InternalError("constant Taylor term is not P(x)")
    if terms[m] != _gradient_raw(alg, j, y):
        raise InternalError("top Taylor term is not P(y)")
    return TaylorTerms(j, x, y, terms)


def bivariate_terms(alg: AlgebraRealization, j: int, x: Element, u: Element, y: Element):
    """Table c[a][b] with d^{a+b} P_j(x).u^(a).y^(b) = a! b! c[a][b],
    from exact interpolation of P_j(x + t u + s y) on the integer grid."""
    gen = _generator(alg, j)
    m = gen.exponent
    per_t = []
    for t in range(m + 1):
        base = x + u.scale(t)
        samples = []
        for s in range(m + 1):
            point = base + y.scale(s)
            samples.append((Rat(s), list(_gradient_raw(alg, j, point).coords)))
        per_t.append(interpolate_vector_poly(samples, m))  # s-coefficients at fixed t
    by_s_power = []
    for b in range(m + 1):
        row_samples = [(Rat(t), per_t[t][b]) for t in range(m + 1)]
        by_s_power.append(interpolate_vector_poly(row_samples, m))
    return [
        [Element(alg, by_s_power[b][a]) for b in range(m + 1)] for a in range(m + 1)
    ]


def mixed_term(
    alg: AlgebraRealization, j: int, x: Element, u: Element, a: int, y: Element, b: int
) -> Element:
    """d^{a+b} P_j(x).u^(a).y^(b); zero when a + b exceeds the exponent."""
    gen = _generator(alg, j)
    if a < 0 or b < 0:
        raise ContractError("derivative orders must be nonnegative")
    if a + b > gen.exponent:
        return alg.zero()
    table = bivariate_terms(alg, j, x, u, y)
    return table[a][b].scale(Rat(math.factorial(a) * math.factorial(b)))


@dataclass
class IdentitySample:
    """One random test point for the identity suites."""

    x: Element
    y: Element
    z: Element
    n: Element
    _ad_exp: object = field(default=None, repr=False)

    def ad_exp(self):
        if self._ad_exp is None:
            self._ad_exp = unipotent_ad(self.n)
        return self._ad_exp


def make_samples(alg: AlgebraRealization, count: int, seed: int):
    rng = random.Random(f"samples:{alg.family}:{alg.rank_r}:{seed}")
    out = []
    for _ in range(count):
        out.append(
            IdentitySample(
                x=alg.random_element(rng),
                y=alg.random_element(rng),
                z=alg.random_element(rng),
                n=alg.random_upper_nilpotent(rng),
            )
        )
    return out


def verify_field_identities(alg: AlgebraRealization, j: int, samples) -> CheckReport:
    """Exact per-sample verification of the invariance identities of P_j.

    Failures are recorded in the report, never raised.
    """
    gen = _generator(alg, j)
    m = gen.exponent
    report = CheckReport(f"{alg.name} generator {j} (degree {gen.degree})")
    for idx, sample in enumerate(samples):
        x, y, z = sample.x, sample.y, sample.z
        tag = f"[{idx}]"
        try:
            px = _gradient_raw(alg, j, x)

            pairing_ok = trace_form(px, y) == directional_scalar_derivative(alg, j, x, y)
            report.add(f"gradient-pairing{tag}", pairing_ok)

            lhs = taylor_terms(alg, j, x, bracket(y, x)).terms[1]
            report.add(f"equivariance{tag}", lhs == bracket(y, px))

            tx = taylor_terms(alg, j, x, y)
            ty = taylor_terms(alg, j, y, x)
            report.add(
                f"taylor-exchange{tag}",
                all(tx.terms[k] == ty.terms[m - k] for k in range(m + 1)),
            )

            # the expansion really terminates at degree m: reconstruct P at
            # a node beyond the interpolation grid
            extra = Rat(m + 1)
            acc = alg.zero()
            power = Rat(1)
            for term in tx.terms:
                acc = acc + term.scale(power)
                power = power * extra
            report.add(
                f"taylor-reconstruction{tag}",
                acc == _gradient_raw(alg, j, x + y.scale(extra)),
            )

            table_zx = bivariate_terms(alg, j, x, bracket(z, x), y)
            table_zy = bivariate_terms(alg, j, x, bracket(z, y), y)
            propagation = True
            for k in range(m + 1):
                rhs = table_zx[1][k]
                if k >= 1:
                    rhs = rhs + table_zy[1][k - 1]
                if bracket(z, tx.terms[k]) != rhs:
                    propagation = False
                    break
            report.add(f"derivative-propagation{tag}", propagation)

            membership = center_of(centralizer(x)).contains(px)
            report.add(f"center-membership{tag}", membership)

            ad = sample.ad_exp()
            moved = Element(alg, ad.mul_vec(list(x.coords)))
            expected = Element(alg, ad.mul_vec(list(px.coords)))
            report.add(
                f"unipotent-invariance{tag}",
                _gradient_raw(alg, j, moved) == expected,
            )
        except NilabError as exc:  # record, never throw
            report.add(f"sample-error{tag}", False, str(exc))
    return report


@dataclass(frozen=True)
class Sl2VectorFamily:
    """The eigenvector ladders v[j][k] = d^k P_j(h).e^(k) and
    w[j][k] = d^k P_j(h).f^(k), 0 <= k <= m_j, j indexed from 0."""

    triplet: Triplet
    v: tuple
    w: tuple


def sl2_vectors(alg: AlgebraRealization, triplet: Triplet) -> Sl2VectorFamily:
    """Build the ladders and verify their bracket relations exactly.

    Raises IdentityError on any failure: the relations are theorems.
    """
    h, e, f = triplet.h, triplet.e, triplet.f
    v_all = []
    w_all = []
    for gen in generators(alg):
        j, m = gen.index_j, gen.exponent
        te = taylor_terms(alg, j, h, e)
        tf = taylor_terms(alg, j, h, f)
        v_row = tuple(
            te.terms[k].scale(Rat(math.factorial(k))) for k in range(m + 1)
        )
        w_row = tuple(
            tf.terms[k].scale(Rat(math.factorial(k))) for k in range(m + 1)
        )
        pe = _gradient_raw(alg, j, e)
        for k in range(m + 1):
            if bracket(h, v_row[k]) != v_row[k].scale(2 * k):
                raise IdentityError(f"[h, v_{j},{k}] != 2k v: ladder broken")
            step = v_row[k + 1] if k < m else alg.zero()
            if bracket(e, v_row[k]) != step.scale(-2):
                raise IdentityError(f"[e, v_{j},{k}] != -2 v_(k+1): ladder broken")
            if bracket(h, w_row[k]) != w_row[k].scale(-2 * k):
                raise IdentityError(f"[h, w_{j},{k}] != -2k w: ladder broken")
            wstep = w_row[k + 1] if k < m else alg.zero()
            if bracket(f, w_row[k]) != wstep.scale(2):
                raise IdentityError(f"[f, w_{j},{k}] != 2 w_(k+1): ladder broken")
            pumped = v_row[k]
            for _ in range(m - k):
                pumped = bracket(e, pumped)
            if pumped != pe.scale(Rat((-2) ** (m - k) * math.factorial(m))):
                raise IdentityError(
                    f"(ad e)^{m - k} v_{j},{k} != (-2)^(m-k) m! P(e)"
                )
        v_all.append(v_row)
        w_all.append(w_row)
    return Sl2VectorFamily(triplet, tuple(v_all), tuple(w_all))


def kostant_independence(alg: AlgebraRealization, triplet: Triplet) -> CheckReport:
    """Independence and primitivity of the gradients at a regular nilpotent.

    Raises IdentityError if any statement fails.
    """
    h, e = triplet.h, triplet.e
    report = CheckReport(f"{alg.name} gradient independence at regular e")
    grads = [_gradient_raw(alg, gen.index_j, e) for gen in generators(alg)]
    span = Subspace.from_elements(alg, grads)
    report.add("independent", span.dim == alg.rank_r, f"span dim {span.dim}")
    for gen, pe in zip(generators(alg), grads):
        report.add(f"annihilated-by-e[{gen.index_j}]", bracket(e, pe).is_zero())
        report.add(
            f"h-weight[{gen.index_j}]",
            bracket(h, pe) == pe.scale(2 * gen.exponent),
        )
    if not report.passed:
        raise IdentityError("; ".join(item.name for item in report.failures()))
    return report


@dataclass(frozen=True)
class TriangularDecomposition:
    triplet: Triplet
    h_space: Subspace
    n_plus: Subspace
    n_minus: Subspace


def triangular_decomposition(
    alg: AlgebraRealization, triplet: Triplet | None = None
) -> TriangularDecomposition:
    """g = n_- + h + n_+ built from the sl(2) ladders of a principal triple.

    h is spanned by the P_j(h), n_+ by the v ladders with k >= 1, n_- by
    the w ladders with k >= 1.  Dimensions, direct-sum totality and the
    match with the ad(h) graduation (zero piece = h, positive pieces = n_+)
    are all verified exactly; a mismatch raises IdentityError.
    """
    if triplet is None:
        triplet = principal_triplet(alg)
    family = sl2_vectors(alg, triplet)
    r = alg.rank_r
    h_space = Subspace.from_elements(alg, [row[0] for row in family.v])
    plus_vecs = [vec for row in family.v for vec in row[1:]]
    minus_vecs = [vec for row in family.w for vec in row[1:]]
    n_plus = Subspace.from_elements(alg, plus_vecs)
    n_minus = Subspace.from_elements(alg, minus_vecs)
    half = (alg.dim - r) // 2
    if h_space.dim != r or n_plus.dim != half or n_minus.dim != half:
        raise IdentityError(
            f"decomposition dims ({h_space.dim}, {n_plus.dim}, {n_minus.dim}) "
            f"!= ({r}, {half}, {half})"
        )
    everything = Subspace.from_coord_rows(
        alg, list(h_space.rows) + list(n_plus.rows) + list(n_minus.rows)
    )
    if everything.dim != alg.dim:
        raise IdentityError("ladders do not span the whole algebra")
    pieces = h_graduation(triplet.h, alg.full_space())
    zero_piece = next((sp for lam, sp in pieces if lam == 0), None)
    if zero_piece is None or not zero_piece.same_space(h_space):
        raise IdentityError("zero graduation piece differs from the P_j(h) span")
    pos_rows = [row for lam, sp in pieces if lam > 0 for row in sp.rows]
    neg_rows = [row for lam, sp in pieces if lam < 0 for row in sp.rows]
    if not Subspace.from_coord_rows(alg, pos_rows).same_space(n_plus):
        raise IdentityError("positive graduation does not match n_+")
    if not Subspace.from_coord_rows(alg, neg_rows).same_space(n_minus):
        raise IdentityError("negative graduation does not match n_-")
    return TriangularDecomposition(triplet, h_space, n_plus, n_minus)


def mf_shift_rank(alg: AlgebraRealization, triplet: Triplet, t_samples) -> int:
    """Dimension of span{[e, P_j(e + t h)] : j, t in t_samples}.

    For a principal triple with enough distinct nonzero shifts this equals
    half the dimension of the nilpotent orbit of e, that is
    (dim g - dim z(e)) / 2.
    """
    t_samples = [Rat(t) for t in t_samples]
    max_m = max(alg.exponents)
    distinct_nonzero = {t for t in t_samples if t != 0}
    if len(distinct_nonzero) < max_m + 1:
        warnings.warn(
            "fewer than max-exponent+1 distinct nonzero shifts: "
            "the sampled span may be degenerate",
            stacklevel=2,
        )
    h, e = triplet.h, triplet.e
    vectors = []
    for gen in generators(alg):
        for t in t_samples:
            shifted = _gradient_raw(alg, gen.index_j, e + h.scale(t))
            vectors.append(bracket(e, shifted))
    return Subspace.from_elements(alg, vectors).dim
