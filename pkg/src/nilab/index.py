"""The normalizer-of-centralizer index pipeline.

For a nilpotent e with triple (h, e, f):

  z     = centralizer of e,
  delta = center of z,
  eta   = normalizer of z in the algebra.

The working hypothesis is that delta is spanned by the gradient values
P_j(e); when the exponents are pairwise distinct the nonzero P_j(e) are
selected, otherwise a maximal independent subfamily is taken greedily by
ascending degree (flagged, since the antidiagonal/determinant conclusions
require distinct exponents).  Writing z_j for the selected gradients at e
and y_j for their derivatives along h, eta = z + span{y_j}, and the s x s
matrix A = ([y_i, z_j]) -- symmetric, entries in delta, pseudo-triangular
-- determines the index:

  ind(eta, delta) = dim delta - generic rank of A,

with A read as a matrix of linear forms in delta coordinates.  The same
brackets are audited against the convolution gradients: [y_i, z_j] is an
exact multiple of grad B(Q_i, Q_j)(e), whose delta coordinates are the
alpha coefficients reported per pair.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ._scalar import ONE, Rat, ZERO, rat_str
from .algebras import (
    AlgebraRealization,
    Element,
    Subspace,
    bracket,
    build_algebra,
    center_of,
    centralizer,
    normalizer_of,
)
from .errors import (
    HypothesisViolation,
    IdentityError,
    NilabError,
    PartitionError,
)
from .invariants import _gradient_raw, generators, taylor_terms
from .linalg import Mat, solve
from .poly import Poly, generic_rank_detail, poly_det
from .reports import CheckReport
from .triples import (
    Partition,
    Triplet,
    _validate_partition,
    nilpotent_from_partition,
    sl2_complete,
)


@dataclass(frozen=True)
class PairData:
    """Everything the pipeline derives from one nilpotent orbit."""

    algebra: AlgebraRealization
    triplet: Triplet
    selected_indices: tuple  # 1-based generator indices j_1 < ... < j_s
    pair_exponents: tuple  # m'_1 <= ... <= m'_s
    z_vec: tuple  # z_j = Q_j(e)
    y_vec: tuple  # y_j = dQ_j(e).h
    delta: Subspace
    zcent: Subspace
    eta: Subspace
    hypothesis_ok: bool
    distinct_exponents: bool
    all_gradients: tuple

    @property
    def s(self) -> int:
        return len(self.selected_indices)

    def require_hypothesis(self):
        if not self.hypothesis_ok:
            raise HypothesisViolation(
                "center of the centralizer is not spanned by the gradients"
            )

    def require_distinct_exponents(self):
        if not self.distinct_exponents:
            raise HypothesisViolation(
                "duplicated exponents: distinct-exponent conclusions do not apply"
            )


def build_pair_data(alg: AlgebraRealization, triplet: Triplet) -> PairData:
    """Centralizer, center, normalizer and the selected gradient family.

    hypothesis_ok = False is a reported state, not an error; downstream
    operations refuse with HypothesisViolation.
    """
    e, h = triplet.e, triplet.h
    zcent = centralizer(e)
    delta = center_of(zcent)
    eta = normalizer_of(zcent)
    grads = tuple(_gradient_raw(alg, gen.index_j, e) for gen in generators(alg))
    for gen, g in zip(generators(alg), grads):
        if not delta.contains(g):
            raise IdentityError(
                f"gradient {gen.index_j} at e is outside the center of the centralizer"
            )
    if alg.distinct_exponents:
        selected = [gen.index_j for gen, g in zip(generators(alg), grads) if not g.is_zero()]
    else:
        selected = []
        chosen = []
        for gen, g in zip(generators(alg), grads):
            if g.is_zero():
                continue
            trial = Subspace.from_elements(alg, chosen + [g])
            if trial.dim == len(chosen) + 1:
                selected.append(gen.index_j)
                chosen.append(g)
    z_vec = tuple(grads[j - 1] for j in selected)
    y_vec = tuple(taylor_terms(alg, j, e, h).terms[1] for j in selected)
    span = Subspace.from_elements(alg, list(z_vec))
    hypothesis_ok = span.dim == len(selected) and span.dim == delta.dim
    return PairData(
        algebra=alg,
        triplet=triplet,
        selected_indices=tuple(selected),
        pair_exponents=tuple(alg.exponents[j - 1] for j in selected),
        z_vec=z_vec,
        y_vec=y_vec,
        delta=delta,
        zcent=zcent,
        eta=eta,
        hypothesis_ok=hypothesis_ok,
        distinct_exponents=alg.distinct_exponents,
        all_gradients=grads,
    )


def normalizer_decomposition_check(pd: PairData) -> CheckReport:
    """The normalizer decomposition eta = z + span{y_j} and its relations.

    Verified exactly: [e, y_j] = -2 m'_j z_j; [f, z_j] = -y_j; the y_j lie
    outside z and together with z fill eta, whose dimension is
    dim z + dim delta; and the h-weights of y_j and z_j.
    """
    pd.require_hypothesis()
    alg = pd.algebra
    h, e, f = pd.triplet.h, pd.triplet.e, pd.triplet.f
    report = CheckReport(f"{alg.name} normalizer decomposition")
    for k, (j, m, zj, yj) in enumerate(
        zip(pd.selected_indices, pd.pair_exponents, pd.z_vec, pd.y_vec), start=1
    ):
        report.add(f"e-bracket[{k}]", bracket(e, yj) == zj.scale(-2 * m))
        report.add(f"f-bracket[{k}]", bracket(f, zj) == -yj)
        report.add(f"outside-centralizer[{k}]", not pd.zcent.contains(yj))
        report.add(f"h-weight-y[{k}]", bracket(h, yj) == yj.scale(2 * (m - 1)))
        report.add(f"h-weight-z[{k}]", bracket(h, zj) == zj.scale(2 * m))
        report.add(f"in-normalizer[{k}]", pd.eta.contains(yj))
    report.add(
        "normalizer-dim",
        pd.eta.dim == pd.zcent.dim + pd.delta.dim,
        f"dim eta {pd.eta.dim}, dim z {pd.zcent.dim}, dim delta {pd.delta.dim}",
    )
    combined = Subspace.from_coord_rows(
        alg, list(pd.zcent.rows) + [y.coords for y in pd.y_vec]
    )
    report.add("normalizer-span", combined.same_space(pd.eta))
    if not report.passed:
        raise IdentityError("; ".join(item.name for item in report.failures()))
    return report


@dataclass(frozen=True)
class BracketTensor:
    """The s x s matrix of [y_i, z_j], stored both as algebra elements and
    as coordinate vectors in the echelon basis of delta."""

    size: int
    vectors: tuple  # vectors[i][j] is an Element
    entries: tuple  # entries[i][j] is a tuple of delta coordinates


def bracket_matrix(pd: PairData) -> BracketTensor:
    """Compute A = ([y_i, z_j]); membership in delta and symmetry are
    theorems here, so violations raise IdentityError."""
    pd.require_hypothesis()
    s = pd.s
    vectors = []
    entries = []
    for i in range(s):
        vrow = []
        erow = []
        for j in range(s):
            v = bracket(pd.y_vec[i], pd.z_vec[j])
            c = pd.delta.coords_of(v)
            if c is None:
                raise IdentityError(
                    f"[y_{i + 1}, z_{j + 1}] is not in the center of the centralizer"
                )
            vrow.append(v)
            erow.append(tuple(c))
        vectors.append(tuple(vrow))
        entries.append(tuple(erow))
    for i in range(s):
        for j in range(i + 1, s):
            if entries[i][j] != entries[j][i]:
                raise IdentityError(f"bracket matrix is not symmetric at ({i + 1},{j + 1})")
    return BracketTensor(s, tuple(vectors), tuple(entries))


@dataclass(frozen=True)
class StructureResult:
    report: CheckReport
    betas: tuple  # [y_i, z_{s+1-i}] = beta_i * Q_s(e)


def structure_checks(pd: PairData, a: BracketTensor) -> StructureResult:
    """Vanishing pattern, pseudo-triangularity, antidiagonal multiples and
    h-weights of the bracket matrix (distinct exponents required)."""
    pd.require_hypothesis()
    pd.require_distinct_exponents()
    alg = pd.algebra
    h = pd.triplet.h
    s = pd.s
    exponent_set = set(pd.pair_exponents)
    report = CheckReport(f"{alg.name} bracket matrix structure")
    for i in range(s):
        for j in range(s):
            m_sum = pd.pair_exponents[i] + pd.pair_exponents[j] - 1
            v = a.vectors[i][j]
            if m_sum not in exponent_set:
                report.add(f"vanishing[{i + 1},{j + 1}]", v.is_zero())
            if i + j + 2 > s + 1:
                report.add(f"pseudo-triangular[{i + 1},{j + 1}]", v.is_zero())
            report.add(
                f"h-weight[{i + 1},{j + 1}]",
                bracket(h, v) == v.scale(2 * m_sum),
            )
    zs_coords = pd.delta.coords_of(pd.z_vec[s - 1])
    betas = []
    for i in range(s):
        entry = a.entries[i][s - 1 - i]
        beta = None
        for ec, zc in zip(entry, zs_coords):
            if zc:
                beta = ec / zc
                break
        if beta is None:
            beta = ZERO
        ok = all(ec == beta * zc for ec, zc in zip(entry, zs_coords))
        report.add(f"antidiagonal-multiple[{i + 1}]", ok, f"beta = {beta}")
        betas.append(beta)
    if not report.passed:
        raise IdentityError("; ".join(item.name for item in report.failures()))
    return StructureResult(report, tuple(betas))


def _delta_variables(s: int):
    return tuple(f"t{k}" for k in range(s))


def symbolic_bracket_matrix(pd: PairData, a: BracketTensor):
    """A with each entry read as a linear form in delta coordinates."""
    variables = _delta_variables(pd.delta.dim)
    return [
        [Poly.linear(variables, entry) for entry in row] for row in a.entries
    ]


@dataclass(frozen=True)
class IndexResult:
    ind: int
    rank: int
    dim_delta: int
    det_nonzero: bool
    det_consistent: bool  # ind == 0 exactly when det A != 0
    prime_samples: tuple
    eval_ranks: tuple


def index_pair(pd: PairData, a: BracketTensor, *, seed: int = 0) -> IndexResult:
    """ind(eta, delta) = dim delta - generic rank of A, with the
    determinant-based zero test reported as a cross-check."""
    pd.require_hypothesis()
    sym = symbolic_bracket_matrix(pd, a)
    detail = generic_rank_detail(sym, seed=seed)
    ind = pd.delta.dim - detail.rank
    det_nonzero = not poly_det(sym).is_zero()
    return IndexResult(
        ind=ind,
        rank=detail.rank,
        dim_delta=pd.delta.dim,
        det_nonzero=det_nonzero,
        det_consistent=(ind == 0) == det_nonzero,
        prime_samples=detail.prime_samples,
        eval_ranks=detail.eval_ranks,
    )


@dataclass(frozen=True)
class DetShapeResult:
    report: CheckReport
    det: Poly
    epsilon: int
    gamma: object  # product of the betas; nonzero iff det A != 0
    matches: bool
    gamma_nonzero: bool
    betas: tuple


def det_shape_check(pd: PairData, a: BracketTensor, betas=None) -> DetShapeResult:
    """det A = epsilon * (prod beta_i) * (linear form of Q_s(e))^s, with
    epsilon the sign of the antidiagonal permutation."""
    pd.require_hypothesis()
    pd.require_distinct_exponents()
    if betas is None:
        betas = structure_checks(pd, a).betas
    s = pd.s
    variables = _delta_variables(pd.delta.dim)
    det = poly_det(symbolic_bracket_matrix(pd, a))
    epsilon = -1 if (s * (s - 1) // 2) % 2 else 1
    gamma = ONE
    for b in betas:
        gamma = gamma * b
    zs_form = Poly.linear(variables, pd.delta.coords_of(pd.z_vec[s - 1]))
    expected = Poly.const(variables, gamma * epsilon) * zs_form**s
    matches = det == expected
    report = CheckReport(f"{pd.algebra.name} determinant shape")
    report.add(
        "det-shape",
        matches,
        f"det = {det.text()}, epsilon = {epsilon}, gamma = {gamma}",
    )
    if not matches:
        raise IdentityError("determinant does not match the antidiagonal product shape")
    return DetShapeResult(
        report=report,
        det=det,
        epsilon=epsilon,
        gamma=gamma,
        matches=matches,
        gamma_nonzero=gamma != 0,
        betas=tuple(betas),
    )


@dataclass(frozen=True)
class ConvolutionResult:
    """Gradient of the pairing function B(Q_i, Q_j) at e, its coordinates
    over the z basis, and the proportionality-constant audit."""

    i: int
    j: int
    grad: Element
    alphas: tuple
    c_observed: object  # scalar with [y_i, z_j] = c_observed * grad; None if grad = 0
    c_reference: object  # m'_i m'_j / (m'_i + m'_j); observed is twice this


def convolution_at(pd: PairData, i: int, j: int) -> ConvolutionResult:
    pd.require_hypothesis()
    s = pd.s
    if not (1 <= i <= s and 1 <= j <= s):
        raise IdentityError(f"pair index ({i},{j}) out of range 1..{s}")
    alg = pd.algebra
    e = pd.triplet.e
    ji, jj = pd.selected_indices[i - 1], pd.selected_indices[j - 1]
    mi, mj = pd.pair_exponents[i - 1], pd.pair_exponents[j - 1]
    d_ij = taylor_terms(alg, ji, e, pd.z_vec[j - 1]).terms[1]
    d_ji = taylor_terms(alg, jj, e, pd.z_vec[i - 1]).terms[1]
    br = bracket(pd.y_vec[i - 1], pd.z_vec[j - 1])
    if br != d_ij.scale(2 * mj):
        raise IdentityError(
            f"[y_{i}, z_{j}] != 2 m'_{j} dQ_{i}(e).Q_{j}(e): derivative audit failed"
        )
    if br != bracket(pd.y_vec[j - 1], pd.z_vec[i - 1]):
        raise IdentityError(f"bracket symmetry failed at ({i},{j})")
    grad = d_ij + d_ji
    if not pd.delta.contains(grad):
        raise IdentityError(f"convolution gradient ({i},{j}) left the center")
    cols = Mat(
        alg.dim,
        s,
        [pd.z_vec[k].coords[d] for d in range(alg.dim) for k in range(s)],
    )
    alphas = solve(cols, list(grad.coords))
    if alphas is None:
        raise IdentityError("convolution gradient is not a combination of the z_k")
    c_observed = None
    if not grad.is_zero():
        for gc, bc in zip(grad.coords, br.coords):
            if gc:
                c_observed = bc / gc
                break
        if br != grad.scale(c_observed):
            raise IdentityError(
                f"[y_{i}, z_{j}] is not proportional to the convolution gradient"
            )
    elif not br.is_zero():
        raise IdentityError("bracket nonzero while the convolution gradient vanishes")
    c_reference = Rat(mi * mj) / Rat(mi + mj)
    return ConvolutionResult(
        i=i, j=j, grad=grad, alphas=tuple(alphas), c_observed=c_observed,
        c_reference=c_reference,
    )


@dataclass
class OrbitReport:
    """Per-orbit pipeline outcome, shaped for JSON/CSV serialization."""

    family: str
    rank: int
    matrix_size: int
    partition: str
    skipped: bool = False
    note: str = ""
    error: str = ""
    dims: dict = field(default_factory=dict)
    pair_exponents: tuple = ()
    s: int = 0
    distinct_exponents: bool = True
    hypothesis_ok: bool = False
    ind: int | None = None
    rank_a: int | None = None
    det_nonzero: bool | None = None
    det_consistent: bool | None = None
    det_text: str = ""
    epsilon: int | None = None
    betas: tuple = ()
    gamma: object = None
    gamma_nonzero: bool | None = None
    alphas: dict = field(default_factory=dict)
    const_audit: dict = field(default_factory=dict)
    prime_samples: tuple = ()
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if self.skipped:
            return True
        if self.error:
            return False
        return all(c["pass"] for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "matrix_size": self.matrix_size,
            "partition": self.partition,
            "skipped": self.skipped,
            "note": self.note,
            "error": self.error,
            "dims": dict(self.dims),
            "pair_exponents": list(self.pair_exponents),
            "s": self.s,
            "distinct_exponents": self.distinct_exponents,
            "hypothesis_ok": self.hypothesis_ok,
            "ind": self.ind,
            "rank_a": self.rank_a,
            "det_nonzero": self.det_nonzero,
            "det_consistent": self.det_consistent,
            "det": self.det_text,
            "epsilon": self.epsilon,
            "betas": [rat_str(b) for b in self.betas],
            "gamma": rat_str(self.gamma) if self.gamma is not None else None,
            "gamma_nonzero": self.gamma_nonzero,
            "alphas": {k: [rat_str(a) for a in v] for k, v in self.alphas.items()},
            "const_audit": dict(self.const_audit),
            "prime_samples": [list(p) for p in self.prime_samples],
            "checks": list(self.checks),
            "pass": self.passed,
        }


def analyze_orbit(alg: AlgebraRealization, partition: Partition, *, seed: int = 0) -> OrbitReport:
    """Run the full pipeline on one orbit, capturing failures in the report."""
    report = OrbitReport(
        family=alg.family,
        rank=alg.rank_r,
        matrix_size=alg.matrix_size_N,
        partition=str(partition),
    )
    if all(p == 1 for p in partition.parts):
        report.skipped = True
        report.note = "e = 0"
        return report
    try:
        e = nilpotent_from_partition(alg, partition)
        triple = sl2_complete(alg, e)
        pd = build_pair_data(alg, triple)
        report.dims = {
            "g": alg.dim,
            "z": pd.zcent.dim,
            "delta": pd.delta.dim,
            "eta": pd.eta.dim,
        }
        report.pair_exponents = pd.pair_exponents
        report.s = pd.s
        report.distinct_exponents = pd.distinct_exponents
        report.hypothesis_ok = pd.hypothesis_ok
        if not pd.distinct_exponents:
            report.note = "duplicated exponents: antidiagonal conclusions skipped"
        if not pd.hypothesis_ok:
            report.note = "hypothesis violated: center not spanned by gradients"
            return report
        report.checks.append(normalizer_decomposition_check(pd).to_dict())
        a = bracket_matrix(pd)
        idx = index_pair(pd, a, seed=seed)
        report.ind = idx.ind
        report.rank_a = idx.rank
        report.det_nonzero = idx.det_nonzero
        report.det_consistent = idx.det_consistent
        report.prime_samples = idx.prime_samples
        if pd.distinct_exponents:
            structure = structure_checks(pd, a)
            report.checks.append(structure.report.to_dict())
            shape = det_shape_check(pd, a, structure.betas)
            report.checks.append(shape.report.to_dict())
            report.betas = shape.betas
            report.gamma = shape.gamma
            report.gamma_nonzero = shape.gamma_nonzero
            report.epsilon = shape.epsilon
            report.det_text = shape.det.text()
        for i in range(1, pd.s + 1):
            for j in range(i, pd.s + 1):
                conv = convolution_at(pd, i, j)
                key = f"{i},{j}"
                report.alphas[key] = conv.alphas
                report.const_audit[key] = {
                    "c_observed": rat_str(conv.c_observed)
                    if conv.c_observed is not None
                    else None,
                    "c_reference": rat_str(conv.c_reference),
                }
    except HypothesisViolation as exc:
        report.note = str(exc)
    except NilabError as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    return report


def _family_rank_for_size(family: str, n: int) -> int:
    family = family.upper()
    if family == "A":
        return n - 1
    if family == "B":
        if n % 2 == 0:
            raise PartitionError("B family needs odd matrix size")
        return (n - 1) // 2
    if family in ("C", "D"):
        if n % 2 == 1:
            raise PartitionError(f"{family} family needs even matrix size")
        return n // 2
    raise PartitionError(f"unknown family {family!r}")


def _partitions_desc(n: int, max_part: int | None = None):
    if n == 0:
        yield ()
        return
    cap = n if max_part is None else min(n, max_part)
    for first in range(cap, 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


def valid_partitions(alg: AlgebraRealization):
    """All nilpotent-orbit partitions for the realization, descending lex."""
    out = []
    for parts in _partitions_desc(alg.matrix_size_N):
        p = Partition(parts)
        try:
            _validate_partition(alg, p)
        except PartitionError:
            continue
        out.append(p)
    return out


def _sweep_worker(args):
    family, rank, parts, seed = args
    alg = build_algebra(family, rank)
    return analyze_orbit(alg, Partition(parts), seed=seed)


def sweep(family: str, n: int, *, seed: int = 0, workers: int = 1):
    """Run the pipeline on every valid partition of matrix size n.

    Per-orbit errors are captured in the reports and never abort the sweep;
    output order is the deterministic partition order regardless of the
    worker count.
    """
    rank = _family_rank_for_size(family, n)
    alg = build_algebra(family, rank)
    parts_list = valid_partitions(alg)
    if workers > 1:
        tasks = [(alg.family, rank, p.parts, seed) for p in parts_list]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_worker, tasks))
    return [analyze_orbit(alg, p, seed=seed) for p in parts_list]
