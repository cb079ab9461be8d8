"""Sparse multivariate polynomials over the rationals.

A polynomial is a mapping {exponent tuple -> nonzero coefficient} over an
ordered variable list; the zero polynomial is the empty mapping.  This is
just enough polynomial algebra for the symbolic side of the bracket-matrix
analysis: exact determinants, and generic rank over the rational function
field with a randomized prime-evaluation cross-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations

from ._scalar import ONE, Rat, ZERO
from .errors import ContractError, InternalError, ShapeError
from .linalg import Mat, rank_kernel

_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
    149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
    227, 229,
)


class Poly:
    """Multivariate polynomial with exact rational coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms):
        self.variables = tuple(variables)
        clean = {}
        nv = len(self.variables)
        for exp, coeff in terms.items():
            if len(exp) != nv:
                raise ShapeError("exponent length does not match variable count")
            coeff = Rat(coeff)
            if coeff != 0:
                clean[tuple(exp)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, variables) -> "Poly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables, value) -> "Poly":
        return cls(variables, {(0,) * len(tuple(variables)): Rat(value)})

    @classmethod
    def variable(cls, variables, index: int) -> "Poly":
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[index] = 1
        return cls(variables, {tuple(exp): ONE})

    @classmethod
    def linear(cls, variables, coeffs) -> "Poly":
        """The linear form sum(coeffs[k] * x_k)."""
        variables = tuple(variables)
        terms = {}
        for k, c in enumerate(coeffs):
            if c != 0:
                exp = [0] * len(variables)
                exp[k] = 1
                terms[tuple(exp)] = Rat(c)
        return cls(variables, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(exp) for exp in self.terms)

    def is_linear_form(self) -> bool:
        """True when every monomial has total degree exactly 1 (or zero poly)."""
        return all(sum(exp) == 1 for exp in self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def _check_same_vars(self, other: "Poly"):
        if self.variables != other.variables:
            raise ContractError("polynomials over different variable lists")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same_vars(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, ZERO) + c
        return Poly(self.variables, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check_same_vars(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, ZERO) - c
        return Poly(self.variables, out)

    def __neg__(self) -> "Poly":
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = Rat(other)
            return Poly(self.variables, {e: c * v for e, v in self.terms.items()})
        self._check_same_vars(other)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(a + b for a, b in zip(ea, eb))
                out[exp] = out.get(exp, ZERO) + ca * cb
        return Poly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ContractError("negative polynomial power")
        out = Poly.const(self.variables, 1)
        for _ in range(n):
            out = out * self
        return out

    def eval(self, point):
        """Exact value at a point given as a sequence, one value per variable."""
        if len(point) != len(self.variables):
            raise ShapeError("point length does not match variable count")
        point = [Rat(v) for v in point]
        total = ZERO
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(point, exp):
                for _ in range(e):
                    term = term * v
            total += term
        return total

    def lead(self):
        """Lex-leading (exponent, coefficient); the polynomial must be nonzero."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Exact quotient self / divisor in the polynomial ring.

        Single-divisor lex division; since divisibility is guaranteed by
        the fraction-free elimination that calls this, a nonzero remainder
        means a bug and raises InternalError.
        """
        self._check_same_vars(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Poly.zero(self.variables)
        dlead, dcoeff = divisor.lead()
        rem = dict(self.terms)
        out = {}
        while rem:
            lexp = max(rem)
            q = tuple(a - b for a, b in zip(lexp, dlead))
            if any(e < 0 for e in q):
                raise InternalError("polynomial division was not exact")
            c = rem[lexp] / dcoeff
            out[q] = out.get(q, ZERO) + c
            for dexp, dc in divisor.terms.items():
                m = tuple(a + b for a, b in zip(q, dexp))
                nv = rem.get(m, ZERO) - c * dc
                if nv == 0:
                    rem.pop(m, None)
                else:
                    rem[m] = nv
        return Poly(self.variables, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self.text()})"


def _check_rect(entries):
    nrows = len(entries)
    if nrows == 0:
        raise ShapeError("empty matrix")
    ncols = len(entries[0])
    for row in entries:
        if len(row) != ncols:
            raise ShapeError("ragged polynomial matrix")
    variables = entries[0][0].variables
    for row in entries:
        for p in row:
            if p.variables != variables:
                raise ContractError("matrix entries over different variable lists")
    return nrows, ncols, variables


def _perm_sign(perm) -> int:
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def poly_det(entries) -> Poly:
    """Exact determinant of a square matrix of polynomials.

    Leibniz expansion for size <= 8 (our matrices are at most rank-sized);
    fraction-free elimination with exact polynomial division beyond that.
    """
    n, ncols, variables = _check_rect(entries)
    if n != ncols:
        raise ShapeError("determinant of a non-square matrix")
    if n <= 8:
        total = Poly.zero(variables)
        for perm in permutations(range(n)):
            term = Poly.const(variables, _perm_sign(perm))
            for i, j in enumerate(perm):
                if entries[i][j].is_zero():
                    term = None
                    break
                term = term * entries[i][j]
            if term is not None:
                total = total + term
        return total
    a = [list(row) for row in entries]
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k].is_zero():
            p = None
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    p = i
                    break
            if p is None:
                return Poly.zero(variables)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else num.exact_div(prev)
            a[i][k] = Poly.zero(variables)
        prev = pivot
    result = a[n - 1][n - 1]
    return result if sign == 1 else -result


def _symbolic_rank(entries) -> int:
    """Rank over the field of rational functions, by fraction-free elimination."""
    a = [list(row) for row in entries]
    nrows = len(a)
    ncols = len(a[0])
    variables = a[0][0].variables
    zero = Poly.zero(variables)
    prev = None
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if not a[i][c].is_zero():
                p = i
                break
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pivot = a[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = a[i][j] * pivot - a[i][c] * a[r][j]
                a[i][j] = num if prev is None else num.exact_div(prev)
            a[i][c] = zero
        prev = pivot
        r += 1
    return r


@dataclass(frozen=True)
class GenericRankResult:
    """Symbolic generic rank plus the randomized evaluation cross-check."""

    rank: int
    prime_samples: tuple  # one tuple of primes (per variable) per sample
    eval_ranks: tuple


def generic_rank_detail(entries, *, seed: int = 0, samples: int = 3) -> GenericRankResult:
    """Generic rank of a matrix of homogeneous linear forms.

    Rank is computed symbolically over the polynomial ring, then
    cross-checked by evaluating the variables at `samples` seeded tuples of
    distinct primes and taking the max evaluated rank; disagreement with
    the symbolic result raises InternalError.
    """
    nrows, ncols, variables = _check_rect(entries)
    for row in entries:
        for p in row:
            if not p.is_linear_form():
                raise ContractError("generic_rank requires linear-form entries")
    symbolic = _symbolic_rank(entries)
    nvars = max(1, len(variables))
    rng = random.Random(f"generic-rank:{seed}")
    prime_samples = []
    eval_ranks = []
    for _ in range(max(3, samples)):
        primes = tuple(rng.sample(_PRIMES, nvars))[: len(variables)]
        point = [Rat(p) for p in primes]
        m = Mat(nrows, ncols, [p.eval(point) for row in entries for p in row])
        rank, _ = rank_kernel(m)
        prime_samples.append(primes)
        eval_ranks.append(rank)
    if max(eval_ranks) != symbolic:
        raise InternalError(
            f"generic rank cross-check mismatch: symbolic {symbolic}, "
            f"evaluations {eval_ranks}"
        )
    return GenericRankResult(symbolic, tuple(prime_samples), tuple(eval_ranks))


def generic_rank(entries, *, seed: int = 0, samples: int = 3) -> int:
    return generic_rank_detail(entries, seed=seed, samples=samples).rank
