"""The grading of the Cox ring.

Builds the exact sequence 0 -> Z^n -> Z^r -> A -> 0 from fan rays (or
from an explicit degree matrix), does degree arithmetic in A, checks
lattice homogeneity, and enumerates monomial bases of graded pieces.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import intlin
from .errors import ValidationError
from .gfield import PrimeField


@dataclass(frozen=True)
class Degree:
    """An element of the grading group A: free part plus torsion residues."""

    free: tuple
    torsion: tuple = ()

    def __iter__(self):
        return iter(self.free + self.torsion)


class ToricSetup:
    """Fixed ambient context: ray matrix phi (r x n, rows are primitive
    ray generators), degree matrix beta (free rows plus torsion residue
    rows), prime field size q, optional maximal cones.

    Instances are immutable after construction.
    """

    def __init__(self, phi, beta_free, torsion, q, max_cones=None,
                 check_primitive=True):
        self._check_primitive = check_primitive
        self.phi = [list(row) for row in phi]
        self.r, self.n = intlin.shape(self.phi)
        self.beta_free = [list(row) for row in beta_free]
        self.k = len(self.beta_free)
        # torsion: list of (modulus, residue row of length r)
        self.torsion = [(int(d), list(row)) for d, row in torsion]
        self.q = int(q)
        self.field = PrimeField(self.q)
        self.max_cones = (
            None if max_cones is None else [sorted(set(c)) for c in max_cones]
        )
        self._validate()
        self._right_inverse = None
        self._functional = "unset"
        self._monomial_cache = {}

    def _validate(self):
        for row in self.beta_free:
            if len(row) != self.r:
                raise ValidationError("beta row length != r")
        for _, row in self.torsion:
            if len(row) != self.r:
                raise ValidationError("torsion row length != r")
        for v in self.phi:
            if not any(v):
                raise ValidationError("zero ray vector")
            if self._check_primitive and gcd(*(abs(x) for x in v)) != 1:
                raise ValidationError(f"non-primitive ray {v}")
        if intlin.snf(self.phi).rank != self.n:
            raise ValidationError("rays do not span Q^n")
        if self.max_cones is not None:
            for c in self.max_cones:
                if any(j < 0 or j >= self.r for j in c):
                    raise ValidationError("cone ray index out of range")
        # ker(beta_free) must contain the columns of phi; exact equality
        # when there is no torsion.
        for col in intlin.columns(self.phi):
            if any(intlin.mat_vec(self.beta_free, col)) if self.k else False:
                raise ValidationError("beta does not annihilate im(phi)")
            for d, row in self.torsion:
                if sum(a * b for a, b in zip(row, col)) % d != 0:
                    raise ValidationError("torsion row does not annihilate im(phi)")
        if not self.torsion and self.k:
            ker = intlin.integer_kernel(self.beta_free)
            if not intlin.lattice_equal(ker, self.phi_columns_matrix()):
                raise ValidationError("ker(beta) != im(phi)")
        torsion_order = 1
        for d, _ in self.torsion:
            torsion_order *= d
        if torsion_order % self.q == 0:
            warnings.warn(
                "torsion order of the class group shares the field "
                "characteristic; quotient constructions may misbehave",
                stacklevel=3,
            )

    def phi_columns_matrix(self):
        """phi as a map Z^n -> Z^r: the r x n matrix itself (columns span
        the homogeneity lattice L_beta when A is torsion free)."""
        return intlin.copy_matrix(self.phi)

    @property
    def torsion_free(self) -> bool:
        return not self.torsion

    def _require_torsion_free(self, what: str):
        if self.torsion:
            raise ValidationError(
                f"{what} is only supported for torsion-free gradings"
            )

    def right_inverse(self):
        """Integer R (r x n) with phi^T R = I_n.  Exists because phi^T is
        surjective over Z for torsion-free class groups."""
        if self._right_inverse is None:
            self._require_torsion_free("torus coordinate computation")
            phit = intlin.transpose(self.phi)
            cols = []
            for i in range(self.n):
                e = [1 if j == i else 0 for j in range(self.n)]
                x = intlin.solve_integer(phit, e)
                if x is None:
                    raise ValidationError("phi^T is not surjective over Z")
                cols.append(x)
            self._right_inverse = intlin.from_columns(cols, self.r)
        return self._right_inverse

    # degree arithmetic -------------------------------------------------

    def degree(self, free, torsion=()):
        tor = tuple(
            t % d for t, (d, _) in zip(torsion, self.torsion)
        ) if self.torsion else ()
        return Degree(free=tuple(free), torsion=tor)

    def zero_degree(self) -> Degree:
        return Degree(free=(0,) * self.k, torsion=tuple(0 for _ in self.torsion))

    def add_degrees(self, a: Degree, b: Degree) -> Degree:
        return self.degree(
            [x + y for x, y in zip(a.free, b.free)],
            [x + y for x, y in zip(a.torsion, b.torsion)],
        )

    def sub_degrees(self, a: Degree, b: Degree) -> Degree:
        return self.degree(
            [x - y for x, y in zip(a.free, b.free)],
            [x - y for x, y in zip(a.torsion, b.torsion)],
        )

    def scale_degree(self, c: int, a: Degree) -> Degree:
        return self.degree([c * x for x in a.free], [c * x for x in a.torsion])

    def variable_degree(self, j: int) -> Degree:
        return degree_of([1 if i == j else 0 for i in range(self.r)], self)

    def __repr__(self):
        return (
            f"ToricSetup(r={self.r}, n={self.n}, k={self.k}, q={self.q}, "
            f"torsion={[d for d, _ in self.torsion]})"
        )


def setup_from_rays(rays, q, max_cones=None) -> ToricSetup:
    """Build the grading from primitive ray generators.

    beta is the cokernel presentation of phi computed by SNF; its free
    block is canonicalized by row Hermite form so the result is
    deterministic.  Torsion in the class group shows up as residue rows.
    """
    phi = [list(v) for v in rays]
    r, n = intlin.shape(phi)
    if r < n:
        raise ValidationError("fewer rays than ambient dimension")
    res = intlin.snf(phi)
    if res.rank != n:
        raise ValidationError("rays do not span Q^n")
    diag = res.diagonal
    torsion = []
    for i in range(n):
        if diag[i] > 1:
            torsion.append((diag[i], [x % diag[i] for x in res.U[i]]))
    free_rows = [res.U[i] for i in range(n, r)]
    if free_rows:
        H, _ = intlin.hnf(free_rows)
        free_rows = [row for row in H if any(row)]
    return ToricSetup(phi, free_rows, torsion, q, max_cones)


def setup_from_beta(beta, q, max_cones=None) -> ToricSetup:
    """Build the grading from an explicit (torsion-free) degree matrix.

    phi is recovered as an integer kernel basis of beta, so ker(beta) =
    im(phi) holds by construction.  Rows of beta must be Z-independent.
    """
    beta = [list(row) for row in beta]
    k, r = intlin.shape(beta)
    if intlin.snf(beta).rank != k:
        raise ValidationError("beta rows are dependent")
    phi = intlin.kernel_basis_canonical(beta)
    _, nk = intlin.shape(phi)
    if nk != r - k:
        raise ValidationError("beta kernel has unexpected rank")
    # rows of a kernel basis need not be primitive; the kernel lattice is
    # saturated, which is all the torus machinery needs
    return ToricSetup(phi, beta, [], q, max_cones, check_primitive=False)


def degree_of(a, setup: ToricSetup) -> Degree:
    """Degree beta(a) of the exponent vector a, torsion reduced."""
    if len(a) != setup.r:
        raise ValidationError("exponent vector length != r")
    free = tuple(intlin.mat_vec(setup.beta_free, list(a))) if setup.k else ()
    tor = tuple(
        sum(x * y for x, y in zip(row, a)) % d for d, row in setup.torsion
    )
    return Degree(free=free, torsion=tor)


def is_homogeneous(L, setup: ToricSetup) -> bool:
    """True iff every basis column of L has degree zero, i.e. the column
    span lies in L_beta."""
    m, _ = intlin.shape(L)
    if m != setup.r:
        raise ValidationError("lattice basis has wrong number of rows")
    for col in intlin.columns(L):
        d = degree_of(col, setup)
        if any(d.free) or any(d.torsion):
            return False
    return True


# positive functional -------------------------------------------------


def _fm_find(cons, k):
    """Find w in Q^k with c . w > 0 for every c in cons, or None.

    Fourier-Motzkin on a homogeneous system of strict inequalities.
    """
    cons = [tuple(Fraction(x) for x in c) for c in cons]
    if k == 0:
        return [] if not cons else None
    pos = [c for c in cons if c[k - 1] > 0]
    neg = [c for c in cons if c[k - 1] < 0]
    zero = [c[: k - 1] for c in cons if c[k - 1] == 0]
    combined = list(zero)
    for p in pos:
        for m in neg:
            # eliminate w_{k-1}: rest_m * p_k + rest_p * (-m_k) > 0
            combined.append(
                tuple(
                    m[i] * p[k - 1] + p[i] * (-m[k - 1]) for i in range(k - 1)
                )
            )
    # an all-zero combined constraint reads 0 > 0: infeasible
    cleaned = []
    for c in combined:
        if not any(c):
            return None
        cleaned.append(c)
    rest = _fm_find(cleaned, k - 1)
    if rest is None:
        return None
    lower = None
    upper = None
    for c in pos:
        val = -sum(ci * wi for ci, wi in zip(c[: k - 1], rest)) / c[k - 1]
        lower = val if lower is None else max(lower, val)
    for c in neg:
        val = -sum(ci * wi for ci, wi in zip(c[: k - 1], rest)) / c[k - 1]
        upper = val if upper is None else min(upper, val)
    if lower is None and upper is None:
        w = Fraction(1)
    elif upper is None:
        w = lower + 1
    elif lower is None:
        w = upper - 1
    else:
        if lower >= upper:
            return None  # cannot happen if FM is consistent
        w = (lower + upper) / 2
    return rest + [w]


def positive_functional(setup: ToricSetup):
    """Integer w with w . deg(x_j) > 0 for all j, or None if the degree
    semigroup is not pointed.  Computed on the free part of the grading."""
    if setup._functional != "unset":
        return setup._functional
    if setup.k == 0:
        setup._functional = None
        return None
    cons = [tuple(setup.beta_free[i][j] for i in range(setup.k)) for j in range(setup.r)]
    w = _fm_find(cons, setup.k)
    if w is None:
        setup._functional = None
        return None
    denom = lcm(*(f.denominator for f in w)) if w else 1
    wi = [int(f * denom) for f in w]
    g = gcd(*(abs(x) for x in wi)) or 1
    wi = [x // g for x in wi]
    if any(
        sum(wi[i] * setup.beta_free[i][j] for i in range(setup.k)) <= 0
        for j in range(setup.r)
    ):
        raise ValidationError("positive functional verification failed")
    setup._functional = wi
    return wi


def _enumerate_solutions(alpha_free, setup, allowed, find_one=False):
    """All a in N^r supported on `allowed` with beta_free . a = alpha_free,
    in ascending lexicographic order.  Requires a pointed grading."""
    w = positive_functional(setup)
    if w is None:
        raise ValidationError(
            "grading is not pointed; monomial enumeration needs an explicit cap"
        )
    weights = [
        sum(w[i] * setup.beta_free[i][j] for i in range(setup.k))
        for j in range(setup.r)
    ]
    target = list(alpha_free)
    budget = sum(wi * ai for wi, ai in zip(w, target))
    out = []
    a = [0] * setup.r
    allowed = sorted(allowed)

    def rec(pos, rem, bud):
        if find_one and out:
            return
        if pos == len(allowed):
            if not any(rem):
                out.append(tuple(a))
            return
        j = allowed[pos]
        top = bud // weights[j]
        for v in range(top + 1):
            a[j] = v
            new_rem = [
                rem[i] - v * setup.beta_free[i][j] for i in range(setup.k)
            ]
            rec(pos + 1, new_rem, bud - v * weights[j])
            if find_one and out:
                break
        a[j] = 0

    if budget >= 0:
        rec(0, target, budget)
    return out


def monomial_basis(alpha: Degree, setup: ToricSetup):
    """All exponent vectors a in N^r of degree alpha, lexicographically
    ascending.  Torsion-graded enumeration is not supported."""
    setup._require_torsion_free("monomial enumeration")
    if len(alpha.free) != setup.k:
        raise ValidationError("degree has wrong free rank")
    cached = setup._monomial_cache.get(alpha.free)
    if cached is None:
        cached = _enumerate_solutions(alpha.free, setup, range(setup.r))
        setup._monomial_cache[alpha.free] = cached
    return cached


def in_semigroup_Khat(alpha: Degree, setup: ToricSetup) -> bool:
    """True iff for every maximal cone sigma there is a monomial of
    degree alpha supported off sigma."""
    setup._require_torsion_free("semigroup membership")
    if setup.max_cones is None:
        raise ValidationError("setup has no maximal cones")
    for cone in setup.max_cones:
        allowed = [j for j in range(setup.r) if j not in cone]
        if not _enumerate_solutions(alpha.free, setup, allowed, find_one=True):
            return False
    return True
