"""Lattice-ideal computations.

Binomial generators, parameterization of torus zero sets, vanishing-
ideal lattices of degenerate tori, complete-intersection decisions,
torus and point ideals, and a coset-counting Hilbert oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import intlin
from .errors import InternalError, ValidationError
from .grading import Degree, ToricSetup, is_homogeneous, monomial_basis, positive_functional
from .torus import TorusPoint


@dataclass(frozen=True)
class Binomial:
    """x^{m+} - scale * x^{m-} for an integer vector m with disjoint
    positive/negative supports; scale is 1 for plain lattice binomials."""

    m: tuple
    scale: int = 1

    def __post_init__(self):
        if not any(self.m):
            raise ValidationError("binomial exponent vector is zero")

    @property
    def m_plus(self):
        return tuple(max(x, 0) for x in self.m)

    @property
    def m_minus(self):
        return tuple(max(-x, 0) for x in self.m)

    def evaluate(self, point: TorusPoint, setup: ToricSetup) -> int:
        """Value at a torus point, as an element of F_q."""
        s = point.rep
        plus = sum(a * b for a, b in zip(s, self.m_plus))
        minus = sum(a * b for a, b in zip(s, self.m_minus))
        f = setup.field
        return (f.eta_pow(plus) - self.scale * f.eta_pow(minus)) % setup.q

    def text(self) -> str:
        def mono(exps):
            parts = [
                f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                for i, e in enumerate(exps)
                if e
            ]
            return "*".join(parts) if parts else "1"

        head = mono(self.m_plus)
        tail = mono(self.m_minus)
        if self.scale == 1:
            return f"{head} - {tail}"
        return f"{head} - {self.scale}*{tail}"


def sign_normalize(m):
    """Orient m so its first nonzero entry is positive."""
    m = list(m)
    first = next((x for x in m if x), 0)
    if first < 0:
        m = [-x for x in m]
    return tuple(m)


@dataclass(frozen=True)
class LatticeIdealPresentation:
    """Basis matrix (columns span L) with one binomial per column."""

    basis: list  # r x ell
    binomials: tuple

    def __iter__(self):
        return iter(self.binomials)

    def texts(self):
        return [b.text() for b in self.binomials]


def lattice_ideal_generators(L) -> LatticeIdealPresentation:
    """Binomials F_m for the basis columns m of L, sign-normalized.

    On the torus these basis binomials cut out V_X(I_L) exactly; the
    full ideal may need more generators, which are never materialized
    here.
    """
    m, ell = intlin.shape(L)
    if ell and intlin.snf(L).rank != ell:
        raise ValidationError("lattice basis columns are dependent")
    cols = [sign_normalize(c) for c in intlin.columns(L)]
    basis = intlin.from_columns([list(c) for c in cols], m)
    return LatticeIdealPresentation(
        basis=basis, binomials=tuple(Binomial(m=c) for c in cols)
    )


def parameterize_zero_set(L, setup: ToricSetup):
    """Square matrix A with Y_{A, F_q*} = V_X(I_L) n T_X (as point sets).

    Forms B_L with rows [b_j, (q-1)e_j], takes an integer kernel basis
    A_L of B_L and returns its first r rows; the columns of the result
    generate the exponent lattice of the zero set, so the point set is
    points_from_parameterization(transpose(A), q-1).  The matrix itself
    is basis-dependent; only the parameterized point set is canonical.
    """
    if not is_homogeneous(L, setup):
        raise ValidationError("lattice is not homogeneous")
    r = setup.r
    q = setup.q
    cols = intlin.columns(L)
    ell = len(cols)
    if ell == 0:
        return intlin.identity(r)
    if ell > r:
        raise ValidationError("lattice rank exceeds the ambient rank")
    BL = [
        list(cols[j]) + [(q - 1) if i == j else 0 for i in range(ell)]
        for j in range(ell)
    ]
    AL = intlin.integer_kernel(BL)
    _, ncols = intlin.shape(AL)
    if ncols != r:
        raise InternalError("kernel of B_L has unexpected rank")
    return [AL[i] for i in range(r)]


@dataclass(frozen=True)
class DegenerateLattice:
    D: list  # the diagonal entries d_1..d_r
    L: list  # r x ell basis matrix of D(L_{beta D})
    gens: LatticeIdealPresentation


def degenerate_lattice(a, h, setup: ToricSetup) -> DegenerateLattice:
    """Lattice of the vanishing ideal of the degenerate torus with
    diagonal exponents a over the order-h subgroup of F_q*.

    d_i = h/gcd(h, a_i); L = D * (canonical basis of ker_Z(beta D)); the
    generators are the toric-kernel binomials with x_i replaced by
    x_i^{d_i}.
    """
    setup._require_torsion_free("degenerate-torus lattices")
    if len(a) != setup.r:
        raise ValidationError("diagonal exponent vector length != r")
    qm = setup.q - 1
    if h <= 0 or qm % h != 0:
        raise ValidationError(f"subgroup order {h} does not divide q-1 = {qm}")
    d = [h // gcd(h, abs(ai)) for ai in a]
    betaD = [
        [setup.beta_free[i][j] * d[j] for j in range(setup.r)]
        for i in range(setup.k)
    ]
    gamma0 = intlin.kernel_basis_canonical(betaD)
    Lcols = [
        [d[i] * c[i] for i in range(setup.r)] for c in intlin.columns(gamma0)
    ]
    L = intlin.from_columns(Lcols, setup.r)
    return DegenerateLattice(D=d, L=L, gens=lattice_ideal_generators(L))


def is_mixed(gamma) -> bool:
    """Every column has both a strictly positive and a strictly negative
    entry.  Vacuously true for a matrix with no columns."""
    _, n = intlin.shape(gamma)
    for col in intlin.columns(gamma):
        if not (any(x > 0 for x in col) and any(x < 0 for x in col)):
            return False
    return True


def is_dominating(gamma) -> bool:
    """No square submatrix (any k rows x k columns) is mixed.

    Exhaustive scan; 1 x 1 submatrices are never mixed, so k starts at 2.
    """
    from itertools import combinations

    m, n = intlin.shape(gamma)
    for k in range(2, min(m, n) + 1):
        for cols in combinations(range(n), k):
            # a column that is not mixed on the full row set can never be
            # mixed on a subset, so prune early
            if any(
                not (
                    any(gamma[i][j] > 0 for i in range(m))
                    and any(gamma[i][j] < 0 for i in range(m))
                )
                for j in cols
            ):
                continue
            for rows in combinations(range(m), k):
                if all(
                    any(gamma[i][j] > 0 for i in rows)
                    and any(gamma[i][j] < 0 for i in rows)
                    for j in cols
                ):
                    return False
    return True


def complete_intersection(L, setup: ToricSetup | None = None) -> bool:
    """Whether I_L is a complete intersection: the Hermite-canonical
    basis matrix of L must be mixed dominating.

    Requires L n N^r = {0}; when a setup is supplied this is certified by
    homogeneity plus a pointed grading.
    """
    if setup is not None:
        if not is_homogeneous(L, setup):
            raise ValidationError("lattice is not homogeneous")
        if positive_functional(setup) is None:
            raise ValidationError(
                "grading is not pointed; cannot certify L n N^r = {0}"
            )
    gamma = intlin.column_hermite_basis(L)
    return is_mixed(gamma) and is_dominating(gamma)


def torus_ideal(setup: ToricSetup) -> LatticeIdealPresentation:
    """Generators of I(T_X): the basis binomials of (q-1) L_beta, taken
    on the columns of phi."""
    qm = setup.q - 1
    cols = [[qm * x for x in c] for c in intlin.columns(setup.phi)]
    return lattice_ideal_generators(intlin.from_columns(cols, setup.r))


def point_ideal(P: TorusPoint, setup: ToricSetup):
    """Shifted binomials generating I([P]): one per basis column m of
    L_beta, with scale x^m(P).

    The scale is computed from the canonical form, so it is independent
    of the chosen representative of [P].
    """
    setup._require_torsion_free("point ideals")
    f = setup.field
    out = []
    for i, col in enumerate(intlin.columns(setup.phi)):
        scale = f.eta_pow(P.canon[i])
        out.append(Binomial(m=tuple(col), scale=scale))
    return out


def hilbert_of_lattice(L, alpha: Degree, setup: ToricSetup) -> int:
    """Coset-counting Hilbert oracle: the number of classes of degree-
    alpha monomials under a ~ a' iff a - a' in L.

    For a lattice ideal this equals dim S_alpha - dim (I_L)_alpha.
    """
    if not is_homogeneous(L, setup):
        raise ValidationError("lattice is not homogeneous")
    mons = monomial_basis(alpha, setup)
    _, ell = intlin.shape(L)
    if ell == 0 or not mons:
        return len(mons)
    reducer = intlin.HermiteReducer.from_basis(L)
    return len({reducer.reduce(list(a)) for a in mons})
