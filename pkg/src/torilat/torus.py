"""Points of the torus T_X = (F_q*)^r / G in exponent space.

A point with exponent representative s (coordinates eta^{s_1}, ...,
eta^{s_r}) is classified by its canonical form phi^T s mod q-1; two
representatives give the same point of T_X iff their canonical forms
agree.  All set operations are linear algebra mod q-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from . import intlin
from .errors import CapExceededError, InternalError, ValidationError
from .grading import ToricSetup

TORUS_ENUM_CAP = 10**6
PARAM_ENUM_CAP = 10**7
_GROUP_VERIFY_CAP = 2000


@dataclass(frozen=True)
class TorusPoint:
    """canon: n-vector of residues mod q-1; rep: one exponent r-vector."""

    canon: tuple
    rep: tuple

    def __eq__(self, other):
        return isinstance(other, TorusPoint) and self.canon == other.canon

    def __hash__(self):
        return hash(self.canon)

    def __lt__(self, other):
        return self.canon < other.canon

    def coordinates(self, setup: ToricSetup):
        """Field-element coordinates of the stored representative."""
        return tuple(setup.field.eta_pow(s) for s in self.rep)


class PointSet:
    """Deduplicated, canonically sorted set of torus points."""

    def __init__(self, points, is_group=False):
        seen = {}
        for p in points:
            seen.setdefault(p.canon, p)
        self.points = tuple(seen[c] for c in sorted(seen))
        self.is_group = is_group

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return isinstance(p, TorusPoint) and any(
            q.canon == p.canon for q in self.points
        )

    def __eq__(self, other):
        return (
            isinstance(other, PointSet)
            and tuple(p.canon for p in self.points)
            == tuple(p.canon for p in other.points)
        )

    def __repr__(self):
        return f"PointSet({len(self.points)} points, is_group={self.is_group})"

    def canon_set(self):
        return {p.canon for p in self.points}


def canonical_form(s, setup: ToricSetup):
    """phi^T s reduced mod q-1."""
    if len(s) != setup.r:
        raise ValidationError("exponent vector length != r")
    qm = setup.q - 1
    return tuple(
        v % qm for v in intlin.mat_vec(intlin.transpose(setup.phi), list(s))
    )


def point_from_rep(s, setup: ToricSetup) -> TorusPoint:
    return TorusPoint(canon=canonical_form(s, setup), rep=tuple(s))


def point_from_canon(c, setup: ToricSetup) -> TorusPoint:
    """Point with the given canonical form; the representative comes from
    an integer right inverse of phi^T."""
    qm = setup.q - 1
    c = tuple(x % qm for x in c)
    R = setup.right_inverse()
    s = intlin.mat_vec(R, list(c))
    p = TorusPoint(canon=c, rep=tuple(x % qm for x in s))
    if p.canon != canonical_form(p.rep, setup):
        raise InternalError("right inverse failed to produce a representative")
    return p


def identity_point(setup: ToricSetup) -> TorusPoint:
    return TorusPoint(canon=(0,) * setup.n, rep=(0,) * setup.r)


def _add(p: TorusPoint, q: TorusPoint, qm: int) -> TorusPoint:
    return TorusPoint(
        canon=tuple((a + b) % qm for a, b in zip(p.canon, q.canon)),
        rep=tuple((a + b) % qm for a, b in zip(p.rep, q.rep)),
    )


def _verify_group(points, qm) -> bool:
    canons = {p.canon for p in points}
    if (0,) * len(next(iter(canons))) not in canons:
        return False
    if len(points) ** 2 > _GROUP_VERIFY_CAP**2:
        # desk-scale sets are always below this; trust the construction
        return True
    for a in points:
        for b in points:
            if tuple((x + y) % qm for x, y in zip(a.canon, b.canon)) not in canons:
                return False
    return True


def all_torus_points(setup: ToricSetup) -> PointSet:
    """All (q-1)^n points of T_X, one representative each."""
    qm = setup.q - 1
    if qm**setup.n > TORUS_ENUM_CAP:
        raise CapExceededError(
            f"torus has (q-1)^n = {qm ** setup.n} points, cap is {TORUS_ENUM_CAP}"
        )
    pts = [point_from_canon(c, setup) for c in product(range(qm), repeat=setup.n)]
    return PointSet(pts, is_group=True)


def points_from_parameterization(Q, h, setup: ToricSetup) -> PointSet:
    """Y_{Q,H} for the order-h subgroup H of F_q*: the set of points whose
    j-th coordinate is t_1^{Q[0][j]} ... t_s^{Q[s-1][j]} with t_i in H."""
    qm = setup.q - 1
    if h <= 0 or qm % h != 0:
        raise ValidationError(f"subgroup order {h} does not divide q-1 = {qm}")
    s_rows = len(Q)
    if s_rows and len(Q[0]) != setup.r:
        raise ValidationError("parameterization matrix has wrong column count")
    if h**s_rows > PARAM_ENUM_CAP:
        raise CapExceededError(
            f"parameter enumeration h^s = {h ** s_rows} exceeds cap {PARAM_ENUM_CAP}"
        )
    step = qm // h
    pts = []
    for lam in product(range(h), repeat=s_rows):
        svec = [
            step * sum(lam[i] * Q[i][j] for i in range(s_rows))
            for j in range(setup.r)
        ]
        pts.append(point_from_rep([x % qm for x in svec], setup))
    out = PointSet(pts)
    out.is_group = _verify_group(out.points, qm)
    return out


def zero_set_in_torus(L, setup: ToricSetup) -> PointSet:
    """Points of T_X where every basis binomial of the homogeneous
    lattice L vanishes: s . b = 0 mod q-1 for each basis column b."""
    from .grading import is_homogeneous

    if not is_homogeneous(L, setup):
        raise ValidationError("lattice is not homogeneous")
    qm = setup.q - 1
    basis = intlin.columns(L)
    pts = []
    for p in all_torus_points(setup):
        if all(sum(a * b for a, b in zip(p.rep, col)) % qm == 0 for col in basis):
            pts.append(p)
    out = PointSet(pts)
    out.is_group = _verify_group(out.points, qm)
    return out


def subgroup_closure(generators, setup: ToricSetup) -> PointSet:
    """Smallest subgroup of T_X containing the generators (BFS closure
    under coordinatewise product, i.e. canonical-form addition)."""
    qm = setup.q - 1
    one = identity_point(setup)
    seen = {one.canon: one}
    frontier = [one]
    gens = [point_from_rep([x % qm for x in g.rep], setup) for g in generators]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                s = _add(p, g, qm)
                if s.canon not in seen:
                    seen[s.canon] = s
                    nxt.append(s)
        frontier = nxt
        if len(seen) > TORUS_ENUM_CAP:
            raise CapExceededError("subgroup closure exceeded the torus cap")
    return PointSet(seen.values(), is_group=True)


@dataclass(frozen=True)
class GroupStructure:
    """Invariant-factor decomposition of a finite subgroup of T_X plus a
    Laurent-monomial parameterization reproducing it."""

    orders: tuple  # invariant factors > 1, divisibility order
    generators: tuple  # one TorusPoint per factor
    Q: list  # s x r integer matrix
    h: int  # order of the coefficient subgroup of F_q*


def group_structure(Y: PointSet, setup: ToricSetup) -> GroupStructure:
    """Cyclic decomposition of a subgroup Y and a (Q, h) with
    points_from_parameterization(Q, h) == Y."""
    if not Y.is_group:
        raise ValidationError("point set is not a verified subgroup")
    qm = setup.q - 1
    n = setup.n
    cols = [list(p.canon) for p in Y] + intlin.columns(
        [[qm if i == j else 0 for j in range(n)] for i in range(n)]
    )
    B = intlin.column_hermite_basis(intlin.from_columns(cols, n))
    # (q-1)Z^n inside the lattice spanned by B: columns of C = B^{-1} (q-1)I
    Ccols = []
    for i in range(n):
        e = [qm if j == i else 0 for j in range(n)]
        x = intlin.solve_integer(B, e)
        if x is None:
            raise InternalError("(q-1)Z^n not inside the generated lattice")
        Ccols.append(x)
    C = intlin.from_columns(Ccols, n)
    res = intlin.snf(C)
    Uinv = intlin.inverse_unimodular(res.U)
    orders = []
    gens = []
    for i in range(n):
        d = res.S[i][i]
        if d <= 1:
            continue
        x = [Uinv[j][i] for j in range(n)]
        g = [v % qm for v in intlin.mat_vec(B, x)]
        orders.append(d)
        gens.append(point_from_canon(g, setup))
    total = 1
    for i in range(n):
        total *= res.S[i][i]
    if total != len(Y):
        raise InternalError("group order mismatch in cyclic decomposition")
    if gens:
        g_all = gcd(qm, *(x for p in gens for x in p.rep))
        h = qm // g_all
        Q = [[x // g_all for x in p.rep] for p in gens]
    else:
        h = 1
        Q = []
    return GroupStructure(orders=tuple(orders), generators=tuple(gens), Q=Q, h=h)


def degenerate_torus(a, h, setup: ToricSetup):
    """Y_{A,H} for the diagonal parameterization t_i -> t_i^{a_i} over the
    order-h subgroup H.

    Returns (Y, predicted_order): the predicted order is prod(d_i) when
    the orders d_i = h/gcd(h, a_i) are pairwise coprime, else None.  When
    predicted, |Y| is checked against it.
    """
    if len(a) != setup.r:
        raise ValidationError("diagonal exponent vector length != r")
    qm = setup.q - 1
    if h <= 0 or qm % h != 0:
        raise ValidationError(f"subgroup order {h} does not divide q-1 = {qm}")
    Q = [[a[i] if i == j else 0 for j in range(setup.r)] for i in range(setup.r)]
    Y = points_from_parameterization(Q, h, setup)
    d = [h // gcd(h, abs(ai)) for ai in a]
    pairwise = all(
        gcd(d[i], d[j]) == 1 for i in range(len(d)) for j in range(i + 1, len(d))
    )
    predicted = None
    if pairwise:
        predicted = 1
        for di in d:
            predicted *= di
        if len(Y) != predicted:
            raise InternalError(
                f"degenerate torus has {len(Y)} points, predicted {predicted}"
            )
    return Y, predicted


def vanishing_lattice(Y: PointSet, setup: ToricSetup):
    """The lattice L(Y) = {m in L_beta : s_P . m = 0 mod q-1 for all P}.

    By the subgroup/lattice correspondence, I(Y) = I_{L(Y)} for subgroups
    Y.  Computed from a generating set of Y, so Y must be a group.
    """
    if not Y.is_group:
        raise ValidationError("vanishing lattice needs a subgroup")
    qm = setup.q - 1
    gs = group_structure(Y, setup)
    reps = [list(p.rep) for p in gs.generators]
    k = setup.k
    t = len(reps)
    # unknowns: m (r) and one slack per generator; rows: beta m = 0 and
    # s_i . m - (q-1) c_i = 0
    rows = []
    for i in range(k):
        rows.append(list(setup.beta_free[i]) + [0] * t)
    for i, s in enumerate(reps):
        rows.append(list(s) + [-(qm) if j == i else 0 for j in range(t)])
    if not rows:
        return intlin.column_hermite_basis(setup.phi_columns_matrix())
    K = intlin.integer_kernel(rows)
    cols = [c[: setup.r] for c in intlin.columns(K)]
    return intlin.column_hermite_basis(intlin.from_columns(cols, setup.r))
