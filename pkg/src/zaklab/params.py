"""Exact rational algebra for the Zakharov admissibility region.

Parameter tuples (k, l, p, b, b1) with 1 < p <= 2 and b, b1 in (1/p, 1]
are classified against a finite system of affine inequalities in
(k, l, 1/p, b, b1).  The system splits into a branch for k >= 0 and a
branch for k < 0; the point k = 0 is assigned to the k >= 0 branch.
All arithmetic is over fractions.Fraction, so verdicts are exact and
re-running a query is bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]

BRANCH_K_NONNEG = "k>=0"
BRANCH_K_NEG = "k<0"


class ParamDomainError(ValueError):
    """An input violates a type invariant of the parameter algebra."""


def as_rational(x: RationalLike) -> Fraction:
    """Parse an exact rational.  Floats and decimal strings are rejected."""
    if isinstance(x, bool):
        raise ParamDomainError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise ParamDomainError(
                f"decimal literal {x!r} is not exact; write it as p/q"
            )
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParamDomainError(f"cannot parse rational {x!r}") from exc
    raise ParamDomainError(
        f"cannot accept {type(x).__name__} as a rational (floats are inexact)"
    )


@dataclass(frozen=True)
class ParamPoint:
    """A parameter tuple (k, l, p, b, b1), validated on construction.

    Invariants: 1 < p <= 2 and b, b1 in (1/p, 1].  Derived quantities:
    p' = p/(p-1), and the dual modulation exponents c1 = 1 - b1 and
    c = 1 - b (callers who need open slack subtract an explicit epsilon).
    """

    k: Fraction
    l: Fraction
    p: Fraction
    b: Fraction
    b1: Fraction

    def __post_init__(self):
        for name in ("k", "l", "p", "b", "b1"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not (1 < self.p <= 2):
            raise ParamDomainError(f"p must satisfy 1 < p <= 2 (got {self.p})")
        for name in ("b", "b1"):
            v = getattr(self, name)
            if not (self.inv_p < v <= 1):
                raise ParamDomainError(
                    f"{name} must lie in (1/p, 1] (got {v}, 1/p = {self.inv_p})"
                )

    @property
    def inv_p(self) -> Fraction:
        return 1 / self.p

    @property
    def p_prime(self) -> Fraction:
        return self.p / (self.p - 1)

    @property
    def c1(self) -> Fraction:
        return 1 - self.b1

    @property
    def c(self) -> Fraction:
        return 1 - self.b

    def scaling_exponents(self) -> tuple[Fraction, Fraction]:
        return scaling_exponents(self.k, self.l, self.p)


@dataclass(frozen=True)
class Constraint:
    """Affine inequality  ck*k + cl*l + cq*(1/p) + cb*b + cb1*b1 + const REL 0.

    REL is "< 0" when strict, "<= 0" otherwise.  The label states the
    inequality in its conventional written form.
    """

    label: str
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    const: Fraction
    strict: bool

    def value(self, pt: ParamPoint) -> Fraction:
        ck, cl, cq, cb, cb1 = self.coeffs
        return (
            ck * pt.k + cl * pt.l + cq * pt.inv_p + cb * pt.b + cb1 * pt.b1
            + self.const
        )

    def holds(self, pt: ParamPoint) -> bool:
        v = self.value(pt)
        return v < 0 if self.strict else v <= 0

    def slack(self, pt: ParamPoint) -> Fraction:
        """Positive inside the feasible half-space, negative outside."""
        return -self.value(pt)


def _c(label, k=0, l=0, q=0, b=0, b1=0, const=0, strict=False) -> Constraint:
    coeffs = tuple(Fraction(v) for v in (k, l, q, b, b1))
    return Constraint(label, coeffs, Fraction(const), strict)


# Branch for k >= 0.
CONSTRAINTS_K_NONNEG = (
    _c("l >= -1/p", l=-1, q=-1),
    _c("k-l < 2(1-b1)", k=1, l=-1, b1=2, const=-2, strict=True),
    _c("l <= 2k-1/p'", k=-2, l=1, q=-1, const=1),
    _c("l+1-k < 1/p+2(1-b)", k=-1, l=1, q=-1, b=2, const=-1, strict=True),
    _c("l+1-k <= 2b1", k=-1, l=1, b1=-2, const=1),
)

# Branch for k < 0.
CONSTRAINTS_K_NEG = (
    _c("k >= -1/p", k=-1, q=-1),
    _c("l >= -1/p", l=-1, q=-1),
    _c("l+k > 1/p-2b1", k=-1, l=-1, q=1, b1=-2, strict=True),
    _c("l+k > 1/p-2b", k=-1, l=-1, q=1, b=-2, strict=True),
    _c("l+k > -1/p-2(1-b1)", k=-1, l=-1, q=-1, b1=2, const=-2, strict=True),
    _c("k-l < 2(1-b1)", k=1, l=-1, b1=2, const=-2, strict=True),
    _c("2k > 1/p-b1", k=-2, q=1, b1=-1, strict=True),
    _c("2k >= l+1/p'", k=-2, l=1, q=-1, const=1),
    _c("2k > -(1-b)", k=-2, b=1, const=-1, strict=True),
)


def branch_constraints(k: Fraction) -> tuple[str, tuple[Constraint, ...]]:
    if k >= 0:
        return BRANCH_K_NONNEG, CONSTRAINTS_K_NONNEG
    return BRANCH_K_NEG, CONSTRAINTS_K_NEG


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    branch: str
    satisfied: tuple[str, ...]
    violated: tuple[str, ...]
    margins: tuple[tuple[str, Fraction], ...]

    def __post_init__(self):
        if self.admissible != (len(self.violated) == 0):
            raise ValueError("verdict inconsistent with violated list")


def admissible(pt: ParamPoint) -> AdmissibilityVerdict:
    """Classify pt against the inequality system of its branch.

    The branch is selected by sign(k), with k = 0 using the k >= 0 branch.
    The verdict lists every constraint of that branch with exact
    satisfied/violated status and the signed slack (positive = satisfied
    with room, zero = active boundary of a nonstrict constraint).
    """
    branch, constraints = branch_constraints(pt.k)
    satisfied, violated, margins = [], [], []
    for con in constraints:
        margins.append((con.label, con.slack(pt)))
        (satisfied if con.holds(pt) else violated).append(con.label)
    return AdmissibilityVerdict(
        admissible=not violated,
        branch=branch,
        satisfied=tuple(satisfied),
        violated=tuple(violated),
        margins=tuple(margins),
    )


@dataclass(frozen=True)
class FeasibilityWindow:
    """Interval of diagonal b = b1 values admitting an admissible point.

    The lower end is exclusive except when the binding bound is one of the
    nonstrict inequalities (lower_inclusive then marks it).  ceiling_b1 is
    the k-independent feasibility ceiling for b1 at (l, p), i.e. the ceiling
    obtained by eliminating k between the constraint pairs that couple k
    and b1; it can exceed the upper end of the fixed-k window.
    """

    lower: Fraction
    upper: Fraction
    lower_inclusive: bool
    upper_inclusive: bool
    nonempty: bool
    ceiling_b1: Fraction | None = None

    def contains(self, beta: Fraction) -> bool:
        if not self.nonempty:
            return False
        above = beta >= self.lower if self.lower_inclusive else beta > self.lower
        below = beta <= self.upper if self.upper_inclusive else beta < self.upper
        return above and below


def b1_feasibility_ceiling(l: RationalLike, p: RationalLike) -> Fraction:
    """Upper bound for b1 over all admissible k at fixed (l, p)."""
    l = as_rational(l)
    p = as_rational(p)
    q = 1 / p
    return min(Fraction(2, 3) * (l + 2) - q / 3, l / 4 + Fraction(3, 4) + q / 4)


def _combine_bounds(candidates, kind):
    # candidates: iterable of (value, inclusive); kind "lower" or "upper".
    best_v, best_incl = None, None
    for v, incl in candidates:
        if best_v is None:
            best_v, best_incl = v, incl
            continue
        better = v > best_v if kind == "lower" else v < best_v
        if better:
            best_v, best_incl = v, incl
        elif v == best_v and not incl:
            best_incl = False  # exclusive dominates at a tie
    return best_v, best_incl


def b_window(
    k: RationalLike, l: RationalLike, p: RationalLike
) -> FeasibilityWindow:
    """Exact diagonal window of b = b1 values making (k, l, p, b, b) admissible.

    Every branch constraint is affine in beta = b = b1, so the window is an
    interval intersected with the type bounds (1/p, 1].  Constraints not
    involving beta that fail make the window empty outright.
    """
    k, l, p = as_rational(k), as_rational(l), as_rational(p)
    if not (1 < p <= 2):
        raise ParamDomainError(f"p must satisfy 1 < p <= 2 (got {p})")
    q = 1 / p
    _, constraints = branch_constraints(k)
    lowers = [(q, False)]
    uppers = [(Fraction(1), True)]
    ceiling = b1_feasibility_ceiling(l, p)
    empty = FeasibilityWindow(q, q, False, False, False, ceiling)
    for con in constraints:
        ck, cl, cq, cb, cb1 = con.coeffs
        cbeta = cb + cb1
        rest = ck * k + cl * l + cq * q + con.const
        if cbeta == 0:
            ok = rest < 0 if con.strict else rest <= 0
            if not ok:
                return empty
        else:
            bound = -rest / cbeta
            if cbeta > 0:
                uppers.append((bound, not con.strict))
            else:
                lowers.append((bound, not con.strict))
    lo, lo_incl = _combine_bounds(lowers, "lower")
    hi, hi_incl = _combine_bounds(uppers, "upper")
    nonempty = lo < hi or (lo == hi and lo_incl and hi_incl)
    return FeasibilityWindow(lo, hi, lo_incl, hi_incl, nonempty, ceiling)


def b_window_2d(
    k: RationalLike, l: RationalLike, p: RationalLike
) -> tuple[FeasibilityWindow, FeasibilityWindow]:
    """Per-variable (b, b1) windows; no branch constraint couples b and b1,
    so the full 2D feasible set is exactly their product."""
    k, l, p = as_rational(k), as_rational(l), as_rational(p)
    if not (1 < p <= 2):
        raise ParamDomainError(f"p must satisfy 1 < p <= 2 (got {p})")
    q = 1 / p
    _, constraints = branch_constraints(k)
    out = []
    for var in ("b", "b1"):
        lowers = [(q, False)]
        uppers = [(Fraction(1), True)]
        empty_hit = False
        for con in constraints:
            ck, cl, cq, cb, cb1 = con.coeffs
            if cb != 0 and cb1 != 0:
                raise AssertionError("unexpected joint (b, b1) constraint")
            cv = cb if var == "b" else cb1
            rest = ck * k + cl * l + cq * q + con.const
            other = cb1 if var == "b" else cb
            if cv == 0:
                if other == 0:
                    ok = rest < 0 if con.strict else rest <= 0
                    if not ok:
                        empty_hit = True
                continue
            bound = -rest / cv
            if cv > 0:
                uppers.append((bound, not con.strict))
            else:
                lowers.append((bound, not con.strict))
        lo, lo_incl = _combine_bounds(lowers, "lower")
        hi, hi_incl = _combine_bounds(uppers, "upper")
        nonempty = (not empty_hit) and (
            lo < hi or (lo == hi and lo_incl and hi_incl)
        )
        ceiling = b1_feasibility_ceiling(l, p) if var == "b1" else None
        out.append(FeasibilityWindow(lo, hi, lo_incl, hi_incl, nonempty, ceiling))
    return out[0], out[1]


@dataclass(frozen=True)
class MinimalK:
    """Infimum of admissible k at fixed (l, p), from the three lower bounds
    for 2k.  attained is True only when the nonstrict bound strictly
    dominates; otherwise the infimum is approached but never reached."""

    k_inf: Fraction
    attained: bool
    bounds: tuple[tuple[str, Fraction], ...]

    @property
    def binding(self) -> tuple[str, ...]:
        top = max(v for _, v in self.bounds)
        return tuple(label for label, v in self.bounds if v == top)


def minimal_k(l: RationalLike, p: RationalLike) -> MinimalK:
    """Max of the three lower bounds for 2k at (l, p), divided by two.

    The two strict bounds come from eliminating b1 against its feasibility
    ceiling; the nonstrict one is the constraint 2k >= l + 1/p' itself.
    Requires l >= -1/p (below that no point is admissible at any k).
    """
    l, p = as_rational(l), as_rational(p)
    if not (1 < p <= 2):
        raise ParamDomainError(f"p must satisfy 1 < p <= 2 (got {p})")
    q = 1 / p
    if l < -q:
        raise ParamDomainError(f"requires l >= -1/p (got l = {l}, -1/p = {-q})")
    bounds = (
        ("2k > 4/(3p)-2(l+2)/3", Fraction(4, 3) * q - Fraction(2, 3) * (l + 2), True),
        ("2k > 3/(4p)-(l+3)/4", Fraction(3, 4) * q - (l + 3) / 4, True),
        ("2k >= l+1-1/p", l + 1 - q, False),
    )
    top = max(v for _, v, _ in bounds)
    strict_top = max(v for _, v, s in bounds if s)
    nonstrict_top = bounds[2][1]
    attained = nonstrict_top == top and nonstrict_top > strict_top
    return MinimalK(
        k_inf=top / 2,
        attained=attained,
        bounds=tuple((label, v) for label, v, _ in bounds),
    )


def scaling_exponents(
    k: RationalLike, l: RationalLike, p: RationalLike
) -> tuple[Fraction, Fraction]:
    """Sobolev scaling exponents (sigma, lambda) = (k, l) - 1/p + 1/2."""
    k, l, p = as_rational(k), as_rational(l), as_rational(p)
    if not (1 < p <= 2):
        raise ParamDomainError(f"p must satisfy 1 < p <= 2 (got {p})")
    q = 1 / p
    half = Fraction(1, 2)
    return k - q + half, l - q + half


@dataclass(frozen=True)
class OptimalParameters:
    p_star: Fraction
    l_star: Fraction
    k_inf: Fraction
    ceiling_b1: Fraction
    sigma: Fraction
    lam: Fraction
    two_k_bounds: tuple[tuple[str, Fraction], ...]
    bounds_coincide: bool


def optimal_parameters() -> OptimalParameters:
    """Minimize the infimum of k over (l, p), with l at its floor -1/p.

    Setting l = -1/p and balancing the first and third lower bounds for 2k
    gives a linear equation for q = 1/p; at the balance point all three
    lower bounds coincide, which the result records as a verification.
    """
    # 4q/3 - 2(2 - q)/3 = 1 - 2q  =>  2q - 4/3 = 1 - 2q  =>  q = 7/12
    q = (Fraction(1) + Fraction(4, 3)) / 4
    p_star = 1 / q
    l_star = -q
    mk = minimal_k(l_star, p_star)
    values = [v for _, v in mk.bounds]
    coincide = len(set(values)) == 1
    sigma, lam = scaling_exponents(mk.k_inf, l_star, p_star)
    return OptimalParameters(
        p_star=p_star,
        l_star=l_star,
        k_inf=mk.k_inf,
        ceiling_b1=b1_feasibility_ceiling(l_star, p_star),
        sigma=sigma,
        lam=lam,
        two_k_bounds=mk.bounds,
        bounds_coincide=coincide,
    )
