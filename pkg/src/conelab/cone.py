"""Finite semilattice cones.

A finite lattice becomes a cone by taking joins as addition, the bottom as
zero, and letting a positive scalar act as the identity while ``0`` sends
everything to the bottom.  Its dual cone consists of the functionals
``dual(d)(x) = 0 if x <= d else inf``, one per element ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import ConelabError, InvariantViolation, NotLatticeError, NotSeparableError
from .extrat import INF, ExtRat, ext, scalar
from .poset import FinitePoset
from .report import Report
from .valuation import Valuation, dirac, integrate, scale_add

ZERO = Fraction(0)


@dataclass(frozen=True)
class SemilatticeCone:
    lattice: FinitePoset

    def __post_init__(self):
        if not self.lattice.is_lattice():
            raise NotLatticeError(
                "a semilattice cone needs a lattice: every pair must have a join and a meet, "
                "and a least element must exist"
            )

    @property
    def elements(self) -> range:
        return self.lattice.elements

    @property
    def names(self) -> tuple[str, ...]:
        return self.lattice.names

    @property
    def zero(self) -> int:
        return self.lattice.bottom

    def add(self, x: int, y: int) -> int:
        return self.lattice.join(x, y)

    def scale(self, a, x: int) -> int:
        return self.zero if scalar(a) == 0 else x

    def meet(self, x: int, y: int) -> int:
        return self.lattice.meet(x, y)

    def sum(self, xs: Iterable[int]) -> int:
        return self.lattice.join_all(xs)

    @cached_property
    def dual(self) -> tuple[DualFunctional, ...]:
        return tuple(DualFunctional(self, d) for d in self.elements)


def make_cone(poset: FinitePoset) -> SemilatticeCone:
    return SemilatticeCone(poset)


# -- cone axioms -------------------------------------------------------------

SIGN_PATTERNS = [(Fraction(a), Fraction(b)) for a, b in product((0, 1), repeat=2)]


def check_cone_axioms(
    elements: Sequence[int] | SemilatticeCone,
    scalar_samples: Iterable[tuple[object, object]] = (),
    *,
    add: Callable[[int, int], int] | None = None,
    scale: Callable[[object, int], int] | None = None,
    zero: int | None = None,
) -> Report:
    """Check the six laws of a cone action, plus commutative-monoid laws.

    Either pass a :class:`SemilatticeCone`, optionally overriding some of its
    operations, or pass raw ``elements`` with explicit ``add``/``scale``/
    ``zero`` tables.  Scalar pairs are the given samples plus every sign
    pattern in ``{0, 1}^2``.
    """
    if isinstance(elements, SemilatticeCone):
        cone = elements
        add = add or cone.add
        scale = scale or cone.scale
        zero = cone.zero if zero is None else zero
        elements = list(cone.elements)
    elif add is None or scale is None or zero is None:
        raise ConelabError("raw element lists need explicit add, scale and zero")
    elements = list(elements)

    pairs = [(scalar(a), scalar(b)) for a, b in scalar_samples]
    pairs += [p for p in SIGN_PATTERNS if p not in pairs]
    scalars = sorted({a for pair in pairs for a in pair})
    report = Report("cone-check")

    for x in elements:
        report.require(add(x, zero) == x, "x+0=x", x=x)
        report.require(scale(0, x) == zero, "0x=0", x=x)
        report.require(scale(1, x) == x, "1x=x", x=x)
        for y in elements:
            report.require(add(x, y) == add(y, x), "x+y=y+x", x=x, y=y)
            for z in elements:
                report.require(
                    add(add(x, y), z) == add(x, add(y, z)), "(x+y)+z=x+(y+z)", x=x, y=y, z=z
                )
    for a in scalars:
        report.require(scale(a, zero) == zero, "a0=0", a=a)
        for x in elements:
            for y in elements:
                report.require(
                    scale(a, add(x, y)) == add(scale(a, x), scale(a, y)),
                    "a(x+y)=ax+ay", a=a, x=x, y=y,
                )
    for a, b in pairs:
        for x in elements:
            report.require(scale(a * b, x) == scale(a, scale(b, x)), "(ab)x=a(bx)", a=a, b=b, x=x)
            report.require(scale(a + b, x) == add(scale(a, x), scale(b, x)), "(a+b)x=ax+bx", a=a, b=b, x=x)
    return report


def is_convex(cone: SemilatticeCone, subset: Iterable[int]) -> bool:
    """Closure under ``a x + (1 - a) y`` for ``a`` in ``[0, 1]``.

    The action depends only on whether a scalar is zero, so ``a`` in
    ``{0, 1/2, 1}`` covers both endpoints and the whole open interval.
    """
    subset = frozenset(subset)
    for x in subset:
        for y in subset:
            for a in (Fraction(0), Fraction(1, 2), Fraction(1)):
                if cone.add(cone.scale(a, x), cone.scale(1 - a, y)) not in subset:
                    return False
    return True


# -- dual cone ---------------------------------------------------------------


@dataclass(frozen=True)
class GeneralFunctional:
    """A functional on a cone given by its value table."""

    cone: SemilatticeCone
    values: tuple[ExtRat, ...]

    def __call__(self, x: int) -> ExtRat:
        return self.values[x]

    def __add__(self, other) -> GeneralFunctional:
        return add_functionals(self, other)

    def linearity_report(self) -> Report:
        return check_linear(self.cone, self.values)


@dataclass(frozen=True)
class DualFunctional:
    """``x -> 0 if x <= anchor else inf``, the indicator of the complement of ``down anchor`` times inf."""

    cone: SemilatticeCone
    anchor: int

    @cached_property
    def values(self) -> tuple[ExtRat, ...]:
        below = self.cone.lattice.down[self.anchor]
        return tuple(ZERO if x in below else INF for x in self.cone.elements)

    def __call__(self, x: int) -> ExtRat:
        return ZERO if self.cone.lattice.leq(x, self.anchor) else INF

    def __add__(self, other) -> GeneralFunctional:
        return add_functionals(self, other)

    def __repr__(self) -> str:
        return f"Lambda[{self.cone.names[self.anchor]}]"


Functional = GeneralFunctional | DualFunctional


def apply_functional(functional: Functional, x: int) -> ExtRat:
    return functional(x)


def add_functionals(f1: Functional, f2: Functional) -> GeneralFunctional:
    if f1.cone != f2.cone:
        raise ConelabError("functionals live on different cones")
    return GeneralFunctional(f1.cone, tuple(a + b for a, b in zip(f1.values, f2.values)))


def check_linear(cone: SemilatticeCone, values: Sequence[ExtRat]) -> Report:
    """Linearity and lower semicontinuity of a value table.

    Checks zero at the bottom, additivity over joins, homogeneity for the
    scalars ``0, 1/2, 2`` (enough, since the action only sees the sign), and
    monotonicity, which is lower semicontinuity on a finite poset.
    """
    values = tuple(ext(v) for v in values)
    report = Report("linearity")
    report.require(values[cone.zero] == 0, "zero", value=values[cone.zero])
    for x in cone.elements:
        for a in (Fraction(0), Fraction(1, 2), Fraction(2)):
            report.require(values[cone.scale(a, x)] == a * values[x], "homogeneous", a=a, x=x)
        for y in cone.elements:
            report.require(
                values[cone.add(x, y)] == values[x] + values[y], "additive", x=x, y=y
            )
            if cone.lattice.leq(x, y):
                report.require(values[x] <= values[y], "monotone", x=x, y=y)
    return report


def dual_cone_enumerate(cone: SemilatticeCone) -> list[DualFunctional]:
    return list(cone.dual)


def brute_force_dual(cone: SemilatticeCone) -> list[tuple[ExtRat, ...]]:
    """Every ``{0, inf}``-valued table on the cone that is linear.

    Exponential in the cone size; serves as the completeness oracle for
    :func:`dual_cone_enumerate`.
    """
    found = []
    for table in product((ZERO, INF), repeat=cone.lattice.size):
        if check_linear(cone, table).ok:
            found.append(table)
    return found


def as_dual(functional: Functional) -> DualFunctional | None:
    """The ``DualFunctional`` with the same values, if there is one."""
    for candidate in functional.cone.dual:
        if candidate.values == functional.values:
            return candidate
    return None


def linear_separation_witness(cone: SemilatticeCone, x: int, y: int) -> DualFunctional:
    """A functional with ``L(x) <= 1 < L(y)``, available whenever ``y`` is not below ``x``."""
    if cone.lattice.leq(y, x):
        raise NotSeparableError(
            f"{cone.names[y]!r} <= {cone.names[x]!r}: no functional separates them"
        )
    return DualFunctional(cone, x)


# -- barycenters -------------------------------------------------------------


@dataclass(frozen=True)
class BarycenterCheck:
    ok: bool
    certificate: DualFunctional | None = None
    lhs: ExtRat | None = None
    rhs: ExtRat | None = None

    def __bool__(self) -> bool:
        return self.ok


def dual_integrals(cone: SemilatticeCone, nu: Valuation) -> list[ExtRat]:
    """``integral of L dnu`` for every ``L`` in the dual cone, in anchor order."""
    if nu.poset != cone.lattice:
        raise ConelabError("valuation does not live on the cone's lattice")
    return [integrate(functional, nu) for functional in cone.dual]


def is_barycenter(cone: SemilatticeCone, nu: Valuation, x0: int) -> BarycenterCheck:
    """Test ``L(x0) == integral of L dnu`` for every ``L`` in the dual cone."""
    for functional, integral in zip(cone.dual, dual_integrals(cone, nu)):
        if functional(x0) != integral:
            return BarycenterCheck(False, functional, functional(x0), integral)
    return BarycenterCheck(True)


def all_barycenters(cone: SemilatticeCone, nu: Valuation) -> list[int]:
    """Every element passing the definitional test, by exhaustive search."""
    integrals = dual_integrals(cone, nu)
    return [
        x for x in cone.elements
        if all(f(x) == i for f, i in zip(cone.dual, integrals))
    ]


def barycenter_support_sup(cone: SemilatticeCone, nu: Valuation) -> int:
    """Join of the points with positive mass (the bottom for the zero valuation)."""
    if nu.poset != cone.lattice:
        raise ConelabError("valuation does not live on the cone's lattice")
    return cone.sum(nu.positive())


def induced_cone_check(
    cone: SemilatticeCone,
    beta: Callable[[Valuation], int],
    scalars: Iterable[object] = (0, Fraction(1, 2), 1, 3),
) -> Report:
    """Check that ``beta`` induces the cone's own addition and scaling.

    That is, ``beta(d_x + d_y) == x + y`` and ``beta(a d_x) == a x``.
    """
    lattice = cone.lattice
    report = Report("induced-cone")
    points = [dirac(lattice, x) for x in cone.elements]
    for x in cone.elements:
        for y in cone.elements:
            nu = points[x] + points[y]
            got = beta(nu)
            report.require(got == cone.add(x, y), "beta(dx+dy)=x+y", nu=nu, got=got, expected=cone.add(x, y))
        for a in scalars:
            a = scalar(a)
            nu = scale_add(a, points[x], 0, points[x])
            got = beta(nu)
            report.require(got == cone.scale(a, x), "beta(a dx)=a x", nu=nu, got=got, expected=cone.scale(a, x))
    return report


def check_functional_sum_law(cone: SemilatticeCone) -> Report:
    """``dual(d1) + dual(d2) == dual(d1 meet d2)`` for all anchors."""
    report = Report("dual-sum")
    for f1 in cone.dual:
        for f2 in cone.dual:
            total = add_functionals(f1, f2)
            expected = cone.dual[cone.meet(f1.anchor, f2.anchor)]
            report.require(total.values == expected.values, "sum=meet-anchor", d1=f1.anchor, d2=f2.anchor)
    return report


def require_barycenter(cone: SemilatticeCone, nu: Valuation, x0: int) -> None:
    check = is_barycenter(cone, nu, x0)
    if not check:
        raise InvariantViolation(
            f"{cone.names[x0]!r} is not a barycenter of {nu!r}: {check.certificate!r} gives {check.lhs} != {check.rhs}"
        )
