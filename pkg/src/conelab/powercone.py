"""The upper (Smyth) powercone of a finite semilattice cone.

Its points are the nonempty convex compact saturated subsets of the cone.
On a finite lattice "compact" is automatic and "saturated" means upward
closed, and every upset is closed under joins and hence convex, so the
points are exactly the nonempty upsets.  They are ordered by reverse
inclusion.  Addition ``Q1 + Q2 = up{x1 + x2}`` turns out to be plain
intersection, so the powercone is again a finite lattice and again a
semilattice cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .cone import (
    DualFunctional,
    Functional,
    SemilatticeCone,
    check_linear,
    is_convex,
)
from .errors import ConelabError, InvariantViolation, NotConvexError, NotUpsetError
from .extrat import ExtRat, scalar
from .poset import FinitePoset, MonotoneMap
from .report import Report

DEFAULT_MAX_SMYTH = 2**16


@dataclass(frozen=True)
class ConvexUpset:
    cone: SemilatticeCone
    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ConelabError("powercone elements are nonempty")
        if not self.cone.lattice.is_upset(members):
            raise NotUpsetError(f"{self.cone.lattice.label(members)} is not upward closed")
        if not is_convex(self.cone, members):
            raise NotConvexError(f"{self.cone.lattice.label(members)} is not convex")

    @property
    def minimal(self) -> frozenset[int]:
        return self.cone.lattice.minimal_elements(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def label(self) -> str:
        return "{" + ",".join(self.cone.lattice.label(self.members)) + "}"

    def __repr__(self) -> str:
        return f"ConvexUpset({self.label()})"


@dataclass(frozen=True, eq=False)
class SmythCone:
    """All points of the powercone of ``base``, in canonical order."""

    base: SemilatticeCone
    elements: tuple[ConvexUpset, ...]

    @cached_property
    def _position(self) -> dict[frozenset[int], int]:
        return {q.members: i for i, q in enumerate(self.elements)}

    def index(self, q: ConvexUpset | Iterable[int]) -> int:
        members = q.members if isinstance(q, ConvexUpset) else frozenset(q)
        try:
            return self._position[members]
        except KeyError:
            raise ConelabError(f"{self.base.lattice.label(members)} is not a powercone point") from None

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def as_cone(self) -> SemilatticeCone:
        """The powercone packaged as a semilattice cone over ``(points, reverse inclusion)``.

        Its derived addition and scaling are checked against the defining
        formulas of :func:`pc_add` and :func:`pc_scale`.
        """
        members = [q.members for q in self.elements]
        lattice = FinitePoset.from_leq(
            [q.label() for q in self.elements], lambda i, j: members[i] >= members[j]
        )
        cone = SemilatticeCone(lattice)
        whole = self.index(self.base.lattice.everything)
        if cone.zero != whole:
            raise InvariantViolation("powercone zero is not the whole cone")
        for i, q1 in enumerate(self.elements):
            for a in (Fraction(0), Fraction(1, 2), Fraction(3)):
                if cone.scale(a, i) != self.index(pc_scale(a, q1)):
                    raise InvariantViolation(f"derived scaling disagrees at {q1!r}, a={a}")
            for j, q2 in enumerate(self.elements):
                if cone.add(i, j) != self.index(pc_add(q1, q2)):
                    raise InvariantViolation(f"derived addition disagrees at {q1!r}, {q2!r}")
        return cone

    @cached_property
    def unit_map(self) -> MonotoneMap:
        """``x -> up x`` as a monotone map from the base lattice to :attr:`as_cone`."""
        lattice = self.base.lattice
        return MonotoneMap(
            lattice, self.as_cone.lattice, tuple(self.index(lattice.up[x]) for x in lattice.elements)
        )


def enumerate_smyth(cone: SemilatticeCone, max_size: int = DEFAULT_MAX_SMYTH) -> SmythCone:
    """Every nonempty convex upset of the cone, each certified convex."""
    cache = cone.__dict__.setdefault("_smyth_cache", {})
    if max_size not in cache:
        upsets = cone.lattice.enumerate_upsets(max_count=max_size + 1)
        points = tuple(ConvexUpset(cone, u) for u in upsets if u)
        cache[max_size] = SmythCone(cone, points)
    return cache[max_size]


def smyth_as_cone(cone: SemilatticeCone, max_size: int = DEFAULT_MAX_SMYTH) -> SemilatticeCone:
    return enumerate_smyth(cone, max_size).as_cone


def pc_add(q1: ConvexUpset, q2: ConvexUpset) -> ConvexUpset:
    """``up{x1 + x2 | x1 in Q1, x2 in Q2}``; equal to ``Q1 & Q2`` on semilattice cones."""
    if q1.cone != q2.cone:
        raise ConelabError("powercone points from different cones")
    cone = q1.cone
    sums = {cone.add(x1, x2) for x1 in q1.members for x2 in q2.members}
    result = cone.lattice.up_closure(sums)
    if result != q1.members & q2.members:
        raise InvariantViolation(f"powercone sum of {q1!r} and {q2!r} is not their intersection")
    return ConvexUpset(cone, result)


def pc_scale(a, q: ConvexUpset) -> ConvexUpset:
    """``up{a x | x in Q}``: the whole cone for ``a = 0``, ``Q`` itself otherwise."""
    cone = q.cone
    a = scalar(a)
    return ConvexUpset(cone, cone.lattice.up_closure({cone.scale(a, x) for x in q.members}))


def box_membership(q: ConvexUpset, u: Iterable[int]) -> bool:
    """Is ``Q`` in the basic upper Vietoris open ``box U = {Q | Q subset of U}``?"""
    u = frozenset(u)
    if not q.cone.lattice.is_upset(u):
        raise NotUpsetError(f"{q.cone.lattice.label(u)} is not open")
    return q.members <= u


def box_basis(smyth: SmythCone) -> list[frozenset[int]]:
    """The open sets ``box U`` as sets of powercone indices, one per open ``U``."""
    return [
        frozenset(i for i, q in enumerate(smyth.elements) if q.members <= u)
        for u in smyth.base.lattice.opens
    ]


def smyth_unit(cone: SemilatticeCone, x: int) -> ConvexUpset:
    return ConvexUpset(cone, cone.lattice.up[x])


@dataclass(frozen=True)
class LiftedFunctional:
    """``Q -> min of L over Q`` for a functional ``L`` on the base cone."""

    smyth: SmythCone
    base: Functional

    def __call__(self, q: ConvexUpset) -> ExtRat:
        return min(self.base(x) for x in q.members)

    @cached_property
    def values(self) -> tuple[ExtRat, ...]:
        return tuple(self(q) for q in self.smyth.elements)


def lift_functional(functional: Functional, smyth: SmythCone | None = None) -> LiftedFunctional:
    return LiftedFunctional(smyth or enumerate_smyth(functional.cone), functional)


def check_lift(functional: Functional, smyth: SmythCone | None = None) -> Report:
    """Monotonicity, additivity, homogeneity, and agreement with ``L`` on principal upsets."""
    lifted = lift_functional(functional, smyth)
    smyth = lifted.smyth
    cone = smyth.base
    report = Report("lift")
    points = smyth.elements
    for q1 in points:
        for a in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3)):
            report.require(
                lifted(pc_scale(a, q1)) == a * lifted(q1), "homogeneous", functional=functional, Q=q1, a=a
            )
        for q2 in points:
            if q1.members >= q2.members:
                report.require(
                    lifted(q1) <= lifted(q2), "monotone", functional=functional, Q1=q1, Q2=q2
                )
            report.require(
                lifted(pc_add(q1, q2)) == lifted(q1) + lifted(q2),
                "additive", functional=functional, Q1=q1, Q2=q2,
            )
    for x in cone.elements:
        report.require(
            lifted(smyth_unit(cone, x)) == functional(x), "lift-after-unit", functional=functional, x=x
        )
    report.absorb(check_linear(smyth.as_cone, lifted.values))
    return report


@dataclass(frozen=True)
class JiaVerdict:
    """Outcome of :func:`jia_check`.

    ``principal`` is set when ``phi`` is additive; otherwise ``certificate``
    holds ``(L1, L2, phi(L1), phi(L2), phi(L1 + L2))`` for a violating pair.
    """

    q: ConvexUpset
    principal: int | None = None
    certificate: tuple | None = None

    @property
    def kind(self) -> str:
        return "principal" if self.principal is not None else "not_linear"


def min_over(q: ConvexUpset, functional: Functional) -> ExtRat:
    return min(functional(x) for x in q.members)


def jia_check(cone: SemilatticeCone, q: ConvexUpset) -> JiaVerdict:
    """Decide whether ``phi(L) = min of L over Q`` is linear on the dual cone.

    Additivity is tested on every pair of dual functionals; their sums stay
    in the dual cone, and homogeneity holds automatically because every dual
    functional takes only the values ``0`` and ``inf``.  When ``phi`` is
    linear the unique minimal element of ``Q`` is returned.
    """
    if q.cone != cone:
        raise ConelabError("powercone point belongs to a different cone")
    dual: tuple[DualFunctional, ...] = cone.dual
    phi = [min_over(q, f) for f in dual]
    for i, f1 in enumerate(dual):
        for j in range(i, len(dual)):
            f2 = dual[j]
            combined = min_over(q, f1 + f2)
            if combined != phi[i] + phi[j]:
                return JiaVerdict(q, certificate=(f1, f2, phi[i], phi[j], combined))
    minimal = q.minimal
    if len(minimal) != 1:
        raise InvariantViolation(f"phi is linear on {q!r} but it has minimal elements {sorted(minimal)}")
    (x,) = minimal
    return JiaVerdict(q, principal=x)
