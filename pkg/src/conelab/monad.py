"""The valuation monad restricted to finite posets.

Valuations on a finite poset are weight vectors, so a valuation on the
space of valuations is handled as a finite formal sum
``sum(b_j * delta(nu_j))``.  The multiplication integrates ``nu(U)`` against
such a sum, which for a formal sum is ``sum(b_j * nu_j(U))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .cone import SemilatticeCone
from .errors import ConelabError
from .extrat import ExtRat, ext
from .poset import FinitePoset, MonotoneMap
from .report import Report
from .valuation import Valuation, dirac, image_valuation

ZERO = Fraction(0)

COEFFICIENT_GRID = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2))

Inner = Union[Valuation, "NestedValuation"]


@dataclass(frozen=True)
class NestedValuation:
    """``sum(coeff * delta(inner))`` over valuations, or over nested valuations one level down."""

    poset: FinitePoset
    outer: tuple[tuple[ExtRat, Inner], ...]

    def __post_init__(self):
        terms = []
        for coeff, inner in self.outer:
            if inner.poset != self.poset:
                raise ConelabError("inner valuation lives on a different poset")
            terms.append((ext(coeff), inner))
        kinds = {type(inner) for _, inner in terms}
        if len(kinds) > 1:
            raise ConelabError("all inner terms must sit at the same nesting depth")
        object.__setattr__(self, "outer", tuple(terms))

    @property
    def depth(self) -> int:
        if not self.outer:
            return 1
        inner = self.outer[0][1]
        return 1 + (inner.depth if isinstance(inner, NestedValuation) else 0)


def unit(poset: FinitePoset, x: int) -> Valuation:
    return dirac(poset, x)


def outer_unit(inner: Inner) -> NestedValuation:
    """The unit one level up: ``delta(inner)``."""
    return NestedValuation(inner.poset, ((Fraction(1), inner),))


def pushforward(f: MonotoneMap, nu: Valuation) -> Valuation:
    return image_valuation(f, nu)


def map_inner(fn: Callable[[Inner], Inner], phi: NestedValuation) -> NestedValuation:
    """Apply the functor to ``fn``: ``sum(b * delta(nu))`` becomes ``sum(b * delta(fn(nu)))``."""
    terms = tuple((b, fn(inner)) for b, inner in phi.outer)
    poset = terms[0][1].poset if terms else phi.poset
    return NestedValuation(poset, terms)


def inner_units(nu: Valuation) -> NestedValuation:
    """The functor applied to the unit: ``sum(w_x * delta(delta_x))``."""
    return NestedValuation(
        nu.poset, tuple((w, dirac(nu.poset, x)) for x, w in enumerate(nu.weights))
    )


def multiply(phi: NestedValuation) -> Inner:
    """Flatten one level of nesting.

    ``U -> sum(b_j * nu_j(U))`` when the inner terms are valuations; when they
    are nested valuations, the outer coefficient is distributed into them.
    """
    terms = phi.outer
    if terms and isinstance(terms[0][1], NestedValuation):
        flat = tuple((b * c, inner) for b, psi in terms for c, inner in psi.outer)
        return NestedValuation(phi.poset, flat)
    weights: list[ExtRat] = [ZERO] * phi.poset.size
    for b, nu in terms:
        for x, w in enumerate(nu.weights):
            weights[x] = weights[x] + b * w
    return Valuation(phi.poset, tuple(weights))


def combine(c1, phi1: NestedValuation, c2, phi2: NestedValuation) -> NestedValuation:
    """``c1 * phi1 + c2 * phi2`` as formal sums."""
    c1, c2 = ext(c1), ext(c2)
    terms = tuple((c1 * b, nu) for b, nu in phi1.outer) + tuple((c2 * b, nu) for b, nu in phi2.outer)
    return NestedValuation(phi1.poset, terms)


# -- sampling ----------------------------------------------------------------


def sample_valuation(poset: FinitePoset, rng: random.Random, grid: Sequence[Fraction] = COEFFICIENT_GRID) -> Valuation:
    return Valuation(poset, tuple(rng.choice(grid) for _ in poset.elements))


def sample_nested(
    poset: FinitePoset,
    rng: random.Random,
    depth: int = 2,
    max_terms: int = 3,
    grid: Sequence[Fraction] = COEFFICIENT_GRID,
) -> NestedValuation:
    """A random formal sum of the given depth (2 = valuation on valuations)."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        if depth == 2:
            inner: Inner = sample_valuation(poset, rng, grid)
        else:
            inner = sample_nested(poset, rng, depth - 1, max_terms, grid)
        terms.append((rng.choice(grid), inner))
    return NestedValuation(poset, tuple(terms))


# -- law checks --------------------------------------------------------------


def check_monad_laws(
    poset: FinitePoset,
    samples: int = 200,
    seed: int = 0,
    multiply: Callable[[NestedValuation], Inner] = multiply,
) -> Report:
    """Unit and associativity laws on seeded samples, with exact equality.

    * ``multiply(delta(nu)) == nu``
    * ``multiply(sum(w_x * delta(delta_x))) == nu``
    * ``multiply(multiply(Phi)) == multiply(map_inner(multiply, Phi))`` on
      triply nested ``Phi``.

    ``multiply`` can be swapped out to test that corruptions are caught.
    """
    rng = random.Random(seed)
    report = Report("monad-laws")
    for _ in range(samples):
        nu = sample_valuation(poset, rng)
        report.require(multiply(outer_unit(nu)) == nu, "outer-unit", nu=nu)
        report.require(multiply(inner_units(nu)) == nu, "inner-unit", nu=nu)
        big_phi = sample_nested(poset, rng, depth=3)
        lhs = multiply(multiply(big_phi))
        rhs = multiply(map_inner(multiply, big_phi))
        report.require(lhs == rhs, "associativity", Phi=big_phi, lhs=lhs, rhs=rhs)
    report.stats["samples"] = samples
    return report


def algebra_pushforward(beta: Callable[[Valuation], int], phi: NestedValuation) -> Valuation:
    """``sum(b_j * delta(nu_j))`` sent to ``sum(b_j * delta(beta(nu_j)))`` on the base poset."""
    weights: list[ExtRat] = [ZERO] * phi.poset.size
    for b, nu in phi.outer:
        x = beta(nu)
        weights[x] = weights[x] + b
    return Valuation(phi.poset, tuple(weights))


def check_algebra(
    cone: SemilatticeCone,
    beta: Callable[[Valuation], int],
    sample: Sequence[NestedValuation],
) -> Report:
    """Both squares of an algebra for the valuation monad.

    * unit: ``beta(delta_x) == x`` for every ``x``;
    * multiplication: ``beta(multiply(phi)) == beta(algebra_pushforward(beta, phi))``.
    """
    lattice = cone.lattice
    report = Report("algebra-check")
    for x in cone.elements:
        got = beta(dirac(lattice, x))
        report.require(got == x, "unit", x=x, got=got)
    for phi in sample:
        lhs = beta(multiply(phi))
        rhs = beta(algebra_pushforward(beta, phi))
        report.require(lhs == rhs, "multiplication", phi=phi, lhs=lhs, rhs=rhs)
    report.stats["samples"] = len(sample)
    return report
