"""Continuous valuations on finite posets.

On a finite poset every continuous valuation is simple: it is the sum of
its point masses, ``nu(U) = sum(weights[x] for x in U)``.  :class:`Valuation`
stores those weights.  :class:`ValuationTable` is the other view, a value
for every open set, and :func:`table_to_weights` converts back by Möbius
inversion over principal upsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    ConelabError,
    InfiniteValueError,
    NegativeWeightError,
    NotModularError,
    NotMonotoneError,
    NotUpsetError,
)
from .extrat import INF, ExtRat, ext, is_finite, scalar
from .poset import FinitePoset, MonotoneMap
from .report import Report

ZERO = Fraction(0)


@dataclass(frozen=True)
class Valuation:
    poset: FinitePoset
    weights: tuple[ExtRat, ...]

    def __post_init__(self):
        if len(self.weights) != self.poset.size:
            raise ConelabError("one weight per element is required")
        object.__setattr__(self, "weights", tuple(ext(w) for w in self.weights))

    @classmethod
    def zero(cls, poset: FinitePoset) -> Valuation:
        return cls(poset, (ZERO,) * poset.size)

    @classmethod
    def from_masses(cls, poset: FinitePoset, masses: Mapping[int, object]) -> Valuation:
        """Build ``sum(a * delta_x)`` from ``{x: a}``; repeated points add up."""
        weights = [ZERO] * poset.size
        for x, a in masses.items():
            weights[x] = weights[x] + ext(a)
        return cls(poset, tuple(weights))

    def __call__(self, subset: Iterable[int]) -> ExtRat:
        return evaluate(self, subset)

    def __add__(self, other: Valuation) -> Valuation:
        return scale_add(1, self, 1, other)

    def __rmul__(self, a) -> Valuation:
        return scale_add(a, self, 0, self)

    @property
    def mass(self) -> ExtRat:
        return sum(self.weights, ZERO)

    def positive(self) -> frozenset[int]:
        """Elements carrying nonzero weight."""
        return frozenset(x for x, w in enumerate(self.weights) if w > 0)

    def named(self) -> dict[str, ExtRat]:
        return {self.poset.names[x]: w for x, w in enumerate(self.weights) if w != 0}

    def __repr__(self) -> str:
        terms = " + ".join(f"{w}*d[{self.poset.names[x]}]" for x, w in enumerate(self.weights) if w != 0)
        return f"Valuation({terms or '0'})"


@dataclass(frozen=True)
class ValuationTable:
    """A set function given on every open set (upset) of ``poset``."""

    poset: FinitePoset
    values: Mapping[frozenset[int], ExtRat]

    def __post_init__(self):
        values = {frozenset(u): ext(v) for u, v in self.values.items()}
        missing = [u for u in self.poset.opens if u not in values]
        if missing:
            raise ConelabError(f"table has no value for open set {self.poset.label(missing[0])}")
        extra = [u for u in values if not self.poset.is_upset(u)]
        if extra:
            raise NotUpsetError(f"table key {self.poset.label(extra[0])} is not an upset")
        object.__setattr__(self, "values", values)

    def __call__(self, subset: Iterable[int]) -> ExtRat:
        return self.values[frozenset(subset)]


def dirac(poset: FinitePoset, x: int) -> Valuation:
    weights = [ZERO] * poset.size
    weights[x] = Fraction(1)
    return Valuation(poset, tuple(weights))


def scale_add(c1, nu1: Valuation, c2, nu2: Valuation) -> Valuation:
    """``c1 * nu1 + c2 * nu2`` with finite nonnegative scalars."""
    if nu1.poset != nu2.poset:
        raise ConelabError("valuations live on different posets")
    c1, c2 = scalar(c1), scalar(c2)
    return Valuation(nu1.poset, tuple(c1 * a + c2 * b for a, b in zip(nu1.weights, nu2.weights)))


def evaluate(nu: Valuation, subset: Iterable[int]) -> ExtRat:
    subset = frozenset(subset)
    if not nu.poset.is_upset(subset):
        raise NotUpsetError(f"{nu.poset.label(subset)} is not an open (upward-closed) set")
    return sum((nu.weights[x] for x in subset), ZERO)


def valuation_table(nu: Valuation) -> ValuationTable:
    return ValuationTable(nu.poset, {u: evaluate(nu, u) for u in nu.poset.opens})


def table_to_weights(table: ValuationTable) -> Valuation:
    """Recover point masses by Möbius inversion.

    The weight of ``x`` is ``t(up x) - t(up x minus {x})``; both arguments are
    upsets.  Tables with an infinite value are rejected because the
    subtraction is undefined there.
    """
    poset = table.poset
    if any(not is_finite(v) for v in table.values.values()):
        raise InfiniteValueError("Möbius inversion is undefined on tables with infinite values")
    weights = []
    for x in poset.elements:
        principal = poset.up[x]
        a = table(principal) - table(principal - {x})
        if a < 0:
            raise NegativeWeightError(
                f"inversion gives weight {a} at {poset.names[x]!r}; the table is not monotone and modular"
            )
        weights.append(a)
    nu = Valuation(poset, tuple(weights))
    for u in poset.opens:
        if evaluate(nu, u) != table(u):
            raise NotModularError(
                f"table is not induced by point masses; it disagrees at {poset.label(u)}"
            )
    return nu


def check_valuation(table: ValuationTable) -> Report:
    """Strictness, monotonicity and modularity over all pairs of opens."""
    poset = table.poset
    report = Report("valuation-check")
    opens = poset.opens
    empty = frozenset()
    report.checked += 1
    if table(empty) != 0:
        report.fail("strictness", open=empty, value=table(empty))
    for i, u in enumerate(opens):
        for v in opens[i:]:
            report.checked += 1
            if u <= v and not table(u) <= table(v):
                report.fail("monotonicity", U=u, V=v, nu_U=table(u), nu_V=table(v))
            elif v <= u and not table(v) <= table(u):
                report.fail("monotonicity", U=v, V=u, nu_U=table(v), nu_V=table(u))
            lhs = table(u | v) + table(u & v)
            rhs = table(u) + table(v)
            if lhs != rhs:
                report.fail("modularity", U=u, V=v, union_plus_meet=lhs, sum=rhs)
    return report


def _as_function(poset: FinitePoset, h) -> tuple[ExtRat, ...]:
    if callable(h):
        values = tuple(ext(h(x)) for x in poset.elements)
    elif isinstance(h, Mapping):
        values = tuple(ext(h.get(x, 0)) for x in poset.elements)
    else:
        values = tuple(ext(v) for v in h)
    if len(values) != poset.size:
        raise ConelabError("integrand must assign a value to every element")
    for x in poset.elements:
        for y in poset.up[x]:
            if not values[x] <= values[y]:
                raise NotMonotoneError(
                    f"integrand decreases from {poset.names[x]!r} to {poset.names[y]!r}"
                )
    return values


def integrate(h, nu: Valuation) -> ExtRat:
    """Integral of a monotone ``h`` (sequence, mapping or callable) against ``nu``.

    Monotone maps into the extended reals are exactly the lower
    semicontinuous ones on a finite poset.
    """
    values = _as_function(nu.poset, h)
    return sum((w * v for w, v in zip(nu.weights, values)), ZERO)


def layer_cake_integral(h, nu: Valuation) -> ExtRat:
    """The same integral computed from level sets only.

    Sums ``(t_i - t_{i-1}) * nu(h > t_{i-1})`` over the distinct finite values
    ``0 = t_0 < t_1 < ...`` of ``h``, plus ``inf * nu(h = inf)``.  Each level
    set is an upset because ``h`` is monotone.  Used as an independent check
    on :func:`integrate`.
    """
    values = _as_function(nu.poset, h)
    finite = sorted({v for v in values if is_finite(v)} | {ZERO})
    total: ExtRat = ZERO
    for lo, hi in zip(finite, finite[1:]):
        level = frozenset(x for x, v in enumerate(values) if v > lo)
        total = total + (hi - lo) * evaluate(nu, level)
    top = frozenset(x for x, v in enumerate(values) if v is INF)
    total = total + INF * evaluate(nu, top)
    return total


def image_valuation(f: MonotoneMap, nu: Valuation) -> Valuation:
    """Pushforward ``f[nu](V) = nu(f^-1(V))``."""
    if f.source != nu.poset:
        raise ConelabError("map source is not the valuation's poset")
    weights: list[ExtRat] = [ZERO] * f.target.size
    for x, w in enumerate(nu.weights):
        weights[f(x)] = weights[f(x)] + w
    return Valuation(f.target, tuple(weights))


def stochastic_leq(mu: Valuation, nu: Valuation) -> bool:
    return stochastic_witness(mu, nu) is None


def stochastic_witness(mu: Valuation, nu: Valuation) -> frozenset[int] | None:
    """An open set ``U`` with ``mu(U) > nu(U)``, or ``None`` if ``mu <= nu``."""
    if mu.poset != nu.poset:
        raise ConelabError("valuations live on different posets")
    for u in mu.poset.opens:
        if not evaluate(mu, u) <= evaluate(nu, u):
            return u
    return None


def in_subbasic_open(nu: Valuation, subset: Iterable[int], r) -> bool:
    """Membership of ``nu`` in the weak-topology subbasic open ``[U > r]``."""
    r = scalar(r)
    return evaluate(nu, subset) > r


def in_qgeq(nu: Valuation, q: Iterable[int], r) -> bool:
    """Membership in ``[Q >= r]``: ``nu(U) >= r`` for all opens ``U`` containing ``Q``.

    In a finite poset the upset ``Q`` is its own smallest open
    neighbourhood, so only ``nu(Q)`` needs checking.
    """
    q = frozenset(q)
    if not q:
        raise ConelabError("[Q >= r] needs a nonempty Q")
    return evaluate(nu, q) >= ext(r)


def support(nu: Valuation) -> frozenset[int]:
    """Complement of the largest null open set, i.e. the downset of the positive points."""
    return nu.poset.down_closure(nu.positive())


def support_by_null_opens(nu: Valuation) -> frozenset[int]:
    """Support computed literally from the definition, by enumerating opens."""
    largest = frozenset()
    for u in nu.poset.opens:
        if evaluate(nu, u) == 0:
            largest = largest | u
    return nu.poset.everything - largest

