"""Named lattice families, seeded random structures, and valuation grids.

All randomness flows through ``random.Random(seed)``; the same arguments
always give the same output.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import ConelabError, SizeError
from .extrat import INF, ExtRat
from .poset import FinitePoset, MonotoneMap, canonical_key
from .valuation import Valuation

WEIGHT_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


# -- named families ----------------------------------------------------------


def chain(n: int) -> FinitePoset:
    return FinitePoset.from_covers([str(i) for i in range(n)], [(str(i), str(i + 1)) for i in range(n - 1)])


def antichain(n: int) -> FinitePoset:
    return FinitePoset.from_covers([f"p{i}" for i in range(n)], [])


def diamond(atoms: int = 2) -> FinitePoset:
    """Bottom, ``atoms`` pairwise incomparable middles, top.  ``diamond(2)`` is M2."""
    if atoms == 2:
        middles = ["a", "b"]
    else:
        middles = [f"m{i}" for i in range(atoms)]
    names = ["bot", *middles, "top"]
    covers = [("bot", m) for m in middles] + [(m, "top") for m in middles]
    return FinitePoset.from_covers(names, covers)


def powerset(atoms: int) -> FinitePoset:
    """Subsets of ``{0..atoms-1}`` under inclusion."""
    subsets = sorted(
        (frozenset(c) for r in range(atoms + 1) for c in combinations(range(atoms), r)),
        key=canonical_key,
    )
    names = ["{" + ",".join(map(str, sorted(s))) + "}" for s in subsets]
    return FinitePoset.from_leq(names, lambda i, j: subsets[i] <= subsets[j])


def pentagon() -> FinitePoset:
    """The non-modular lattice N5."""
    return FinitePoset.from_covers(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")],
    )


def C3() -> FinitePoset:
    return chain(3)


def M2() -> FinitePoset:
    return diamond(2)


# -- random structures -------------------------------------------------------


def random_poset(size: int, rng: random.Random, density: float | None = None) -> FinitePoset:
    """Random covers ``i -> j`` for ``i < j``, each with probability ``density``."""
    if density is None:
        density = rng.random()
    names = [f"p{i}" for i in range(size)]
    covers = [(names[i], names[j]) for i in range(size) for j in range(i + 1, size) if rng.random() < density]
    return FinitePoset.from_covers(names, covers)


def dedekind_macneille(poset: FinitePoset) -> FinitePoset:
    """The smallest complete lattice containing ``poset``.

    Its points are the cuts, i.e. the intersections of families of principal
    downsets (the empty family giving the whole poset), ordered by inclusion.
    """
    cuts = {poset.everything} | set(poset.down)
    frontier = list(cuts)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(cuts):
                c = a & b
                if c not in cuts:
                    cuts.add(c)
                    fresh.append(c)
        frontier = fresh
    ordered = sorted(cuts, key=canonical_key)
    return FinitePoset.from_leq([f"x{i}" for i in range(len(ordered))], lambda i, j: ordered[i] <= ordered[j])


def random_lattice(size: int, seed: int, max_attempts: int = 5000) -> FinitePoset:
    """A seeded random lattice with exactly ``size`` elements.

    Draws random posets with random cover density and takes their
    Dedekind-MacNeille completion, rejecting completions of the wrong size.
    """
    if size < 1:
        raise ConelabError("lattices need at least one element")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        k = rng.randint(max(1, size - 2), size)
        lattice = dedekind_macneille(random_poset(k, rng))
        if lattice.size == size:
            return lattice
    raise SizeError(f"no completion of size {size} found in {max_attempts} draws")


def random_valuation(
    poset: FinitePoset, seed: int | random.Random, mass_bound: Fraction | int = 2,
    grid: Sequence[Fraction] = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)),
) -> Valuation:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    allowed = [g for g in grid if g <= mass_bound]
    return Valuation(poset, tuple(rng.choice(allowed) for _ in poset.elements))


def _linear_extension(poset: FinitePoset) -> list[int]:
    return sorted(poset.elements, key=lambda x: (len(poset.down[x]), x))


def random_monotone_map(source: FinitePoset, target: FinitePoset, rng: random.Random) -> MonotoneMap:
    """Assign images in a linear extension, each above all earlier predecessors' images.

    The target needs a join for every set of images, so pass a lattice.
    """
    table = [0] * source.size
    for x in _linear_extension(source):
        allowed = target.everything
        for y in source.down[x] - {x}:
            allowed = allowed & target.up[table[y]]
        if not allowed:
            raise ConelabError("target has no room for a monotone image; use a lattice")
        table[x] = rng.choice(sorted(allowed))
    return MonotoneMap(source, target, tuple(table))


def random_monotone_function(
    poset: FinitePoset, rng: random.Random, inf_probability: float = 0.1
) -> tuple[ExtRat, ...]:
    """A monotone map into the extended rationals, built up along a linear extension."""
    steps = (Fraction(0), Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(5, 2))
    values: list[ExtRat] = [Fraction(0)] * poset.size
    for x in _linear_extension(poset):
        floor = max((values[y] for y in poset.down[x]), default=Fraction(0))
        if floor is INF or rng.random() < inf_probability:
            values[x] = INF
        else:
            values[x] = floor + rng.choice(steps)
    return tuple(values)


# -- corpora -----------------------------------------------------------------


def curated_lattices() -> list[tuple[str, FinitePoset]]:
    items = [(f"chain{n}", chain(n)) for n in range(1, 7)]
    items += [("M2", diamond(2)), ("M3", diamond(3)), ("N5", pentagon())]
    items += [(f"powerset{k}", powerset(k)) for k in range(0, 4)]
    return items


def lattice_corpus(max_size: int = 6, random_count: int = 100, seed: int = 20240601) -> list[tuple[str, FinitePoset]]:
    """Curated families plus ``random_count`` seeded random lattices of size <= ``max_size``.

    The curated powerset of three atoms (8 points) is always included.
    """
    rng = random.Random(seed)
    items = curated_lattices()
    for i in range(random_count):
        size = rng.randint(1, max_size)
        items.append((f"random{i}-n{size}", random_lattice(size, rng.getrandbits(64))))
    return items


def poset_corpus(count: int, max_size: int, seed: int) -> list[FinitePoset]:
    rng = random.Random(seed)
    return [random_poset(rng.randint(1, max_size), rng) for _ in range(count)]


def valuation_grid(poset: FinitePoset, grid: Sequence[Fraction] = WEIGHT_GRID) -> Iterator[Valuation]:
    """Every valuation whose weights all lie in ``grid``."""
    for weights in product(grid, repeat=poset.size):
        yield Valuation(poset, weights)
