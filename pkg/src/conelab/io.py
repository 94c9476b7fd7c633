"""JSON file formats.

Poset / cone::

    {"elements": ["bot", "a", "b", "top"],
     "covers": [["bot", "a"], ["bot", "b"], ["a", "top"], ["b", "top"]]}

Valuation (omitted elements weigh 0; values are ``"p/q"``, integers or
``"inf"``)::

    {"poset": "m2.json", "weights": {"a": "1", "b": "3/2", "top": "inf"}}

Valuation table (one entry per open set)::

    {"poset": ..., "table": [{"open": ["a", "top"], "value": "1"}, ...]}

Nested valuation (an ``inner`` may itself carry ``outer`` for deeper
nesting)::

    {"poset": ..., "outer": [{"coeff": "1/2", "inner": {"weights": {"a": "1"}}}]}

``"poset"`` is a path relative to the referencing file, or an inline poset
object; it may be omitted when the command supplies the poset some other way.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cone import DualFunctional, GeneralFunctional
from .errors import ConelabError
from .extrat import INF, Infinity, ext, fmt
from .monad import NestedValuation
from .poset import FinitePoset
from .powercone import ConvexUpset, JiaVerdict
from .valuation import Valuation, ValuationTable


class InputError(ConelabError):
    """A malformed input file; the message names the file and location."""


def _read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def _expect(condition: bool, where: str, message: str) -> None:
    if not condition:
        raise InputError(f"{where}: {message}")


def parse_poset(data: Any, where: str = "<inline>") -> FinitePoset:
    _expect(isinstance(data, dict), where, "poset must be an object with 'elements' and 'covers'")
    elements = data.get("elements")
    covers = data.get("covers", [])
    _expect(isinstance(elements, list), where, "'elements' must be a list")
    _expect(isinstance(covers, list), where, "'covers' must be a list")
    for i, pair in enumerate(covers):
        _expect(isinstance(pair, list) and len(pair) == 2, f"{where}: covers[{i}]", "expected a pair [lower, upper]")
    try:
        return FinitePoset.from_covers([str(e) for e in elements], [tuple(p) for p in covers])
    except ConelabError as exc:
        raise type(exc)(f"{where}: {exc}") from None


def load_poset(source: str | Path | dict, base: Path | None = None) -> FinitePoset:
    if isinstance(source, dict):
        return parse_poset(source)
    path = Path(source)
    if base is not None and not path.is_absolute():
        path = base / path
    return parse_poset(_read_json(path), str(path))


def _resolve_poset(data: dict, where: str, base: Path, poset: FinitePoset | None) -> FinitePoset:
    ref = data.get("poset")
    if ref is None:
        _expect(poset is not None, where, "no 'poset' given and none supplied by the command")
        return poset
    _expect(isinstance(ref, (str, dict)), f"{where}: poset", "expected a path or an inline poset")
    found = load_poset(ref, base) if isinstance(ref, str) else parse_poset(ref, f"{where}: poset")
    if poset is not None:
        _expect(found == poset, f"{where}: poset", "does not match the poset given on the command line")
    return found


def _parse_value(raw: Any, where: str):
    _expect(isinstance(raw, (str, int)) and not isinstance(raw, bool), where, f"expected 'p/q', an integer or 'inf', got {raw!r}")
    try:
        return ext(raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _element(poset: FinitePoset, name: Any, where: str) -> int:
    try:
        return poset.index(name)
    except ConelabError:
        raise InputError(f"{where}: unknown element {name!r}") from None


def parse_weights(data: Any, poset: FinitePoset, where: str) -> Valuation:
    _expect(isinstance(data, dict), where, "'weights' must be an object mapping names to values")
    weights = [Fraction(0)] * poset.size
    for name, raw in data.items():
        weights[_element(poset, name, f"{where}.{name}")] = _parse_value(raw, f"{where}.{name}")
    return Valuation(poset, tuple(weights))


def load_valuation(path: str | Path, poset: FinitePoset | None = None) -> Valuation:
    path = Path(path)
    data = _read_json(path)
    where = str(path)
    _expect(isinstance(data, dict) and "weights" in data, where, "expected an object with 'weights'")
    poset = _resolve_poset(data, where, path.parent, poset)
    return parse_weights(data["weights"], poset, f"{where}: weights")


def load_table(path: str | Path, poset: FinitePoset | None = None) -> ValuationTable:
    path = Path(path)
    data = _read_json(path)
    where = str(path)
    _expect(isinstance(data, dict) and isinstance(data.get("table"), list), where, "expected an object with a 'table' list")
    poset = _resolve_poset(data, where, path.parent, poset)
    values = {}
    for i, entry in enumerate(data["table"]):
        here = f"{where}: table[{i}]"
        _expect(isinstance(entry, dict) and "open" in entry and "value" in entry, here, "expected {'open': [...], 'value': ...}")
        _expect(isinstance(entry["open"], list), here, "'open' must be a list of element names")
        members = frozenset(_element(poset, n, here) for n in entry["open"])
        values[members] = _parse_value(entry["value"], here)
    try:
        return ValuationTable(poset, values)
    except ConelabError as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_nested(data: Any, poset: FinitePoset, where: str) -> NestedValuation:
    _expect(isinstance(data, dict) and isinstance(data.get("outer"), list), where, "expected an object with an 'outer' list")
    terms = []
    for i, entry in enumerate(data["outer"]):
        here = f"{where}.outer[{i}]"
        _expect(isinstance(entry, dict) and "coeff" in entry and "inner" in entry, here, "expected {'coeff': ..., 'inner': ...}")
        coeff = _parse_value(entry["coeff"], f"{here}.coeff")
        _expect(coeff is not INF, f"{here}.coeff", "coefficients must be finite")
        inner = entry["inner"]
        _expect(isinstance(inner, dict), f"{here}.inner", "expected an object")
        if "outer" in inner:
            terms.append((coeff, parse_nested(inner, poset, f"{here}.inner")))
        else:
            _expect("weights" in inner, f"{here}.inner", "expected 'weights' or 'outer'")
            terms.append((coeff, parse_weights(inner["weights"], poset, f"{here}.inner.weights")))
    try:
        return NestedValuation(poset, tuple(terms))
    except ConelabError as exc:
        raise InputError(f"{where}: {exc}") from None


def load_nested(path: str | Path, poset: FinitePoset | None = None) -> NestedValuation:
    path = Path(path)
    data = _read_json(path)
    where = str(path)
    _expect(isinstance(data, dict), where, "expected an object")
    poset = _resolve_poset(data, where, path.parent, poset)
    return parse_nested(data, poset, where)


# -- output --------------------------------------------------------------------


def poset_to_json(poset: FinitePoset) -> dict:
    return {
        "elements": list(poset.names),
        "covers": [[poset.names[x], poset.names[y]] for x, y in poset.covers()],
    }


def valuation_to_json(nu: Valuation) -> dict:
    return {"weights": {name: fmt(w) for name, w in nu.named().items()}}


def nested_to_json(phi: NestedValuation) -> dict:
    return {
        "outer": [
            {
                "coeff": fmt(b),
                "inner": nested_to_json(inner) if isinstance(inner, NestedValuation) else valuation_to_json(inner),
            }
            for b, inner in phi.outer
        ]
    }


def jsonable(obj: Any, poset: FinitePoset | None = None) -> Any:
    """Convert library objects to JSON-ready data.

    With a ``poset`` for context, bare ints and int sets are read as elements
    and rendered by name.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return poset.names[obj] if poset is not None else obj
    if isinstance(obj, (Fraction, Infinity)):
        return fmt(obj)
    if isinstance(obj, (frozenset, set)):
        return poset.label(obj) if poset is not None else sorted(obj)
    if isinstance(obj, Valuation):
        return valuation_to_json(obj)
    if isinstance(obj, NestedValuation):
        return nested_to_json(obj)
    if isinstance(obj, ConvexUpset):
        return obj.cone.lattice.label(obj.members)
    if isinstance(obj, DualFunctional):
        return {"dual": obj.cone.names[obj.anchor]}
    if isinstance(obj, GeneralFunctional):
        return {"table": {obj.cone.names[x]: fmt(v) for x, v in enumerate(obj.values)}}
    if isinstance(obj, JiaVerdict):
        out = {"Q": jsonable(obj.q), "verdict": obj.kind}
        if obj.principal is not None:
            out["point"] = obj.q.cone.names[obj.principal]
        else:
            f1, f2, p1, p2, p12 = obj.certificate
            out["certificate"] = {
                "L1": jsonable(f1), "L2": jsonable(f2),
                "phi_L1": fmt(p1), "phi_L2": fmt(p2), "phi_sum": fmt(p12),
            }
        return out
    if isinstance(obj, FinitePoset):
        return poset_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v, poset) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, poset) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)
