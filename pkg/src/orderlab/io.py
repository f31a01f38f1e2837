"""JSON and DOT serialization for posets and spaces.

Poset files carry {"elements": [...], "leq": [[a, b], ...]} where the
pairs may be any generating relation — loading takes the transitive
closure and re-validates.  Space files carry {"points": [...],
"opens": [[...], ...]} with every open written out as a point list.
Emission is canonical (cover pairs only, sorted), so a save/load
round trip is the identity.
"""

from __future__ import annotations

import json

from . import bits
from .errors import InputError
from .posets import FinPoset, validate_poset
from .spaces import FinSpace, make_space


def poset_to_json(poset: FinPoset) -> dict:
    pairs = sorted(
        (poset.labels[i], poset.labels[j]) for i, j in poset.covers()
    )
    return {
        "elements": list(poset.labels),
        "leq": [list(p) for p in pairs],
    }


def poset_from_json(data) -> FinPoset:
    if not isinstance(data, dict):
        raise InputError("poset document must be a JSON object")
    try:
        elements = data["elements"]
        leq = data["leq"]
    except (KeyError, TypeError):
        raise InputError('poset document needs "elements" and "leq"') from None
    if not isinstance(elements, list) or not all(
        isinstance(e, str) for e in elements
    ):
        raise InputError('"elements" must be a list of strings')
    pairs = []
    for entry in leq:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise InputError('"leq" entries must be [a, b] pairs')
        pairs.append((entry[0], entry[1]))
    return validate_poset(tuple(elements), tuple(pairs))


def space_to_json(space: FinSpace) -> dict:
    return {
        "points": list(space.labels),
        "opens": [list(space.labels_of_mask(u)) for u in space.opens],
    }


def space_from_json(data) -> FinSpace:
    if not isinstance(data, dict):
        raise InputError("space document must be a JSON object")
    try:
        points = data["points"]
        opens = data["opens"]
    except (KeyError, TypeError):
        raise InputError('space document needs "points" and "opens"') from None
    if not isinstance(points, list) or not all(
        isinstance(p, str) for p in points
    ):
        raise InputError('"points" must be a list of strings')
    index = {p: i for i, p in enumerate(points)}
    masks = []
    for u in opens:
        if not isinstance(u, list):
            raise InputError('"opens" entries must be point lists')
        m = 0
        for p in u:
            if p not in index:
                raise InputError(f"open set names unknown point {p!r}")
            m |= 1 << index[p]
        masks.append(m)
    return make_space(tuple(points), tuple(masks))


def _load(path: str, reader):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return reader(data)


def load_poset(path: str) -> FinPoset:
    return _load(path, poset_from_json)


def load_space(path: str) -> FinSpace:
    return _load(path, space_from_json)


# ---------------------------------------------------------------------------
# DOT emission


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_dot(poset: FinPoset, name: str = "poset") -> str:
    """Hasse diagram, lower elements drawn below their covers."""
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=BT;"]
    for lbl in poset.labels:
        lines.append(f"  {_dot_quote(lbl)};")
    for i, j in sorted(poset.covers()):
        lines.append(
            f"  {_dot_quote(poset.labels[i])} -> {_dot_quote(poset.labels[j])};"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def space_dot(space: FinSpace, name: str = "space") -> str:
    """Hasse diagram of the specialization preorder.

    Hyperspace points arrive already labeled by their closed-set
    contents, so the same renderer serves both levels.
    """
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=BT;"]
    for lbl in space.labels:
        lines.append(f"  {_dot_quote(lbl)};")
    n = space.n
    strict = [space.spec_up[i] & ~(1 << i) for i in range(n)]
    for i in range(n):
        for j in bits.indices_of(strict[i]):
            between = strict[i] & space.spec_down[j] & ~(1 << j)
            if not between:
                lines.append(
                    f"  {_dot_quote(space.labels[i])} -> "
                    f"{_dot_quote(space.labels[j])};"
                )
    lines.append("}")
    return "\n".join(lines) + "\n"
