from __future__ import annotations

from dataclasses import dataclass

from scipy.cluster.hierarchy import DisjointSet

# Enumeration bounds. These are engineering choices and are exposed as CLI flags.
DEFAULT_COCONE_BOUND = 10**6
DEFAULT_SIEVE_ARROWS = 16
DEFAULT_GENSIEVE_OBJECTS = 20_000
DEFAULT_PROBE = 4
DEFAULT_DIM = 4


@dataclass(frozen=True)
class Guards:
    cocones: int = DEFAULT_COCONE_BOUND
    sieve_arrows: int = DEFAULT_SIEVE_ARROWS
    gensieve_objects: int = DEFAULT_GENSIEVE_OBJECTS


DEFAULT_GUARDS = Guards()


def canon_key(x):
    """Total order on identifiers: ints, then strings, then tuples (recursively)."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(canon_key(y) for y in x))
    return (3, repr(x))


def canon_sorted(xs):
    return sorted(xs, key=canon_key)


def show(x) -> str:
    """Render an identifier as a string for reports."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(show(y) for y in x) + ")"
    return str(x)


def jsonable(x):
    if isinstance(x, dict):
        return {show(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = canon_sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return show(x)


def partition(elements, pairs):
    """Classes of the equivalence relation generated by ``pairs``.

    Returns a dict element -> representative, where the representative is the
    least element of its class in canonical order.
    """
    ds = DisjointSet(elements)
    for a, b in pairs:
        ds.merge(a, b)
    rep = {}
    for cls in ds.subsets():
        least = min(cls, key=canon_key)
        for e in cls:
            rep[e] = least
    return rep


def connected(nodes, edges) -> bool:
    nodes = list(nodes)
    if not nodes:
        return False
    rep = partition(nodes, edges)
    return len(set(rep.values())) == 1


@dataclass
class Decision:
    """A boolean verdict that carries the evidence behind it."""

    holds: bool
    witness: object = None
    method: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "witness": jsonable(self.witness), "method": self.method}
