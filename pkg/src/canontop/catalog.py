"""Named small categories used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

from .fincat import FinCategory, discrete, finset_category, monoid_category, poset, terminal_category


def walking_arrow() -> FinCategory:
    return FinCategory(["0", "1"], {"id0": ("0", "0"), "id1": ("1", "1"), "f": ("0", "1")},
                       {"0": "id0", "1": "id1"},
                       {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("f", "id0"): "f", ("id1", "f"): "f"},
                       name="walking arrow")


def commutative_square() -> FinCategory:
    """The poset ``bot < a, b < top``."""
    return poset(["bot", "a", "b", "top"],
                 [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")], name="commutative square")


def _with_identity_laws(objects, ends, extra):
    ids = {x: f"id{x}" for x in objects}
    ends = dict(ends)
    ends.update({i: (x, x) for x, i in ids.items()})
    comp = dict(extra)
    for m, (a, b) in ends.items():
        comp[ids[b], m] = m
        comp[m, ids[a]] = m
    return ends, ids, comp


def parallel_pair() -> FinCategory:
    ends, ids, comp = _with_identity_laws(["A", "B"], {"f": ("A", "B"), "g": ("A", "B")}, {})
    return FinCategory(["A", "B"], ends, ids, comp, name="parallel pair")


def coequalizer_category() -> FinCategory:
    """``A => B -> Q`` with ``q f = q g``."""
    ends, ids, comp = _with_identity_laws(
        ["A", "B", "Q"],
        {"f": ("A", "B"), "g": ("A", "B"), "q": ("B", "Q"), "h": ("A", "Q")},
        {("q", "f"): "h", ("q", "g"): "h"})
    return FinCategory(["A", "B", "Q"], ends, ids, comp, name="coequalizer")


def v_poset() -> FinCategory:
    """Two incomparable points below a top: ``a, b < top``."""
    return poset(["a", "b", "top"], [("a", "top"), ("b", "top")], name="V")


def idempotent_monoid() -> FinCategory:
    return monoid_category(["1", "e"], {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"},
                           "1", name="idempotent")


def small_finsets() -> FinCategory:
    return finset_category([0, 1, 2], name="FinSet{0,1,2}")


def discrete_pair() -> FinCategory:
    return discrete(["x", "y"], name="discrete pair")


def standard_categories():
    """The categories every topology property is checked on."""
    return [terminal_category(), walking_arrow(), commutative_square(), parallel_pair(),
            coequalizer_category(), v_poset(), idempotent_monoid(), discrete_pair(), small_finsets()]


CATEGORIES = {
    "terminal": terminal_category,
    "walking-arrow": walking_arrow,
    "square": commutative_square,
    "parallel-pair": parallel_pair,
    "coequalizer": coequalizer_category,
    "v": v_poset,
    "idempotent": idempotent_monoid,
    "discrete-pair": discrete_pair,
    "finsets": small_finsets,
}
