"""The default corpus of small simplicial sets and a compact text syntax for naming them."""

from __future__ import annotations

import json
from pathlib import Path

from .combinators import (
    FiniteCategory,
    all_posets,
    boundary,
    chain_poset,
    horn,
    join,
    nerve,
    opposite,
    poset_nerve,
    product,
    std_simplex,
)
from .kernel import SimplicialError, SSet, Simplex, load, nd


def circle() -> SSet:
    """One vertex and one loop."""
    return SSet({"v": 0, "e": 1}, {"e": [nd("v", 0), nd("v", 0)]})


def projective_plane() -> SSet:
    """One vertex, one edge ``a`` and a triangle with boundary ``a, s_0 v, a``; ``H_1 = Z/2``."""
    return SSet(
        {"v": 0, "a": 1, "t": 2},
        {"a": [nd("v", 0), nd("v", 0)], "t": [nd("a", 1), Simplex("v", (0, 0)), nd("a", 1)]},
    )


def free_path_category(length: int = 2) -> FiniteCategory:
    """The free category on ``x0 -> x1 -> ... -> x_length``."""
    objs = [f"x{i}" for i in range(length + 1)]
    arrows = {}
    for i in range(length + 1):
        for j in range(i + 1, length + 1):
            arrows[f"f{i}{j}"] = (objs[i], objs[j])
    comp = {}
    for f, (a, b) in arrows.items():
        for g, (c, d) in arrows.items():
            if b == c:
                comp[(g, f)] = f"f{objs.index(a)}{objs.index(d)}"
    return FiniteCategory(objs, arrows, comp)


def poset_name(elements: list[str], relations: list[tuple[str, str]]) -> str:
    rel = ",".join(f"{a}<{b}" for a, b in relations) or "discrete"
    return f"poset-{len(elements)}[{rel}]"


def default_corpus() -> dict[str, SSet]:
    out: dict[str, SSet] = {}
    for n in range(4):
        out[f"simplex-{n}"] = std_simplex(n)
    for n in range(1, 4):
        out[f"boundary-{n}"] = boundary(n)
    for n in range(1, 4):
        for k in range(n + 1):
            out[f"horn-{n}-{k}"] = horn(n, k)
    out["square"] = product(std_simplex(1), std_simplex(1))
    out["circle"] = circle()
    for size in range(5):
        for els, rels in all_posets(size):
            out[poset_name(els, rels)] = poset_nerve(els, rels)
    out["free-path-2"] = nerve(free_path_category(2))
    return out


def small_corpus() -> dict[str, SSet]:
    """Members with at most 15 nondegenerate simplices."""
    return {k: v for k, v in default_corpus().items() if len(v) <= 15}


def parse_spec(spec: str) -> SSet:
    """Build a simplicial set from a spec such as ``simplex:2``, ``horn:2,1``, ``poset:a<b,a<c`` or a JSON path."""
    if spec.endswith(".json") or Path(spec).is_file():
        obj = load(json.loads(Path(spec).read_text()))
        if not isinstance(obj, SSet):
            raise SimplicialError(f"{spec} holds a map, not a simplicial set")
        return obj
    kind, _, arg = spec.partition(":")
    try:
        if kind == "simplex":
            return std_simplex(int(arg))
        if kind == "boundary":
            return boundary(int(arg))
        if kind == "horn":
            n, k = (int(t) for t in arg.split(","))
            return horn(n, k)
        if kind == "point":
            return std_simplex(0)
        if kind == "circle":
            return circle()
        if kind == "rp2":
            return projective_plane()
        if kind == "chain":
            return poset_nerve(*chain_poset(int(arg)))
        if kind == "poset":
            rels = []
            elems: list[str] = []
            for part in filter(None, arg.split(",")):
                if "<" in part:
                    a, b = part.split("<")
                    rels.append((a, b))
                    new = [a, b]
                else:
                    new = [part]
                elems.extend(e for e in new if e not in elems)
            return poset_nerve(elems, rels)
        if kind == "free-path":
            return nerve(free_path_category(int(arg or 2)))
        if kind == "square":
            return product(std_simplex(1), std_simplex(1))
        if kind == "corpus":
            return default_corpus()[arg]
    except (ValueError, KeyError) as exc:
        raise SimplicialError(f"malformed spec {spec!r}: {exc}") from exc
    raise SimplicialError(f"unknown spec {spec!r}")


def compose_spec(op: str, a: SSet, b: SSet | None = None) -> SSet:
    if op == "join":
        return join(a, b)
    if op == "product":
        return product(a, b)
    if op == "opposite":
        return opposite(a)
    raise SimplicialError(f"unknown operation {op!r}")
