"""Lifting problems, fibration-class deciders and the explicit anodyne certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

from .combinators import (
    FiberProduct,
    boundary,
    coslice_under,
    delta_simplex,
    horn,
    horn_inclusion,
    boundary_inclusion,
    product,
    pullback,
    Pushout,
    simplex_map,
    slice_over,
    std_simplex,
    subset_id,
    vertex_map,
    vertex_set,
)
from .correspondence import SliceObject
from .kernel import (
    SimplicialError,
    SMap,
    SSet,
    Simplex,
    TruncationError,
    closure,
    compose_maps,
    enumerate_maps,
    inclusion,
    simplex_name,
    subcomplex,
)

CLASS_TAGS = ("inner", "left", "right", "kan", "trivial", "bifibration", "bifibration-map")

HEURISTIC_NOTE = (
    "certification covers generators up to the stated dimension only; "
    "the default cap max(dim X, dim Y) + 2 is a heuristic, not a proven bound"
)


# ---------------------------------------------------------------- problems


@dataclass
class LiftingProblem:
    """A commutative square ``top: A -> X``, ``bottom: B -> Y`` over ``left: A -> B`` and ``right: X -> Y``."""

    left: SMap
    right: SMap
    top: SMap
    bottom: SMap

    def validate(self) -> list[str]:
        problems = []
        if not self.left.is_mono():
            problems.append("left leg is not a monomorphism")
        for k, v in self.top.assignment.items():
            if self.right(v) != self.bottom(self.left.assignment[k]):
                problems.append(f"square does not commute at {k}")
        return problems

    def to_json(self) -> dict[str, Any]:
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "top": self.top.to_json(),
            "bottom": self.bottom.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> LiftingProblem:
        return cls(*(SMap.from_json(data[k]) for k in ("left", "right", "top", "bottom")))


def solve_lift(p: LiftingProblem) -> SMap | None:
    """A diagonal filler ``B -> X`` or ``None`` when none exists (the search is exhaustive)."""
    if not p.left.is_mono():
        raise SimplicialError("left leg must be a monomorphism")
    fixed = {p.left.assignment[k].base: v for k, v in p.top.assignment.items()}
    for phi in enumerate_maps(p.left.target, p.right.source, fixed=fixed, over=(p.bottom, p.right), limit=1):
        return SMap(p.left.target, p.right.source, phi)
    return None


# ---------------------------------------------------------------- classes and verdicts


@dataclass
class FibrationClass:
    """A class tag; bifibration tags carry the projections of the base to ``A`` and ``B``.

    For ``bifibration`` the target of the checked map must be a product ``A x B``
    unless ``to_a``/``to_b`` are given; for ``bifibration-map`` they give the
    structure of the target slice object.
    """

    tag: str
    to_a: SMap | None = None
    to_b: SMap | None = None

    def __post_init__(self) -> None:
        if self.tag not in CLASS_TAGS:
            raise ValueError(f"unknown class {self.tag!r}; expected one of {', '.join(CLASS_TAGS)}")

    def projections(self, Y: SSet) -> tuple[SMap, SMap]:
        if self.to_a is not None and self.to_b is not None:
            return self.to_a, self.to_b
        if isinstance(Y, FiberProduct) and Y.f is None:
            return Y.pr1, Y.pr2
        raise ValueError(f"class {self.tag!r} needs projections of the base to A and B")

    def generators(self, cap: int) -> Iterator[tuple[int, int | None, str | None]]:
        """``(n, k, side)`` with ``k = None`` for boundary inclusions.

        ``side`` is ``"b01"`` when the square only counts if the edge ``{0,1}``
        goes to a degenerate edge of ``B``, ``"a-last"`` for the edge
        ``{n-1,n}`` and ``A``.
        """
        t = self.tag
        if t == "trivial":
            for n in range(cap + 1):
                yield n, None, None
            return
        for n in range(1, cap + 1):
            for k in range(n + 1):
                inner = 0 < k < n
                if t == "inner" and inner:
                    yield n, k, None
                elif t == "left" and k < n:
                    yield n, k, None
                elif t == "right" and k > 0:
                    yield n, k, None
                elif t == "kan":
                    yield n, k, None
                elif t in ("bifibration", "bifibration-map"):
                    if inner:
                        yield n, k, None
                    elif k == 0:
                        yield n, k, "b01"
                    else:
                        yield n, k, "a-last"


@dataclass
class CheckVerdict:
    tag: str
    cap: int
    outcome: str
    witness: LiftingProblem | None = None
    squares: int = 0
    note: str = HEURISTIC_NOTE

    @property
    def certified(self) -> bool:
        return self.outcome == "certified"

    @property
    def label(self) -> str:
        return f"certified-up-to({self.cap})" if self.certified else "refuted"

    def to_json(self, with_witness: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "class": self.tag,
            "cap": self.cap,
            "outcome": self.label,
            "squares": self.squares,
            "note": self.note,
        }
        if with_witness and self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def default_cap(f: SMap) -> int:
    return max(f.source.dim, f.target.dim, 0) + 2


def _check_mark(S: SSet, cap: int) -> None:
    if S.truncated is not None and cap > S.truncated:
        raise TruncationError(f"input is known only up to dimension {S.truncated}, cap {cap} requested")


def _side_ok(Y: SSet, y: Simplex, side: str | None, proj: tuple[SMap, SMap] | None) -> bool:
    if side is None:
        return True
    to_a, to_b = proj
    n = y.dim
    if side == "b01":
        e = to_b.target.act(to_b(y), (0, 1))
    else:
        e = to_a.target.act(to_a(y), (n - 1, n))
    return not e.is_nondegenerate()


def iter_squares(f: SMap, cls: FibrationClass, cap: int) -> Iterator[tuple[LiftingProblem, bool]]:
    """Every counted square with a generator of ``cls`` on the left, with its solvability."""
    X, Y = f.source, f.target
    proj = cls.projections(Y) if cls.tag.startswith("bifibration") else None
    for n, k, side in cls.generators(cap):
        K = boundary(n) if k is None else horn(n, k)
        left = boundary_inclusion(n) if k is None else horn_inclusion(n, k)
        idx = [i for i in range(n + 1) if i != k] if n else []
        face_ids = [subset_id([v for v in range(n + 1) if v != i], n) for i in idx]
        fibre: dict[Simplex, list[Simplex]] = {}
        for x in X.simplices(n):
            fibre.setdefault(f(x), []).append(x)
        for y in Y.simplices(n):
            if not _side_ok(Y, y, side, proj):
                continue
            fillers = {tuple(X.face(x, i) for i in idx) for x in fibre.get(y, ())}
            bottom = simplex_map(Y, y)
            over = SMap(K, Y, {sid: bottom.assignment[sid] for sid in K.ids()})
            for phi in enumerate_maps(K, X, over=(over, f)):
                key = tuple(phi[s] for s in face_ids)
                yield LiftingProblem(left, f, SMap(K, X, phi), bottom), key in fillers


def check_class(f: SMap, cls: FibrationClass | str, cap: int | None = None) -> CheckVerdict:
    """Decide the lifting property of ``f`` against the generators of ``cls`` up to ``cap``."""
    if isinstance(cls, str):
        cls = FibrationClass(cls)
    cap = default_cap(f) if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    _check_mark(f.source, cap)
    _check_mark(f.target, cap)
    count = 0
    for problem, ok in iter_squares(f, cls, cap):
        count += 1
        if not ok:
            return CheckVerdict(cls.tag, cap, "refuted", problem, count)
    return CheckVerdict(cls.tag, cap, "certified", None, count)


def to_point(X: SSet) -> SMap:
    P = std_simplex(0)
    return SMap(X, P, {sid: Simplex("0", (0,) * (X.dimension_of(sid) + 1)) for sid in X.ids()})


# ---------------------------------------------------------------- retraction certificate


def _vertex_values(S: SSet, x: Simplex) -> list[int]:
    # Delta^n ids are vertex lists
    n = S.dim
    vs = vertex_set(x.base, n)
    return [vs[s] for s in x.surj]


def collapse_map(n: int) -> SMap:
    """``Delta^n -> Delta^{n-1}`` identifying the vertices 0 and 1."""
    values = [0] + list(range(n))
    D = std_simplex(n)
    return SMap(D, std_simplex(n - 1), {sid: delta_simplex([values[v] for v in vertex_set(sid, n)], n - 1) for sid in D.ids()})


def poset_product_map(P: FiberProduct, target_dim: int, rule) -> SMap:
    """The map ``Delta^n x Delta^1 -> Delta^m`` induced by a map of vertex pairs."""
    A, B = P.left, P.right
    out = {}
    for sid in P.ids():
        x, y = P.key(sid)
        xs, ys = _vertex_values(A, x), _vertex_values(B, y)
        vals = [rule(m, e) for m, e in zip(xs, ys)]
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise SimplicialError(f"vertex rule is not monotone on {sid}")
        out[sid] = delta_simplex(vals, target_dim)
    return SMap(P, std_simplex(target_dim), out)


@dataclass
class RetractionReport:
    n: int
    r_simplicial: bool
    r_after_j_identity: bool
    top_row: bool
    bottom_row: bool
    over_base: bool
    side_conditions: dict[int, bool]
    generator_side_condition: bool

    @property
    def ok(self) -> bool:
        return (
            self.r_simplicial
            and self.r_after_j_identity
            and self.top_row
            and self.bottom_row
            and self.over_base
            and all(self.side_conditions.values())
            and self.generator_side_condition
        )


def _retraction_rule(m: int, e: int) -> int:
    if e == 0 and m == 1:
        return 0
    return m


def verify_retraction_r(n: int) -> RetractionReport:
    """Check that ``j`` and ``r`` exhibit ``Lambda^n_0 <= Delta^n`` as a retract of
    ``Lambda^n_0 x Delta^1 u Delta^n x {0} <= Delta^n x Delta^1`` over ``A x B``.

    The structure is ``(id, g)`` with ``A = Delta^n`` and ``g`` the collapse of
    the edge ``{0,1}`` onto ``B = Delta^{n-1}``, so ``g`` is degenerate on that edge.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    D, I = std_simplex(n), std_simplex(1)
    P = product(D, I)
    H = horn(n, 0)
    try:
        r = poset_product_map(P, n, _retraction_rule)
        r_ok = r.is_valid()
    except SimplicialError:
        return RetractionReport(n, False, False, False, False, False, {}, False)
    ones = SMap(D, I, {sid: Simplex("1", (0,) * (D.dimension_of(sid) + 1)) for sid in D.ids()})
    j = P.mediate(SMap.identity(D), ones)
    rj = compose_maps(r, j).same_as(SMap.identity(D))

    def in_sub(sid: str) -> bool:
        x, y = P.key(sid)
        return x.base in H or y.base == "0"

    M = subcomplex(P, [s for s in P.ids() if in_sub(s)])
    top = all(j.assignment[s].base in M for s in H.ids()) and all(r.assignment[s].base in H for s in M.ids())
    bottom = j.is_mono() and rj

    g = collapse_map(n)
    AB = product(D, std_simplex(n - 1))
    s = AB.mediate(SMap.identity(D), g)
    structure = compose_maps(s, r)
    over = compose_maps(structure, j).same_as(s)
    gr = compose_maps(g, r)
    sides = {}
    for i in range(n + 1):
        edge = P.locate(delta_simplex([i, i], n), delta_simplex([0, 1], 1))
        sides[i] = not gr(edge).is_nondegenerate()
    gen_side = not g(delta_simplex([0, 1], n)).is_nondegenerate()
    return RetractionReport(n, r_ok, rj, top, bottom, over, sides, gen_side)


# ---------------------------------------------------------------- standard filtration


@dataclass
class FiltrationStep:
    horn_index: int
    chain: tuple[tuple[int, int], ...]
    kind: str
    attaching_lands: bool
    missing_face_new: bool
    pushout_iso: bool
    side_condition: bool

    @property
    def ok(self) -> bool:
        return self.attaching_lands and self.missing_face_new and self.pushout_iso and self.side_condition


@dataclass
class FiltrationReport:
    n: int
    steps: list[FiltrationStep] = field(default_factory=list)
    exhausts: bool = False

    @property
    def final_index(self) -> int | None:
        return self.steps[-1].horn_index if self.steps else None

    @property
    def final_chain(self) -> tuple[tuple[int, int], ...] | None:
        return self.steps[-1].chain if self.steps else None

    @property
    def ok(self) -> bool:
        n = self.n
        expected = tuple([(0, 0)] + [(m, 1) for m in range(n + 1)])
        return (
            self.exhausts
            and len(self.steps) == n + 1
            and all(s.ok for s in self.steps)
            and self.final_index == 0
            and self.final_chain == expected
        )


def chain_simplex(P: FiberProduct, n: int, j: int) -> tuple[Simplex, tuple[tuple[int, int], ...]]:
    """The chain ``(0,0) .. (j,0), (j,1) .. (n,1)`` of ``[n] x [1]``."""
    xs = list(range(j + 1)) + list(range(j, n + 1))
    ys = [0] * (j + 1) + [1] * (n - j + 1)
    return P.locate(delta_simplex(xs, n), delta_simplex(ys, 1)), tuple(zip(xs, ys))


def verify_filtration(n: int) -> FiltrationReport:
    """Attach the chains of ``Delta^n x Delta^1`` to ``dDelta^n x Delta^1 u Delta^n x {0}`` one horn at a time.

    The structure map is ``(pr, g r)`` with ``g`` the collapse of ``{0,1}`` and
    ``r`` the retraction, so every edge ``{i} x Delta^1`` goes to a degenerate
    edge of ``B``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    D, I = std_simplex(n), std_simplex(1)
    P = product(D, I)
    gr = compose_maps(collapse_map(n), poset_product_map(P, n, _retraction_rule))
    current = {
        s for s in P.ids() if P.key(s)[0].base_dim < n or P.key(s)[1].base == "0"
    }
    report = FiltrationReport(n)
    for j in range(n, -1, -1):
        X_i = subcomplex(P, current)
        c, chain = chain_simplex(P, n, j)
        attach_ids = closure(P, [c.base]) | current
        X_next = subcomplex(P, attach_ids)
        cmap = simplex_map(P, c)
        H = horn(n + 1, j)
        lands = all(cmap.assignment[s].base in current for s in H.ids())
        missing = cmap.assignment[subset_id([v for v in range(n + 2) if v != j], n + 1)]
        new = missing.base not in current and missing.is_nondegenerate()
        iso = False
        if lands:
            attach = SMap(H, X_i, {s: cmap.assignment[s] for s in H.ids()})
            po = Pushout(horn_inclusion(n + 1, j), attach)
            med = po.mediate(SMap(std_simplex(n + 1), X_next, cmap.assignment), inclusion(X_i, X_next))
            iso = med.is_valid() and med.is_iso()
        if 0 < j < n + 1:
            kind, side = "inner", True
        else:
            kind = "left, degenerate edge"
            side = not gr(P.act(c, (0, 1))).is_nondegenerate()
        report.steps.append(FiltrationStep(j, chain, kind, lands, new, iso, side))
        current = attach_ids
    report.exhausts = current == set(P.ids())
    return report


# ---------------------------------------------------------------- fibers and probes


def vertex_pairs(base: FiberProduct) -> list[str]:
    return base.nondegenerate(0)


@dataclass
class FiberRow:
    vertex: str
    counts: list[int]
    verdict: CheckVerdict


def fiber(X: SliceObject, v: str) -> FiberProduct:
    return pullback(X.structure, vertex_map(X.base, v))


def fiber_check(X: SliceObject, cap: int) -> list[FiberRow]:
    """Kan check of the fiber over every vertex of the base, up to ``cap - 1``."""
    rows = []
    for v in vertex_pairs(X.base):
        F = fiber(X, v)
        rows.append(FiberRow(v, F.counts(), check_class(F.pr2, "kan", max(cap - 1, 1))))
    return rows


def slice_product(X: SliceObject, a: str, b: str) -> SSet:
    """``A_{/a} x_A X x_B B_{b/}`` for ``X`` over a product ``A x B``."""
    base = X.base
    to_a = compose_maps(base.pr1, X.structure)
    to_b = compose_maps(base.pr2, X.structure)
    _, pa = slice_over(base.left, a)
    _, qb = coslice_under(base.right, b)
    Q = pullback(pa, to_a)
    return pullback(compose_maps(to_b, Q.pr2), qb)


@dataclass
class ProbeRow:
    a: str
    b: str
    kind: str
    source: Any
    target: Any

    @property
    def consistent(self) -> bool:
        return self.source == self.target


@dataclass
class ProbeReport:
    rows: list[ProbeRow]

    @property
    def consistent(self) -> bool:
        return all(r.consistent for r in self.rows)

    def mismatches(self) -> list[ProbeRow]:
        return [r for r in self.rows if not r.consistent]


def equivalence_probe(
    f: SMap, source: SliceObject, target: SliceObject, cap: int | None = None
) -> ProbeReport:
    """Homology of the two-sided slice products of ``source`` and ``target`` at every vertex pair.

    Equal homology is only a necessary condition for an equivalence.  When
    ``cap`` is given and both sides certify as bifibrations up to it, the
    homology of pointwise fibers is compared as well.
    """
    from .homology import homology

    if not f.target is target.total and not f.target.same_as(target.total):
        raise SimplicialError("map does not land in the target slice object")
    base = source.base
    rows = []
    for a in base.left.nondegenerate(0):
        for b in base.right.nondegenerate(0):
            hs = homology(slice_product(source, a, b))
            ht = homology(slice_product(target, a, b))
            rows.append(ProbeRow(a, b, "slice", hs, ht))
    if cap is not None:
        both = all(check_class(S.structure, "bifibration", cap).certified for S in (source, target))
        if both:
            for v in vertex_pairs(base):
                a, b = (simplex_name(t) for t in base.key(v))
                rows.append(ProbeRow(a, b, "fiber", homology(fiber(source, v)), homology(fiber(target, v))))
    return ProbeReport(rows)
