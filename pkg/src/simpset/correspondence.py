"""Correspondences from ``A`` to ``B``: simplicial sets over ``Delta^1`` with fibers ``B`` (over 0) and ``A`` (over 1)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Mapping

from .combinators import (
    FiberProduct,
    JoinSSet,
    Pushout,
    join,
    join_structure,
    product,
    product_map,
    simplex_morphism,
    std_simplex,
)
from .kernel import (
    Op,
    SimplicialError,
    SMap,
    SSet,
    Simplex,
    codegeneracy,
    coface,
    compose,
    compose_maps,
    enumerate_maps,
    identity,
    inclusion,
    nd,
    precompose,
    section,
    simplex_name,
    subcomplex,
    surj_from_set,
)


@dataclass
class SliceObject:
    """A simplicial set together with a map to a fixed base."""

    total: SSet
    structure: SMap

    @property
    def base(self) -> SSet:
        return self.structure.target

    def validate(self) -> list[str]:
        return self.structure.validate()


@dataclass
class Correspondence:
    """``structure: total -> Delta^1`` with fiber inclusions of ``B`` over 0 and ``A`` over 1."""

    total: SSet
    structure: SMap
    A: SSet
    B: SSet
    fiber_a: SMap
    fiber_b: SMap

    @cached_property
    def _back_a(self) -> dict[str, str]:
        return {v.base: k for k, v in self.fiber_a.assignment.items()}

    @cached_property
    def _back_b(self) -> dict[str, str]:
        return {v.base: k for k, v in self.fiber_b.assignment.items()}

    def to_a(self, x: Simplex) -> Simplex:
        """The simplex of ``A`` corresponding to a simplex of the fiber over 1."""
        return Simplex(self._back_a[x.base], x.surj)

    def to_b(self, x: Simplex) -> Simplex:
        return Simplex(self._back_b[x.base], x.surj)

    def side(self, x: Simplex) -> str:
        """``"B"``, ``"A"`` or ``"mixed"`` according to where ``x`` lies over ``Delta^1``."""
        s = self.structure.assignment[x.base]
        if s.base == "0":
            return "B"
        if s.base == "1":
            return "A"
        return "mixed"

    def split_point(self, x: Simplex) -> int:
        """For a mixed simplex, the last vertex lying over 0."""
        return self.structure(x).surj.count(0) - 1

    def validate(self) -> list[str]:
        problems = self.structure.validate() + self.fiber_a.validate() + self.fiber_b.validate()
        if problems:
            return problems
        if not (self.fiber_a.is_mono() and self.fiber_b.is_mono()):
            return ["fiber inclusions are not monomorphisms"]
        over = {"0": set(), "1": set()}
        for sid, v in self.structure.assignment.items():
            if v.base in over:
                over[v.base].add(sid)
        if over["0"] != self.fiber_b.image():
            problems.append("fiber over 0 is not the image of B")
        if over["1"] != self.fiber_a.image():
            problems.append("fiber over 1 is not the image of A")
        return problems

    def as_slice(self) -> SliceObject:
        """``i(X)``: the total space over ``B * A``."""
        J = corr_terminal(self.A, self.B).total
        return SliceObject(self.total, terminal_map(self, J))


def fiber_ids(p: SMap, vertex: str) -> list[str]:
    return [sid for sid, v in p.assignment.items() if v.base == vertex]


def correspondence_from_map(p: SMap) -> Correspondence:
    """Read a map to ``Delta^1`` as a correspondence between its fibers (as subcomplexes)."""
    X = p.source
    B = subcomplex(X, fiber_ids(p, "0"))
    A = subcomplex(X, fiber_ids(p, "1"))
    return Correspondence(X, p, A, B, inclusion(A, X), inclusion(B, X))


def corr_terminal(A: SSet, B: SSet) -> Correspondence:
    """``B * A`` with its canonical map to ``Delta^1``."""
    J = join(B, A)
    return Correspondence(
        J,
        join_structure(J),
        A,
        B,
        SMap(A, J, {a: nd(J.right_id(a), A.dimension_of(a)) for a in A.ids()}),
        SMap(B, J, {b: nd(J.left_id(b), B.dimension_of(b)) for b in B.ids()}),
    )


def corr_initial(A: SSet, B: SSet, J: JoinSSet | None = None) -> Correspondence:
    """``B u A`` over ``{0, 1}``, as the non-mixed part of ``B * A`` (same ids)."""
    J = J if J is not None else join(B, A)
    total = subcomplex(J, [s for s in J.ids() if J.kind(s) != "M"])
    return Correspondence(
        total,
        SMap(total, std_simplex(1), {s: v for s, v in join_structure(J).assignment.items() if s in total}),
        A,
        B,
        SMap(A, total, {a: nd(J.right_id(a), A.dimension_of(a)) for a in A.ids()}),
        SMap(B, total, {b: nd(J.left_id(b), B.dimension_of(b)) for b in B.ids()}),
    )


def initial_inclusion(A: SSet, B: SSet) -> SMap:
    T = corr_terminal(A, B)
    I = corr_initial(A, B, T.total)
    return inclusion(I.total, T.total)


def terminal_map(X: Correspondence, J: JoinSSet | None = None) -> SMap:
    """The unique map of correspondences ``X -> B * A``."""
    J = J if J is not None else join(X.B, X.A)
    out = {}
    for sid in X.total.ids():
        x = X.total.simplex(sid)
        side = X.side(x)
        if side == "B":
            out[sid] = J.locate(X.to_b(x), None)
        elif side == "A":
            out[sid] = J.locate(None, X.to_a(x))
        else:
            n = x.dim
            k = X.split_point(x)
            b = X.to_b(X.total.act(x, tuple(range(k + 1))))
            a = X.to_a(X.total.act(x, tuple(range(k + 1, n + 1))))
            out[sid] = J.locate(b, a)
    return SMap(X.total, J, out)


def corr_maps(X: Correspondence, Y: Correspondence, limit: int | None = None) -> Iterator[SMap]:
    """Maps of correspondences: over ``Delta^1`` and the identity on both fibers."""
    fixed = {}
    for a, v in X.fiber_a.assignment.items():
        fixed[v.base] = Y.fiber_a.assignment[a]
    for b, v in X.fiber_b.assignment.items():
        fixed[v.base] = Y.fiber_b.assignment[b]
    for phi in enumerate_maps(X.total, Y.total, fixed=fixed, over=(X.structure, Y.structure), limit=limit):
        yield SMap(X.total, Y.total, phi)


def count_corr_maps(X: Correspondence, Y: Correspondence) -> int:
    return sum(1 for _ in corr_maps(X, Y))


def slice_maps(X: SliceObject, Y: SliceObject, limit: int | None = None) -> Iterator[SMap]:
    for phi in enumerate_maps(X.total, Y.total, over=(X.structure, Y.structure), limit=limit):
        yield SMap(X.total, Y.total, phi)


def count_slice_maps(X: SliceObject, Y: SliceObject) -> int:
    return sum(1 for _ in slice_maps(X, Y))


def corr_iso(X: Correspondence, Y: Correspondence) -> SMap | None:
    """An isomorphism of correspondences (fixing ``A`` and ``B`` pointwise), if any."""
    from .combinators import iso_search

    fixed = {}
    for a, v in X.fiber_a.assignment.items():
        fixed[v.base] = Y.fiber_a.assignment[a].base
    for b, v in X.fiber_b.assignment.items():
        fixed[v.base] = Y.fiber_b.assignment[b].base
    return iso_search(X.total, Y.total, fixed=fixed, over=(X.structure, Y.structure))


# ---------------------------------------------------------------- reflector


def _non_mixed(S: SliceObject) -> list[str]:
    J = S.base
    return [sid for sid, v in S.structure.assignment.items() if J.kind(v.base) != "M"]


def reflector_L(S: SliceObject) -> tuple[Correspondence, SMap]:
    """``L(S)`` for ``S`` over ``B * A``, with the unit ``S -> iL(S)``.

    ``L(S)`` collapses the part of ``S`` over ``B u A`` onto ``B u A``; when
    that part already maps isomorphically, ``S`` is returned unchanged.
    """
    J = S.base
    if not isinstance(J, JoinSSet):
        raise SimplicialError("reflector_L expects an object over a join B * A")
    B, A = J.left, J.right
    init = corr_initial(A, B, J)
    keep = _non_mixed(S)
    onto = [S.structure.assignment[s] for s in keep]
    if all(v.is_nondegenerate() for v in onto) and sorted(v.base for v in onto) == sorted(init.total.ids()):
        back = {v.base: s for s, v in zip(keep, onto)}
        X = Correspondence(
            S.total,
            compose_maps(join_structure(J), S.structure),
            A,
            B,
            SMap(A, S.total, {a: nd(back[J.right_id(a)], A.dimension_of(a)) for a in A.ids()}),
            SMap(B, S.total, {b: nd(back[J.left_id(b)], B.dimension_of(b)) for b in B.ids()}),
        )
        return X, SMap.identity(S.total)
    sub = subcomplex(S.total, keep)
    leg = inclusion(sub, S.total)
    collapse = SMap(sub, init.total, {s: S.structure.assignment[s] for s in keep})
    P = Pushout(leg, collapse)
    structure = P.mediate(compose_maps(join_structure(J), S.structure), init.structure)
    X = Correspondence(
        P,
        structure,
        A,
        B,
        compose_maps(P.from_c, init.fiber_a),
        compose_maps(P.from_c, init.fiber_b),
    )
    return X, P.from_b


def collapse_fibers(total: SSet, structure: SMap, A: SSet, B: SSet, sub_ids: list[str], to_fibers: Mapping[str, Simplex]) -> Correspondence:
    """Push out ``total`` along ``sub -> B u A`` given by ``to_fibers`` (values in ``B * A`` ids)."""
    J = join(B, A)
    init = corr_initial(A, B, J)
    sub = subcomplex(total, sub_ids)
    P = Pushout(inclusion(sub, total), SMap(sub, init.total, dict(to_fibers)))
    return Correspondence(
        P,
        P.mediate(structure, init.structure),
        A,
        B,
        compose_maps(P.from_c, init.fiber_a),
        compose_maps(P.from_c, init.fiber_b),
    )


# ---------------------------------------------------------------- tensor


def tensor(X: Correspondence, K: SSet) -> Correspondence:
    """``X (x) K``: ``X x K`` with ``B x K`` and ``A x K`` collapsed onto ``B`` and ``A``."""
    P = product(X.total, K)
    J = join(X.B, X.A)
    keep, values = [], {}
    for sid in P.ids():
        x, _ = P.key(sid)
        side = X.side(x)
        if side == "B":
            keep.append(sid)
            values[sid] = J.locate(X.to_b(x), None)
        elif side == "A":
            keep.append(sid)
            values[sid] = J.locate(None, X.to_a(x))
    return collapse_fibers(P, compose_maps(X.structure, P.pr1), X.A, X.B, keep, values)


# ---------------------------------------------------------------- section spaces


Domain = Callable[[Simplex], "tuple[SSet, SMap | None]"]
Restrict = Callable[[Simplex, Op], SMap]


class SectionSpace(SSet):
    """Pairs ``(z, phi)``: ``z`` an ``n``-simplex of ``base`` and ``phi: D(z) -> target``.

    ``domain(z)`` returns ``D(z)`` with an optional map ``r: D(z) -> W`` which
    ``phi`` must lift along ``over: target -> W``; ``restrict(z, alpha)`` is
    ``D(z alpha) -> D(z)``.  Simplices are enumerated through dimension
    ``cap`` and the result is marked truncated there.
    """

    def __init__(
        self,
        base: SSet,
        target: SSet,
        domain: Domain,
        restrict: Restrict,
        cap: int,
        over: SMap | None = None,
        label: Callable[[Simplex, int], str] | None = None,
    ) -> None:
        super().__init__(truncated=cap)
        self.base_space = base
        self.target_space = target
        self.domain = domain
        self.restrict = restrict
        self._ids: dict[tuple, str] = {}
        self._keys: dict[str, tuple[Simplex, dict[str, Simplex]]] = {}
        label = label or (lambda z, k: f"{simplex_name(z)}#{k}")
        levels: list[list[str]] = []
        for n in range(cap + 1):
            level = []
            for z in base.simplices(n):
                D, r = domain(z)
                found = enumerate_maps(D, target, over=(r, over) if r is not None else None)
                for k, phi in enumerate(found):
                    if self._degenerate(z, phi):
                        continue
                    sid = label(z, k)
                    self._ids[(z, _freeze(phi))] = sid
                    self._keys[sid] = (z, phi)
                    level.append(sid)
            levels.append(level)
        for n, level in enumerate(levels):
            for sid in level:
                z, phi = self._keys[sid]
                faces = []
                for i in range(n + 1 if n else 0):
                    d = coface(n, i)
                    faces.append(self.locate(base.act(z, d), precompose(phi, target, restrict(z, d))))
                self._add(sid, n, faces)
        self.projection = SMap(self, base, {sid: z for sid, (z, _) in self._keys.items()})

    def _degenerate_at(self, z: Simplex, phi: Mapping[str, Simplex]) -> frozenset[int]:
        n = z.dim
        out = set()
        for j in z.degeneracies():
            r = self.restrict(z, compose(coface(n, j + 1), codegeneracy(n - 1, j)))
            if precompose(phi, self.target_space, r) == phi:
                out.add(j)
        return frozenset(out)

    def _degenerate(self, z: Simplex, phi: Mapping[str, Simplex]) -> bool:
        return bool(self._degenerate_at(z, phi))

    def locate(self, z: Simplex, phi: Mapping[str, Simplex]) -> Simplex:
        deg = self._degenerate_at(z, phi)
        if not deg:
            return Simplex(self._ids[(z, _freeze(phi))], identity(z.dim))
        eps = surj_from_set(z.dim, deg)
        s = section(eps)
        w = self.base_space.act(z, s)
        psi = precompose(phi, self.target_space, self.restrict(z, s))
        return Simplex(self._ids[(w, _freeze(psi))], eps)

    def key(self, sid: str) -> tuple[Simplex, dict[str, Simplex]]:
        return self._keys[sid]

    def section_map(self, sid: str) -> SMap:
        z, phi = self._keys[sid]
        return SMap(self.domain(z)[0], self.target_space, phi)

    def evaluate(self, x: Simplex) -> tuple[Simplex, SMap]:
        """``(z, phi)`` for an arbitrary (possibly degenerate) simplex."""
        z, phi = self._keys[x.base]
        r = self.restrict(z, x.surj)
        return self.base_space.act(z, x.surj), SMap(r.source, self.target_space, precompose(phi, self.target_space, r))


def _freeze(phi: Mapping[str, Simplex]) -> tuple:
    return tuple(sorted(phi.items()))


class _ProductDomains:
    """``M x Delta^n`` with its maps ``id x alpha``, cached by degree."""

    def __init__(self, M: SSet) -> None:
        self.M = M
        self._obj: dict[int, FiberProduct] = {}
        self._maps: dict[tuple[Op, int], SMap] = {}
        self._id = SMap.identity(M)

    def obj(self, n: int) -> FiberProduct:
        if n not in self._obj:
            self._obj[n] = product(self.M, std_simplex(n))
        return self._obj[n]

    def along(self, alpha: Op, n: int) -> SMap:
        key = (alpha, n)
        if key not in self._maps:
            m = len(alpha) - 1
            self._maps[key] = product_map(self._id, simplex_morphism(alpha, n), self.obj(m), self.obj(n))
        return self._maps[key]


def mapping_space(M: SliceObject, X: SliceObject, cap: int) -> SectionSpace:
    """``map_S(M, X)`` through dimension ``cap``: maps ``M x Delta^n -> X`` over ``S``."""
    doms = _ProductDomains(M.total)
    point = std_simplex(0)
    over_maps: dict[int, SMap] = {}

    def domain(z: Simplex) -> tuple[SSet, SMap]:
        n = z.dim
        if n not in over_maps:
            over_maps[n] = compose_maps(M.structure, doms.obj(n).pr1)
        return doms.obj(n), over_maps[n]

    def restrict(z: Simplex, alpha: Op) -> SMap:
        return doms.along(tuple(alpha), z.dim)

    return SectionSpace(point, X.total, domain, restrict, cap, over=X.structure, label=lambda z, k: f"m{z.dim}.{k}")


# ---------------------------------------------------------------- cotensor


def cotensor(Y: Correspondence, K: SSet, cap: int) -> Correspondence:
    """``^K Y`` through dimension ``cap``: pairs ``(z, phi: K x Delta^n -> Y)`` over ``z pr_2``."""
    T = corr_terminal(Y.A, Y.B)
    J = T.total
    doms = _ProductDomains(K)
    q = terminal_map(Y, J)

    def domain(z: Simplex) -> tuple[SSet, SMap]:
        D = doms.obj(z.dim)
        return D, compose_maps(simplex_map_into(J, z), D.pr2)

    def restrict(z: Simplex, alpha: Op) -> SMap:
        return doms.along(tuple(alpha), z.dim)

    S = SectionSpace(J, Y.total, domain, restrict, cap, over=q)
    return _section_correspondence(S, T, Y.A, Y.B)


def simplex_map_into(S: SSet, x: Simplex) -> SMap:
    from .combinators import simplex_map

    return simplex_map(S, x)


def _section_correspondence(S: SectionSpace, T: Correspondence, A: SSet, B: SSet) -> Correspondence:
    """A section space over ``B * A`` whose fibers are single sections, read as a correspondence."""
    J = T.total
    structure = compose_maps(T.structure, S.projection)
    fa, fb = {}, {}
    by_z: dict[Simplex, list[str]] = {}
    for sid in S.ids():
        by_z.setdefault(S.key(sid)[0], []).append(sid)
    for a in A.ids():
        hits = by_z.get(J.locate(None, A.simplex(a)), [])
        if len(hits) != 1:
            raise SimplicialError(f"fiber over {a!r} is not a single section")
        fa[a] = nd(hits[0], A.dimension_of(a))
    for b in B.ids():
        hits = by_z.get(J.locate(B.simplex(b), None), [])
        if len(hits) != 1:
            raise SimplicialError(f"fiber over {b!r} is not a single section")
        fb[b] = nd(hits[0], B.dimension_of(b))
    return Correspondence(S, structure, A, B, SMap(A, S, fa), SMap(B, S, fb))


# ---------------------------------------------------------------- sections and cylinders


def gamma(X: Correspondence, cap: int) -> SliceObject:
    """``Gamma(X) = map_{Delta^1}(Delta^1, X)`` over ``A x B`` (restriction to 1 and 0)."""
    D1 = std_simplex(1)
    G = mapping_space(SliceObject(D1, SMap.identity(D1)), SliceObject(X.total, X.structure), cap)
    AB = product(X.A, X.B)
    doms = _ProductDomains(D1)
    out = {}
    for sid in G.ids():
        z, phi = G.key(sid)
        n = z.dim
        D = doms.obj(n)
        f = SMap(D, X.total, phi)
        top = identity(n)
        at1 = f(D.locate(Simplex("1", (0,) * (n + 1)), Simplex(D.right.ids()[-1], top)))
        at0 = f(D.locate(Simplex("0", (0,) * (n + 1)), Simplex(D.right.ids()[-1], top)))
        out[sid] = AB.locate(X.to_a(at1), X.to_b(at0))
    return SliceObject(G, SMap(G, AB, out))


def cee(S: SliceObject) -> Correspondence:
    """``C(S) = (S x Delta^1) u_{S x dDelta^1} (B u A)`` for ``S`` over ``A x B``."""
    P = S.base
    if not isinstance(P, FiberProduct):
        raise SimplicialError("cee expects an object over a product A x B")
    A, B = P.left, P.right
    J = join(B, A)
    D1 = std_simplex(1)
    Q = product(S.total, D1)
    keep, values = [], {}
    for sid in Q.ids():
        x, e = Q.key(sid)
        if e.base == "01":
            continue
        a, b = P.components(S.structure(x))
        keep.append(sid)
        values[sid] = J.locate(b, None) if e.base == "0" else J.locate(None, a)
    return collapse_fibers(Q, Q.pr2, A, B, keep, values)


def cylinder(A: SSet) -> Correspondence:
    """``A x Delta^1`` as a correspondence from ``A`` to ``A``."""
    D1 = std_simplex(1)
    P = product(A, D1)
    zero = {a: P.locate(A.simplex(a), Simplex("0", (0,) * (A.dimension_of(a) + 1))) for a in A.ids()}
    one = {a: P.locate(A.simplex(a), Simplex("1", (0,) * (A.dimension_of(a) + 1))) for a in A.ids()}
    return Correspondence(P, P.pr2, A, A, SMap(A, P, one), SMap(A, P, zero))


def join_slice(D: SSet, C: SSet, g: SMap, f: SMap) -> SliceObject:
    """``D * C`` over ``B * A`` via ``g * f``."""
    from .combinators import join_map

    src = join(D, C)
    tgt = join(g.target, f.target)
    return SliceObject(src, join_map(g, f, src, tgt))
