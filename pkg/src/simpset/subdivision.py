"""Doubling and diagonal subdivisions and the functors they induce between slices and correspondences.

Two reindexings of ``[n]`` into ``[2n+1]`` drive everything here: the
doubling ``[n]^op * [n]`` behind ``Tw``, ``sigma`` and ``a`` and the
diagonal ``[n] * [n]`` behind ``sd2``, ``delta`` and ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Iterator

from .combinators import (
    FiberProduct,
    JoinSSet,
    Regraded,
    iso_search,
    join,
    opposite,
    opposite_map,
    product,
    product_map,
    pullback,
    simplex_map,
    simplex_morphism,
    std_simplex,
    subset_id,
    switch_map,
)
from .correspondence import (
    Correspondence,
    SectionSpace,
    SliceObject,
    _section_correspondence,
    corr_terminal,
    reflector_L,
)
from .kernel import (
    Op,
    SimplicialError,
    SMap,
    SSet,
    Simplex,
    compose,
    compose_maps,
    ez,
    identity,
    inclusion,
    nd,
    subcomplex,
    surjections,
    to_opposite,
    wrap,
)

# ---------------------------------------------------------------- reindexings


def doubling(alpha: Op, n: int) -> Op:
    """``[m]^op * [m] -> [n]^op * [n]`` induced by ``alpha: [m] -> [n]``."""
    m = len(alpha) - 1
    return tuple(n - alpha[m - p] for p in range(m + 1)) + tuple(n + 1 + a for a in alpha)


def diagonal(alpha: Op, n: int) -> Op:
    """``[m] * [m] -> [n] * [n]`` induced by ``alpha: [m] -> [n]``."""
    return tuple(alpha) + tuple(n + 1 + a for a in alpha)


def _half(N: int) -> int:
    return (N - 1) // 2


@dataclass
class FunctorResult:
    """Output of a named construction with the route used to compute it."""

    output: Any
    provenance: str
    truncated: int | None = None
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------- Tw and sd2


def _all_candidates(X: SSet) -> Callable[[int], Iterator[Simplex]]:
    def candidates(n: int) -> Iterator[Simplex]:
        yield from X.simplices(2 * n + 1)

    return candidates


def _subdivision_degree(X: SSet) -> tuple[int, int | None]:
    if X.truncated is None:
        return max(X.dim, 0), None
    mark = _half(X.truncated)
    return min(max(X.dim, 0), mark), mark


def tw(X: SSet) -> SliceObject:
    """``Tw(X)``: ``n``-simplices are ``X_{2n+1}`` via ``[n]^op * [n]``, over ``X^op x X``."""
    top, mark = _subdivision_degree(X)
    R = Regraded(X, doubling, _half, _all_candidates(X), top, mark)
    P = product(opposite(X), X)
    out = {}
    for sid in R.ids():
        w = R.key(sid)
        n = _half(w.dim)
        left = to_opposite(X.act(w, tuple(range(n + 1))))
        right = X.act(w, tuple(range(n + 1, 2 * n + 2)))
        out[sid] = P.locate(left, right)
    return SliceObject(R, SMap(R, P, out))


def sd2(X: SSet) -> SliceObject:
    """``sd_2(X)``: ``n``-simplices are ``X_{2n+1}`` via ``[n] * [n]``, over ``X x X``."""
    top, mark = _subdivision_degree(X)
    R = Regraded(X, diagonal, _half, _all_candidates(X), top, mark)
    P = product(X, X)
    out = {}
    for sid in R.ids():
        w = R.key(sid)
        n = _half(w.dim)
        out[sid] = P.locate(X.act(w, tuple(range(n + 1))), X.act(w, tuple(range(n + 1, 2 * n + 2))))
    return SliceObject(R, SMap(R, P, out))


# ---------------------------------------------------------------- cell attachment


def _join_of(P: FiberProduct, variant: str) -> JoinSSet:
    """``B * A`` from ``B^op x A`` (sigma) or ``A x B`` (delta)."""
    return join(opposite(P.left), P.right) if variant == "sigma" else join(P.right, P.left)


class CellComplex(SSet):
    """``sigma_!(X)`` or ``delta_!(X)`` assembled from one ``Delta^{2n+1}`` per simplex of ``X``.

    A cell of an ``n``-simplex ``x`` is a set ``U`` of positions of
    ``[2n+1]`` whose elements cover ``[n]``; smaller position sets belong
    to faces of ``x`` and are routed there.  Cells are attached in order of
    dimension, ties broken by the order of ``X`` and then lexicographically.
    """

    def __init__(self, X: SliceObject, variant: str, J: JoinSSet | None = None) -> None:
        if variant not in ("sigma", "delta"):
            raise SimplicialError(f"unknown variant {variant!r}")
        P = X.base
        if not isinstance(P, FiberProduct):
            raise SimplicialError("expected an object over a product")
        super().__init__(truncated=X.total.truncated)
        self.variant = variant
        self.source = X
        self.lift = doubling if variant == "sigma" else diagonal
        self.join = J if J is not None else _join_of(P, variant)
        self._cells: dict[tuple[str, tuple[int, ...]], str] = {}
        self._memo: dict[tuple[str, Op], Simplex] = {}
        self.cells: dict[str, tuple[str, tuple[int, ...]]] = {}
        S = X.total
        entries = []
        for x in S.ids():
            n = S.dimension_of(x)
            for size in range(1, 2 * n + 3):
                for U in combinations(range(2 * n + 2), size):
                    if len({self.element(p, n) for p in U}) == n + 1:
                        entries.append((size - 1, x, U))
        entries.sort(key=lambda t: t[0])
        for d, x, U in entries:
            cid = f"{wrap(x)}#{subset_id(U, 2 * S.dimension_of(x) + 1)}"
            self._cells[(x, U)] = cid
            self.cells[cid] = (x, U)
        for d, x, U in entries:
            n = S.dimension_of(x)
            faces = [self.value(x, n, U[:i] + U[i + 1 :]) for i in range(d + 1)] if d else []
            self._add(self._cells[(x, U)], d, faces)
        self.structure = SMap(
            self, self.join, {cid: self.join.act(self.top(x), U) for cid, (x, U) in self.cells.items()}
        )

    def element(self, p: int, n: int) -> int:
        if p > n:
            return p - n - 1
        return n - p if self.variant == "sigma" else p

    def _reindex(self, p: int, n: int, E: tuple[int, ...]) -> int:
        k = len(E) - 1
        i = E.index(self.element(p, n))
        if p > n:
            return k + 1 + i
        return k - i if self.variant == "sigma" else i

    def top(self, x: str) -> Simplex:
        """The image of the whole cell of ``x`` in the join."""
        P = self.source.base
        first, second = P.components(self.source.structure.assignment[x])
        if self.variant == "sigma":
            return self.join.locate(to_opposite(first), second)
        return self.join.locate(second, first)

    def value(self, x: str, n: int, op: Op) -> Simplex:
        """The simplex ``op`` of the cell of ``x`` (``op`` lands in ``[2n+1]``)."""
        key = (x, op)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        surj, inj = ez(op)
        E = tuple(sorted({self.element(p, n) for p in inj}))
        if len(E) == n + 1:
            hit = Simplex(self._cells[(x, inj)], surj)
        else:
            y = self.source.total.act(nd(x, n), E)
            inner = tuple(self._reindex(p, n, E) for p in inj)
            m = y.base_dim
            hit = self.value(y.base, m, compose(compose(self.lift(y.surj, m), inner), surj))
        self._memo[key] = hit
        return hit

    def whole(self, x: str) -> Simplex:
        """The top cell of ``x``."""
        n = self.source.total.dimension_of(x)
        return Simplex(self._cells[(x, tuple(range(2 * n + 2)))], identity(2 * n + 1))

    def as_slice(self) -> SliceObject:
        return SliceObject(self, self.structure)


def sigma_shriek(X: SliceObject, J: JoinSSet | None = None) -> CellComplex:
    """``sigma_!(X)`` over ``B * A`` for ``X`` over ``B^op x A``."""
    return CellComplex(X, "sigma", J)


def delta_shriek(X: SliceObject, J: JoinSSet | None = None) -> CellComplex:
    """``delta_!(X)`` over ``B * A`` for ``X`` over ``A x B``."""
    return CellComplex(X, "delta", J)


def shriek_map(f: SMap, source: CellComplex, target: CellComplex) -> SMap:
    """``sigma_!(f)`` or ``delta_!(f)`` between cell complexes."""
    out = {}
    for cid, (x, U) in source.cells.items():
        y = f.assignment[x]
        m = y.base_dim
        out[cid] = target.value(y.base, m, compose(target.lift(y.surj, m), U))
    return SMap(source, target, out)


def a_shriek(X: SliceObject) -> Correspondence:
    """``a_! = L sigma_!``."""
    return reflector_L(sigma_shriek(X).as_slice())[0]


def d_shriek(X: SliceObject) -> Correspondence:
    """``d_! = L delta_!``."""
    return reflector_L(delta_shriek(X).as_slice())[0]


# ---------------------------------------------------------------- restrictions along sigma and delta


def _half_split_candidates(S: SliceObject) -> Callable[[int], Iterator[Simplex]]:
    """``(2n+1)``-simplices whose first ``n+1`` vertices lie over ``B`` and the rest over ``A``."""
    J = S.base
    total = S.total
    mixed = []
    for t in total.ids():
        xs, ys = J.split(S.structure.assignment[t])
        if xs is not None and ys is not None:
            mixed.append((t, total.dimension_of(t), xs.dim))

    def candidates(n: int) -> Iterator[Simplex]:
        for t, m, s in mixed:
            if s > n or m - s - 1 > n:
                continue
            for e1 in surjections(n, s):
                for e2 in surjections(n, m - s - 1):
                    yield Simplex(t, e1 + tuple(v + s + 1 for v in e2))

    return candidates


def _restriction(S: SliceObject, variant: str) -> SliceObject:
    J = S.base
    if not isinstance(J, JoinSSet):
        raise SimplicialError("expected an object over a join B * A")
    B, A = J.left, J.right
    total = S.total
    lift = doubling if variant == "sigma" else diagonal
    top = max(total.dim, 0)
    mark = None
    if total.truncated is not None:
        mark = _half(total.truncated)
        top = min(top, mark)
    R = Regraded(total, lift, _half, _half_split_candidates(S), top, mark)
    P = product(opposite(B), A) if variant == "sigma" else product(A, B)
    out = {}
    for sid in R.ids():
        w = R.key(sid)
        xs, ys = J.split(S.structure(w))
        out[sid] = P.locate(to_opposite(xs), ys) if variant == "sigma" else P.locate(ys, xs)
    return SliceObject(R, SMap(R, P, out))


def sigma_star(S: SliceObject) -> SliceObject:
    """``sigma^*(S)`` degreewise: maps ``(Delta^n)^op * Delta^n -> S`` over ``B * A``."""
    return _restriction(S, "sigma")


def delta_star(S: SliceObject) -> SliceObject:
    """``delta^*(S)`` degreewise: maps ``Delta^n * Delta^n -> S`` over ``B * A``."""
    return _restriction(S, "delta")


def restriction_map(f: SMap, source: SliceObject, target: SliceObject) -> SMap:
    """``sigma^*(f)`` or ``delta^*(f)`` for ``f`` between the underlying totals."""
    R, R2 = source.total, target.total
    return SMap(R, R2, {sid: R2.locate(f(R.key(sid))) for sid in R.ids()})


def fiber_inclusions(Y: Correspondence, variant: str, YY: FiberProduct) -> SMap:
    """``B^op x A -> Y^op x Y`` or, through the switch, ``A x B -> Y x Y``."""
    if variant == "sigma":
        P = product(opposite(Y.B), Y.A)
        fb = opposite_map(Y.fiber_b, P.left, YY.left)
        return product_map(fb, Y.fiber_a, P, YY)
    AB = product(Y.A, Y.B)
    BA = product(Y.B, Y.A)
    return compose_maps(product_map(Y.fiber_b, Y.fiber_a, BA, YY), switch_map(AB, BA))


def a_star(Y: Correspondence) -> SliceObject:
    """``a^* Y`` as the pullback of ``Tw(Y) -> Y^op x Y`` along ``B^op x A``."""
    T = tw(Y.total)
    Q = pullback(T.structure, fiber_inclusions(Y, "sigma", T.structure.target))
    return SliceObject(Q, Q.pr2)


def d_star(Y: Correspondence) -> SliceObject:
    """``d^* Y`` as the pullback of ``sd_2(Y) -> Y x Y`` along ``A x B -> B x A -> Y x Y``."""
    T = sd2(Y.total)
    Q = pullback(T.structure, fiber_inclusions(Y, "delta", T.structure.target))
    return SliceObject(Q, Q.pr2)


def a_star_degreewise(Y: Correspondence) -> SliceObject:
    return sigma_star(Y.as_slice())


def d_star_degreewise(Y: Correspondence) -> SliceObject:
    return delta_star(Y.as_slice())


# ---------------------------------------------------------------- units


@dataclass
class UnitData:
    """``X -> r^* l_! X`` together with the objects involved."""

    source: SliceObject
    shriek: Any
    restricted: SliceObject
    unit: SMap


def sigma_unit(X: SliceObject) -> UnitData:
    """``X -> sigma^* sigma_! X``."""
    C = sigma_shriek(X)
    R = sigma_star(C.as_slice())
    return UnitData(X, C, R, SMap(X.total, R.total, {x: R.total.locate(C.whole(x)) for x in X.total.ids()}))


def delta_unit(X: SliceObject) -> UnitData:
    C = delta_shriek(X)
    R = delta_star(C.as_slice())
    return UnitData(X, C, R, SMap(X.total, R.total, {x: R.total.locate(C.whole(x)) for x in X.total.ids()}))


def _adjunction_unit(X: SliceObject, variant: str, route: str) -> UnitData:
    C = CellComplex(X, variant)
    L, to_L = reflector_L(C.as_slice())
    if route == "degreewise":
        R = a_star_degreewise(L) if variant == "sigma" else d_star_degreewise(L)
        out = {x: R.total.locate(to_L(C.whole(x))) for x in X.total.ids()}
        return UnitData(X, L, R, SMap(X.total, R.total, out))
    if route != "pullback":
        raise SimplicialError(f"unknown route {route!r}")
    R = a_star(L) if variant == "sigma" else d_star(L)
    Q = R.total
    T = Q.f.source
    out = {}
    for x in X.total.ids():
        w = to_L(C.whole(x))
        out[x] = Q.locate(T.locate(w), X.structure.assignment[x])
    return UnitData(X, L, R, SMap(X.total, Q, out))


def a_unit(X: SliceObject, route: str = "degreewise") -> UnitData:
    """``X -> a^* a_! X``; ``route="pullback"`` computes ``a^*`` through ``Tw``."""
    return _adjunction_unit(X, "sigma", route)


def d_unit(X: SliceObject, route: str = "degreewise") -> UnitData:
    """``X -> d^* d_! X``; ``route="pullback"`` computes ``d^*`` through ``sd_2``."""
    return _adjunction_unit(X, "delta", route)


def diagonal_target(X: SliceObject, variant: str) -> tuple[SliceObject, SMap]:
    """``X x X`` over the base via ``f x g`` (as in the unit computation) and the diagonal."""
    S = X.total
    P = X.base
    D = product(S, S)
    pr_first = {k: P.components(v)[0] for k, v in X.structure.assignment.items()}
    pr_second = {k: P.components(v)[1] for k, v in X.structure.assignment.items()}
    f = SMap(S, P.left, pr_first)
    g = SMap(S, P.right, pr_second)
    structure = product_map(f, g, D, P)
    diag = SMap(S, D, {sid: D.locate(S.simplex(sid), S.simplex(sid)) for sid in S.ids()})
    return SliceObject(D, structure), diag


def unit_matches_diagonal(data: UnitData, variant: str) -> SMap | None:
    """An isomorphism ``r^* l_! X -> X x X`` over the base carrying the unit to the diagonal."""
    D, diag = diagonal_target(data.source, variant)
    fixed = {data.unit.assignment[x].base: diag.assignment[x].base for x in data.source.total.ids()}
    if not data.unit.is_mono():
        return None
    return iso_search(data.restricted.total, D.total, fixed=fixed, over=(data.restricted.structure, D.structure))


# ---------------------------------------------------------------- lower star


class _SplitDomains:
    """Domains ``(Delta^k)^op x Delta^l`` (sigma) or ``Delta^l x Delta^k`` (delta) over mixed simplices."""

    def __init__(self, X: SliceObject, J: JoinSSet, variant: str) -> None:
        self.X = X
        self.J = J
        self.variant = variant
        self.P = X.base
        self._obj: dict[tuple[int, int], FiberProduct] = {}
        self._maps: dict[tuple, SMap] = {}
        self._empty = SSet()

    def obj(self, k: int, l: int) -> FiberProduct:
        key = (k, l)
        if key not in self._obj:
            if self.variant == "sigma":
                self._obj[key] = product(_op_simplex(k), std_simplex(l))
            else:
                self._obj[key] = product(std_simplex(l), std_simplex(k))
        return self._obj[key]

    def domain(self, z: Simplex) -> tuple[SSet, SMap]:
        xs, ys = self.J.split(z)
        if xs is None or ys is None:
            return self._empty, SMap(self._empty, self.P, {})
        k, l = xs.dim, ys.dim
        D = self.obj(k, l)
        if self.variant == "sigma":
            u = opposite_map(simplex_map(self.J.left, xs), _op_simplex(k), self.P.left)
            r = product_map(u, simplex_map(self.J.right, ys), D, self.P)
        else:
            r = product_map(simplex_map(self.J.right, ys), simplex_map(self.J.left, xs), D, self.P)
        return D, r

    def restrict(self, z: Simplex, alpha: Op) -> SMap:
        xs, ys = self.J.split(z)
        target = self._empty if xs is None or ys is None else self.obj(xs.dim, ys.dim)
        if xs is None or ys is None:
            return SMap(self._empty, target, {})
        k = xs.dim
        a1 = tuple(a for a in alpha if a <= k)
        a2 = tuple(a - k - 1 for a in alpha if a > k)
        if not a1 or not a2:
            return SMap(self._empty, target, {})
        key = (k, ys.dim, a1, a2)
        if key not in self._maps:
            src = self.obj(len(a1) - 1, len(a2) - 1)
            m1 = simplex_morphism(a1, k)
            m2 = simplex_morphism(a2, ys.dim)
            if self.variant == "sigma":
                m1 = opposite_map(m1, _op_simplex(len(a1) - 1), _op_simplex(k))
                self._maps[key] = product_map(m1, m2, src, target)
            else:
                self._maps[key] = product_map(m2, m1, src, target)
        return self._maps[key]


@lru_cache(maxsize=None)
def _op_simplex(k: int) -> SSet:
    return opposite(std_simplex(k))


def _lower_star(X: SliceObject, variant: str, cap: int) -> Correspondence:
    P = X.base
    if not isinstance(P, FiberProduct):
        raise SimplicialError("expected an object over a product")
    if variant == "sigma":
        B, A = opposite(P.left), P.right
    else:
        A, B = P.left, P.right
    T = corr_terminal(A, B)
    doms = _SplitDomains(X, T.total, variant)
    S = SectionSpace(T.total, X.total, doms.domain, doms.restrict, 2 * cap + 1, over=X.structure)
    out = _section_correspondence(S, T, A, B)
    return out


def a_lower_star(X: SliceObject, cap: int) -> Correspondence:
    """``a_* X``: over ``z = x * y`` the maps ``(Delta^k)^op x Delta^l -> X`` over ``B^op x A``.

    Simplices are enumerated through dimension ``2 cap + 1`` so that
    ``a^* a_* X`` is complete through dimension ``cap``.
    """
    return _lower_star(X, "sigma", cap)


def d_lower_star(X: SliceObject, cap: int) -> Correspondence:
    """``d_* X``: over ``z = x * y`` the maps ``Delta^l x Delta^k -> X`` over ``A x B``.

    Enumerated through dimension ``2 cap + 1`` so that ``d^* d_* X`` is
    complete through dimension ``cap``.
    """
    return _lower_star(X, "delta", cap)


def _counit(X: SliceObject, Y: Correspondence, variant: str) -> tuple[SliceObject, SMap]:
    R = sigma_star(Y.as_slice()) if variant == "sigma" else delta_star(Y.as_slice())
    S = Y.total
    out = {}
    for sid in R.total.ids():
        w = R.total.key(sid)
        z, phi = S.evaluate(w)
        D = phi.source
        n = _half(w.dim)
        top = Simplex(D.left.ids()[-1], identity(n))
        out[sid] = phi(D.locate(top, top))
    return R, SMap(R.total, X.total, out)


def a_counit(X: SliceObject, cap: int) -> tuple[Correspondence, SliceObject, SMap]:
    """``a^* a_* X -> X``, evaluation of each section on the diagonal."""
    Y = a_lower_star(X, cap)
    R, eps = _counit(X, Y, "sigma")
    return Y, R, eps


def d_counit(X: SliceObject, cap: int) -> tuple[Correspondence, SliceObject, SMap]:
    """``d^* d_* X -> X``, evaluation of each section on the diagonal."""
    Y = d_lower_star(X, cap)
    R, eps = _counit(X, Y, "delta")
    return Y, R, eps


# ---------------------------------------------------------------- horn images


HORN_CASES = {
    1: "Lambda^n_k * 0 -> Delta^n * 0 (0 < k < n)",
    2: "Lambda^m_k * Delta^n u Delta^m * dDelta^n -> Delta^m * Delta^n (0 < k <= m)",
    3: "Delta^m * Lambda^n_k u dDelta^m * Delta^n -> Delta^m * Delta^n (0 <= k < n)",
    4: "0 * Lambda^n_k -> 0 * Delta^n (0 < k < n)",
}


@dataclass
class HornImage:
    case: int
    m: int
    n: int
    k: int
    computed: SMap
    expected: SMap
    iso: SMap | None

    @property
    def matches(self) -> bool:
        if len(self.expected.target) == 0:
            return len(self.computed.target) == 0 and len(self.computed.source) == 0
        return self.iso is not None

    def describe(self) -> str:
        return HORN_CASES[self.case]


def horn_case_valid(m: int, n: int, k: int, case: int) -> bool:
    if case in (1, 4):
        return 0 < k < n
    if case == 2:
        return 0 < k <= m and n >= 0
    if case == 3:
        return m >= 0 and 0 <= k < n
    return False


def _horn_over_join(B: SSet, A: SSet, N: int, j: int) -> tuple[SliceObject, SliceObject, JoinSSet]:
    """``Lambda^N_j -> Delta^N`` over ``B * A`` with ``Delta^N = B * A`` (both simplices)."""
    from .combinators import horn

    J = join(B, A)
    full = std_simplex(N)
    iso = _ordered_simplex_iso(full, J)
    H = horn(N, j)
    return SliceObject(H, SMap(H, J, {s: iso.assignment[s] for s in H.ids()})), SliceObject(full, iso), J


def _ordered_simplex_iso(full: SSet, J: JoinSSet) -> SMap:
    """``Delta^N -> Delta^m * Delta^n`` sending the top simplex to the top simplex."""
    top = J.nondegenerate(full.dim)[0]
    return simplex_map(J, J.simplex(top))


def sigma_star_horn_images(m: int, n: int, k: int, case: int) -> HornImage:
    """The ``sigma^*``-image of an inner horn of ``(sSet)_{/B*A}`` and the predicted form."""
    if case not in HORN_CASES or not horn_case_valid(m, n, k, case):
        raise SimplicialError(f"invalid horn case {case} with m={m}, n={n}, k={k}")
    empty = SSet()
    if case == 1:
        B, A, N, j = std_simplex(n), empty, n, k
    elif case == 4:
        B, A, N, j = empty, std_simplex(n), n, k
    elif case == 2:
        B, A, N, j = std_simplex(m), std_simplex(n), m + n + 1, k
    else:
        B, A, N, j = std_simplex(m), std_simplex(n), m + n + 1, m + 1 + k
    H, F, J = _horn_over_join(B, A, N, j)
    RH, RF = sigma_star(H), sigma_star(F)
    computed = restriction_map(inclusion(H.total, F.total), RH, RF)
    P = product(opposite(B), A)
    if case in (1, 4):
        expected = SMap(empty, P, {})
        return HornImage(case, m, n, k, computed, expected, None)
    from .combinators import boundary, horn

    if case == 2:
        keep_left, keep_right = set(horn(m, k).ids()), set(boundary(n).ids())
    else:
        keep_left, keep_right = set(boundary(m).ids()), set(horn(n, k).ids())
    keep = [s for s in P.ids() if P.key(s)[0].base in keep_left or P.key(s)[1].base in keep_right]
    sub = subcomplex(P, keep)
    expected = inclusion(sub, P)
    iso = iso_search(RF.total, P, marks=(computed.image(), expected.image()), over=(RF.structure, SMap.identity(P)))
    if iso is not None and not computed.is_mono():
        iso = None
    return HornImage(case, m, n, k, computed, expected, iso)


def all_horn_cases(limit: int = 2) -> Iterator[tuple[int, int, int, int]]:
    for case in (1, 2, 3, 4):
        for m in range(limit + 1):
            for n in range(limit + 1):
                if case in (1, 4) and m:
                    continue
                for k in range(max(m, n) + 1):
                    if horn_case_valid(m, n, k, case):
                        yield m, n, k, case


# ---------------------------------------------------------------- boundary squares


@dataclass
class BoundaryReport:
    n: int
    pullback: bool
    union: bool
    mono: bool
    details: list[str]

    @property
    def ok(self) -> bool:
        return self.pullback and self.union and self.mono


def reversal(n: int) -> SMap:
    """``Delta^n -> (Delta^n)^op``, ``i -> n - i``."""
    from .combinators import vertex_set

    D = std_simplex(n)
    out = {}
    for sid in D.ids():
        vs = vertex_set(sid, n)
        out[sid] = nd(subset_id(sorted(n - v for v in vs), n), len(vs) - 1)
    return SMap(D, opposite(D), out)


def standard_slice(n: int, variant: str = "sigma") -> SliceObject:
    """``Delta^n`` over ``B^op x A`` (resp. ``A x B``) with ``B = A = Delta^n`` and identity-like legs."""
    D = std_simplex(n)
    if variant == "sigma":
        P = product(opposite(D), D)
        return SliceObject(D, SMap(D, P, {s: P.locate(reversal(n).assignment[s], D.simplex(s)) for s in D.ids()}))
    P = product(D, D)
    return SliceObject(D, SMap(D, P, {s: P.locate(D.simplex(s), D.simplex(s)) for s in D.ids()}))


def verify_boundary_square(n: int, variant: str = "sigma") -> BoundaryReport:
    """Check that ``dDelta^n -> r^* l_! dDelta^n`` is the pullback of the unit of ``Delta^n``
    and that ``r^* l_! dDelta^n`` is the union of the ``d_i Delta^{n-1} x d_i Delta^{n-1}``."""
    from .combinators import boundary

    X = standard_slice(n, variant)
    dX = SliceObject(boundary(n), SMap(boundary(n), X.base, {s: X.structure.assignment[s] for s in boundary(n).ids()}))
    big = sigma_unit(X) if variant == "sigma" else delta_unit(X)
    C_small = CellComplex(dX, variant, big.shriek.join)
    R_small = sigma_star(C_small.as_slice()) if variant == "sigma" else delta_star(C_small.as_slice())
    incl = shriek_map(inclusion(dX.total, X.total), C_small, big.shriek)
    mono = incl.is_mono()
    image_map = restriction_map(incl, R_small, big.restricted)
    image = image_map.image()
    details = []
    pre = {x for x in X.total.ids() if big.unit.assignment[x].base in image}
    pullback = pre == set(boundary(n).ids())
    if not pullback:
        details.append(f"preimage of the boundary image is {sorted(pre)}")
    iso = unit_matches_diagonal(big, variant)
    union = False
    if iso is not None:
        D, _ = diagonal_target(X, variant)
        Q = D.total
        faces = {s for s in Q.ids() if _in_common_face(Q, s, n)}
        mapped = {iso.assignment[s].base for s in image}
        union = mapped == faces
        if not union:
            details.append("image differs from the union of face squares")
    else:
        details.append("unit is not isomorphic to the diagonal")
    return BoundaryReport(n, pullback, union, mono, details)


def _in_common_face(Q: FiberProduct, sid: str, n: int) -> bool:
    from .combinators import vertex_set

    x, y = Q.key(sid)
    used = set(vertex_set(x.base, n)) | set(vertex_set(y.base, n))
    return len(used) < n + 1


# ---------------------------------------------------------------- degreewise discrepancy


@dataclass
class DiscrepancyRow:
    degree: int
    cell_attachment: int
    degreewise: int

    @property
    def diverges(self) -> bool:
        return self.cell_attachment != self.degreewise


def sigma_shriek_count_report(max_degree: int = 4) -> list[DiscrepancyRow]:
    """Compare ``|sigma_!(Delta^0)_n|`` by cell attachment with the literal ``|Delta^0_{2n+1}|``."""
    P0 = product(opposite(std_simplex(0)), std_simplex(0))
    X = SliceObject(std_simplex(0), SMap(std_simplex(0), P0, {"0": nd(P0.ids()[0], 0)}))
    C = sigma_shriek(X)
    rows = []
    for n in range(max_degree + 1):
        rows.append(DiscrepancyRow(n, len(C.simplices(n)), len(std_simplex(0).simplices(2 * n + 1))))
    return rows


def format_discrepancy(rows: list[DiscrepancyRow]) -> str:
    lines = [
        "sigma_!(Delta^0) degree counts: cell attachment vs. the reading sigma_!(X)_n = X_{2n+1}",
        f"{'n':>3} {'cells':>7} {'X_2n+1':>7}  diverges",
    ]
    for r in rows:
        lines.append(f"{r.degree:>3} {r.cell_attachment:>7} {r.degreewise:>7}  {'yes' if r.diverges else 'no'}")
    lines.append("cell attachment gives Delta^1 (n+2 simplices in degree n); the degreewise reading gives a point")
    return "\n".join(lines)
