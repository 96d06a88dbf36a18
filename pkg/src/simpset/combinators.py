"""Standard complexes, opposites, joins, limits, colimits, slices, nerves and isomorphism search."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .kernel import (
    Op,
    SimplicialError,
    SMap,
    SSet,
    Simplex,
    coface,
    codegeneracy,
    ez,
    identity,
    inclusion,
    nd,
    section,
    simplex_name,
    subcomplex,
    surj_from_set,
    to_opposite,
    wrap,
)

# ---------------------------------------------------------------- simplices


def subset_id(vs: Sequence[int], n: int) -> str:
    return ("" if n < 10 else ".").join(map(str, vs))


@lru_cache(maxsize=None)
def std_simplex(n: int) -> SSet:
    """The standard ``n``-simplex; ids are the vertex lists of its faces, e.g. ``"02"``."""
    if n < 0:
        raise SimplicialError("dimension must be nonnegative")
    S = SSet()
    for k in range(n + 1):
        for vs in combinations(range(n + 1), k + 1):
            faces = [nd(subset_id(vs[:i] + vs[i + 1 :], n), k - 1) for i in range(k + 1)] if k else []
            S._add(subset_id(vs, n), k, faces)
    return S


@lru_cache(maxsize=None)
def boundary(n: int) -> SSet:
    D = std_simplex(n)
    return subcomplex(D, [s for s in D.ids() if D.dimension_of(s) < n])


@lru_cache(maxsize=None)
def horn(n: int, k: int) -> SSet:
    if not 0 <= k <= n or n < 1:
        raise SimplicialError(f"no horn with n={n}, k={k}")
    D = std_simplex(n)
    missing = subset_id([v for v in range(n + 1) if v != k], n)
    return subcomplex(D, [s for s in D.ids() if D.dimension_of(s) < n and s != missing])


def boundary_inclusion(n: int) -> SMap:
    return inclusion(boundary(n), std_simplex(n))


def horn_inclusion(n: int, k: int) -> SMap:
    return inclusion(horn(n, k), std_simplex(n))


def empty() -> SSet:
    return SSet()


def delta_simplex(values: Sequence[int], n: int) -> Simplex:
    """The simplex of ``Delta^n`` named by a monotone map into ``[n]``."""
    surj, inj = ez(tuple(values))
    return Simplex(subset_id(inj, n), surj)


def vertex_set(sid: str, n: int) -> tuple[int, ...]:
    """Inverse of :func:`subset_id`."""
    if n < 10:
        return tuple(int(c) for c in sid)
    return tuple(int(c) for c in sid.split("."))


def simplex_map(S: SSet, x: Simplex) -> SMap:
    """The map ``Delta^n -> S`` classifying the ``n``-simplex ``x``."""
    n = x.dim
    D = std_simplex(n)
    return SMap(D, S, {sid: S.act(x, vertex_set(sid, n)) for sid in D.ids()})


def simplex_morphism(values: Sequence[int], n: int) -> SMap:
    """The map ``Delta^m -> Delta^n`` induced by a monotone map ``[m] -> [n]``."""
    return simplex_map(std_simplex(n), delta_simplex(values, n))


# ---------------------------------------------------------------- opposite


def opposite(S: SSet) -> SSet:
    """Same ids, faces reindexed ``d_i -> d_{n-i}``."""
    out = SSet(truncated=S.truncated)
    for sid in S.ids():
        n = S.dimension_of(sid)
        faces = S.faces_of(sid)
        out._add(sid, n, [to_opposite(faces[n - i]) for i in range(len(faces))])
    return out


def opposite_map(f: SMap, source: SSet | None = None, target: SSet | None = None) -> SMap:
    source = source if source is not None else opposite(f.source)
    target = target if target is not None else opposite(f.target)
    return SMap(source, target, {k: to_opposite(v) for k, v in f.assignment.items()})


# ---------------------------------------------------------------- join


class JoinSSet(SSet):
    """The join ``left * right``; ids ``x*``, ``*y`` and ``x*y``."""

    def __init__(self, left: SSet, right: SSet) -> None:
        super().__init__(truncated=_min_mark(left, right))
        self.left = left
        self.right = right
        self._kind: dict[str, tuple] = {}
        for x in left.ids():
            sid = self.left_id(x)
            self._kind[sid] = ("L", x)
            self._add(sid, left.dimension_of(x), [self.locate(f, None) for f in left.faces_of(x)])
        for y in right.ids():
            sid = self.right_id(y)
            self._kind[sid] = ("R", y)
            self._add(sid, right.dimension_of(y), [self.locate(None, f) for f in right.faces_of(y)])
        mixed = [(x, y) for x in left.ids() for y in right.ids()]
        mixed.sort(key=lambda t: left.dimension_of(t[0]) + right.dimension_of(t[1]))
        for x, y in mixed:
            p, q = left.dimension_of(x), right.dimension_of(y)
            faces = []
            for i in range(p + 1):
                faces.append(self.locate(left.face(nd(x, p), i), nd(y, q)) if p else self.locate(None, nd(y, q)))
            for i in range(q + 1):
                faces.append(self.locate(nd(x, p), right.face(nd(y, q), i)) if q else self.locate(nd(x, p), None))
            sid = self.mixed_id(x, y)
            self._kind[sid] = ("M", x, y)
            self._add(sid, p + q + 1, faces)

    @staticmethod
    def left_id(x: str) -> str:
        return f"{wrap(x)}*"

    @staticmethod
    def right_id(y: str) -> str:
        return f"*{wrap(y)}"

    @staticmethod
    def mixed_id(x: str, y: str) -> str:
        return f"{wrap(x)}*{wrap(y)}"

    def locate(self, xs: Simplex | None, ys: Simplex | None) -> Simplex:
        """The join of a simplex of ``left`` and one of ``right`` (either may be absent)."""
        if xs is None and ys is None:
            raise SimplicialError("the empty join has no simplex")
        if ys is None:
            return Simplex(self.left_id(xs.base), xs.surj)
        if xs is None:
            return Simplex(self.right_id(ys.base), ys.surj)
        p = xs.surj[-1]
        return Simplex(self.mixed_id(xs.base, ys.base), xs.surj + tuple(v + p + 1 for v in ys.surj))

    def split(self, z: Simplex) -> tuple[Simplex | None, Simplex | None]:
        kind = self._kind[z.base]
        if kind[0] == "L":
            return Simplex(kind[1], z.surj), None
        if kind[0] == "R":
            return None, Simplex(kind[1], z.surj)
        p = self.left.dimension_of(kind[1])
        k = sum(1 for v in z.surj if v <= p)
        return Simplex(kind[1], z.surj[:k]), Simplex(kind[2], tuple(v - p - 1 for v in z.surj[k:]))

    def kind(self, sid: str) -> str:
        return self._kind[sid][0]

    def fiber_ids(self, side: str) -> list[str]:
        return [s for s in self.ids() if self._kind[s][0] == side]


def join(A: SSet, B: SSet) -> JoinSSet:
    return JoinSSet(A, B)


def join_structure(J: JoinSSet) -> SMap:
    """The canonical map ``left * right -> Delta^1`` (left over 0, right over 1)."""
    D1 = std_simplex(1)
    out = {}
    for sid in J.ids():
        kind = J._kind[sid]
        n = J.dimension_of(sid)
        if kind[0] == "L":
            out[sid] = Simplex("0", (0,) * (n + 1))
        elif kind[0] == "R":
            out[sid] = Simplex("1", (0,) * (n + 1))
        else:
            p = J.left.dimension_of(kind[1])
            out[sid] = Simplex("01", (0,) * (p + 1) + (1,) * (n - p))
    return SMap(J, D1, out)


def join_map(f: SMap | None, g: SMap | None, source: JoinSSet, target: JoinSSet) -> SMap:
    """``f * g`` between joins; a missing map stands for the empty one."""
    out = {}
    for sid in source.ids():
        xs, ys = source.split(source.simplex(sid))
        out[sid] = target.locate(f(xs) if xs is not None else None, g(ys) if ys is not None else None)
    return SMap(source, target, out)


# ---------------------------------------------------------------- products and pullbacks


def _min_mark(*spaces: SSet) -> int | None:
    marks = [S.truncated for S in spaces if S.truncated is not None]
    return min(marks) if marks else None


@lru_cache(maxsize=None)
def grid_paths(n: int, p: int, q: int) -> tuple[tuple[Op, Op], ...]:
    """Pairs of surjections ``[n] -> [p]``, ``[n] -> [q]`` with no common repeat."""
    out = []
    rng = range(n)
    for rp in combinations(rng, n - p):
        rest = [j for j in rng if j not in rp]
        for rq in combinations(rest, n - q):
            out.append((surj_from_set(n, rp), surj_from_set(n, rq)))
    return tuple(out)


class FiberProduct(SSet):
    """``X x_S Y`` for maps ``f: X -> S`` and ``g: Y -> S``; the product when both are absent."""

    def __init__(self, X: SSet, Y: SSet, f: SMap | None = None, g: SMap | None = None) -> None:
        super().__init__(truncated=_min_mark(X, Y))
        self.left = X
        self.right = Y
        self.f = f
        self.g = g
        self._ids: dict[tuple[Simplex, Simplex], str] = {}
        self._keys: dict[str, tuple[Simplex, Simplex]] = {}
        keys: list[tuple[int, Simplex, Simplex]] = []
        if f is not None:
            fv = {x: tuple(f(nd(v, 0)) for v in X.vertices(x)) for x in X.ids()}
            gv = {y: tuple(g(nd(v, 0)) for v in Y.vertices(y)) for y in Y.ids()}
        for x0 in X.ids():
            p = X.dimension_of(x0)
            for y0 in Y.ids():
                q = Y.dimension_of(y0)
                for n in range(max(p, q), p + q + 1):
                    for eta, theta in grid_paths(n, p, q):
                        if f is not None:
                            a, b = fv[x0], gv[y0]
                            if any(a[eta[i]] != b[theta[i]] for i in range(n + 1)):
                                continue
                            if f(Simplex(x0, eta)) != g(Simplex(y0, theta)):
                                continue
                        keys.append((n, Simplex(x0, eta), Simplex(y0, theta)))
        keys.sort(key=lambda t: t[0])
        for n, x, y in keys:
            sid = f"({simplex_name(x)},{simplex_name(y)})"
            self._ids[(x, y)] = sid
            self._keys[sid] = (x, y)
        for n, x, y in keys:
            faces = [self.locate(X.face(x, i), Y.face(y, i)) for i in range(n + 1)] if n else []
            self._add(self._ids[(x, y)], n, faces)
        self.pr1 = SMap(self, X, {sid: k[0] for sid, k in self._keys.items()})
        self.pr2 = SMap(self, Y, {sid: k[1] for sid, k in self._keys.items()})

    def locate(self, x: Simplex, y: Simplex) -> Simplex:
        """The simplex with components ``x`` and ``y`` (of equal dimension)."""
        common = x.degeneracies() & y.degeneracies()
        if not common:
            return Simplex(self._ids[(x, y)], identity(x.dim))
        eps = surj_from_set(x.dim, common)
        s = section(eps)
        return Simplex(self._ids[(self.left.act(x, s), self.right.act(y, s))], eps)

    def components(self, z: Simplex) -> tuple[Simplex, Simplex]:
        x, y = self._keys[z.base]
        return self.left.act(x, z.surj), self.right.act(y, z.surj)

    def key(self, sid: str) -> tuple[Simplex, Simplex]:
        return self._keys[sid]

    def mediate(self, u: SMap, v: SMap) -> SMap:
        return SMap(u.source, self, {k: self.locate(u.assignment[k], v.assignment[k]) for k in u.assignment})


def product(X: SSet, Y: SSet) -> FiberProduct:
    return FiberProduct(X, Y)


def pullback(f: SMap, g: SMap) -> FiberProduct:
    if not f.target.same_as(g.target):
        raise SimplicialError("pullback needs a common codomain")
    return FiberProduct(f.source, g.source, f, g)


def product_map(f: SMap, g: SMap, source: FiberProduct, target: FiberProduct) -> SMap:
    """``f x g`` between (fiber) products."""
    out = {}
    for sid in source.ids():
        x, y = source.key(sid)
        out[sid] = target.locate(f(x), g(y))
    return SMap(source, target, out)


def diagonal_map(X: SSet, P: FiberProduct) -> SMap:
    return SMap(X, P, {sid: P.locate(X.simplex(sid), X.simplex(sid)) for sid in X.ids()})


def switch_map(source: FiberProduct, target: FiberProduct) -> SMap:
    """The switch ``X x Y -> Y x X``."""
    return SMap(source, target, {sid: target.locate(y, x) for sid, (x, y) in source._keys.items()})


def vertex_map(S: SSet, v: str) -> SMap:
    return SMap(std_simplex(0), S, {"0": nd(v, 0)})


# ---------------------------------------------------------------- pushouts


class Pushout(SSet):
    """``B u_A C`` for a monomorphism ``i: A -> B`` and any ``f: A -> C``.

    Ids of ``C`` are kept; simplices of ``B`` outside the image of ``i`` keep
    their ids unless those clash with ``C``, in which case primes are appended.
    """

    def __init__(self, i: SMap, f: SMap) -> None:
        if not i.is_mono():
            raise SimplicialError("pushout_along_mono needs a monomorphic leg")
        if not i.source.same_as(f.source) and i.source is not f.source:
            raise SimplicialError("the two legs need a common source")
        B, C = i.target, f.target
        super().__init__(truncated=_min_mark(B, C))
        self.leg = i
        self.attaching = f
        inv = {v.base: k for k, v in i.assignment.items()}
        for sid in C.ids():
            self._add(sid, C.dimension_of(sid), C.faces_of(sid))
        self.new_ids: dict[str, str] = {}
        for sid in B.ids():
            if sid in inv:
                continue
            new = sid
            while new in self or new in self.new_ids.values():
                new += "'"
            self.new_ids[sid] = new
        for sid in B.ids():
            if sid in inv:
                continue
            faces = []
            for t in B.faces_of(sid):
                if t.base in inv:
                    faces.append(C.act(f.assignment[inv[t.base]], t.surj))
                else:
                    faces.append(Simplex(self.new_ids[t.base], t.surj))
            self._add(self.new_ids[sid], B.dimension_of(sid), faces)
        self.from_c = SMap(C, self, {sid: C.simplex(sid) for sid in C.ids()})
        self.from_b = SMap(
            B,
            self,
            {
                sid: (f.assignment[inv[sid]] if sid in inv else nd(self.new_ids[sid], B.dimension_of(sid)))
                for sid in B.ids()
            },
        )

    def mediate(self, g: SMap, h: SMap) -> SMap:
        """The map out of the pushout induced by ``g: B -> Z`` and ``h: C -> Z``."""
        out = dict(h.assignment)
        for b, new in self.new_ids.items():
            out[new] = g.assignment[b]
        return SMap(self, h.target, out)


def pushout_along_mono(i: SMap, f: SMap) -> Pushout:
    return Pushout(i, f)


# ---------------------------------------------------------------- regraded simplices


class Regraded(SSet):
    """Simplices of ``X`` regraded along a functor ``D`` on the simplex category.

    ``lift(alpha, n)`` is ``D(alpha)`` for ``alpha: [m] -> [n]``; ``degree(N)``
    recovers ``n`` from ``N = top index of D([n])``; ``candidates(n)`` yields
    the ``X``-simplices that may be nondegenerate in degree ``n``.
    """

    def __init__(
        self,
        X: SSet,
        lift: Callable[[Op, int], Op],
        degree: Callable[[int], int],
        candidates: Callable[[int], Iterable[Simplex]],
        max_dim: int,
        truncated: int | None = None,
    ) -> None:
        super().__init__(truncated=truncated)
        self.ambient = X
        self.lift = lift
        self.degree = degree
        self._pairs: dict[tuple[int, int], tuple[int, ...]] = {}
        self._ids: dict[Simplex, str] = {}
        self._keys: dict[str, Simplex] = {}
        order: list[tuple[int, Simplex]] = []
        for n in range(max_dim + 1):
            for w in candidates(n):
                if w in self._ids or self.degenerate_indices(w, n):
                    continue
                sid = simplex_name(w)
                self._ids[w] = sid
                self._keys[sid] = w
                order.append((n, w))
        for n, w in order:
            faces = [self.locate(X.act(w, lift(coface(n, i), n))) for i in range(n + 1)] if n else []
            self._add(self._ids[w], n, faces)

    def pairs(self, n: int, j: int) -> tuple[int, ...]:
        hit = self._pairs.get((n, j))
        if hit is None:
            d = self.lift(codegeneracy(n - 1, j), n - 1)
            hit = tuple(p for p in range(len(d) - 1) if d[p] == d[p + 1])
            self._pairs[(n, j)] = hit
        return hit

    def degenerate_indices(self, w: Simplex, n: int) -> frozenset[int]:
        s = w.surj
        return frozenset(j for j in range(n) if all(s[p] == s[p + 1] for p in self.pairs(n, j)))

    def locate(self, w: Simplex) -> Simplex:
        """Normal form of the regraded simplex carried by the ``X``-simplex ``w``."""
        n = self.degree(w.dim)
        deg = self.degenerate_indices(w, n)
        if not deg:
            return Simplex(self._ids[w], identity(n))
        eps = surj_from_set(n, deg)
        base = self.ambient.act(w, self.lift(section(eps), n))
        return Simplex(self._ids[base], eps)

    def carrier(self, x: Simplex) -> Simplex:
        """The ``X``-simplex carried by a regraded simplex."""
        w = self._keys[x.base]
        return self.ambient.act(w, self.lift(x.surj, x.surj[-1]))

    def key(self, sid: str) -> Simplex:
        return self._keys[sid]


def _slice_lift(alpha: Op, n: int) -> Op:
    return tuple(alpha) + (n + 1,)


def _coslice_lift(alpha: Op, n: int) -> Op:
    return (0,) + tuple(a + 1 for a in alpha)


def slice_over(X: SSet, a: str) -> tuple[Regraded, SMap]:
    """``X_{/a}`` and its projection to ``X``."""
    if a not in X or X.dimension_of(a) != 0:
        raise SimplicialError(f"vertex {a!r} not found")

    def candidates(n: int) -> Iterator[Simplex]:
        for w in X.simplices(n + 1):
            if X.vertex(w, n + 1) == a:
                yield w

    mark = X.truncated - 1 if X.truncated is not None else None
    S = Regraded(X, _slice_lift, lambda N: N - 1, candidates, max(X.dim, 0), mark)
    proj = SMap(S, X, {sid: X.act(w, identity(w.dim - 1)) for sid, w in S._keys.items()})
    return S, proj


def coslice_under(X: SSet, b: str) -> tuple[Regraded, SMap]:
    """``X_{b/}`` and its projection to ``X``."""
    if b not in X or X.dimension_of(b) != 0:
        raise SimplicialError(f"vertex {b!r} not found")

    def candidates(n: int) -> Iterator[Simplex]:
        for w in X.simplices(n + 1):
            if X.vertex(w, 0) == b:
                yield w

    mark = X.truncated - 1 if X.truncated is not None else None
    S = Regraded(X, _coslice_lift, lambda N: N - 1, candidates, max(X.dim, 0), mark)
    proj = SMap(S, X, {sid: X.act(w, tuple(range(1, w.dim + 1))) for sid, w in S._keys.items()})
    return S, proj


# ---------------------------------------------------------------- nerves


@dataclass
class FiniteCategory:
    """Objects, non-identity arrows ``name -> (source, target)`` and composites.

    ``composition[(g, f)]`` is ``g`` after ``f`` for every composable pair of
    non-identity arrows; it may name an identity via :meth:`identity_name`.
    """

    objects: list[str]
    arrows: dict[str, tuple[str, str]] = field(default_factory=dict)
    composition: dict[tuple[str, str], str] = field(default_factory=dict)

    @staticmethod
    def identity_name(x: str) -> str:
        return f"1_{x}"

    def is_identity(self, name: str) -> bool:
        return name not in self.arrows

    def ends(self, name: str) -> tuple[str, str]:
        if name in self.arrows:
            return self.arrows[name]
        x = name[2:]
        return x, x

    def compose(self, g: str, f: str) -> str:
        if self.is_identity(f):
            return g
        if self.is_identity(g):
            return f
        return self.composition[(g, f)]

    def validate(self) -> list[str]:
        problems = []
        objs = set(self.objects)
        ids = {self.identity_name(x) for x in objs}
        for name, (s, t) in self.arrows.items():
            if s not in objs or t not in objs:
                problems.append(f"arrow {name} has unknown ends")
            if name in ids:
                problems.append(f"arrow {name} clashes with an identity name")
        for f, (a, b) in self.arrows.items():
            for g, (c, d) in self.arrows.items():
                if b != c:
                    continue
                h = self.composition.get((g, f))
                if h is None:
                    problems.append(f"missing composite {g} o {f}")
                elif h in self.arrows:
                    if self.arrows[h] != (a, d):
                        problems.append(f"composite {g} o {f} = {h} has wrong ends")
                elif h != self.identity_name(a) or a != d:
                    problems.append(f"composite {g} o {f} = {h} is not an arrow")
        if problems:
            return problems
        for f, (a, b) in self.arrows.items():
            for g, (c, d) in self.arrows.items():
                if b != c:
                    continue
                for h, (e, k) in self.arrows.items():
                    if d != e:
                        continue
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        problems.append(f"associativity fails for {h}, {g}, {f}")
        return problems

    def is_thin(self) -> bool:
        return len(set(self.arrows.values())) == len(self.arrows) and all(s != t for s, t in self.arrows.values())

    def is_direct(self) -> bool:
        """No cycle of non-identity arrows, so the nerve is finite dimensional."""
        succ: dict[str, set[str]] = {x: set() for x in self.objects}
        for s, t in self.arrows.values():
            succ[s].add(t)
        state: dict[str, int] = {}

        def visit(x: str) -> bool:
            state[x] = 1
            for y in succ[x]:
                if state.get(y) == 1 or (y not in state and not visit(y)):
                    return False
            state[x] = 2
            return True

        return all(x in state or visit(x) for x in self.objects)


def poset_category(elements: Sequence[str], relations: Iterable[tuple[str, str]]) -> FiniteCategory:
    """The poset generated by ``a < b`` pairs (transitively closed here)."""
    less = {(a, b) for a, b in relations if a != b}
    changed = True
    while changed:
        changed = False
        for a, b in list(less):
            for c, d in list(less):
                if b == c and (a, d) not in less:
                    less.add((a, d))
                    changed = True
    if any((b, a) in less for a, b in less):
        raise SimplicialError("relations contain a cycle")
    arrows = {f"{a}<{b}": (a, b) for a, b in sorted(less)}
    comp = {}
    for f, (a, b) in arrows.items():
        for g, (c, d) in arrows.items():
            if b == c:
                comp[(g, f)] = f"{a}<{d}"
    return FiniteCategory(list(elements), arrows, comp)


def nerve(C: FiniteCategory, cap: int | None = None) -> SSet:
    """The nerve; categories with cycles need ``cap`` and yield a truncated result."""
    problems = C.validate()
    if problems:
        raise SimplicialError("invalid composition table: " + "; ".join(problems[:3]))
    direct = C.is_direct()
    if not direct and cap is None:
        raise SimplicialError("nerve has simplices in every dimension; supply a truncation cap")
    thin = C.is_thin()
    out_of: dict[str, list[str]] = {x: [] for x in C.objects}
    for name, (s, t) in C.arrows.items():
        out_of[s].append(name)
    ids: dict[tuple, str] = {}

    def name(chain: tuple, start: str) -> str:
        if not chain:
            return start
        if thin:
            return "<".join([start] + [C.arrows[f][1] for f in chain])
        return "|".join(chain)

    def normal(chain: list[str], start: str) -> Simplex:
        kept = [f for f in chain if not C.is_identity(f)]
        surj = [0]
        for f in chain:
            surj.append(surj[-1] + (0 if C.is_identity(f) else 1))
        first = start
        return Simplex(ids[(tuple(kept), first if kept else _end(chain, start))], tuple(surj))

    def _end(chain: list[str], start: str) -> str:
        return start

    S = SSet(truncated=None if direct else cap)
    level = [((), x) for x in C.objects]
    for x in C.objects:
        ids[((), x)] = x
        S._add(x, 0)
    n = 0
    while level and (cap is None or n < cap):
        n += 1
        nxt = []
        for chain, start in level:
            end = C.ends(chain[-1])[1] if chain else start
            for f in out_of[end]:
                nxt.append((chain + (f,), start))
        for chain, start in nxt:
            ids[(chain, start)] = name(chain, start)
        for chain, start in nxt:
            faces = []
            for i in range(n + 1):
                if i == 0:
                    rest = list(chain[1:])
                    first = C.ends(chain[0])[1]
                elif i == n:
                    rest = list(chain[:-1])
                    first = start
                else:
                    rest = list(chain[: i - 1]) + [C.compose(chain[i], chain[i - 1])] + list(chain[i + 1 :])
                    first = start
                kept = [f for f in rest if not C.is_identity(f)]
                surj = [0]
                for f in rest:
                    surj.append(surj[-1] + (0 if C.is_identity(f) else 1))
                anchor = C.ends(kept[0])[0] if kept else (first if not rest else C.ends(rest[0])[0])
                faces.append(Simplex(ids[(tuple(kept), anchor)], tuple(surj)))
            S._add(ids[(chain, start)], n, faces)
        level = nxt
    return S


def poset_nerve(elements: Sequence[str], relations: Iterable[tuple[str, str]]) -> SSet:
    return nerve(poset_category(elements, relations))


def chain_poset(n: int) -> tuple[list[str], list[tuple[str, str]]]:
    elems = [str(i) for i in range(n + 1)]
    return elems, [(elems[i], elems[i + 1]) for i in range(n)]


def all_posets(size: int) -> list[tuple[list[str], list[tuple[str, str]]]]:
    """Every poset on ``size`` elements up to isomorphism, as strict relations."""
    elems = list(range(size))
    pairs = [(a, b) for a in elems for b in elems if a != b]
    seen = set()
    out = []
    for r in range(len(pairs) + 1):
        for rel in combinations(pairs, r):
            rs = set(rel)
            if any((b, a) in rs for a, b in rs):
                continue
            if any((a, d) not in rs for a, b in rs for c, d in rs if b == c and a != d):
                continue
            canon = min(tuple(sorted((p[a], p[b]) for a, b in rs)) for p in permutations(elems))
            if canon in seen:
                continue
            seen.add(canon)
            out.append(([str(e) for e in elems], [(str(a), str(b)) for a, b in canon]))
    return out


# ---------------------------------------------------------------- isomorphism search


def _colors(
    spaces: Sequence[SSet], seeds: Sequence[Mapping[str, object]], rounds: int = 8
) -> list[dict[str, int]]:
    """Joint color refinement by dimension, seeds, face and coface patterns."""
    cofaces: list[dict[str, list[tuple[str, int, Op]]]] = []
    for S in spaces:
        co: dict[str, list[tuple[str, int, Op]]] = {s: [] for s in S.ids()}
        for sid in S.ids():
            for i, f in enumerate(S.faces_of(sid)):
                co[f.base].append((sid, i, f.surj))
        cofaces.append(co)
    table: dict[object, int] = {}
    colors = []
    for S, seed in zip(spaces, seeds):
        colors.append({s: table.setdefault((S.dimension_of(s), seed.get(s)), len(table)) for s in S.ids()})
    count = len(table)
    for _ in range(rounds):
        table = {}
        new = []
        for S, col, co in zip(spaces, colors, cofaces):
            nc = {}
            for s in S.ids():
                sig = (
                    col[s],
                    tuple((col[f.base], f.surj) for f in S.faces_of(s)),
                    tuple(sorted((col[c], i, surj) for c, i, surj in co[s])),
                )
                nc[s] = table.setdefault(sig, len(table))
            new.append(nc)
        colors = new
        if len(table) == count:
            break
        count = len(table)
    return colors


def iso_search(
    A: SSet,
    B: SSet,
    *,
    fixed: Mapping[str, str] | None = None,
    marks: tuple[Iterable[str], Iterable[str]] | None = None,
    over: tuple[SMap, SMap] | None = None,
) -> SMap | None:
    """An isomorphism ``A -> B`` or ``None`` when none exists.

    ``fixed`` prescribes values on some nondegenerate simplices, ``marks``
    asks that a set of ids of ``A`` go exactly onto a set of ids of ``B`` and
    ``over`` asks that the isomorphism commute with maps to a common base.
    """
    if A.counts() != B.counts():
        return None
    fixed = dict(fixed or {})
    seed_a: dict[str, object] = {}
    seed_b: dict[str, object] = {}
    if marks is not None:
        ma, mb = set(marks[0]), set(marks[1])
        if len(ma) != len(mb):
            return None
        seed_a = {s: ("m", s in ma) for s in A.ids()}
        seed_b = {s: ("m", s in mb) for s in B.ids()}
    if over is not None:
        pa, pb = over
        seed_a = {s: (seed_a.get(s), pa.assignment[s]) for s in A.ids()}
        seed_b = {s: (seed_b.get(s), pb.assignment[s]) for s in B.ids()}
    ca, cb = _colors([A, B], [seed_a, seed_b])
    if sorted(ca.values()) != sorted(cb.values()):
        return None
    for a, b in fixed.items():
        if b not in B or ca[a] != cb[b]:
            return None

    by_color: dict[int, list[str]] = {}
    for s in B.ids():
        by_color.setdefault(cb[s], []).append(s)
    face_index: dict[tuple, list[str]] = {}
    for s in B.ids():
        if B.dimension_of(s) > 0:
            face_index.setdefault(B.faces_of(s), []).append(s)

    order = _search_order(A, ca)
    phi: dict[str, str] = {}
    used: set[str] = set()

    def candidates(x: str) -> list[str]:
        if x in fixed:
            pool = [fixed[x]]
        elif A.dimension_of(x) == 0:
            pool = by_color[ca[x]]
        else:
            key = tuple(Simplex(phi[f.base], f.surj) for f in A.faces_of(x))
            pool = face_index.get(key, [])
        out = [y for y in pool if y not in used and cb[y] == ca[x]]
        if x in fixed and A.dimension_of(x) > 0 and out:
            key = tuple(Simplex(phi[f.base], f.surj) for f in A.faces_of(x))
            if B.faces_of(out[0]) != key:
                return []
        return out

    stack: list[Iterator[str]] = []
    t = 0
    stack.append(iter(candidates(order[0]))) if order else None
    while 0 <= t < len(order):
        x = order[t]
        if x in phi:
            used.discard(phi.pop(x))
        y = next(stack[t], None)
        if y is None:
            stack.pop()
            t -= 1
            continue
        phi[x] = y
        used.add(y)
        t += 1
        if t < len(order):
            stack.append(iter(candidates(order[t])))
    if len(phi) != len(A):
        return None
    return SMap(A, B, {x: nd(y, A.dimension_of(x)) for x, y in phi.items()})


def _search_order(A: SSet, colors: Mapping[str, int]) -> list[str]:
    """Vertices in breadth-first order, each followed by the simplices it completes."""
    verts = A.nondegenerate(0)
    if not verts:
        return A.ids()
    rarity: dict[int, int] = {}
    for v in verts:
        rarity[colors[v]] = rarity.get(colors[v], 0) + 1
    adj: dict[str, list[str]] = {v: [] for v in verts}
    missing: dict[str, int] = {}
    holders: dict[str, list[str]] = {v: [] for v in verts}
    for s in A.ids():
        vs = set(A.vertices(s))
        if A.dimension_of(s) > 0:
            missing[s] = len(vs)
            for v in vs:
                holders[v].append(s)
        if A.dimension_of(s) == 1:
            a, b = A.vertices(s)
            adj[a].append(b)
            adj[b].append(a)
    order: list[str] = []
    placed: set[str] = set()
    pending = sorted(verts, key=lambda v: (rarity[colors[v]], -len(adj[v])))
    queue: list[str] = []
    while len(placed) < len(verts):
        if not queue:
            start = next(v for v in pending if v not in placed)
            queue.append(start)
        v = queue.pop(0)
        if v in placed:
            continue
        placed.add(v)
        order.append(v)
        done = []
        for s in holders[v]:
            missing[s] -= 1
            if missing[s] == 0:
                done.append(s)
        done.sort(key=A.dimension_of)
        order.extend(done)
        for w in sorted(adj[v], key=lambda u: rarity[colors[u]]):
            if w not in placed:
                queue.append(w)
    return order


def iso_of_monos(f: SMap, g: SMap) -> SMap | None:
    """An isomorphism of targets carrying the image of ``f`` onto that of ``g``."""
    if not (f.is_mono() and g.is_mono()):
        raise SimplicialError("iso_of_monos expects monomorphisms")
    return iso_search(f.target, g.target, marks=(f.image(), g.image()))
