"""Finite simplicial sets presented by nondegenerate simplices and face tables.

Conventions
-----------
A monotone map ``[m] -> [n]`` is a tuple of ``m + 1`` weakly increasing values.
``compose(a, b)`` is ``a`` after ``b``.

A (possibly degenerate) simplex is stored in Eilenberg-Zilber normal form as
``Simplex(base, surj)``: ``base`` names a nondegenerate simplex of dimension
``m`` and ``surj`` is a surjection ``[n] -> [m]``.  The simplex is
``S(surj)(base)``.  It is nondegenerate exactly when ``surj`` is an identity.

In JSON a face pointer carries a degeneracy word instead of a surjection.
The word lists the indices ``j`` with ``surj[j] == surj[j + 1]`` in strictly
decreasing order, so ``[i_1, ..., i_k]`` means ``s_{i_1} ... s_{i_k} x`` with
``s_{i_k}`` applied first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping, NamedTuple, Sequence

Op = tuple[int, ...]


class SimplicialError(ValueError):
    """Raised on malformed operators, presentations or maps."""


class TruncationError(SimplicialError):
    """Raised when a check asks for dimensions beyond a truncation mark."""


# ---------------------------------------------------------------- operators


@lru_cache(maxsize=None)
def identity(n: int) -> Op:
    return tuple(range(n + 1))


def compose(alpha: Sequence[int], beta: Sequence[int]) -> Op:
    """Return ``alpha`` after ``beta``."""
    return tuple(alpha[b] for b in beta)


@lru_cache(maxsize=None)
def coface(n: int, i: int) -> Op:
    """The injection ``[n-1] -> [n]`` skipping ``i``."""
    return tuple(v if v < i else v + 1 for v in range(n))


@lru_cache(maxsize=None)
def codegeneracy(n: int, j: int) -> Op:
    """The surjection ``[n+1] -> [n]`` hitting ``j`` twice."""
    return tuple(v if v <= j else v - 1 for v in range(n + 2))


@lru_cache(maxsize=None)
def ez(op: Op) -> tuple[Op, Op]:
    """Split ``op`` as ``injection after surjection``; returns ``(surj, inj)``."""
    image = sorted(set(op))
    pos = {v: k for k, v in enumerate(image)}
    return tuple(pos[v] for v in op), tuple(image)


def degeneracy_set(surj: Sequence[int]) -> frozenset[int]:
    return frozenset(j for j in range(len(surj) - 1) if surj[j] == surj[j + 1])


def surj_from_set(n: int, repeats: Iterable[int]) -> Op:
    """The surjection out of ``[n]`` whose repeated positions are ``repeats``."""
    rep = set(repeats)
    out = [0]
    for j in range(n):
        out.append(out[-1] + (0 if j in rep else 1))
    return tuple(out)


def word_from_surj(surj: Sequence[int]) -> list[int]:
    return sorted(degeneracy_set(surj), reverse=True)


def surj_from_word(dim: int, word: Sequence[int]) -> Op:
    word = list(word)
    if any(a <= b for a, b in zip(word, word[1:])):
        raise SimplicialError(f"degeneracy word {word} is not strictly decreasing")
    n = dim + len(word)
    if word and (word[0] >= n or word[-1] < 0):
        raise SimplicialError(f"degeneracy word {word} out of range for dimension {dim}")
    return surj_from_set(n, word)


@lru_cache(maxsize=None)
def surjections(n: int, m: int) -> tuple[Op, ...]:
    """All surjections ``[n] -> [m]`` in lexicographic order of repeat sets."""
    if m > n or m < 0:
        return ()
    return tuple(surj_from_set(n, rep) for rep in combinations(range(n), n - m))


@lru_cache(maxsize=None)
def section(surj: Op) -> Op:
    """The section of a surjection picking the first index of each block."""
    out: list[int] = []
    for i, v in enumerate(surj):
        if v == len(out):
            out.append(i)
    return tuple(out)


def reverse_op(op: Sequence[int], target_dim: int) -> Op:
    """Conjugate a monotone map by order reversal of source and target."""
    k = len(op) - 1
    return tuple(target_dim - op[k - i] for i in range(k + 1))


def is_monotone(values: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


@dataclass(frozen=True)
class MonotoneMap:
    """A weakly order preserving map ``[m] -> [n]``.

    ``values`` has length ``m + 1`` and ``codomain_size`` is ``n + 1``.
    """

    values: tuple[int, ...]
    codomain_size: int

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise SimplicialError("a monotone map needs a nonempty domain")
        if not is_monotone(vals):
            raise SimplicialError(f"values {vals} are not weakly increasing")
        if vals[0] < 0 or vals[-1] >= self.codomain_size:
            raise SimplicialError(f"values {vals} exceed codomain size {self.codomain_size}")

    @property
    def domain_size(self) -> int:
        return len(self.values)

    @classmethod
    def identity(cls, n: int) -> MonotoneMap:
        return cls(identity(n), n + 1)

    @classmethod
    def coface(cls, n: int, i: int) -> MonotoneMap:
        return cls(coface(n, i), n + 1)

    @classmethod
    def codegeneracy(cls, n: int, j: int) -> MonotoneMap:
        return cls(codegeneracy(n, j), n + 1)

    def __matmul__(self, other: MonotoneMap) -> MonotoneMap:
        if other.codomain_size != self.domain_size:
            raise SimplicialError("monotone maps are not composable")
        return MonotoneMap(compose(self.values, other.values), self.codomain_size)

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.codomain_size

    def ez_factor(self) -> tuple[MonotoneMap, MonotoneMap]:
        surj, inj = ez(self.values)
        return MonotoneMap(surj, len(inj)), MonotoneMap(inj, self.codomain_size)


def ez_factor(op: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
    """Eilenberg-Zilber factorization ``op = injective @ surjective``."""
    return op.ez_factor()


def _as_op(op: MonotoneMap | Sequence[int]) -> Op:
    if isinstance(op, MonotoneMap):
        return op.values
    return tuple(op)


# ---------------------------------------------------------------- simplices


class Simplex(NamedTuple):
    """A normalized simplex: a nondegenerate base and a surjection onto its dimension."""

    base: str
    surj: Op

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def base_dim(self) -> int:
        return self.surj[-1]

    def is_nondegenerate(self) -> bool:
        return self.surj[-1] == len(self.surj) - 1

    def degeneracies(self) -> frozenset[int]:
        return degeneracy_set(self.surj)


NormalizedSimplex = Simplex


def nd(sid: str, dim: int) -> Simplex:
    return Simplex(sid, identity(dim))


def to_opposite(x: Simplex) -> Simplex:
    """The same element read in the opposite simplicial set."""
    return Simplex(x.base, reverse_op(x.surj, x.surj[-1]))


def wrap(sid: str) -> str:
    """Parenthesize ids that would make composite ids ambiguous."""
    if any(c in sid for c in "(),*#|~"):
        return f"({sid})"
    return sid


def simplex_name(x: Simplex) -> str:
    if x.is_nondegenerate():
        return wrap(x.base)
    sep = "" if x.surj[-1] < 10 else "."
    return f"{wrap(x.base)}~{sep.join(map(str, x.surj))}"


# ---------------------------------------------------------------- SSet


class SSet:
    """A finite simplicial set.

    ``dims`` maps each nondegenerate simplex id to its dimension and
    ``faces`` maps ids of positive dimension to their ``d_0 .. d_n`` as
    normalized simplices.  Construction is permissive so that defective
    presentations can be handed to :meth:`validate`; every construction in
    this package produces valid ones.
    """

    def __init__(
        self,
        dims: Mapping[str, int] | None = None,
        faces: Mapping[str, Sequence[Simplex]] | None = None,
        *,
        truncated: int | None = None,
    ) -> None:
        self._dims: dict[str, int] = {}
        self._faces: dict[str, tuple[Simplex, ...]] = {}
        self._graded: dict[int, list[str]] = {}
        self.truncated = truncated
        self._restrict_cache: dict[tuple[str, Op], Simplex] = {}
        self._all_cache: dict[int, tuple[Simplex, ...]] = {}
        self._vertex_cache: dict[str, tuple[str, ...]] = {}
        dims = dims or {}
        faces = faces or {}
        for sid in sorted(dims, key=lambda s: dims[s]):
            self._add(sid, dims[sid], faces.get(sid, ()))

    # construction -------------------------------------------------------

    def _add(self, sid: str, dim: int, faces: Sequence[Simplex] = ()) -> None:
        if sid in self._dims:
            raise SimplicialError(f"duplicate simplex id {sid!r}")
        if dim < 0:
            raise SimplicialError(f"negative dimension for {sid!r}")
        faces = tuple(Simplex(f[0], tuple(f[1])) for f in faces)
        if dim > 0 and len(faces) != dim + 1:
            raise SimplicialError(f"{sid!r} of dimension {dim} needs {dim + 1} faces")
        if dim == 0 and faces:
            raise SimplicialError(f"vertex {sid!r} cannot have faces")
        self._dims[sid] = dim
        self._faces[sid] = faces
        self._graded.setdefault(dim, []).append(sid)
        self._all_cache.clear()
        self.__dict__.pop("_face_index_cache", None)

    # queries ------------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._graded, default=-1)

    def __len__(self) -> int:
        return len(self._dims)

    def __contains__(self, sid: object) -> bool:
        return sid in self._dims

    def ids(self) -> list[str]:
        return [s for n in sorted(self._graded) for s in self._graded[n]]

    def dimension_of(self, sid: str) -> int:
        return self._dims[sid]

    def nondegenerate(self, n: int) -> list[str]:
        return list(self._graded.get(n, ()))

    def counts(self) -> list[int]:
        return [len(self._graded.get(n, ())) for n in range(self.dim + 1)]

    def faces_of(self, sid: str) -> tuple[Simplex, ...]:
        return self._faces[sid]

    def simplex(self, sid: str) -> Simplex:
        return nd(sid, self._dims[sid])

    def is_empty(self) -> bool:
        return not self._dims

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.counts()))

    # operator action ----------------------------------------------------

    def act(self, x: Simplex, op: Sequence[int]) -> Simplex:
        """Normal form of ``S(op)(x)`` for a monotone ``op`` into ``[dim x]``."""
        mu = tuple(x.surj[v] for v in op)
        eps, iota = ez(mu)
        y = self._restrict(x.base, iota)
        if y.surj[-1] == len(y.surj) - 1:
            return Simplex(y.base, eps)
        return Simplex(y.base, tuple(y.surj[e] for e in eps))

    def _restrict(self, b: str, iota: Op) -> Simplex:
        key = (b, iota)
        hit = self._restrict_cache.get(key)
        if hit is not None:
            return hit
        m = self._dims[b]
        if len(iota) == m + 1:
            res = Simplex(b, iota)
        else:
            i = next(v for v, w in enumerate(iota + (m + 1,)) if v != w)
            inner = tuple(v if v < i else v - 1 for v in iota)
            res = self.act(self._faces[b][i], inner)
        self._restrict_cache[key] = res
        return res

    def face(self, x: Simplex, i: int) -> Simplex:
        return self.act(x, coface(x.dim, i))

    def degeneracy(self, x: Simplex, j: int) -> Simplex:
        return self.act(x, codegeneracy(x.dim, j))

    def vertex(self, x: Simplex, i: int) -> str:
        return self.vertices(x.base)[x.surj[i]]

    def vertices(self, sid: str) -> tuple[str, ...]:
        hit = self._vertex_cache.get(sid)
        if hit is None:
            m = self._dims[sid]
            hit = tuple(self._restrict(sid, (i,)).base for i in range(m + 1))
            self._vertex_cache[sid] = hit
        return hit

    def vertex_tuple(self, x: Simplex) -> tuple[str, ...]:
        vs = self.vertices(x.base)
        return tuple(vs[v] for v in x.surj)

    def simplices(self, n: int) -> tuple[Simplex, ...]:
        """All ``n``-simplices, degenerate ones included."""
        hit = self._all_cache.get(n)
        if hit is None:
            out = []
            for m in range(min(n, self.dim) + 1):
                surjs = surjections(n, m)
                for b in self._graded.get(m, ()):
                    out.extend(Simplex(b, s) for s in surjs)
            hit = tuple(out)
            self._all_cache[n] = hit
        return hit

    # structure ----------------------------------------------------------

    def same_as(self, other: SSet) -> bool:
        """Equality of presentations (ids, dimensions and face tables)."""
        return self._dims == other._dims and self._faces == other._faces

    def validate(self) -> list[str]:
        """List violations of pointer hygiene and the simplicial identities."""
        problems: list[str] = []
        for sid in self.ids():
            n = self._dims[sid]
            for i, f in enumerate(self._faces[sid]):
                if f.base not in self._dims:
                    problems.append(f"{sid}: d_{i} points at unknown simplex {f.base!r}")
                    continue
                m = self._dims[f.base]
                if len(f.surj) != n:
                    problems.append(f"{sid}: d_{i} has dimension {len(f.surj) - 1}, expected {n - 1}")
                elif not is_monotone(f.surj) or f.surj[0] != 0 or f.surj[-1] != m or (
                    len(set(f.surj)) != m + 1
                ):
                    problems.append(f"{sid}: d_{i} is not a canonical degeneracy of {f.base!r}")
                if m >= n:
                    problems.append(f"{sid}: d_{i} targets {f.base!r} of dimension {m} >= {n}")
        if problems:
            return problems
        for sid in self.ids():
            n = self._dims[sid]
            if n < 2:
                continue
            x = self.simplex(sid)
            faces = [self.face(x, i) for i in range(n + 1)]
            for j in range(n + 1):
                for i in range(j):
                    lhs = self.face(faces[j], i)
                    rhs = self.face(faces[i], j - 1)
                    if lhs != rhs:
                        problems.append(
                            f"{sid}: d_{i} d_{j} = {simplex_name(lhs)} but "
                            f"d_{j - 1} d_{i} = {simplex_name(rhs)}"
                        )
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    # serialization ------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "simplices": {
                sid: {
                    "dim": self._dims[sid],
                    "faces": [
                        {"target": f.base, "degeneracies": word_from_surj(f.surj)}
                        for f in self._faces[sid]
                    ],
                }
                for sid in self.ids()
            }
        }
        if self.truncated is not None:
            out["truncated"] = self.truncated
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> SSet:
        table = data.get("simplices")
        if not isinstance(table, Mapping):
            raise SimplicialError("expected an object with a 'simplices' table")
        dims: dict[str, int] = {}
        raw: dict[str, list] = {}
        for sid, entry in table.items():
            dims[str(sid)] = int(entry["dim"])
            raw[str(sid)] = list(entry.get("faces", []))
        faces: dict[str, list[Simplex]] = {}
        for sid, entries in raw.items():
            out = []
            for e in entries:
                target = str(e["target"])
                if target not in dims:
                    raise SimplicialError(f"{sid}: face points at unknown simplex {target!r}")
                out.append(Simplex(target, surj_from_word(dims[target], e.get("degeneracies", []))))
            faces[sid] = out
        return cls(dims, faces, truncated=data.get("truncated"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def __repr__(self) -> str:
        tail = f", truncated at {self.truncated}" if self.truncated is not None else ""
        return f"SSet(counts={self.counts()}{tail})"


def act(S: SSet, x: Simplex, op: MonotoneMap | Sequence[int]) -> Simplex:
    """Checked operator action."""
    values = _as_op(op)
    if not values or not is_monotone(values):
        raise SimplicialError(f"{values} is not a monotone map")
    if values[0] < 0 or values[-1] > x.dim:
        raise SimplicialError(f"operator {values} does not land in [{x.dim}]")
    if isinstance(op, MonotoneMap) and op.codomain_size != x.dim + 1:
        raise SimplicialError(f"operator codomain {op.codomain_size} != {x.dim + 1}")
    return S.act(x, values)


def enumerate_simplices(S: SSet, n: int) -> frozenset[Simplex]:
    return frozenset(S.simplices(n))


def validate(S: SSet) -> list[str]:
    return S.validate()


class Builder:
    """Incremental construction of an :class:`SSet` with lookups by key."""

    def __init__(self) -> None:
        self.sset = SSet()
        self.ids: dict[Any, str] = {}
        self.keys: dict[str, Any] = {}

    def add(self, key: Any, sid: str, dim: int, faces: Sequence[Simplex] = ()) -> str:
        self.sset._add(sid, dim, faces)
        self.ids[key] = sid
        self.keys[sid] = key
        return sid

    def fresh(self, sid: str) -> str:
        while sid in self.sset:
            sid += "'"
        return sid


# ---------------------------------------------------------------- maps


class SMap:
    """A simplicial map stored on nondegenerate generators."""

    def __init__(self, source: SSet, target: SSet, assignment: Mapping[str, Simplex]) -> None:
        self.source = source
        self.target = target
        self.assignment: dict[str, Simplex] = {
            k: Simplex(v[0], tuple(v[1])) for k, v in assignment.items()
        }
        self._cache: dict[Simplex, Simplex] = {}

    def __call__(self, x: Simplex) -> Simplex:
        hit = self._cache.get(x)
        if hit is None:
            v = self.assignment[x.base]
            if x.surj[-1] == len(x.surj) - 1 and len(x.surj) == len(v.surj):
                hit = v
            else:
                hit = self.target.act(v, x.surj)
            self._cache[x] = hit
        return hit

    def of(self, sid: str) -> Simplex:
        return self.assignment[sid]

    @classmethod
    def identity(cls, S: SSet) -> SMap:
        return cls(S, S, {sid: S.simplex(sid) for sid in S.ids()})

    def validate(self) -> list[str]:
        problems = []
        for sid in self.source.ids():
            if sid not in self.assignment:
                problems.append(f"{sid}: no value assigned")
                continue
            v = self.assignment[sid]
            n = self.source.dimension_of(sid)
            if v.base not in self.target or v.dim != n:
                problems.append(f"{sid}: value {simplex_name(v)} is not an {n}-simplex of the target")
        if problems:
            return problems
        for sid in self.source.ids():
            x = self.source.simplex(sid)
            for i in range(x.dim + 1 if x.dim > 0 else 0):
                lhs = self(self.source.face(x, i))
                rhs = self.target.face(self(x), i)
                if lhs != rhs:
                    problems.append(f"{sid}: f(d_{i} x) = {simplex_name(lhs)} but d_{i} f(x) = {simplex_name(rhs)}")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def is_mono(self) -> bool:
        seen = set()
        for v in self.assignment.values():
            if not v.is_nondegenerate() or v.base in seen:
                return False
            seen.add(v.base)
        return True

    def is_iso(self) -> bool:
        return self.is_mono() and len(self.assignment) == len(self.target)

    def image(self) -> set[str]:
        """Nondegenerate target ids hit by nondegenerate source generators (for monos)."""
        return {v.base for v in self.assignment.values() if v.is_nondegenerate()}

    def inverse(self) -> SMap:
        if not self.is_iso():
            raise SimplicialError("map is not an isomorphism")
        return SMap(self.target, self.source, {v.base: self.source.simplex(k) for k, v in self.assignment.items()})

    def same_as(self, other: SMap) -> bool:
        return self.assignment == other.assignment

    def to_json(self) -> dict[str, Any]:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "assignment": {
                k: {"target": v.base, "surjection": list(v.surj)} for k, v in self.assignment.items()
            },
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> SMap:
        source = SSet.from_json(data["source"])
        target = SSet.from_json(data["target"])
        assignment = {}
        for k, v in data["assignment"].items():
            surj = tuple(int(t) for t in v["surjection"])
            if v["target"] not in target:
                raise SimplicialError(f"{k}: unknown target simplex {v['target']!r}")
            if not is_monotone(surj) or surj[0] != 0 or len(set(surj)) != target.dimension_of(v["target"]) + 1:
                raise SimplicialError(f"{k}: {list(surj)} is not a surjection onto {v['target']!r}")
            assignment[k] = Simplex(v["target"], surj)
        return cls(source, target, assignment)

    def __repr__(self) -> str:
        return f"SMap({self.source!r} -> {self.target!r})"


def compose_maps(g: SMap, f: SMap) -> SMap:
    """Return ``g`` after ``f``."""
    return SMap(f.source, g.target, {k: g(v) for k, v in f.assignment.items()})


def restrict_map(f: SMap, sub: SSet) -> SMap:
    """Restrict ``f`` to a subcomplex whose ids are ids of ``f.source``."""
    return SMap(sub, f.target, {k: f.assignment[k] for k in sub.ids()})


def subcomplex(S: SSet, keep: Iterable[str]) -> SSet:
    """The subcomplex spanned by ``keep``; it must be closed under faces."""
    keep = set(keep)
    out = SSet(truncated=S.truncated)
    for sid in S.ids():
        if sid in keep:
            faces = S.faces_of(sid)
            for f in faces:
                if f.base not in keep:
                    raise SimplicialError(f"{sid!r} has face {f.base!r} outside the subcomplex")
            out._add(sid, S.dimension_of(sid), faces)
    return out


def closure(S: SSet, ids: Iterable[str]) -> set[str]:
    """Ids of the smallest subcomplex containing ``ids``."""
    out: set[str] = set()
    stack = list(ids)
    while stack:
        s = stack.pop()
        if s in out:
            continue
        out.add(s)
        stack.extend(f.base for f in S.faces_of(s))
    return out


def inclusion(sub: SSet, S: SSet) -> SMap:
    return SMap(sub, S, {sid: S.simplex(sid) for sid in sub.ids()})


def dumps(obj: SSet | SMap) -> str:
    return json.dumps(obj.to_json(), indent=1)


def load(data: Mapping[str, Any]) -> SSet | SMap:
    if "assignment" in data:
        return SMap.from_json(data)
    return SSet.from_json(data)


# ---------------------------------------------------------------- map enumeration


def _face_index(T: SSet, n: int) -> dict[tuple[Simplex, ...], list[Simplex]]:
    cache = T.__dict__.setdefault("_face_index_cache", {})
    hit = cache.get(n)
    if hit is None:
        hit = {}
        for y in T.simplices(n):
            key = tuple(T.face(y, i) for i in range(n + 1)) if n else ()
            hit.setdefault(key, []).append(y)
        cache[n] = hit
    return hit


def enumerate_maps(
    S: SSet,
    T: SSet,
    *,
    fixed: Mapping[str, Simplex] | None = None,
    over: tuple[SMap, SMap] | None = None,
    limit: int | None = None,
) -> Iterator[dict[str, Simplex]]:
    """All simplicial maps ``S -> T`` as assignments, in a stable order.

    ``fixed`` prescribes values on some generators of ``S``; ``over = (p, q)``
    restricts to maps ``u`` with ``q u = p``.  Generators are visited by
    increasing dimension and candidates are looked up from their faces.
    """
    fixed = dict(fixed or {})
    if T.truncated is not None and S.dim > T.truncated:
        raise TruncationError(f"target known only up to dimension {T.truncated}, source has dimension {S.dim}")
    order = S.ids()
    if not order:
        yield {}
        return
    p, q = over if over is not None else (None, None)
    phi: dict[str, Simplex] = {}

    def candidates(x: str) -> list[Simplex]:
        n = S.dimension_of(x)
        key = tuple(T.act(phi[f.base], f.surj) for f in S.faces_of(x))
        pool = _face_index(T, n).get(key, [])
        if x in fixed:
            pool = [y for y in pool if y == fixed[x]]
        if p is not None:
            want = p.assignment[x]
            pool = [y for y in pool if q(y) == want]
        return pool

    stack = [iter(candidates(order[0]))]
    t = 0
    count = 0
    while t >= 0:
        y = next(stack[t], None)
        if y is None:
            stack.pop()
            t -= 1
            continue
        phi[order[t]] = y
        if t + 1 == len(order):
            yield dict(phi)
            count += 1
            if limit is not None and count >= limit:
                return
            continue
        t += 1
        stack.append(iter(candidates(order[t])))


def count_maps(S: SSet, T: SSet, **kw: Any) -> int:
    return sum(1 for _ in enumerate_maps(S, T, **kw))


def precompose(phi: Mapping[str, Simplex], T: SSet, r: SMap) -> dict[str, Simplex]:
    """The assignment of ``phi`` after ``r`` (``phi`` is an assignment on ``r.target``)."""
    out = {}
    for k, v in r.assignment.items():
        w = phi[v.base]
        out[k] = w if v.is_nondegenerate() else T.act(w, v.surj)
    return out
