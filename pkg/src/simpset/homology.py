"""Integral homology of finite simplicial sets from normalized chains."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .kernel import SimplicialError, SSet, nd


@dataclass
class ChainComplex:
    """Normalized chains: bases are nondegenerate simplices, degenerate faces drop out.

    ``boundaries[n]`` is the matrix of ``d: C_n -> C_{n-1}`` stored as one
    sparse column per ``n``-simplex (``{row index: coefficient}``).
    """

    bases: list[list[str]]
    boundaries: list[list[dict[int, int]]]

    @classmethod
    def of(cls, S: SSet) -> ChainComplex:
        bases = [S.nondegenerate(n) for n in range(S.dim + 1)]
        index = [{sid: i for i, sid in enumerate(b)} for b in bases]
        boundaries: list[list[dict[int, int]]] = [[{} for _ in bases[0]]] if bases else []
        for n in range(1, len(bases)):
            cols = []
            for sid in bases[n]:
                col: dict[int, int] = {}
                x = nd(sid, n)
                for i in range(n + 1):
                    y = S.face(x, i)
                    if y.is_nondegenerate():
                        r = index[n - 1][y.base]
                        col[r] = col.get(r, 0) + (-1) ** i
                cols.append({r: v for r, v in col.items() if v})
            boundaries.append(cols)
        cc = cls(bases, boundaries)
        if not cc.squares_to_zero():
            raise SimplicialError("boundary of a boundary is nonzero")
        return cc

    def squares_to_zero(self) -> bool:
        for n in range(2, len(self.boundaries)):
            lower = self.boundaries[n - 1]
            for col in self.boundaries[n]:
                acc: dict[int, int] = {}
                for r, v in col.items():
                    for s, w in lower[r].items():
                        acc[s] = acc.get(s, 0) + v * w
                if any(acc.values()):
                    return False
        return True

    def matrix(self, n: int) -> list[list[int]]:
        """Dense matrix of ``d_n`` (rows: ``(n-1)``-simplices)."""
        rows = len(self.bases[n - 1]) if n > 0 else 0
        out = [[0] * len(self.bases[n]) for _ in range(rows)]
        for j, col in enumerate(self.boundaries[n]):
            for i, v in col.items():
                out[i][j] = v
        return out


# ---------------------------------------------------------------- Smith normal form


def _normalize_diagonal(diag: list[int]) -> list[int]:
    """Turn any diagonal presentation into the divisibility chain of invariant factors."""
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                g = gcd(d[i], d[j])
                if g != d[i]:
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def smith_invariants(columns: Sequence[dict[int, int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix given as sparse columns."""
    cols: dict[int, dict[int, int]] = {j: dict(c) for j, c in enumerate(columns) if c}
    rows: dict[int, set[int]] = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)

    def add_col(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        d = cols[dst]
        for i, v in cols[src].items():
            w = d.get(i, 0) - q * v
            if w:
                if i not in d:
                    rows[i].add(dst)
                d[i] = w
            elif i in d:
                del d[i]
                rows[i].discard(dst)
        if not d:
            del cols[dst]

    def add_row(dst: int, src: int, q: int) -> None:
        # row dst -= q * row src
        for j in list(rows.get(src, ())):
            c = cols[j]
            w = c.get(dst, 0) - q * c[src]
            if w:
                if dst not in c:
                    rows.setdefault(dst, set()).add(j)
                c[dst] = w
            elif dst in c:
                del c[dst]
                rows[dst].discard(j)
                if not c:
                    del cols[j]

    diag: list[int] = []
    while cols:
        best = None
        for j, c in cols.items():
            for i, v in c.items():
                if best is None or abs(v) < abs(best[2]):
                    best = (i, j, v)
                    if abs(v) == 1:
                        break
            if best is not None and abs(best[2]) == 1:
                break
        i, j, p = best
        while True:
            dirty = False
            for k in [k for k in cols[j] if k != i]:
                q = cols[j][k] // p
                add_row(k, i, q)
                if j in cols and k in cols[j]:
                    dirty = True
            for k in [k for k in rows.get(i, ()) if k != j]:
                q = cols[k][i] // p
                add_col(k, j, q)
                if k in cols and i in cols[k]:
                    dirty = True
            if not dirty:
                break
            # a remainder survived; it is smaller than the pivot, so pivot on it instead
            cands = [(abs(v), k, j) for k, v in cols[j].items()]
            cands += [(abs(cols[k][i]), i, k) for k in rows.get(i, ())]
            _, i, j = min(cands)
            p = cols[j][i]
        diag.append(p)
        for k in list(cols[j]):
            rows[k].discard(j)
        del cols[j]
        rows.pop(i, None)
    return _normalize_diagonal(diag)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of a dense integer matrix."""
    ncols = len(matrix[0]) if matrix else 0
    columns = [{i: row[j] for i, row in enumerate(matrix) if row[j]} for j in range(ncols)]
    return smith_invariants(columns)


# ---------------------------------------------------------------- homology


@dataclass(frozen=True)
class HomologySummary:
    """``betti[k]`` and ``torsion[k]`` for ``H_k``; trailing zero groups are dropped."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler: int
    components: int

    def group(self, k: int) -> str:
        b = self.betti[k] if k < len(self.betti) else 0
        t = self.torsion[k] if k < len(self.torsion) else ()
        parts = (["Z" if b == 1 else f"Z^{b}"] if b else []) + [f"Z/{d}" for d in t]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "euler": self.euler,
            "components": self.components,
        }


def homology(S: SSet) -> HomologySummary:
    cc = ChainComplex.of(S)
    dims = [len(b) for b in cc.bases]
    ranks = []
    inv = []
    for n in range(len(dims)):
        f = smith_invariants(cc.boundaries[n]) if n else []
        ranks.append(len(f))
        inv.append(f)
    ranks.append(0)
    inv.append([])
    betti = []
    torsion = []
    for n in range(len(dims)):
        betti.append(dims[n] - ranks[n] - ranks[n + 1])
        torsion.append(tuple(d for d in inv[n + 1] if d > 1))
    while betti and betti[-1] == 0 and not torsion[-1]:
        betti.pop()
        torsion.pop()
    euler = sum((-1) ** n * c for n, c in enumerate(dims))
    if euler != sum((-1) ** n * b for n, b in enumerate(betti)):
        raise SimplicialError("Euler characteristic disagrees with Betti numbers")
    return HomologySummary(tuple(betti), tuple(torsion), euler, betti[0] if betti else 0)


@dataclass
class HomologyComparison:
    left: HomologySummary
    right: HomologySummary
    rows: list[tuple[int, str, str, bool]]

    @property
    def equal(self) -> bool:
        return self.left == self.right

    def describe(self) -> str:
        verdict = "consistent with a weak equivalence" if self.equal else "homology differs"
        lines = [f"H_{k}: {a} | {b}{'' if same else '  <- mismatch'}" for k, a, b, same in self.rows]
        return "\n".join(lines + [verdict])


def compare_homology(A: SSet, B: SSet) -> HomologyComparison:
    ha, hb = homology(A), homology(B)
    top = max(len(ha.betti), len(hb.betti))
    rows = [(k, ha.group(k), hb.group(k), ha.group(k) == hb.group(k)) for k in range(top)]
    return HomologyComparison(ha, hb, rows)
