"""Reduced integral simplicial homology via Smith normal form.

Everything is exact Python integers.  Boundary matrices are kept sparse
(row -> {col: value}); elimination first clears everything reachable with
unit pivots, then falls back to smallest-magnitude pivoting with Euclidean
row/column moves on whatever is left.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from .complex import SimplicialComplex
from .spheres import HomotopyClass


@dataclass
class IntegerMatrix:
    rows: int
    cols: int
    entries: dict[int, dict[int, int]] = field(default_factory=dict)

    @classmethod
    def from_dense(cls, data: list[list[int]]) -> "IntegerMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            nz = {j: int(v) for j, v in enumerate(row) if v}
            if nz:
                entries[i] = nz
        return cls(rows, cols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, row in self.entries.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out: dict[int, dict[int, int]] = {}
        for i, row in self.entries.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                for j, b in other.entries.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    def nnz(self) -> int:
        return sum(len(r) for r in self.entries.values())


def boundary_matrix(K: SimplicialComplex, d: int) -> IntegerMatrix:
    """Signed incidence of d-faces into (d-1)-faces.

    d = 0 gives the augmentation row into the empty face.  Out-of-range d
    yields an empty matrix of the right shape.
    """
    lower = K.faces.get(d - 1, [])
    upper = K.faces.get(d, [])
    index = {f: i for i, f in enumerate(lower)}
    entries: dict[int, dict[int, int]] = {}
    for j, f in enumerate(upper):
        for i in range(len(f)):
            r = index[f[:i] + f[i + 1:]]
            entries.setdefault(r, {})[j] = -1 if i % 2 else 1
    return IntegerMatrix(len(lower), len(upper), entries)


# -- Smith normal form -------------------------------------------------


class _Sparse:
    def __init__(self, m: IntegerMatrix):
        self.rows = {i: dict(r) for i, r in m.entries.items() if r}
        self.cols: dict[int, set[int]] = {}
        for i, r in self.rows.items():
            for j in r:
                self.cols.setdefault(j, set()).add(i)

    def _set(self, i, j, v):
        row = self.rows.setdefault(i, {})
        if v:
            row[j] = v
            self.cols.setdefault(j, set()).add(i)
        else:
            row.pop(j, None)
            col = self.cols.get(j)
            if col is not None:
                col.discard(i)
                if not col:
                    del self.cols[j]
            if not row:
                del self.rows[i]

    def add_row(self, dst, src, q):
        """row[dst] -= q * row[src]"""
        for j, v in list(self.rows[src].items()):
            self._set(dst, j, self.rows.get(dst, {}).get(j, 0) - q * v)

    def add_col(self, dst, src, q):
        """col[dst] -= q * col[src]"""
        for i in list(self.cols.get(src, ())):
            v = self.rows[i][src]
            self._set(i, dst, self.rows[i].get(dst, 0) - q * v)

    def drop(self, i, j):
        for jj in list(self.rows.get(i, {})):
            self._set(i, jj, 0)
        for ii in list(self.cols.get(j, ())):
            self._set(ii, j, 0)


def _unit_sweep(s: _Sparse, diag: list[int]) -> None:
    progress = True
    while progress:
        progress = False
        for j in sorted(s.cols, key=lambda c: len(s.cols[c])):
            if j not in s.cols:
                continue
            units = [i for i in s.cols[j] if abs(s.rows[i][j]) == 1]
            if not units:
                continue
            p = min(units, key=lambda i: (len(s.rows[i]), i))
            pv = s.rows[p][j]
            for i in sorted(s.cols[j] - {p}):
                s.add_row(i, p, s.rows[i][j] * pv)
            # column j is now the lone pivot; column operations only touch row p
            s.drop(p, j)
            diag.append(1)
            progress = True


def _general(s: _Sparse, diag: list[int]) -> None:
    while s.rows:
        p, c, pv = min(
            ((i, j, v) for i, r in s.rows.items() for j, v in r.items()),
            key=lambda x: (abs(x[2]), x[0], x[1]),
        )
        clean = True
        for i in sorted(s.cols[c] - {p}):
            q = s.rows[i][c] // pv
            s.add_row(i, p, q)
            if s.rows.get(i, {}).get(c):
                clean = False
        for j in sorted(set(s.rows[p]) - {c}):
            q = s.rows[p][j] // pv
            s.add_col(j, c, q)
            if s.rows.get(p, {}).get(j):
                clean = False
        if clean:
            s.drop(p, c)
            diag.append(abs(pv))


def _normalize_diagonal(diag: list[int]) -> list[int]:
    d = sorted(diag)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = d[i], d[j]
            if b % a:
                g = gcd(a, b)
                d[i], d[j] = g, a * b // g
    return sorted(d)


def smith_normal_form(m: IntegerMatrix) -> tuple[int, list[int]]:
    """Rank and invariant factors d1 | d2 | ... of ``m``."""
    s = _Sparse(m)
    diag: list[int] = []
    _unit_sweep(s, diag)
    _general(s, diag)
    return len(diag), _normalize_diagonal(diag)


def rank_bareiss(m: IntegerMatrix) -> int:
    """Rank by fraction-free Gaussian elimination on a dense copy."""
    a = m.to_dense()
    rows, cols = m.rows, m.cols
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        for r in range(rank + 1, rows):
            row = a[r]
            f = row[c]
            for k in range(c + 1, cols):
                row[k] = (pr[c] * row[k] - f * pr[k]) // prev
            row[c] = 0
        prev = pr[c]
        rank += 1
        if rank == rows:
            break
    return rank


# -- homology ----------------------------------------------------------


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology: Betti numbers and torsion per dimension."""

    betti: dict[int, int]
    torsion: dict[int, list[int]] = field(default_factory=dict)

    def nonzero(self) -> tuple:
        b = tuple(sorted((d, c) for d, c in self.betti.items() if c))
        t = tuple(sorted((d, tuple(sorted(f))) for d, f in self.torsion.items() if f))
        return b, t

    def same_homology(self, other: "HomologyProfile") -> bool:
        return self.nonzero() == other.nonzero()

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion.values())

    @property
    def euler(self) -> int:
        return sum((-1 if d % 2 else 1) * c for d, c in self.betti.items())

    def to_dict(self) -> dict:
        b, t = self.nonzero()
        return {
            "betti": {str(d): c for d, c in b},
            "torsion": {str(d): list(f) for d, f in t},
            "euler": self.euler,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self):
        b, t = self.nonzero()
        parts = [f"b{d}={c}" for d, c in b] + [f"T{d}={list(f)}" for d, f in t]
        return ", ".join(parts) or "acyclic"


def reduced_homology(K: SimplicialComplex) -> HomologyProfile:
    top = K.dim
    ranks = {}
    factors = {}
    for d in range(0, top + 2):
        r, inv = smith_normal_form(boundary_matrix(K, d))
        ranks[d] = r
        factors[d] = [x for x in inv if x > 1]
    betti = {}
    torsion = {}
    for d in range(-1, top + 1):
        betti[d] = len(K.faces[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if factors.get(d + 1):
            torsion[d] = factors[d + 1]
    return HomologyProfile(betti, torsion)


def reduced_homology_ranks(K: SimplicialComplex) -> dict[int, int]:
    """Betti numbers from Bareiss ranks; ignores torsion.  Cross-check channel."""
    ranks = {d: rank_bareiss(boundary_matrix(K, d)) for d in range(0, K.dim + 2)}
    return {d: len(K.faces[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(-1, K.dim + 1)}


def euler_characteristic(K: SimplicialComplex) -> int:
    """Reduced Euler characteristic from the face counts."""
    return sum((-1 if d % 2 else 1) * len(fs) for d, fs in K.faces.items())


def wedge_profile(h: HomologyProfile) -> HomotopyClass | None:
    """The wedge of spheres with these Betti numbers, if torsion-free.

    This is only homology-consistent: matching Betti numbers do not prove
    a homotopy equivalence.
    """
    if not h.torsion_free:
        return None
    b, _ = h.nonzero()
    return HomotopyClass.from_counts(dict(b))


# -- profile algebra ---------------------------------------------------


def profile_of_class(h: HomotopyClass) -> HomologyProfile:
    return HomologyProfile(dict(h.spheres))


def _is_empty_profile(p: HomologyProfile) -> bool:
    return p.betti.get(-1, 0) != 0


def suspend_profile(p: HomologyProfile, k: int = 1) -> HomologyProfile:
    return HomologyProfile(
        {d + k: c for d, c in p.betti.items() if c},
        {d + k: list(f) for d, f in p.torsion.items() if f},
    )


def wedge_profiles(*ps: HomologyProfile) -> HomologyProfile:
    betti: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    for p in ps:
        if _is_empty_profile(p) and len(ps) > 1:
            raise ValueError("cannot wedge the empty complex with anything")
        for d, c in p.betti.items():
            if c:
                betti[d] = betti.get(d, 0) + c
        for d, f in p.torsion.items():
            if f:
                torsion.setdefault(d, []).extend(f)
    return HomologyProfile(betti, {d: sorted(f) for d, f in torsion.items()})


def join_profiles(*ps: HomologyProfile) -> HomologyProfile:
    """Graded convolution with a shift of one; torsion-free inputs only."""
    acc = {-1: 1}
    for p in ps:
        if not p.torsion_free:
            raise ValueError("join of torsion profiles is not supported")
        nxt: dict[int, int] = {}
        for i, a in acc.items():
            for j, b in p.betti.items():
                if a and b:
                    nxt[i + j + 1] = nxt.get(i + j + 1, 0) + a * b
        acc = nxt
    return HomologyProfile({d: c for d, c in acc.items() if c})
