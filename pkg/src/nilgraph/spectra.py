"""Exact integer matrices of a graph and spectrum certification by nullity.

A real symmetric matrix is diagonalisable, so an eigenvalue's multiplicity
equals ``nullity(M - λI)``.  A predicted multiset of integer eigenvalues is
therefore the exact spectrum iff each nullity matches and the multiplicities
sum to the dimension.  No floating point is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import BICLIQUE, COMPLETE, ComponentDecomposition, NilpotentGraph

TARGETS = ("A", "D", "L", "Q")


class UnclassifiableComponent(ValueError):
    pass


@dataclass(frozen=True)
class ExactMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i + 1, n))

    def shifted(self, lam: int) -> "ExactMatrix":
        """``M - λI``."""
        return ExactMatrix(tuple(
            tuple(v - lam if i == j else v for j, v in enumerate(row))
            for i, row in enumerate(self.entries)
        ))

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.dim))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def matrix_build(G: NilpotentGraph, target: str) -> ExactMatrix:
    """A, D, L = D - A or Q = D + A with vertices in ascending index order."""
    if target not in TARGETS:
        raise ValueError(f"unknown matrix target {target!r}")
    pos = {v: i for i, v in enumerate(G.vertices)}
    n = len(G.vertices)
    rows = [[0] * n for _ in range(n)]
    for v in G.vertices:
        i = pos[v]
        if target != "A":
            rows[i][i] = G.degree(v)
        if target == "D":
            continue
        sign = -1 if target == "L" else 1
        for w in G.adjacency[v]:
            rows[i][pos[w]] = sign
    return ExactMatrix(tuple(map(tuple, rows)))


def _blocks(entries) -> list[list[int]]:
    """Index sets of the diagonal blocks of a symmetric pattern."""
    n = len(entries)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, block = [s], []
        while stack:
            i = stack.pop()
            block.append(i)
            row = entries[i]
            for j in range(n):
                if not seen[j] and (row[j] or entries[j][i]):
                    seen[j] = True
                    stack.append(j)
        out.append(sorted(block))
    return out


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank by fraction-free (Bareiss) elimination; the pivot is the first
    nonzero entry at or below the current row in the current column."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col + 1, ncols):
                # exact division by the previous pivot (Sylvester identity)
                row_r[c] = (p * row_r[c] - f * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def nullity(M: ExactMatrix) -> int:
    """``dim - rank`` over the rationals, eliminating each diagonal block separately.

    Simultaneous row/column permutation does not change rank, so the rank of
    a block-diagonal pattern is the sum of block ranks.
    """
    if M.dim == 0:
        return 0
    rank = 0
    for block in _blocks(M.entries):
        sub = [[M.entries[i][j] for j in block] for i in block]
        rank += bareiss_rank(sub)
    return M.dim - rank


@dataclass(frozen=True)
class SpectrumPrediction:
    pairs: tuple[tuple[int, int], ...]  # (eigenvalue, multiplicity), eigenvalue descending
    target: str

    @classmethod
    def from_multiset(cls, items, target: str) -> "SpectrumPrediction":
        """Merge (eigenvalue, multiplicity) items, dropping zero multiplicities."""
        merged: dict[int, int] = {}
        for lam, mult in items:
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for eigenvalue {lam}")
            if mult:
                merged[lam] = merged.get(lam, 0) + mult
        return cls(tuple(sorted(merged.items(), key=lambda p: -p[0])), target)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.pairs)

    def to_json(self) -> list:
        return [{"lambda": lam, "mult": mult} for lam, mult in self.pairs]

    def __str__(self):
        return "{" + ", ".join(f"({lam})^{mult}" for lam, mult in self.pairs) + "}"


@dataclass(frozen=True)
class SpectrumCheck:
    ok: bool
    rows: tuple[tuple[int, int, int], ...]  # (eigenvalue, predicted mult, nullity)
    total: int
    dim: int

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "dim": self.dim,
            "predicted_total": self.total,
            "eigenvalues": [{"lambda": l, "mult": m, "nullity": z, "ok": m == z} for l, m, z in self.rows],
        }


def verify_spectrum(M: ExactMatrix, P: SpectrumPrediction) -> SpectrumCheck:
    if not M.is_symmetric():
        raise ValueError("spectrum certification needs a symmetric matrix")
    rows = []
    for lam, mult in sorted(P.pairs, key=lambda p: -p[0]):
        rows.append((lam, mult, nullity(M.shifted(lam))))
    ok = all(m == z for _, m, z in rows) and P.total == M.dim
    return SpectrumCheck(ok, tuple(rows), P.total, M.dim)


def complete_spectrum(t: int, target: str):
    if target == "A":
        return [(-1, t - 1), (t - 1, 1)]
    if target == "L":
        return [(0, 1), (t, t - 1)]
    if target == "Q":
        return [(2 * t - 2, 1), (t - 2, t - 1)]
    raise ValueError(target)


def biclique_spectrum(t: int, target: str):
    if target == "A":
        return [(t, 1), (-t, 1), (0, 2 * t - 2)]
    if target in ("L", "Q"):
        return [(2 * t, 1), (0, 1), (t, 2 * t - 2)]
    raise ValueError(target)


def component_spectrum_prediction(D: ComponentDecomposition, target: str) -> SpectrumPrediction:
    """Union of the K_t and K_{t,t} building-block spectra over all components."""
    items = []
    for c in D.components:
        if c.kind == COMPLETE:
            items += complete_spectrum(c.size, target)
        elif c.kind == BICLIQUE and len(c.parts[0]) == len(c.parts[1]):
            items += biclique_spectrum(len(c.parts[0]), target)
        else:
            raise UnclassifiableComponent(f"no building-block spectrum for component {c.shape}")
    return SpectrumPrediction.from_multiset(items, target)
