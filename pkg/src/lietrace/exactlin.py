"""Exact sparse linear algebra over the rationals and the integers.

Ranks, kernels, incremental row spans, Smith and Hermite normal forms, and
structures of finitely generated abelian quotients.  All arithmetic is
arbitrary precision (``int`` / ``fractions.Fraction``); no floating point is
used anywhere, so every reported number is exact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import _words


class SparseVector:
    """Sparse rational vector; zero entries are never stored."""

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        data = entries.items() if isinstance(entries, dict) else entries
        self.entries = {}
        for col, val in data:
            f = val if isinstance(val, Fraction) else Fraction(val)
            if f:
                self.entries[int(col)] = f

    @classmethod
    def from_dense(cls, values):
        return cls({i: v for i, v in enumerate(values)})

    def get(self, col, default=Fraction(0)):
        return self.entries.get(col, default)

    def items(self):
        return self.entries.items()

    def support(self):
        return sorted(self.entries)

    def is_zero(self):
        return not self.entries

    def scaled(self, c):
        c = Fraction(c)
        return SparseVector({col: c * v for col, v in self.entries.items()})

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if isinstance(other, SparseVector):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __repr__(self):
        inner = ", ".join(f"{c}: {v}" for c, v in sorted(self.entries.items()))
        return f"SparseVector({{{inner}}})"


class SparseMatrix:
    """A list of sparse rows with a fixed column count."""

    __slots__ = ("ncols", "rows")

    def __init__(self, ncols: int, rows=()):
        self.ncols = int(ncols)
        self.rows = []
        for row in rows:
            if not isinstance(row, SparseVector):
                row = SparseVector(row)
            if row.entries and (max(row.entries) >= self.ncols or min(row.entries) < 0):
                raise ValueError("row has entries outside 0..ncols-1")
            self.rows.append(row)

    @classmethod
    def from_dense(cls, rows):
        rows = list(rows)
        ncols = max((len(r) for r in rows), default=0)
        return cls(ncols, [SparseVector.from_dense(r) for r in rows])

    @property
    def nrows(self):
        return len(self.rows)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols})"


def _rref(rows, ncols):
    """Reduced row echelon form over Q.

    Returns (pivot columns, reduced rows); pivot rows are normalized to pivot
    entry 1 and fully reduced against each other.  Pivot rows are chosen by
    sparsity (fewest stored entries), ties broken by leading column and then
    input order, which makes the output deterministic.
    """
    work = [dict(r.entries) if isinstance(r, SparseVector) else dict(r) for r in rows]
    work = [r for r in work if r]
    pivots, done = [], []
    for col in range(ncols):
        cand = [r for r in work if col in r]
        if not cand:
            continue
        cand.sort(key=lambda r: (len(r), min(r)))
        piv = cand[0]
        work.remove(piv)
        inv = 1 / piv[col]
        piv = {c: v * inv for c, v in piv.items()}
        for other in work + done:
            a = other.get(col)
            if a:
                for c, v in piv.items():
                    nv = other.get(c, Fraction(0)) - a * v
                    if nv:
                        other[c] = nv
                    elif c in other:
                        del other[c]
        work = [r for r in work if r]
        pivots.append(col)
        done.append(piv)
    return pivots, done


def rref(m: SparseMatrix):
    """Canonical RREF of m: (pivot columns, rows as SparseVectors)."""
    pivots, rows = _rref(m.rows, m.ncols)
    return pivots, [SparseVector(r) for r in rows]


def rank(m: SparseMatrix) -> int:
    """Rank over Q, by exact rational elimination."""
    pivots, _ = _rref(m.rows, m.ncols)
    return len(pivots)


def kernel_basis(m: SparseMatrix):
    """Basis of the right null space over Q; one vector per free column."""
    pivots, rows = _rref(m.rows, m.ncols)
    pivot_row = dict(zip(pivots, rows))
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for p in pivots:
            a = pivot_row[p].get(free)
            if a:
                vec[p] = -a
        basis.append(SparseVector(vec))
    return basis


def _to_int_vec(vec, ncols):
    """Clear denominators and drop zeros; returns a plain {col: int} dict."""
    if isinstance(vec, SparseVector):
        items = vec.entries.items()
    elif isinstance(vec, dict):
        items = vec.items()
    else:
        items = enumerate(vec)
    pairs = []
    den = 1
    for col, val in items:
        if not val:
            continue
        col = int(col)
        if col < 0 or col >= ncols:
            raise ValueError(f"index {col} out of range 0..{ncols - 1}")
        if isinstance(val, Fraction):
            den = lcm(den, val.denominator)
        pairs.append((col, val))
    out = {}
    for col, val in pairs:
        if isinstance(val, Fraction):
            out[col] = int(val * den)
        else:
            out[col] = int(val) * den
    return out


def _make_primitive(v):
    g = 0
    for val in v.values():
        g = gcd(g, val)
        if g == 1:
            return
    if g > 1:
        for col in v:
            v[col] //= g


class IncrementalSpan:
    """A growing row space with exact incremental membership tests.

    Rows are held internally as primitive integer vectors in row echelon form,
    one per pivot column; insertion order never changes the row space or the
    final dimension.  ``reduced_rows`` exposes the pivot-normalized (pivot
    entry 1) rational view.
    """

    __slots__ = ("ncols", "_rows")

    def __init__(self, ncols: int):
        self.ncols = int(ncols)
        self._rows: dict = {}  # pivot column -> (pivot value > 0, {col: int})

    @property
    def dim(self) -> int:
        return len(self._rows)

    def pivot_columns(self):
        return sorted(self._rows)

    def _reduce(self, v):
        """Reduce v (mutated) against the stored rows; returns the remainder."""
        rows = self._rows
        if not v:
            return v
        heap = list(v)
        heapq.heapify(heap)
        steps = 0
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                v.pop(c, None)
                continue
            hit = rows.get(c)
            if hit is None:
                break  # c is the live leading column
            p, row = hit
            del v[c]
            g = gcd(a, p)
            mv, ma = p // g, a // g
            if mv != 1:
                for cc in v:
                    v[cc] *= mv
            for cc, val in row.items():
                if cc == c:
                    continue
                old = v.get(cc)
                if old is None:
                    v[cc] = -ma * val
                    heapq.heappush(heap, cc)
                else:
                    nv = old - ma * val
                    if nv:
                        v[cc] = nv
                    else:
                        del v[cc]
            steps += 1
            if mv != 1 and steps % 8 == 0:
                _make_primitive(v)
        return v

    def insert(self, vec) -> bool:
        """Insert a vector; True iff it was independent of the current span."""
        v = self._reduce(_to_int_vec(vec, self.ncols))
        if not v:
            return False
        _make_primitive(v)
        lead = min(v)
        if v[lead] < 0:
            for col in v:
                v[col] = -v[col]
        self._rows[lead] = (v[lead], v)
        return True

    def contains(self, vec) -> bool:
        return not self._reduce(_to_int_vec(vec, self.ncols))

    @property
    def reduced_rows(self):
        out = []
        for lead in sorted(self._rows):
            p, row = self._rows[lead]
            out.append(SparseVector({c: Fraction(val, p) for c, val in row.items()}))
        return out


def span_insert(s: IncrementalSpan, v):
    """Insert v into s; returns (s, independent flag)."""
    return s, s.insert(v)


@dataclass(frozen=True)
class QuotientStructure:
    """Isomorphism type of a f.g. abelian group: Z^free_rank + sum of Z/d."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion is not a divisibility chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion entries must exceed 1")

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.describe()


def _as_int(v):
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ValueError(f"entry {v} is not an integer")
        return v.numerator
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"entry {v!r} is not an integer")
    return v


def _dense_int_rows(rows, ncols=None):
    out = []
    width = 0
    for row in rows:
        if isinstance(row, SparseVector):
            row = {c: _as_int(v) for c, v in row.entries.items()}
        if isinstance(row, dict):
            if row and min(row) < 0:
                raise ValueError("negative column index")
            width = max(width, max(row, default=-1) + 1)
            out.append({c: _as_int(v) for c, v in row.items()})
        else:
            row = [_as_int(v) for v in row]
            width = max(width, len(row))
            out.append({i: v for i, v in enumerate(row) if v})
    if ncols is None:
        ncols = width
    elif width > ncols:
        raise ValueError("row wider than ncols")
    dense = [[0] * ncols for _ in out]
    for i, row in enumerate(out):
        for c, v in row.items():
            dense[i][c] = int(v)
    return dense, ncols


def smith_normal_form(rows, ncols=None, transforms=False):
    """Elementary divisors d1 | d2 | ... of an integer matrix.

    Returns the list of nonzero divisors, all positive.  With
    ``transforms=True`` returns ``(divisors, U, V)`` where ``U @ A @ V`` is the
    diagonal Smith form (U, V unimodular, as dense lists).
    """
    a, ncols = _dense_int_rows(rows, ncols)
    m = len(a)
    u = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if transforms else None

    def row_op(i, j, q):  # row_i -= q * row_j
        ai, aj = a[i], a[j]
        for c in range(ncols):
            ai[c] -= q * aj[c]
        if u is not None:
            ui, uj = u[i], u[j]
            for c in range(m):
                ui[c] -= q * uj[c]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in a:
            r[i] -= q * r[j]
        if v is not None:
            for r in v:
                r[i] -= q * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if v is not None:
            for r in v:
                r[i], r[j] = r[j], r[i]

    t = 0
    limit = min(m, ncols)
    while t < limit:
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, ncols):
                val = ai[j]
                if val and (best is None or abs(val) < best[0]):
                    best = (abs(val), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            # clear the pivot column, then the pivot row, with Euclidean steps
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the trailing block by the pivot
            piv = a[t][t]
            culprit = None
            for i in range(t + 1, m):
                ai = a[i]
                for j in range(t + 1, ncols):
                    if ai[j] % piv:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_op(t, culprit, -1)
        if a[t][t] < 0:
            for j in range(ncols):
                a[t][j] = -a[t][j]
            if u is not None:
                for j in range(m):
                    u[t][j] = -u[t][j]
        t += 1
    divisors = [a[i][i] for i in range(t) if a[i][i]]
    for x, y in zip(divisors, divisors[1:]):
        assert y % x == 0
    if transforms:
        return divisors, u, v
    return divisors


def quotient_structure(ambient_dim: int, subgroup_gens) -> QuotientStructure:
    """Structure of Z^ambient_dim modulo the row span of subgroup_gens."""
    gens = list(subgroup_gens)
    if not gens:
        return QuotientStructure(ambient_dim, ())
    divisors = smith_normal_form(gens, ncols=ambient_dim)
    if len(divisors) > ambient_dim:
        raise ValueError("subgroup rank exceeds ambient dimension")
    return QuotientStructure(
        ambient_dim - len(divisors), tuple(d for d in divisors if d > 1)
    )


def invariant_factors_from_parts(parts) -> tuple:
    """Invariant-factor chain of a direct sum of cyclic groups Z/d."""
    by_prime: dict = {}
    for d in parts:
        d = int(d)
        if d <= 1:
            continue
        for p, e in _words.factor(d).items():
            by_prime.setdefault(p, []).append(e)
    depth = max((len(v) for v in by_prime.values()), default=0)
    chain = [1] * depth
    for p, exps in by_prime.items():
        exps.sort()
        for slot, e in enumerate(exps):
            # largest exponents land in the last invariant factor
            chain[depth - len(exps) + slot] *= p**e
    return tuple(chain)


def hermite_row_reduce(rows, ncols):
    """Row-style Hermite normal form of an integer matrix.

    Returns dense rows with positive pivots, entries above each pivot reduced
    to the range [0, pivot).  Zero rows are dropped.
    """
    a, ncols = _dense_int_rows(rows, ncols)
    m = len(a)
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, m) if a[i][c]]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(a[i][c]))
            base = live[0]
            for i in live[1:]:
                q = a[i][c] // a[base][c]
                ai, ab = a[i], a[base]
                for j in range(ncols):
                    ai[j] -= q * ab[j]
        live = [i for i in range(r, m) if a[i][c]]
        if not live:
            continue
        i = live[0]
        a[r], a[i] = a[i], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        piv = a[r][c]
        for i in range(r):
            if a[i][c]:
                q = a[i][c] // piv
                ai, ar = a[i], a[r]
                for j in range(ncols):
                    ai[j] -= q * ar[j]
        r += 1
    return [row for row in a[:r] if any(row)]


def integer_kernel_basis(rows, ncols):
    """Basis of {x in Z^ncols : A x = 0}; the lattice is saturated by construction.

    Works by Hermite-reducing [A^T | I] and reading off the rows whose A^T part
    vanished.
    """
    a, ncols_a = _dense_int_rows(rows, ncols)
    m = len(a)
    stacked = []
    for j in range(ncols_a):
        row = [a[i][j] for i in range(m)] + [0] * ncols_a
        row[m + j] = 1
        stacked.append(row)
    reduced = hermite_row_reduce(stacked, m + ncols_a)
    kernel = []
    for row in reduced:
        if any(row[:m]):
            continue
        kernel.append(row[m:])
    return kernel
