"""Spans of iterated brackets of degree-1 tangential generators, trace ranks,
kernels and cokernels, and the consistency checks tying them together.

Everything multihomogeneous is computed block by block: a bracket of
generators indexed by letters b_1..b_k lives in the multidegree
e_{b_1}+...+e_{b_k} block, and trace matrices never mix content classes.  The
global spans still live over the full ordered basis of the degree, so sparse
insertion automatically stays block-local.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, lcm

from . import _words, exactlin, freelie, tangent
from ._words import compositions, lyndon_by_content, necklaces_of_content, partitions
from .cyclic import QuotientMode, cyclic_rank
from .exactlin import IncrementalSpan, QuotientStructure, SparseMatrix
from .freelie import multidegree_rank
from .tangent import AdSolver, p_rank, trace_row_enc


@dataclass
class ImageBasis:
    """Degree-k part of the subalgebra generated in degree 1."""

    n: int
    k: int
    span: IncrementalSpan

    @property
    def dim(self) -> int:
        return self.span.dim


@dataclass(frozen=True)
class AlphaReport:
    alpha: tuple
    c_alpha: int
    r_alpha: int


@dataclass(frozen=True)
class T0530Report:
    n: int
    k: int
    checked: tuple  # (alpha, kernel_dim) pairs
    skipped: tuple  # compositions with no part equal to 1
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class EGeneratorReport:
    n: int
    family_counts: tuple  # counts of the four bracket families
    total: int
    expected: int
    span_dim: int
    image_dim: int

    @property
    def ok(self) -> bool:
        return self.total == self.expected == self.span_dim == self.image_dim


_PINDEX_CACHE: dict = {}


def _p_index(n, k):
    key = (n, k)
    got = _PINDEX_CACHE.get(key)
    if got is None:
        forward = {}
        for i in range(1, n + 1):
            for w in freelie.lyndon_words(n, k):
                if k == 1 and w == (i,):
                    continue
                forward[(i, w)] = len(forward)
        _PINDEX_CACHE[key] = got = forward
    return got


class _ImageEngine:
    """Incremental degree-by-degree span of the degree-1 generated subalgebra."""

    _cache: dict = {}
    _lock = threading.Lock()

    def __init__(self, n: int):
        self.n = n
        self.gens = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
        pidx = _p_index(n, 1)
        span = IncrementalSpan(len(pidx))
        vecs = []
        for a, b in self.gens:
            content = tuple(int(t == b) for t in range(1, n + 1))
            pdict = {(a, (b,)): 1}
            span.insert({pidx[(a, (b,))]: 1})
            vecs.append((pdict, content))
        self.levels = [vecs]
        self.spans = [span]
        self._advance_lock = threading.Lock()

    @classmethod
    def get(cls, n: int) -> "_ImageEngine":
        got = cls._cache.get(n)
        if got is None:
            with cls._lock:
                got = cls._cache.get(n)
                if got is None:
                    got = cls(n)
                    cls._cache[n] = got
        return got

    def extend(self, k: int):
        with self._advance_lock:
            while len(self.levels) < k:
                self._advance()

    def _advance(self):
        n = self.n
        base = n + 1
        m = len(self.levels)  # degree of the current top level
        nxt = m + 1
        pidx = _p_index(n, nxt)
        span = IncrementalSpan(len(pidx))
        solver = AdSolver.get(n, nxt)
        accepted = []
        for pdict, beta in self.levels[m - 1]:
            venc: dict = {}
            for (i, u), c in pdict.items():
                acc = venc.setdefault(i, {})
                for w, v in freelie.ad_enc(n, u, i).items():
                    val = acc.get(w, 0) + c * v
                    if val:
                        acc[w] = val
                    else:
                        del acc[w]
            venc = {i: d for i, d in venc.items() if d}
            venc_typed = {i: (d, m + 1) for i, d in venc.items()}
            for a, b in self.gens:
                comps: dict = {}
                for t, tdict in venc.items():
                    hit = tangent._apply_gen_enc(n, a, b, tdict, m + 1)
                    if hit:
                        comps[t] = {w: -c for w, c in hit.items()}
                gen_img = {b * base + a: 1, a * base + b: -1}
                lead = tangent._apply_values_enc(n, venc_typed, gen_img, 2)
                if lead:
                    acc = comps.setdefault(a, {})
                    for w, c in lead.items():
                        val = acc.get(w, 0) + c
                        if val:
                            acc[w] = val
                        else:
                            del acc[w]
                    if not acc:
                        del comps[a]
                ucontent = list(beta)
                ucontent[b - 1] += 1
                ucontent = tuple(ucontent)
                new_pdict: dict = {}
                pvec: dict = {}
                for t, tdict in comps.items():
                    for u, c in solver.block(t, ucontent).solve(tdict).items():
                        new_pdict[(t, u)] = c
                        pvec[pidx[(t, u)]] = c
                if span.insert(pvec):
                    accepted.append((new_pdict, ucontent))
        self.levels.append(accepted)
        self.spans.append(span)


def johnson_image(n: int, k: int) -> ImageBasis:
    """Degree-k span of iterated brackets of the degree-1 generators."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2, k >= 1")
    engine = _ImageEngine.get(n)
    engine.extend(k)
    return ImageBasis(n, k, engine.spans[k - 1])


# ---------------------------------------------------------------------------
# trace matrices by content block


def _mode_width(content, mode: QuotientMode):
    """Number of surviving necklace columns for one content class."""
    support = sum(1 for c in content if c)
    if support == 0:
        return 0
    if mode is QuotientMode.TILDE and 1 not in content:
        return 0
    count = _words.necklace_count(content)
    if mode is QuotientMode.BAR and support == 1:
        return 0
    return count


def _block_keys(n, k, content):
    """Basis labels (i, u) of one content block, in global basis order."""
    words = lyndon_by_content(n, k).get(content, ())
    out = []
    for i in range(1, n + 1):
        for u in words:
            if k == 1 and u == (i,):
                continue
            out.append((i, u))
    return out


def _block_rows(n, k, content):
    """(key, encoded trace row) pairs; rows of letters absent from u are zero."""
    rows = []
    for (i, u) in _block_keys(n, k, content):
        rows.append(((i, u), trace_row_enc(n, k, u, i) if content[i - 1] else {}))
    return rows


@lru_cache(maxsize=None)
def _block_trace_rank(n, k, content, mode_value):
    """Rank of the trace matrix of one block, with early stop at full width."""
    mode = QuotientMode(mode_value)
    width = _mode_width(content, mode)
    if width == 0:
        return 0
    span = IncrementalSpan((n + 1) ** k)
    for _, row in _block_rows(n, k, content):
        if row and span.insert(dict(row)):
            if span.dim == width:
                break
    return span.dim


def trace_rank(n: int, k: int, mode=QuotientMode.BAR) -> int:
    """Rank of the mode trace matrix over the full degree-k tangential basis."""
    mode = QuotientMode.coerce(mode)
    total = 0
    for content in compositions(k, n):
        total += _block_trace_rank(n, k, content, mode.value)
    return total


def c_alpha(k: int, alpha) -> AlphaReport:
    """Trace rank of the generators with word content alpha.

    The value does not depend on the ambient number of generators once it
    covers the support of alpha, so it is computed with exactly that many.
    """
    alpha = tuple(sorted((int(a) for a in alpha), reverse=True))
    if not alpha or alpha[-1] < 1:
        raise ValueError("alpha parts must be >= 1")
    k = int(k)
    if sum(alpha) != k:
        raise ValueError("alpha must sum to k")
    n = len(alpha)
    c = _block_trace_rank(n, k, alpha, QuotientMode.BAR.value)
    return AlphaReport(alpha, c, c - multidegree_rank(n, k, alpha))


def _orbit_size(alpha, n):
    """Number of distinct compositions of length n refining the partition."""
    padded = list(alpha) + [0] * (n - len(alpha))
    size = factorial(n)
    for v in set(padded):
        size //= factorial(padded.count(v))
    return size


def trace_image_dim(n: int, k: int) -> int:
    """Dimension of the bar-trace image over the degree-k tangential basis.

    Sums one block rank per symmetry orbit of content classes.  Blocks whose
    content has a letter of multiplicity one are full (the tilde quotient is
    surjective and keeps exactly those blocks), so their rank is the
    multidegree rank; every other block is computed.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2, k >= 1")
    if k == 1:
        return 0
    total = 0
    for alpha in partitions(k, max_parts=n):
        if 1 in alpha:
            c = multidegree_rank(len(alpha), k, alpha)
        else:
            c = c_alpha(k, alpha).c_alpha
        total += _orbit_size(alpha, n) * c
    return total


def trace_kernel_dim(n: int, k: int) -> int:
    return p_rank(n, k) - trace_image_dim(n, k)


def trace_image_dim_direct(n: int, k: int) -> int:
    """Independent route: exact rational rank of every content block."""
    total = 0
    for content in compositions(k, n):
        width = _mode_width(content, QuotientMode.BAR)
        if width == 0:
            continue
        cols = {w: j for j, w in enumerate(_necklace_cols(n, k, content, "bar"))}
        rows = []
        for _, row in _block_rows(n, k, content):
            rows.append({cols[w]: c for w, c in row.items()})
        total += exactlin.rank(SparseMatrix(width, rows))
    return total


def _necklace_cols(n, k, content, mode_value):
    mode = QuotientMode(mode_value)
    base = n + 1
    out = []
    for w in necklaces_of_content(content):
        if mode is QuotientMode.BAR and len(set(w)) == 1:
            continue
        if mode is QuotientMode.TILDE and not any(w.count(c) == 1 for c in set(w)):
            continue
        out.append(_words.encode(w, base))
    return tuple(sorted(out))


def coker_structure(n: int, k: int) -> QuotientStructure:
    """Structure of the bar quotient modulo the integer trace image."""
    if n < 2 or k < 2:
        raise ValueError("need n >= 2, k >= 2")
    free = 0
    torsion_parts = []
    for content in compositions(k, n):
        cols = _necklace_cols(n, k, content, "bar")
        if not cols:
            continue
        colidx = {w: j for j, w in enumerate(cols)}
        rows = [
            {colidx[w]: c for w, c in row.items()}
            for _, row in _block_rows(n, k, content)
            if row
        ]
        divisors = exactlin.smith_normal_form(rows, ncols=len(cols)) if rows else []
        free += len(cols) - len(divisors)
        torsion_parts.extend(d for d in divisors if d > 1)
    return QuotientStructure(free, exactlin.invariant_factors_from_parts(torsion_parts))


# ---------------------------------------------------------------------------
# kernel-versus-image checks


def _block_kernel_pcoords(n, k, content):
    """Kernel of the bar trace on one block, as integer p-coordinate dicts."""
    keys = _block_keys(n, k, content)
    rows = _block_rows(n, k, content)
    cols: dict = {}
    mat_cols: dict = {}
    for j, (_, row) in enumerate(rows):
        for w, c in row.items():
            cols.setdefault(w, {})[j] = c
    neck_rows = [cols[w] for w in sorted(cols)]
    kernel = exactlin.kernel_basis(SparseMatrix(len(keys), neck_rows))
    out = []
    for vec in kernel:
        den = 1
        for v in vec.entries.values():
            den = lcm(den, v.denominator)
        out.append({keys[j]: int(v * den) for j, v in vec.entries.items()})
    return out


def check_T0530(n: int, k: int) -> T0530Report:
    """For contents with a letter of multiplicity 1, the trace kernel of the
    block must already lie in the degree-1 generated span."""
    if n < 3:
        raise ValueError("need n >= 3")
    image = johnson_image(n, k)
    pidx = _p_index(n, k)
    checked, skipped, violations = [], [], []
    for content in compositions(k, n):
        words = lyndon_by_content(n, k).get(content, ())
        if not words:
            continue
        if 1 not in content:
            skipped.append(content)
            continue
        kernel = _block_kernel_pcoords(n, k, content)
        checked.append((content, len(kernel)))
        for vec in kernel:
            gvec = {pidx[key]: c for key, c in vec.items()}
            if not image.span.contains(gvec):
                violations.append((content, tuple(sorted(vec.items()))))
    return T0530Report(n, k, tuple(checked), tuple(skipped), tuple(violations))


def _e_generator_words(n):
    """The four bracket families generating the degree-3 part."""
    rng = range(1, n + 1)
    e1, e2, e3, e4 = [], [], [], []
    for i in rng:
        others = [x for x in rng if x != i]
        for j in others:
            for l in others:
                for m in others:
                    if len({j, l, m}) == 3 and j > l < m:
                        e1.append(((i, j), (i, l), (i, m)))
        for j in others:
            for l in others:
                if j != l:
                    e2.append(((i, j), (i, l), (i, j)))
        for j in others:
            for l in others:
                if j != l and not (i > j and i > l):
                    e3.append(((i, j), (i, l), (j, i)))
        for j in others:
            e4.append(((i, j), (j, i), (i, j)))
    return e1, e2, e3, e4


def verify_E_generators(n: int) -> EGeneratorReport:
    """Count the four bracket families and span-check their images in degree 3."""
    if n < 3:
        raise ValueError("need n >= 3")
    families = _e_generator_words(n)
    expected = n * (n - 1) ** 2 * (n + 1) // 3
    pidx = _p_index(n, 3)
    span = IncrementalSpan(len(pidx))
    for family in families:
        for word in family:
            f = tangent.tau1_generator(n, *word[0])
            for pair in word[1:]:
                f = tangent.der_bracket(f, tangent.tau1_generator(n, *pair))
            coords = tangent.p_coordinates(f)
            span.insert({pidx[key]: c for key, c in coords.items()})
    return EGeneratorReport(
        n,
        tuple(len(f) for f in families),
        sum(len(f) for f in families),
        expected,
        span.dim,
        johnson_image(n, 3).dim,
    )


# ---------------------------------------------------------------------------
# tables


def section7_rows(n: int):
    """Degree 1..4 summary: kernel (= graded part), basis sizes, cokernel."""
    rows = []
    for k in range(1, 5):
        coker = coker_structure(n, k) if k >= 2 else QuotientStructure(0)
        label = str(coker.free_rank)
        if coker.torsion:
            label += " + " + " + ".join(f"Z/{d}" for d in coker.torsion)
        rows.append(
            [
                k,
                trace_kernel_dim(n, k),
                p_rank(n, k),
                cyclic_rank(n, k, QuotientMode.BAR),
                label,
            ]
        )
    return rows


def section8_rows(kmax: int, kmin: int = 5):
    """c and r values for every content class with all letters repeated."""
    rows = []
    for k in range(kmin, kmax + 1):
        for alpha in partitions(k, min_part=2):
            if len(alpha) < 2:
                continue  # single-letter contents die in the bar quotient
            rep = c_alpha(k, alpha)
            rows.append([k, rep.alpha, rep.c_alpha, rep.r_alpha])
    return rows


def n3gap_rows(kmax: int):
    """Degree-1 generated dimension versus trace kernel for n = 3."""
    rows = []
    for k in range(1, kmax + 1):
        rows.append([k, johnson_image(3, k).dim, trace_kernel_dim(3, k)])
    return rows


def tables(selector: str, **params):
    if selector == "section7":
        return section7_rows(int(params["n"]))
    if selector == "section8":
        return section8_rows(int(params["kmax"]))
    if selector == "n3gap":
        return n3gap_rows(int(params["kmax"]))
    raise ValueError(f"unknown table selector {selector!r}")
