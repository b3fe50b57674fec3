"""Cyclic words (necklaces) and their quotients, plus the degree-4 module J.

The degree-k cyclic space has the necklaces of length k over ``1..n`` as a
basis.  Two quotients show up downstream: ``bar`` kills the power necklaces
x_i^k, and ``tilde`` kills every necklace in which each occurring letter
repeats.  Both killed sets are unions of basis necklaces, so reduction is a
coordinate projection.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import _words, exactlin
from ._words import min_rotation, word_content
from .freelie import TensorElement


class QuotientMode(enum.Enum):
    FULL = "full"
    BAR = "bar"
    TILDE = "tilde"

    @classmethod
    def coerce(cls, mode):
        if isinstance(mode, cls):
            return mode
        return cls(str(mode).lower())


@dataclass(frozen=True, order=True)
class Necklace:
    """Canonical rotation representative of a cyclic word."""

    word: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(c) for c in self.word))
        if not self.word:
            raise ValueError("empty necklace")
        if self.word != min_rotation(self.word):
            raise ValueError(f"{self.word!r} is not a minimal rotation")

    @property
    def length(self) -> int:
        return len(self.word)

    def counts(self, n: int) -> tuple:
        return word_content(self.word, n)

    def is_power(self) -> bool:
        return len(set(self.word)) == 1

    def has_isolated_letter(self) -> bool:
        w = self.word
        return any(w.count(c) == 1 for c in set(w))

    def __str__(self):
        return "(" + ",".join(map(str, self.word)) + ")"


def necklace_canonicalize(word) -> Necklace:
    """Minimal rotation of a word; idempotent on canonical input."""
    return Necklace(min_rotation(word))


class CyclicElement:
    """Integer combination of length-k necklaces."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms=()):
        self.n = n
        self.degree = degree
        self.terms = {}
        data = terms.items() if isinstance(terms, dict) else terms
        for neck, coeff in data:
            if not isinstance(neck, Necklace):
                neck = necklace_canonicalize(neck)
            if neck.length != degree:
                raise ValueError("necklace length does not match degree")
            coeff = int(coeff)
            if coeff:
                self.terms[neck] = coeff

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("mixed degrees")
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        res = CyclicElement(self.n, self.degree)
        res.terms = out
        return res

    def __neg__(self):
        res = CyclicElement(self.n, self.degree)
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = int(c)
        res = CyclicElement(self.n, self.degree)
        if c:
            res.terms = {k: c * v for k, v in self.terms.items()}
        return res

    def __eq__(self, other):
        return (
            isinstance(other, CyclicElement)
            and self.n == other.n
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            c = self.terms[k]
            bits.append(f"{'+' if c > 0 else '-'} {abs(c)}*{k}")
        return " ".join(bits).lstrip("+ ")


def project_cyclic(t: TensorElement) -> CyclicElement:
    """Send each tensor word to its necklace; linear, kills every bracket."""
    acc: dict = {}
    for word, coeff in t.terms.items():
        neck = Necklace(min_rotation(word))
        v = acc.get(neck, 0) + coeff
        if v:
            acc[neck] = v
        else:
            del acc[neck]
    out = CyclicElement(t.n, t.degree)
    out.terms = acc
    return out


def reduce(e: CyclicElement, mode) -> CyclicElement:
    """Apply the bar/tilde coordinate projection (full is the identity)."""
    mode = QuotientMode.coerce(mode)
    if mode is QuotientMode.FULL:
        return e
    out = CyclicElement(e.n, e.degree)
    if mode is QuotientMode.BAR:
        out.terms = {k: c for k, c in e.terms.items() if not k.is_power()}
    else:
        out.terms = {k: c for k, c in e.terms.items() if k.has_isolated_letter()}
    return out


def cyclic_rank(n: int, k: int, mode=QuotientMode.FULL) -> int:
    """Rank of the degree-k cyclic space or of its bar/tilde quotient."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    mode = QuotientMode.coerce(mode)
    if mode is QuotientMode.FULL:
        total = sum(
            _words.euler_phi(d) * n ** (k // d) for d in _words.divisors(k)
        )
        assert total % k == 0
        return total // k
    if mode is QuotientMode.BAR:
        return cyclic_rank(n, k, QuotientMode.FULL) - n
    total = 0
    for content in _words.compositions(k, n):
        if 1 in content:
            total += _words.necklace_count(content)
    return total


# ---------------------------------------------------------------------------
# the degree-4 module J: quotient of wedge (x) wedge by symmetry and a
# three-term shuffle relation


def _wedge(a, b):
    """(sign, sorted pair) of x_a ^ x_b, or None when degenerate."""
    if a == b:
        return None
    return (1, (a, b)) if a < b else (-1, (b, a))


class JModule:
    """Concrete presentation of J for one n: spanning pairs modulo relations."""

    _cache: dict = {}
    _lock = threading.Lock()

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self.pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        w = len(self.pairs)
        self.size = w * w
        rows = set()
        for ia in range(w):
            for ib in range(ia + 1, w):
                rows.add(((ia * w + ib, 1), (ib * w + ia, -1)))
        rng = range(1, n + 1)
        for v in rng:
            for x in rng:
                for ww in rng:
                    for y in rng:
                        row = self._relation_row(v, ww, x, y)
                        if row:
                            rows.add(row)
        self._relations = sorted(rows)
        matrix = exactlin.SparseMatrix(self.size, [dict(r) for r in self._relations])
        pivots, reduced = exactlin.rref(matrix)
        self._pivots = pivots
        self._pivot_rows = dict(zip(pivots, reduced))
        self.rank = self.size - len(pivots)

    def _relation_row(self, v, w, x, y):
        """Row of the three-term relation (v^w)(x^y) - (x^w)(v^y) - (v^x)(w^y)."""
        acc: dict = {}

        def add(first, second, sign):
            if first is None or second is None:
                return
            s1, p1 = first
            s2, p2 = second
            col = self.pair_index[p1] * len(self.pairs) + self.pair_index[p2]
            val = acc.get(col, 0) + sign * s1 * s2
            if val:
                acc[col] = val
            else:
                del acc[col]

        add(_wedge(v, w), _wedge(x, y), 1)
        add(_wedge(x, w), _wedge(v, y), -1)
        add(_wedge(v, x), _wedge(w, y), -1)
        return tuple(sorted(acc.items())) if acc else None

    @classmethod
    def get(cls, n: int) -> "JModule":
        got = cls._cache.get(n)
        if got is None:
            with cls._lock:
                got = cls._cache.get(n)
                if got is None:
                    got = cls(n)
                    cls._cache[n] = got
        return got

    def reduce_coords(self, coords: dict) -> dict:
        """Canonical residue of a coordinate vector modulo the relation space."""
        work = {c: Fraction(v) for c, v in coords.items() if v}
        for col in sorted(work):
            a = work.get(col)
            if not a:
                continue
            row = self._pivot_rows.get(col)
            if row is None:
                continue
            for c, v in row.items():
                nv = work.get(c, Fraction(0)) - a * v
                if nv:
                    work[c] = nv
                else:
                    work.pop(c, None)
        return work

    def relation_divisors(self):
        """Smith divisors of the relation lattice; all 1 means J is torsion free."""
        return exactlin.smith_normal_form(
            [dict(r) for r in self._relations], ncols=self.size
        )

    def describe_coord(self, col):
        w = len(self.pairs)
        return self.pairs[col // w], self.pairs[col % w]


class JElement:
    """Element of J in canonical reduced coordinates."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords=()):
        self.n = n
        data = coords.items() if isinstance(coords, dict) else coords
        raw = {int(c): Fraction(v) for c, v in data if v}
        self.coords = JModule.get(n).reduce_coords(raw)

    def is_zero(self):
        return not self.coords

    def __eq__(self, other):
        return (
            isinstance(other, JElement)
            and self.n == other.n
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.coords.items())))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("mixed alphabets")
        out = dict(self.coords)
        for c, v in other.coords.items():
            nv = out.get(c, Fraction(0)) + v
            if nv:
                out[c] = nv
            else:
                del out[c]
        res = JElement(self.n)
        res.coords = out
        return res

    def __neg__(self):
        res = JElement(self.n)
        res.coords = {c: -v for c, v in self.coords.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = Fraction(c)
        res = JElement(self.n)
        if c:
            res.coords = {col: c * v for col, v in self.coords.items()}
        return res

    def __repr__(self):
        if not self.coords:
            return "0"
        mod = JModule.get(self.n)
        bits = []
        for col in sorted(self.coords):
            (a, b), (c, d) = mod.describe_coord(col)
            bits.append(f"{self.coords[col]}*(x{a}^x{b})(x{c}^x{d})")
        return " + ".join(bits)


def j_rank(n: int) -> int:
    """Rank of J; the closed form n^2(n^2-1)/12 is asserted in the tests."""
    return JModule.get(n).rank


def j_project(n: int, a: int, b: int, c: int, d: int) -> JElement:
    """Canonical coordinates of (x_a ^ x_b)(x_c ^ x_d) in J."""
    mod = JModule.get(n)
    wa, wb = _wedge(a, b), _wedge(c, d)
    if wa is None or wb is None:
        return JElement(n)
    s1, p1 = wa
    s2, p2 = wb
    col = mod.pair_index[p1] * len(mod.pairs) + mod.pair_index[p2]
    return JElement(n, {col: s1 * s2})
