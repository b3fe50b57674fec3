"""Tangential derivations of the free Lie algebra and their trace maps.

A degree-k derivation is stored by the images of the generators, each a
degree-(k+1) Lie element.  The tangential subalgebra is spanned by the
elements sending x_i to [u, x_i] (u a degree-k monomial) and all other
generators to zero; the map (i, u) -> that derivation is a basis, certified by
an explicit rank check the first time each (n, k, content) block is touched.

Degree and multidegree are both respected by every operation here, which lets
all of the heavy linear algebra run block by block: a derivation whose values
have content ``beta + e_i`` at key i never mixes with any other block.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import cyclic, exactlin, freelie
from ._words import decode, encode, lyndon_by_content, min_rotation, word_content
from .cyclic import CyclicElement, JElement, QuotientMode
from .freelie import (
    HallMonomial,
    LieElement,
    TensorElement,
    ad_enc,
    hall_basis,
    iota_enc,
    witt_rank,
)


class Derivation:
    """Degree-k derivation, stored sparsely by generator index."""

    __slots__ = ("n", "degree", "values")

    def __init__(self, n: int, degree: int, values=()):
        self.n = n
        self.degree = degree
        self.values = {}
        data = values.items() if isinstance(values, dict) else values
        for i, elt in data:
            i = int(i)
            if not 1 <= i <= n:
                raise ValueError("generator index out of range")
            if not isinstance(elt, LieElement):
                raise TypeError("values must be LieElements")
            if elt.n != n or elt.degree != degree + 1:
                raise ValueError("value degree must be derivation degree + 1")
            if not elt.is_zero():
                self.values[i] = elt

    def value(self, i: int) -> LieElement:
        got = self.values.get(i)
        if got is None:
            return LieElement(self.n, self.degree + 1)
        return got

    def is_zero(self):
        return not self.values

    def __add__(self, other):
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("mixed degrees")
        out = dict(self.values)
        for i, e in other.values.items():
            s = out.get(i)
            s = e if s is None else s + e
            if s.is_zero():
                out.pop(i, None)
            else:
                out[i] = s
        res = Derivation(self.n, self.degree)
        res.values = out
        return res

    def __neg__(self):
        res = Derivation(self.n, self.degree)
        res.values = {i: -e for i, e in self.values.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = int(c)
        res = Derivation(self.n, self.degree)
        if c:
            res.values = {i: c * e for i, e in self.values.items()}
        return res

    def __eq__(self, other):
        return (
            isinstance(other, Derivation)
            and self.n == other.n
            and self.degree == other.degree
            and self.values == other.values
        )

    def __repr__(self):
        if not self.values:
            return "0"
        return " + ".join(f"x{i}* (x) ({e})" for i, e in sorted(self.values.items()))


@dataclass(frozen=True)
class TangentialGenerator:
    """The derivation x_i* (x) [x_{w_1}, ..., x_{w_k}, x_i]."""

    i: int
    word: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(c) for c in self.word))
        if not self.word:
            raise ValueError("empty word")


@dataclass(frozen=True, order=True)
class PBasisIndex:
    """Basis label (i, u): the derivation x_i* (x) [u, x_i]."""

    i: int
    monomial: HallMonomial


def tangential(n: int, gen: TangentialGenerator) -> Derivation:
    """Normalize [x_{w_1}, ..., x_{w_k}, x_i] and store it at key i."""
    tree = gen.word[0]
    for letter in gen.word[1:] + (gen.i,):
        tree = (tree, letter)
    return Derivation(n, len(gen.word), {gen.i: freelie.normalize(tree, n)})


def tau1_generator(n: int, i: int, j: int) -> Derivation:
    """The degree-1 generator x_i* (x) [x_j, x_i]."""
    if i == j:
        raise ValueError("indices must differ")
    return tangential(n, TangentialGenerator(i, (j,)))


def p_basis(n: int, k: int):
    """Ordered basis of the degree-k tangential subalgebra.

    For k = 1 the pairs (i, x_i) are skipped since [x_i, x_i] = 0; the size is
    n(n-1) there and n * witt_rank(n, k) for k >= 2.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2, k >= 1")
    out = []
    for i in range(1, n + 1):
        for mono in hall_basis(n, k):
            if k == 1 and mono.word == (i,):
                continue
            out.append(PBasisIndex(i, mono))
    return tuple(out)


def p_rank(n: int, k: int) -> int:
    if k == 1:
        return n * (n - 1)
    return n * witt_rank(n, k)


# ---------------------------------------------------------------------------
# applying derivations through the tensor algebra


def _values_enc(f: Derivation) -> dict:
    return {i: (e._enc_tensor(), e.degree) for i, e in f.values.items()}


def _apply_values_enc(n, values_enc, tdict, length):
    """Extend a derivation to tensor words and apply it to an encoded element.

    Each occurrence of a generator with a nonzero image is replaced in turn by
    the image's expansion; the output degree is length + derivation degree.
    """
    base = n + 1
    out: dict = {}
    if not tdict or not values_enc:
        return out
    for word, coeff in tdict.items():
        rest = word
        for pos in range(length - 1, -1, -1):
            rest, letter = divmod(rest, base)
            hit = values_enc.get(letter)
            if hit is None:
                continue
            repl, rlen = hit
            # word = high | letter | low with len(low) = length - 1 - pos
            lowlen = length - 1 - pos
            lowmod = base**lowlen
            low = word % lowmod
            high = word // (lowmod * base)
            hshift = base**rlen * lowmod
            for rw, rc in repl.items():
                key = high * hshift + rw * lowmod + low
                val = out.get(key, 0) + coeff * rc
                if val:
                    out[key] = val
                else:
                    del out[key]
    return out


def _apply_gen_enc(n, a, b, tdict, length):
    """Fast path for a degree-1 tangential generator: x_a -> [x_b, x_a]."""
    base = n + 1
    out: dict = {}
    for word, coeff in tdict.items():
        rest = word
        for pos in range(length - 1, -1, -1):
            rest, letter = divmod(rest, base)
            if letter != a:
                continue
            lowlen = length - 1 - pos
            lowmod = base**lowlen
            low = word % lowmod
            high = word // (lowmod * base)
            hshift = base * base * lowmod
            ba = (b * base + a) * lowmod
            ab = (a * base + b) * lowmod
            headed = high * hshift
            for key, sgn in ((headed + ba + low, coeff), (headed + ab + low, -coeff)):
                val = out.get(key, 0) + sgn
                if val:
                    out[key] = val
                else:
                    del out[key]
    return out


def apply(f: Derivation, a: LieElement) -> LieElement:
    """Leibniz extension of f; output degree is deg(a) + deg(f)."""
    if f.n != a.n:
        raise ValueError("mixed alphabets")
    if a.degree < 1:
        raise ValueError("need degree >= 1")
    enc = _apply_values_enc(f.n, _values_enc(f), a._enc_tensor(), a.degree)
    coords = freelie.project_lyndon_enc(f.n, a.degree + f.degree, enc)
    return LieElement._from_word_coords(f.n, a.degree + f.degree, coords)


def der_bracket(f: Derivation, g: Derivation) -> Derivation:
    """Commutator bracket [f, g] = f o g - g o f on generator images."""
    if f.n != g.n:
        raise ValueError("mixed alphabets")
    n = f.n
    fe, ge = _values_enc(f), _values_enc(g)
    degree = f.degree + g.degree
    values = {}
    for i in range(1, n + 1):
        acc: dict = {}
        hit = ge.get(i)
        if hit is not None:
            acc = _apply_values_enc(n, fe, hit[0], hit[1])
        hit = fe.get(i)
        if hit is not None:
            for w, c in _apply_values_enc(n, ge, hit[0], hit[1]).items():
                val = acc.get(w, 0) - c
                if val:
                    acc[w] = val
                else:
                    del acc[w]
        if acc:
            coords = freelie.project_lyndon_enc(n, degree + 1, acc)
            elt = LieElement._from_word_coords(n, degree + 1, coords)
            if not elt.is_zero():
                values[i] = elt
    res = Derivation(n, degree)
    res.values = values
    return res


def contract(f: Derivation) -> TensorElement:
    """Pair each x_i* with the leading tensor slot of the image of x_i."""
    n = f.n
    base = n + 1
    k = f.degree
    out: dict = {}
    for i, elt in f.values.items():
        shift = base ** (elt.degree - 1)
        for w, c in elt._enc_tensor().items():
            if w // shift == i:
                key = w - i * shift
                val = out.get(key, 0) + c
                if val:
                    out[key] = val
                else:
                    del out[key]
    return TensorElement._from_enc(n, k, out)


def trace(f: Derivation, mode=QuotientMode.FULL) -> CyclicElement:
    """Contraction followed by the cyclic projection and the mode's quotient."""
    return cyclic.reduce(cyclic.project_cyclic(contract(f)), mode)


def trace_J(f: Derivation) -> JElement:
    """The degree-4 refinement detecting what bar and tilde both miss."""
    if f.degree != 4:
        raise ValueError("trace_J needs a degree-4 derivation")
    n = f.n
    phi = contract(f)
    acc: dict = {}
    mod = cyclic.JModule.get(n)
    w = len(mod.pairs)
    for (v, ww, x, y), coeff in phi.terms.items():
        f1 = _j_col(mod, v, x, ww, y)
        if f1 is not None:
            col, sgn = f1
            val = acc.get(col, 0) + coeff * sgn
            if val:
                acc[col] = val
            else:
                del acc[col]
        f2 = _j_col(mod, v, y, ww, x)
        if f2 is not None:
            col, sgn = f2
            val = acc.get(col, 0) - 2 * coeff * sgn
            if val:
                acc[col] = val
            else:
                del acc[col]
    return JElement(n, acc)


def _j_col(mod, a, b, c, d):
    wa = cyclic._wedge(a, b)
    wb = cyclic._wedge(c, d)
    if wa is None or wb is None:
        return None
    s1, p1 = wa
    s2, p2 = wb
    return mod.pair_index[p1] * len(mod.pairs) + mod.pair_index[p2], s1 * s2


# ---------------------------------------------------------------------------
# block solver: coordinates of tangential elements on the (i, u) basis


class _AdBlock:
    """One (i, content) block of the basis [u, x_i], ready to solve against."""

    __slots__ = ("n", "i", "k", "us", "rows", "pivots", "ninv", "den")

    def __init__(self, n, k, i, content):
        self.n = n
        self.i = i
        self.k = k
        us = lyndon_by_content(n, k).get(content, ())
        if k == 1:
            us = tuple(u for u in us if u != (i,))  # [x_i, x_i] = 0
        self.us = us
        self.rows = [ad_enc(n, u, i) for u in self.us]
        span = exactlin.IncrementalSpan((n + 1) ** (k + 1))
        for row in self.rows:
            if not span.insert(dict(row)):
                raise ArithmeticError("ad rows unexpectedly dependent")
        self.pivots = span.pivot_columns()
        r = len(self.us)
        if r:
            self.ninv, self.den = _invert_to_int(
                [[row.get(p, 0) for p in self.pivots] for row in self.rows]
            )
        else:
            self.ninv, self.den = [], 1

    def solve(self, tdict):
        """Integer coordinates c with sum c_u [u, x_i] equal to tdict, verified."""
        if not tdict:
            return {}
        r = len(self.us)
        if r == 0:
            raise ArithmeticError("nonzero component in an empty block")
        rvec = [tdict.get(p, 0) for p in self.pivots]
        den = self.den
        coeffs = []
        for col in range(r):
            s = 0
            for j in range(r):
                nij = self.ninv[j][col]
                if nij:
                    s += rvec[j] * nij
            if s % den:
                raise ArithmeticError("component is not integral on the basis")
            coeffs.append(s // den)
        # full verification: the solved combination must reproduce the input
        check: dict = {}
        for c, row in zip(coeffs, self.rows):
            if not c:
                continue
            for w, v in row.items():
                val = check.get(w, 0) + c * v
                if val:
                    check[w] = val
                else:
                    del check[w]
        if check != tdict:
            raise ArithmeticError("component is outside the tangential block")
        return {u: c for u, c in zip(self.us, coeffs) if c}


def _invert_to_int(square):
    """Inverse of an integer matrix as (N, den) with inverse = N / den."""
    r = len(square)
    aug = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(r)]
        for i, row in enumerate(square)
    ]
    for col in range(r):
        piv = next(i for i in range(col, r) if aug[i][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(r):
            if i != col and aug[i][col]:
                a = aug[i][col]
                aug[i] = [x - a * y for x, y in zip(aug[i], aug[col])]
    den = 1
    for row in aug:
        for v in row[r:]:
            den = lcm(den, v.denominator)
    ninv = [[int(v * den) for v in row[r:]] for row in aug]
    return ninv, den


class AdSolver:
    """Per-(n, k) cache of _AdBlocks, built lazily per (i, content)."""

    _cache: dict = {}
    _lock = threading.Lock()

    def __init__(self, n, k):
        self.n = n
        self.k = k
        self.blocks: dict = {}

    @classmethod
    def get(cls, n, k) -> "AdSolver":
        key = (n, k)
        got = cls._cache.get(key)
        if got is None:
            with cls._lock:
                got = cls._cache.get(key)
                if got is None:
                    got = cls(n, k)
                    cls._cache[key] = got
        return got

    def block(self, i, content) -> _AdBlock:
        key = (i, content)
        got = self.blocks.get(key)
        if got is None:
            got = _AdBlock(self.n, self.k, i, content)
            self.blocks[key] = got
        return got

    def solve_component(self, i, tdict):
        """Split an encoded degree-(k+1) component by content and solve."""
        if not tdict:
            return {}
        base = self.n + 1
        by_content: dict = {}
        for w, c in tdict.items():
            content = word_content(decode(w, base, self.k + 1), self.n)
            by_content.setdefault(content, {})[w] = c
        out: dict = {}
        for content, chunk in by_content.items():
            if content[i - 1] == 0:
                raise ArithmeticError("component missing its own generator letter")
            ucontent = list(content)
            ucontent[i - 1] -= 1
            out.update(self.block(i, tuple(ucontent)).solve(chunk))
        return out


def p_coordinates(f: Derivation) -> dict:
    """Coordinates of a tangential derivation on p_basis, keyed (i, word).

    Raises ArithmeticError when f is not an integer combination of the basis,
    so this doubles as the membership check for the tangential subalgebra.
    """
    solver = AdSolver.get(f.n, f.degree)
    out = {}
    for i, elt in f.values.items():
        for u, c in solver.solve_component(i, elt._enc_tensor()).items():
            out[(i, u)] = c
    return out


def from_p_coordinates(n: int, k: int, coords: dict) -> Derivation:
    """Inverse of p_coordinates."""
    by_i: dict = {}
    for (i, u), c in coords.items():
        if not c:
            continue
        acc = by_i.setdefault(i, {})
        for w, v in ad_enc(n, u, i).items():
            val = acc.get(w, 0) + c * v
            if val:
                acc[w] = val
            else:
                del acc[w]
    values = {}
    for i, enc in by_i.items():
        coords_w = freelie.project_lyndon_enc(n, k + 1, enc)
        elt = LieElement._from_word_coords(n, k + 1, coords_w)
        if not elt.is_zero():
            values[i] = elt
    res = Derivation(n, k)
    res.values = values
    return res


# ---------------------------------------------------------------------------
# trace rows of basis elements, used by every rank computation downstream


_NECK_CACHE: dict = {}


def _necklace_enc(n, k, w):
    cache = _NECK_CACHE.setdefault((n, k), {})
    got = cache.get(w)
    if got is None:
        base = n + 1
        got = encode(min_rotation(decode(w, base, k)), base)
        cache[w] = got
    return got


def trace_row_enc(n: int, k: int, u, i: int) -> dict:
    """Encoded necklace coordinates of the trace of x_i* (x) [u, x_i].

    Strips the leading letter i from the expansion of u and closes the cycle
    with a trailing x_i; the bracket part of the contraction dies under the
    cyclic projection, so this is the whole trace.
    """
    base = n + 1
    shift = base ** (k - 1)
    out: dict = {}
    for w, c in iota_enc(n, u).items():
        if w // shift != i:
            continue
        neck = _necklace_enc(n, k, (w - i * shift) * base + i)
        val = out.get(neck, 0) + c
        if val:
            out[neck] = val
        else:
            del out[neck]
    return out
