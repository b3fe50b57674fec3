"""Free Lie algebra on n generators over Z.

The basis of the degree-k part is indexed by Lyndon words of length k over
``1..n``; each word is bracketed through its standard factorization.  Elements
are sparse integer combinations of basis monomials; the tensor-algebra
embedding expands brackets as ``u (x) v - v (x) u`` and is the workhorse used
for normalization, bracketing and all trace computations downstream.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import factorial, gcd

from . import _words
from ._words import (
    decode,
    encode,
    is_lyndon,
    lyndon_words,
    standard_factorization,
    word_content,
)


def witt_rank(n: int, k: int) -> int:
    """Rank of the degree-k part: (1/k) sum over d|k of mu(d) n^(k/d)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    total = sum(_words.mobius(d) * n ** (k // d) for d in _words.divisors(k))
    assert total % k == 0
    return total // k


def multidegree_rank(n: int, k: int, alpha) -> int:
    """Rank of the multidegree-alpha component of degree k.

    Equals the number of Lyndon words with letter counts alpha:
    (1/k) sum over d | gcd(alpha) of mu(d) (k/d)! / prod (alpha_i/d)!.
    """
    counts = list(getattr(alpha, "counts", alpha))
    if len(counts) > n:
        raise ValueError("alpha longer than the alphabet")
    if any(a < 0 for a in counts):
        raise ValueError("negative multidegree entry")
    if sum(counts) != k:
        raise ValueError("alpha must sum to k")
    if k < 1:
        raise ValueError("need k >= 1")
    nonzero = [a for a in counts if a]
    g = 0
    for a in nonzero:
        g = gcd(g, a)
    total = 0
    for d in _words.divisors(g):
        m = factorial(k // d)
        for a in nonzero:
            m //= factorial(a // d)
        total += _words.mobius(d) * m
    assert total % k == 0
    return total // k


@dataclass(frozen=True)
class Multidegree:
    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise ValueError("negative count")

    @property
    def total(self) -> int:
        return sum(self.counts)

    @classmethod
    def of_word(cls, word, n: int):
        return cls(word_content(word, n))


_TREE_CACHE: dict = {}


def _bracket_tree(word):
    tree = _TREE_CACHE.get(word)
    if tree is None:
        if len(word) == 1:
            tree = word[0]
        else:
            u, v = standard_factorization(word)
            tree = (_bracket_tree(u), _bracket_tree(v))
        _TREE_CACHE[word] = tree
    return tree


def _tree_str(tree):
    if isinstance(tree, int):
        return f"x{tree}"
    return f"[{_tree_str(tree[0])},{_tree_str(tree[1])}]"


@dataclass(frozen=True, order=True)
class HallMonomial:
    """Basis monomial: a Lyndon word with its standard bracketing."""

    n: int
    word: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(c) for c in self.word))
        if not self.word or min(self.word) < 1 or max(self.word) > self.n:
            raise ValueError("letters out of range")
        if not is_lyndon(self.word):
            raise ValueError(f"{self.word!r} is not a basis word")

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def multidegree(self) -> tuple:
        return word_content(self.word, self.n)

    @property
    def tree(self):
        return _bracket_tree(self.word)

    def __str__(self):
        return _tree_str(self.tree)


_BASIS_CACHE: dict = {}
_BASIS_LOCK = threading.Lock()


def hall_basis(n: int, k: int):
    """The degree-k basis monomials, ordered lexicographically by word."""
    key = (n, k)
    got = _BASIS_CACHE.get(key)
    if got is None:
        with _BASIS_LOCK:
            got = _BASIS_CACHE.get(key)
            if got is None:
                got = tuple(HallMonomial(n, w) for w in lyndon_words(n, k))
                _BASIS_CACHE[key] = got
    return got


# ---------------------------------------------------------------------------
# tensor expansions (integer-encoded words; see _words.encode)

_IOTA_CACHE: dict = {}


def _cat(a, b, len_b, base):
    shift = base**len_b
    out = {}
    for wa, ca in a.items():
        head = wa * shift
        for wb, cb in b.items():
            key = head + wb
            val = out.get(key, 0) + ca * cb
            if val:
                out[key] = val
            else:
                del out[key]
    return out


def iota_enc(n: int, word) -> dict:
    """Tensor expansion of the basis monomial of `word`, encoded base n + 1.

    The least word of the expansion is `word` itself with coefficient 1; this
    triangularity is what makes coordinate extraction below terminate.
    """
    key = (n, word)
    got = _IOTA_CACHE.get(key)
    if got is not None:
        return got
    base = n + 1
    if len(word) == 1:
        got = {word[0]: 1}
    else:
        u, v = standard_factorization(word)
        a, b = iota_enc(n, u), iota_enc(n, v)
        got = _cat(a, b, len(v), base)
        for w, c in _cat(b, a, len(u), base).items():
            val = got.get(w, 0) - c
            if val:
                got[w] = val
            else:
                del got[w]
        assert min(got) == encode(word, base) and got[min(got)] == 1
    _IOTA_CACHE[key] = got
    return got


_AD_CACHE: dict = {}


def ad_enc(n: int, word, i: int) -> dict:
    """Tensor expansion of [basis(word), x_i], built directly from iota_enc."""
    key = (n, word, i)
    got = _AD_CACHE.get(key)
    if got is not None:
        return got
    base = n + 1
    body = iota_enc(n, word)
    shift = base ** len(word)
    out = {}
    for w, c in body.items():
        out[w * base + i] = c
    head = i * shift
    for w, c in body.items():
        key2 = head + w
        val = out.get(key2, 0) - c
        if val:
            out[key2] = val
        else:
            del out[key2]
    _AD_CACHE[key] = out
    return out


def project_lyndon_enc(n: int, k: int, tdict: dict, words=None) -> dict:
    """Coordinates of an encoded degree-k tensor element on the Lyndon basis.

    Eliminates candidate leading words in increasing order; raises ValueError
    if a remainder survives, i.e. the element was not in the Lie subspace.
    """
    if not tdict:
        return {}
    base = n + 1
    work = dict(tdict)
    if words is None:
        words = lyndon_words(n, k)
    coords = {}
    for w in words:
        c = work.get(encode(w, base))
        if not c:
            continue
        coords[w] = c
        for ww, cc in iota_enc(n, w).items():
            val = work.get(ww, 0) - c * cc
            if val:
                work[ww] = val
            else:
                work.pop(ww, None)
    if work:
        raise ValueError("element is not in the free Lie algebra")
    return coords


# ---------------------------------------------------------------------------
# public element types


class TensorElement:
    """Integer combination of degree-k tensor words (tuples over 1..n)."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms=()):
        self.n = n
        self.degree = degree
        self.terms = {}
        data = terms.items() if isinstance(terms, dict) else terms
        for word, coeff in data:
            word = tuple(word)
            if len(word) != degree:
                raise ValueError("word length does not match degree")
            coeff = int(coeff)
            if coeff:
                self.terms[word] = coeff

    @classmethod
    def _from_enc(cls, n, degree, enc_terms):
        obj = cls(n, degree)
        base = n + 1
        obj.terms = {decode(w, base, degree): c for w, c in enc_terms.items() if c}
        return obj

    def _enc_terms(self):
        base = self.n + 1
        return {encode(w, base): c for w, c in self.terms.items()}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("mixed degrees")
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                del out[w]
        return TensorElement(self.n, self.degree, out)

    def __neg__(self):
        return TensorElement(self.n, self.degree, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = int(c)
        return TensorElement(self.n, self.degree, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
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
        for w in sorted(self.terms):
            c = self.terms[w]
            bits.append(f"{'+' if c > 0 else '-'} {abs(c)}*{''.join(map(str, w))}")
        return " ".join(bits).lstrip("+ ")


class LieElement:
    """Integer combination of degree-k basis monomials."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms=()):
        self.n = n
        self.degree = degree
        self.terms = {}
        data = terms.items() if isinstance(terms, dict) else terms
        for mono, coeff in data:
            if not isinstance(mono, HallMonomial):
                mono = HallMonomial(n, mono)
            if mono.degree != degree or mono.n != n:
                raise ValueError("monomial does not match element degree")
            coeff = int(coeff)
            if coeff:
                self.terms[mono] = coeff

    @classmethod
    def generator(cls, n: int, i: int):
        return cls(n, 1, {HallMonomial(n, (i,)): 1})

    @classmethod
    def _from_word_coords(cls, n, degree, coords):
        obj = cls(n, degree)
        obj.terms = {HallMonomial(n, w): c for w, c in coords.items() if c}
        return obj

    def word_coords(self) -> dict:
        return {m.word: c for m, c in self.terms.items()}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("mixed degrees")
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        res = LieElement(self.n, self.degree)
        res.terms = out
        return res

    def __neg__(self):
        res = LieElement(self.n, self.degree)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = int(c)
        res = LieElement(self.n, self.degree)
        if c:
            res.terms = {m: c * v for m, v in self.terms.items()}
        return res

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
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
        for m in sorted(self.terms, key=lambda m: m.word):
            c = self.terms[m]
            bits.append(f"{'+' if c > 0 else '-'} {abs(c)}*{m}")
        return " ".join(bits).lstrip("+ ")

    def _enc_tensor(self) -> dict:
        out: dict = {}
        for mono, coeff in self.terms.items():
            for w, c in iota_enc(self.n, mono.word).items():
                v = out.get(w, 0) + coeff * c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return out


def embed_tensor(a: LieElement) -> TensorElement:
    """Expand every bracket as u(x)v - v(x)u; injective on each degree."""
    return TensorElement._from_enc(a.n, a.degree, a._enc_tensor())


def lie_from_tensor(t: TensorElement) -> LieElement:
    """Inverse of embed_tensor on its image; ValueError off the image."""
    coords = project_lyndon_enc(t.n, t.degree, t._enc_terms())
    return LieElement._from_word_coords(t.n, t.degree, coords)


def _tree_degree(tree):
    if isinstance(tree, int):
        return 1
    return _tree_degree(tree[0]) + _tree_degree(tree[1])


def _tree_max_letter(tree):
    if isinstance(tree, int):
        return tree
    return max(_tree_max_letter(tree[0]), _tree_max_letter(tree[1]))


def _tree_enc(tree, n):
    base = n + 1
    if isinstance(tree, int):
        if not 1 <= tree <= n:
            raise ValueError("generator index out of range")
        return {tree: 1}, 1
    if len(tree) != 2:
        raise ValueError("bracket tree nodes must be pairs")
    a, la = _tree_enc(tree[0], n)
    b, lb = _tree_enc(tree[1], n)
    out = _cat(a, b, lb, base)
    for w, c in _cat(b, a, la, base).items():
        v = out.get(w, 0) - c
        if v:
            out[w] = v
        else:
            del out[w]
    return out, la + lb


def normalize(tree, n: int = None) -> LieElement:
    """Coordinates of an arbitrary bracket tree in the monomial basis.

    The tree is a generator index or a nested pair, e.g. ``((1, 2), 1)``
    for [[x1,x2],x1].  Expansion goes through the tensor algebra and is read
    back through the triangular leading-word correspondence, so antisymmetry
    and the Jacobi identity hold automatically.
    """
    if n is None:
        n = _tree_max_letter(tree)
    enc, degree = _tree_enc(tree, n)
    coords = project_lyndon_enc(n, degree, enc)
    return LieElement._from_word_coords(n, degree, coords)


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Lie bracket [a, b], computed in the tensor algebra."""
    if a.n != b.n:
        raise ValueError("mixed alphabets")
    n = a.n
    base = n + 1
    ea, eb = a._enc_tensor(), b._enc_tensor()
    out = _cat(ea, eb, b.degree, base)
    for w, c in _cat(eb, ea, a.degree, base).items():
        v = out.get(w, 0) - c
        if v:
            out[w] = v
        else:
            del out[w]
    degree = a.degree + b.degree
    coords = project_lyndon_enc(n, degree, out)
    return LieElement._from_word_coords(n, degree, coords)
