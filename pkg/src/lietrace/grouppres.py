"""Finitely presented groups, twisted first cohomology, abelianizations.

Presentations store relators as words over the generators and formal
inverses.  Relations stated as equalities are converted to relators by
right-multiplying with the inverse of the right-hand side.  Twisted
coefficients are integer lattices with one invertible matrix per generator;
crossed homomorphisms follow f(uv) = f(u) + u.f(v).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactlin
from .exactlin import QuotientStructure


class InconsistencyError(RuntimeError):
    """A cross-checked quantity failed to agree with its second computation."""


# ---------------------------------------------------------------------------
# words and presentations


def _inv(word):
    return tuple((g, -e) for g, e in reversed(word))


def _concat(*words):
    out = []
    for w in words:
        out.extend(w)
    return tuple(out)


def _commutator(x, y):
    return _concat(x, y, _inv(x), _inv(y))


def _gen(name):
    return ((name, 1),)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = []
        gens = set(self.generators)
        for rel in self.relators:
            rel = tuple((g, int(e)) for g, e in rel)
            for g, e in rel:
                if g not in gens:
                    raise ValueError(f"relator uses undeclared generator {g!r}")
                if e not in (1, -1):
                    raise ValueError("store relators with exponents +1/-1")
            rels.append(rel)
        object.__setattr__(self, "relators", tuple(rels))


def builtin(kind: str, n: int) -> Presentation:
    """The stock presentations used throughout: basis-conjugating, braid-
    permutation, braid, and symmetric groups."""
    kind = kind.lower()
    if n < 2:
        raise ValueError("need n >= 2")
    if kind == "mccool":
        return _mccool(n)
    if kind == "bp":
        return _braid_permutation(n)
    if kind == "braid":
        return _braid(n)
    if kind in ("symmetric", "sym"):
        return _symmetric(n)
    raise ValueError(f"unknown presentation kind {kind!r}")


def _kname(i, j):
    return f"K{i}_{j}"


def _mccool(n):
    gens = [_kname(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    rels = []
    rng = range(1, n + 1)
    # commuting pairs with a shared conjugator
    for j in rng:
        for i in rng:
            for k in rng:
                if i < k and len({i, j, k}) == 3:
                    rels.append(_commutator(_gen(_kname(i, j)), _gen(_kname(k, j))))
    # fully disjoint commuting pairs
    for i in rng:
        for j in rng:
            if i == j:
                continue
            for k in rng:
                for l in rng:
                    if k == l or len({i, j, k, l}) != 4:
                        continue
                    if (i, j) < (k, l):
                        rels.append(
                            _commutator(_gen(_kname(i, j)), _gen(_kname(k, l)))
                        )
    # the mixed relation [K_ik, K_ij K_kj] = 1
    for i in rng:
        for k in rng:
            for j in rng:
                if len({i, j, k}) == 3:
                    rels.append(
                        _commutator(
                            _gen(_kname(i, k)),
                            _concat(_gen(_kname(i, j)), _gen(_kname(k, j))),
                        )
                    )
    return Presentation(tuple(gens), tuple(rels))


def mccool_family_counts(n: int):
    """Sizes of the three relator families of the basis-conjugating group."""
    p1 = n * (n - 1) * (n - 2) // 2
    p2 = n * (n - 1) * (n - 2) * (n - 3) // 2
    p3 = n * (n - 1) * (n - 2)
    return p1, p2, p3


def _braid(n):
    gens = [f"sigma{i}" for i in range(1, n)]
    rels = []
    for i in range(1, n - 1):
        a, b = _gen(f"sigma{i}"), _gen(f"sigma{i+1}")
        rels.append(_concat(b, a, b, _inv(a), _inv(b), _inv(a)))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(_commutator(_gen(f"sigma{i}"), _gen(f"sigma{j}")))
    return Presentation(tuple(gens), tuple(rels))


def _symmetric(n):
    gens = [f"s{i}" for i in range(1, n)]
    rels = []
    for i in range(1, n):
        rels.append(_concat(_gen(f"s{i}"), _gen(f"s{i}")))
    for i in range(1, n - 1):
        a, b = _gen(f"s{i}"), _gen(f"s{i+1}")
        rels.append(_concat(a, b, a, _inv(b), _inv(a), _inv(b)))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(_commutator(_gen(f"s{i}"), _gen(f"s{j}")))
    return Presentation(tuple(gens), tuple(rels))


def _braid_permutation(n):
    """Mixed braid/permutation presentation on sigma_i and s_i."""
    sig = lambda i: _gen(f"sigma{i}")
    per = lambda i: _gen(f"s{i}")
    gens = [f"sigma{i}" for i in range(1, n)] + [f"s{i}" for i in range(1, n)]
    rels = []
    for i in range(1, n - 1):  # B1
        rels.append(
            _concat(sig(i), sig(i + 1), sig(i), _inv(_concat(sig(i + 1), sig(i), sig(i + 1))))
        )
    for i in range(1, n):  # B2
        for j in range(i + 2, n):
            rels.append(_commutator(sig(i), sig(j)))
    for i in range(1, n):  # SY1
        rels.append(_concat(per(i), per(i)))
    for i in range(1, n - 1):  # SY2
        rels.append(
            _concat(per(i), per(i + 1), per(i), _inv(_concat(per(i + 1), per(i), per(i + 1))))
        )
    for i in range(1, n):  # SY3
        for j in range(i + 2, n):
            rels.append(_commutator(per(i), per(j)))
    for i in range(1, n):  # BP1: sigma_i s_j = s_j sigma_i, |i-j| >= 2
        for j in range(1, n):
            if abs(i - j) >= 2:
                rels.append(_commutator(sig(i), per(j)))
    for i in range(1, n - 1):  # BP2
        rels.append(
            _concat(per(i), per(i + 1), sig(i), _inv(_concat(sig(i + 1), per(i), per(i + 1))))
        )
    for i in range(1, n - 1):  # BP3
        rels.append(
            _concat(sig(i), sig(i + 1), per(i), _inv(_concat(per(i + 1), sig(i), sig(i + 1))))
        )
    return Presentation(tuple(gens), tuple(rels))


# ---------------------------------------------------------------------------
# integer matrices (dense tuples) and lattice actions


def _identity(r):
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _mat_vec(a, v):
    return tuple(sum(a[i][t] * v[t] for t in range(len(v))) for i in range(len(a)))


def _mat_inv(a):
    """Inverse of a unimodular integer matrix; raises if not integral."""
    r = len(a)
    aug = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(r)]
        for i, row in enumerate(a)
    ]
    for col in range(r):
        piv = next((i for i in range(col, r) if aug[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(r):
            if i != col and aug[i][col]:
                c = aug[i][col]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[col])]
    out = []
    for row in aug:
        vals = row[r:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not invertible over the integers")
        out.append(tuple(int(v) for v in vals))
    return tuple(out)


@dataclass(frozen=True)
class LatticeAction:
    """One invertible integer matrix per generator, acting on Z^rank."""

    rank: int
    matrices: dict

    def matrix(self, g):
        got = self.matrices.get(g)
        if got is None:
            raise KeyError(f"no action matrix for generator {g!r}")
        return got

    def inverse(self, g):
        return _mat_inv(self.matrix(g))

    def word_matrix(self, word):
        m = _identity(self.rank)
        for g, e in word:
            m = _mat_mul(m, self.matrix(g) if e == 1 else self.inverse(g))
        return m

    def validate(self, p: Presentation):
        """Every relator must act as the identity for the action to be defined."""
        ident = _identity(self.rank)
        for rel in p.relators:
            if self.word_matrix(rel) != ident:
                raise InconsistencyError(f"relator {rel!r} does not act trivially")


def _transposition_matrix(n, p):
    """Action of the transposition (p, p+1) on the sum-zero sublattice of Z^n,
    written in the basis e_1 - e_n, ..., e_{n-1} - e_n."""
    r = n - 1
    if p < n - 1:
        m = [[int(i == j) for j in range(r)] for i in range(r)]
        m[p - 1][p - 1] = 0
        m[p][p] = 0
        m[p - 1][p] = 1
        m[p][p - 1] = 1
    else:
        m = [[int(i == j) for j in range(r)] for i in range(r)]
        m[r - 1] = [-1] * r
    return tuple(tuple(row) for row in m)


def standard_action(kind: str, n: int) -> LatticeAction:
    """Rank n-1 action through the permutation image of each generator."""
    kind = kind.lower()
    mats = {}
    if kind in ("bp", "braid"):
        for i in range(1, n):
            mats[f"sigma{i}"] = _transposition_matrix(n, i)
    if kind in ("bp", "symmetric", "sym"):
        for i in range(1, n):
            mats[f"s{i}"] = _transposition_matrix(n, i)
    if not mats:
        raise ValueError(f"no standard action for kind {kind!r}")
    return LatticeAction(n - 1, mats)


def trivial_action(p: Presentation) -> LatticeAction:
    return LatticeAction(1, {g: ((1,),) for g in p.generators})


# ---------------------------------------------------------------------------
# crossed homomorphisms


@dataclass(frozen=True)
class CrossedHom:
    """A cocycle, given by its value on each generator."""

    images: dict

    def value(self, g):
        return self.images[g]


def evaluate_cocycle(f: CrossedHom, action: LatticeAction, word) -> tuple:
    """Extend f over a word by f(uv) = f(u) + u.f(v), f(g^-1) = -g^-1 f(g)."""
    total = (0,) * action.rank
    prefix = _identity(action.rank)
    for g, e in word:
        if e == 1:
            contrib = _mat_vec(prefix, f.value(g))
            prefix = _mat_mul(prefix, action.matrix(g))
        elif e == -1:
            prefix = _mat_mul(prefix, action.inverse(g))
            contrib = tuple(-x for x in _mat_vec(prefix, f.value(g)))
        else:
            raise ValueError("exponents must be +1/-1")
        total = tuple(a + b for a, b in zip(total, contrib))
    return total


def principal_cocycle(action: LatticeAction, p: Presentation, v) -> CrossedHom:
    """The coboundary g -> g.v - v."""
    v = tuple(int(x) for x in v)
    images = {
        g: tuple(a - b for a, b in zip(_mat_vec(action.matrix(g), v), v))
        for g in p.generators
    }
    return CrossedHom(images)


def cocycle_condition_matrix(p: Presentation, action: LatticeAction):
    """Rows of the linear system cutting out the cocycles inside Z^(gens*rank).

    Unknown layout: generator g_j occupies columns j*rank .. j*rank + rank - 1.
    """
    r = action.rank
    gidx = {g: j for j, g in enumerate(p.generators)}
    rows = []
    for rel in p.relators:
        # coefficient of f(g) accumulated along the word
        coeff = {}
        prefix = _identity(r)
        for g, e in rel:
            if e == 1:
                block = prefix
                prefix = _mat_mul(prefix, action.matrix(g))
            else:
                prefix = _mat_mul(prefix, action.inverse(g))
                block = tuple(tuple(-x for x in row) for row in prefix)
            old = coeff.get(g)
            coeff[g] = (
                block
                if old is None
                else tuple(
                    tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(old, block)
                )
            )
        for out_row in range(r):
            row = {}
            for g, block in coeff.items():
                base = gidx[g] * r
                for col in range(r):
                    val = block[out_row][col]
                    if val:
                        row[base + col] = val
            rows.append(row)
    return rows, len(p.generators) * r


def z1_basis(p: Presentation, action: LatticeAction):
    """Basis of the lattice of cocycles, from the integer kernel of the
    relator conditions; saturated, so quotients by coboundaries are exact."""
    action.validate(p)
    rows, ncols = cocycle_condition_matrix(p, action)
    dense = []
    for row in rows:
        out = [0] * ncols
        for c, v in row.items():
            out[c] = v
        dense.append(out)
    return exactlin.integer_kernel_basis(dense, ncols), ncols


def _express_in_rows(basis_rows, target):
    """Integer coordinates of target in a Hermite-form row basis."""
    coeffs = [0] * len(basis_rows)
    work = list(target)
    lead = [next(j for j, v in enumerate(row) if v) for row in basis_rows]
    for idx, row in enumerate(basis_rows):
        piv = lead[idx]
        if work[piv] == 0:
            continue
        if work[piv] % row[piv]:
            raise InconsistencyError("vector outside the cocycle lattice")
        q = work[piv] // row[piv]
        coeffs[idx] = q
        work = [a - q * b for a, b in zip(work, row)]
    if any(work):
        raise InconsistencyError("vector outside the cocycle lattice")
    return coeffs


def h1_twisted(p: Presentation, action: LatticeAction) -> QuotientStructure:
    """First cohomology with coefficients in the lattice action: Z1/B1."""
    kernel, ncols = z1_basis(p, action)
    basis = exactlin.hermite_row_reduce(kernel, ncols)
    r = action.rank
    principal_rows = []
    for t in range(r):
        v = tuple(int(i == t) for i in range(r))
        f = principal_cocycle(action, p, v)
        vec = []
        for g in p.generators:
            vec.extend(f.value(g))
        principal_rows.append(_express_in_rows(basis, vec))
    return exactlin.quotient_structure(len(basis), principal_rows)


def abelianization(p: Presentation) -> QuotientStructure:
    """Smith form of the exponent-sum matrix of the relators."""
    gidx = {g: j for j, g in enumerate(p.generators)}
    rows = []
    for rel in p.relators:
        row = [0] * len(p.generators)
        for g, e in rel:
            row[gidx[g]] += e
        rows.append(row)
    return exactlin.quotient_structure(len(p.generators), rows)


def h2_psigma_rank(n: int) -> int:
    """Rank of the second homology of the basis-conjugating group.

    Computed as (relation lattice in degree 2) = m(m-1)/2 - dim of the
    degree-2 bracket span, m = n(n-1); checked against the closed form and
    against the relator count of the presentation before returning.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    from . import johnson  # deferred: johnson pulls in the heavy machinery

    m = n * (n - 1)
    value = m * (m - 1) // 2 - johnson.johnson_image(n, 2).dim
    closed = n * n * (n - 1) * (n - 2) // 2
    relcount = len(builtin("mccool", n).relators)
    if not (value == closed == relcount):
        raise InconsistencyError(
            f"h2 expressions disagree: span={value} closed={closed} relators={relcount}"
        )
    return value


# ---------------------------------------------------------------------------
# plain-text presentation format: one generator line, one relator per line


def format_presentation(p: Presentation) -> str:
    lines = [" ".join(p.generators)]
    for rel in p.relators:
        bits = []
        for g, e in rel:
            bits.append(g if e == 1 else f"{g}^-1")
        lines.append(" ".join(bits))
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    """Parse the plain-text format; tokens are names or name^k, k any integer."""
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise ValueError("empty presentation file")
    gens = tuple(lines[0].split())
    rels = []
    for ln in lines[1:]:
        word = []
        for tok in ln.split():
            if "^" in tok:
                name, _, exp = tok.partition("^")
                exp = int(exp)
            else:
                name, exp = tok, 1
            if exp == 0:
                continue
            sign = 1 if exp > 0 else -1
            word.extend((name, sign) for _ in range(abs(exp)))
        rels.append(tuple(word))
    return Presentation(gens, tuple(rels))
