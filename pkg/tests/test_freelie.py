import pytest
from hypothesis import given, strategies as st

from lietrace import _words
from lietrace.exactlin import IncrementalSpan
from lietrace.freelie import (
    HallMonomial,
    LieElement,
    Multidegree,
    bracket,
    embed_tensor,
    hall_basis,
    lie_from_tensor,
    multidegree_rank,
    normalize,
    witt_rank,
)


def test_witt_examples():
    for n in (1, 2, 3, 5):
        assert witt_rank(n, 1) == n
    assert witt_rank(2, 11) == 186
    assert witt_rank(3, 3) == 8
    assert witt_rank(3, 4) == 18
    assert witt_rank(3, 6) == 116


def test_hall_basis_examples():
    assert len(hall_basis(2, 2)) == 1
    assert len(hall_basis(2, 3)) == 2
    assert len(hall_basis(3, 4)) == 18


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hall_basis_size_matches_witt(n):
    # full sweep up to degree 10; counted without caching the big word lists
    for k in range(1, 11):
        assert _words.lyndon_count(n, k) == witt_rank(n, k), (n, k)


def test_multidegree_examples():
    assert multidegree_rank(3, 3, (1, 1, 1)) == 2
    assert multidegree_rank(1, 2, (2,)) == 0
    assert multidegree_rank(2, 5, (5, 0)) == 0
    assert multidegree_rank(2, 8, (6, 2)) == 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_multidegree_sums_to_witt(n):
    for k in range(1, 10):
        total = sum(
            multidegree_rank(n, k, alpha) for alpha in _words.compositions(k, n)
        )
        assert total == witt_rank(n, k)


@pytest.mark.parametrize("n,kmax", [(2, 7), (3, 6)])
def test_multidegree_three_way_oracle(n, kmax):
    """Closed form == Lyndon word count == rank of embedded basis vectors."""
    by_content = _words.lyndon_by_content
    for k in range(1, kmax + 1):
        grouped = by_content(n, k)
        for alpha in _words.compositions(k, n):
            words = grouped.get(alpha, ())
            expected = multidegree_rank(n, k, alpha)
            assert len(words) == expected
            span = IncrementalSpan((n + 1) ** k)
            for w in words:
                mono = HallMonomial(n, w)
                elt = LieElement(n, k, {mono: 1})
                assert span.insert(embed_tensor(elt)._enc_terms())
            assert span.dim == expected


def test_embedded_basis_independent():
    for n in (2, 3):
        for k in range(1, 8 if n == 2 else 7):
            span = IncrementalSpan((n + 1) ** k)
            for mono in hall_basis(n, k):
                elt = LieElement(n, k, {mono: 1})
                assert span.insert(embed_tensor(elt)._enc_terms())
            assert span.dim == witt_rank(n, k)


def test_normalize_examples():
    assert normalize((1, 1), n=2).is_zero()
    assert normalize((1, 2), n=2) == -1 * normalize((2, 1), n=2)
    s = normalize(((2, 1), 1), n=2) + normalize(((1, 2), 1), n=2)
    assert s.is_zero()


def test_embed_examples():
    n = 3
    x1 = LieElement.generator(n, 1)
    assert embed_tensor(x1).terms == {(1,): 1}
    e = normalize((1, 2), n=n)
    assert embed_tensor(e).terms == {(1, 2): 1, (2, 1): -1}
    e = normalize(((1, 2), 1), n=n)
    assert embed_tensor(e).terms == {(1, 2, 1): 2, (2, 1, 1): -1, (1, 1, 2): -1}


def test_normalize_agrees_with_embedding():
    # the embedding of the normalized tree equals raw tensor expansion
    trees = [((1, 2), (2, 1)), (((1, 2), 2), 1), ((1, (2, 3)), (1, 2))]
    for tree in trees:
        elt = normalize(tree, n=3)
        raw_enc, deg = _tree_expand(tree, 3)
        assert embed_tensor(elt)._enc_terms() == raw_enc


def _tree_expand(tree, n):
    from lietrace.freelie import _tree_enc

    return _tree_enc(tree, n)


def test_lie_from_tensor_roundtrip():
    e = normalize(((1, 2), (1, (2, 2))), n=2) - 3 * normalize(
        (((1, 2), 2), (1, 2)), n=2
    )
    assert lie_from_tensor(embed_tensor(e)) == e


def test_lie_from_tensor_rejects_non_lie():
    from lietrace.freelie import TensorElement

    with pytest.raises(ValueError):
        lie_from_tensor(TensorElement(2, 2, {(1, 2): 1}))


small_elt = st.builds(
    lambda coeffs: _random_elt(3, 2, coeffs),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
)


def _random_elt(n, k, coeffs):
    basis = hall_basis(n, k)
    return LieElement(n, k, {m: c for m, c in zip(basis, coeffs)})


@given(small_elt, small_elt)
def test_bracket_antisymmetric(a, b):
    assert bracket(a, b) == -1 * bracket(b, a)
    assert bracket(a, a).is_zero()


@given(small_elt, small_elt, small_elt)
def test_bracket_jacobi(a, b, c):
    total = (
        bracket(a, bracket(b, c))
        + bracket(b, bracket(c, a))
        + bracket(c, bracket(a, b))
    )
    assert total.is_zero()


def test_bracket_degrees():
    a = normalize((1, 2), n=3)
    b = LieElement.generator(3, 3)
    assert bracket(a, b).degree == 3


def test_concurrent_basis_reads_are_consistent():
    from concurrent.futures import ThreadPoolExecutor

    def grab(_):
        return hall_basis(3, 5)

    with ThreadPoolExecutor(max_workers=6) as pool:
        results = list(pool.map(grab, range(12)))
    assert all(r is results[0] for r in results)
    assert len(results[0]) == witt_rank(3, 5)


def test_monomial_bracket_structure():
    mono = HallMonomial(3, (1, 1, 2))
    assert mono.degree == 3
    assert mono.multidegree == (2, 1, 0)
    assert mono.tree == (1, (1, 2))
    assert str(mono) == "[x1,[x1,x2]]"
    with pytest.raises(ValueError):
        HallMonomial(3, (2, 1))


def test_multidegree_type():
    md = Multidegree((2, 1, 0))
    assert md.total == 3
    assert Multidegree.of_word((1, 1, 2), 3) == md


def test_booth_matches_bruteforce():
    import random

    rng = random.Random(5)
    for _ in range(200):
        k = rng.randint(1, 9)
        w = tuple(rng.randint(1, 3) for _ in range(k))
        assert _words.min_rotation(w) == min(_words.rotations(w))


@given(st.lists(st.integers(1, 4), min_size=1, max_size=8))
def test_booth_property(letters):
    w = tuple(letters)
    assert _words.min_rotation(w) == min(_words.rotations(w))


@given(st.integers(2, 6), st.lists(st.integers(1, 6), min_size=1, max_size=9))
def test_word_codec_roundtrip(n, letters):
    w = tuple(min(c, n) for c in letters)
    base = n + 1
    code = _words.encode(w, base)
    assert _words.decode(code, base, len(w)) == w


@given(
    st.integers(2, 5),
    st.lists(st.integers(1, 5), min_size=3, max_size=3),
    st.lists(st.integers(1, 5), min_size=3, max_size=3),
)
def test_word_codec_preserves_lex_order(n, a, b):
    a = tuple(min(c, n) for c in a)
    b = tuple(min(c, n) for c in b)
    base = n + 1
    assert (a < b) == (_words.encode(a, base) < _words.encode(b, base))
