import random

import pytest

from lietrace import johnson
from lietrace.cyclic import cyclic_rank
from lietrace.exactlin import IncrementalSpan, QuotientStructure
from lietrace.freelie import multidegree_rank
from lietrace.johnson import (
    _block_trace_rank,
    _p_index,
    c_alpha,
    check_T0530,
    coker_structure,
    johnson_image,
    n3gap_rows,
    section7_rows,
    section8_rows,
    trace_image_dim,
    trace_image_dim_direct,
    trace_kernel_dim,
    trace_rank,
    verify_E_generators,
)
from lietrace.tangent import (
    TangentialGenerator,
    der_bracket,
    p_coordinates,
    tangential,
    tau1_generator,
)


def test_image_dims_small():
    dims = [johnson_image(3, k).dim for k in range(1, 6)]
    assert dims == [6, 6, 16, 36, 96]
    assert johnson_image(4, 1).dim == 12
    assert johnson_image(4, 2).dim == 18  # n(n-1)^2/2


def test_kernel_dims_small():
    assert [trace_kernel_dim(3, k) for k in range(1, 6)] == [6, 6, 16, 36, 96]
    assert trace_kernel_dim(4, 2) == 18


def test_image_contained_in_kernel():
    for n in (3, 4):
        for k in range(1, 5):
            assert johnson_image(n, k).dim <= trace_kernel_dim(n, k)


def test_image_equals_kernel_through_degree_six():
    for k in range(1, 7):
        assert johnson_image(3, k).dim == trace_kernel_dim(3, k)


def test_c_alpha_rows_through_k6():
    assert (c_alpha(5, (3, 2)).c_alpha, c_alpha(5, (3, 2)).r_alpha) == (2, 0)
    assert (c_alpha(6, (4, 2)).c_alpha, c_alpha(6, (4, 2)).r_alpha) == (2, 0)
    assert (c_alpha(6, (3, 3)).c_alpha, c_alpha(6, (3, 3)).r_alpha) == (3, 0)
    assert (c_alpha(6, (2, 2, 2)).c_alpha, c_alpha(6, (2, 2, 2)).r_alpha) == (15, 1)


def test_c_alpha_order_insensitive_and_validated():
    assert c_alpha(5, (2, 3)) == c_alpha(5, (3, 2))
    with pytest.raises(ValueError):
        c_alpha(5, (3, 1, 0))
    with pytest.raises(ValueError):
        c_alpha(5, (3, 3))


def test_part_one_contents_are_full_rank():
    # computed directly, these match the closed multidegree rank
    for k, alpha in [(4, (2, 1, 1)), (5, (3, 1, 1)), (5, (2, 2, 1)), (6, (3, 2, 1))]:
        n = len(alpha)
        direct = _block_trace_rank(n, k, alpha, "bar")
        assert direct == multidegree_rank(n, k, alpha), (k, alpha)


@pytest.mark.parametrize("n,kmax", [(3, 6), (4, 5)])
def test_orbit_sum_matches_direct_rank(n, kmax):
    for k in range(2, kmax + 1):
        assert trace_image_dim(n, k) == trace_image_dim_direct(n, k), (n, k)


def test_orbit_sum_matches_direct_rank_n4_k6():
    assert trace_image_dim(4, 6) == trace_image_dim_direct(4, 6)


def test_tilde_trace_surjective_small():
    for n in (2, 3):
        for k in range(2, 7):
            assert trace_rank(n, k, "tilde") == cyclic_rank(n, k, "tilde")


def test_coker_structures_small():
    for n in (3, 4):
        assert coker_structure(n, 2) == QuotientStructure(0)
        assert coker_structure(n, 3) == QuotientStructure(0)
        q = coker_structure(n, 4)
        assert q == QuotientStructure(n * (n - 1) // 2)


def test_t0530_small():
    rep = check_T0530(3, 3)
    assert rep.ok
    checked_contents = {c for c, _ in rep.checked}
    assert all(1 in c for c in checked_contents)
    rep4 = check_T0530(3, 4)
    assert rep4.ok
    assert rep4.skipped  # e.g. content (2, 2, 0) has no isolated letter
    assert all(1 not in c for c in rep4.skipped)


def test_absent_letter_generators_lie_in_image():
    # x_i* (x) [w, x_i] with i absent from w is always in the bracket span
    for k in (3, 4, 5):
        image = johnson_image(3, k)
        pidx = _p_index(3, k)
        rng = random.Random(41)
        for _ in range(12):
            i = rng.randint(1, 3)
            word = tuple(rng.choice([x for x in (1, 2, 3) if x != i]) for _ in range(k))
            f = tangential(3, TangentialGenerator(i, word))
            if f.is_zero():
                continue
            coords = p_coordinates(f)
            vec = {pidx[key]: c for key, c in coords.items()}
            assert image.span.contains(vec), (i, word)


def test_e_generators():
    rep3 = verify_E_generators(3)
    assert rep3.ok and rep3.total == 16 and rep3.span_dim == 16
    assert rep3.family_counts == (0, 6, 4, 6)
    rep5 = verify_E_generators(5)
    assert rep5.ok and rep5.total == 160 and rep5.span_dim == 160


def test_sign_convention_invariance():
    # negating every generator leaves all reported dimensions unchanged
    n = 3
    gens = [tau1_generator(n, i, j) for i in range(1, 4) for j in range(1, 4) if i != j]
    pidx = _p_index(n, 2)
    for flip in (1, -1):
        span = IncrementalSpan(len(pidx))
        for f in gens:
            for g in gens:
                br = der_bracket(flip * f, flip * g)
                if br.is_zero():
                    continue
                coords = p_coordinates(br)
                span.insert({pidx[key]: c for key, c in coords.items()})
        assert span.dim == johnson_image(n, 2).dim


def test_section7_rows():
    rows = section7_rows(3)
    assert [r[1] for r in rows] == [6, 6, 16, 36]
    assert [r[2] for r in rows] == [6, 9, 24, 54]
    assert [r[3] for r in rows] == [0, 3, 8, 21]
    assert [r[4] for r in rows] == ["0", "0", "0", "3"]


def test_section8_rows_through_k7():
    rows = section8_rows(7)
    expect = [
        [5, (3, 2), 2, 0],
        [6, (4, 2), 2, 0],
        [6, (3, 3), 3, 0],
        [6, (2, 2, 2), 15, 1],
        [7, (5, 2), 3, 0],
        [7, (4, 3), 5, 0],
        [7, (3, 2, 2), 30, 0],
    ]
    assert rows == expect


def test_n3gap_rows_small():
    rows = n3gap_rows(5)
    assert rows == [[1, 6, 6], [2, 6, 6], [3, 16, 16], [4, 36, 36], [5, 96, 96]]


def test_tables_dispatch():
    assert johnson.tables("section7", n=3) == section7_rows(3)
    assert johnson.tables("n3gap", kmax=3) == n3gap_rows(3)
    with pytest.raises(ValueError):
        johnson.tables("nope")


def test_degree7_gap_localizes_to_one_content_orbit():
    """The 6-dimensional kernel/span gap at (3, 7) sits entirely in the three
    compositions with letter counts {3, 2, 2}, two dimensions each."""
    from lietrace._words import compositions, lyndon_by_content, word_content
    from lietrace.johnson import _block_keys

    n, k = 3, 7
    image = johnson_image(n, k)
    pidx = _p_index(n, k)
    rev = {v: key for key, v in pidx.items()}
    per_block_image = {}
    for col in image.span.pivot_columns():
        i, u = rev[col]
        c = word_content(u, n)
        per_block_image[c] = per_block_image.get(c, 0) + 1
    gaps = {}
    for content in compositions(k, n):
        if not lyndon_by_content(n, k).get(content):
            continue
        block_p = len(_block_keys(n, k, content))
        kernel = block_p - _block_trace_rank(n, k, content, "bar")
        gap = kernel - per_block_image.get(content, 0)
        if gap:
            gaps[content] = gap
    assert gaps == {(3, 2, 2): 2, (2, 3, 2): 2, (2, 2, 3): 2}


def test_image_dim_independent_of_bracketing_order():
    # brute-force route for n=2, k<=4: all left-normed bracket words
    n = 2
    gens = {
        (i, j): tau1_generator(n, i, j)
        for i in (1, 2)
        for j in (1, 2)
        if i != j
    }
    elements = {1: list(gens.values())}
    for k in (2, 3, 4):
        new = []
        for f in elements[k - 1]:
            for g in gens.values():
                br = der_bracket(f, g)
                if not br.is_zero():
                    new.append(br)
        elements[k] = new
    for k in (1, 2, 3, 4):
        pidx = _p_index(n, k)
        span = IncrementalSpan(len(pidx))
        for f in elements[k]:
            coords = p_coordinates(f)
            span.insert({pidx[key]: c for key, c in coords.items()})
        assert span.dim == johnson_image(n, k).dim, k
