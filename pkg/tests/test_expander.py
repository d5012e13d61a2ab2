import numpy as np
import pytest

from hwpoly.expander import (
    _IterState,
    expand_hwv,
    plain_changes,
    sign_of,
    word_class_of,
)
from hwpoly.hashing import build_hash_chain
from hwpoly.monomials import monomial_content
from hwpoly.tableaux import (
    count_assignments,
    enumerate_isobaric_tableaux,
    partitions_of,
    tableau_from_rows,
)

from oracles import naive_expand, perm_sign_by_inversions


def hwp_from_naive(rows, d, c):
    return naive_expand([list(r) for r in rows], d, c)


def test_sign_of_examples():
    # worked example on shape (6,4,2): signs multiply to +1
    assign = ((1, 2, 3), (2, 1, 3), (2, 1), (1, 2), (1,), (1,))
    assert sign_of(assign) == 1
    assert sign_of(((1, 2), (1,), (1,))) == 1
    assert sign_of(((2, 1),)) == -1


def test_word_class_worked_example():
    tab = tableau_from_rows([[1, 1, 1, 2, 3, 4], [2, 2, 3, 4], [3, 4]])
    assign = ((1, 2, 3), (2, 1, 3), (2, 1), (1, 2), (1,), (1,))
    assert word_class_of(assign, tab) == (
        (1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3),
    )


def test_word_class_identity_and_swap():
    tab = tableau_from_rows([[1, 1], [2, 2]])
    assert word_class_of(((1, 2), (1, 2)), tab) == ((1, 1), (2, 2))
    assert word_class_of(((1, 2), (2, 1)), tab) == ((1, 2), (1, 2))


@pytest.mark.parametrize("m", range(1, 8))
def test_plain_changes_visits_all_permutations(m):
    import math

    sched = plain_changes(m)
    assert len(sched) == math.factorial(m) - 1
    perm = list(range(1, m + 1))
    seen = {tuple(perm)}
    for j in sched:
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
        assert tuple(perm) not in seen
        seen.add(tuple(perm))
    assert len(seen) == math.factorial(m)


def test_worked_example_expansion():
    tab = tableau_from_rows([[1, 1], [2, 2]])
    hwp = expand_hwv(tab, seed=1)
    assert hwp.terms == {((1, 1), (2, 2)): 2, ((1, 2), (1, 2)): -2}


def test_single_row_expansion():
    tab = tableau_from_rows([[1, 1, 2, 2]])
    hwp = expand_hwv(tab, seed=1)
    assert hwp.terms == {((1, 1), (1, 1)): 1}


def test_telescoping_to_zero():
    # (3,1) is a valid tableau whose signed sum cancels completely
    tab = tableau_from_rows([[1, 1, 2], [2]])
    assert expand_hwv(tab, seed=1).is_zero


def _shapes_for_oracle(max_dc, max_assign):
    for dc in range(2, max_dc + 1):
        for d in range(1, dc + 1):
            if dc % d:
                continue
            c = dc // d
            for lam in partitions_of(dc):
                if count_assignments(lam) <= max_assign:
                    yield lam, d, c


def test_oracle_equivalence_small_sweep():
    # full-materialization oracle vs hashed Gray-code path
    for lam, d, c in _shapes_for_oracle(8, 2000):
        tabs = enumerate_isobaric_tableaux(lam, d, c)
        if not tabs:
            continue
        chain = build_hash_chain(lam, d, c, seed=13)
        for tab in tabs[:3]:
            want = hwp_from_naive(tab.rows, d, c)
            got = expand_hwv(tab, chain=chain, backend="python")
            assert got.terms == want, (lam, d, c, tab.rows)


def test_backend_and_worker_invariance():
    lam, d, c = (4, 4, 2, 2), 6, 2
    tab = enumerate_isobaric_tableaux(lam, d, c)[7]
    chain = build_hash_chain(lam, d, c, seed=2)
    base = expand_hwv(tab, chain=chain, backend="python", workers=1)
    assert expand_hwv(tab, chain=chain, backend="python", workers=3).same_polynomial(base)
    numba_1 = expand_hwv(tab, chain=chain, backend="numba", workers=1)
    numba_2 = expand_hwv(tab, chain=chain, backend="numba", workers=2)
    assert numba_1.same_polynomial(base)
    assert numba_2.same_polynomial(base)


def test_hash_scheme_independence():
    lam, d, c = (3, 3, 2), 4, 2
    tab = enumerate_isobaric_tableaux(lam, d, c)[0]
    h1 = expand_hwv(tab, chain=build_hash_chain(lam, d, c, seed=1), backend="python")
    h2 = expand_hwv(tab, chain=build_hash_chain(lam, d, c, seed=99), backend="python")
    assert h1.same_polynomial(h2)


def test_chained_hashing_matches_single():
    lam, d, c = (4, 4, 2, 2), 6, 2
    tab = enumerate_isobaric_tableaux(lam, d, c)[11]
    single = build_hash_chain(lam, d, c, seed=4)
    forced = build_hash_chain(lam, d, c, seed=4, p_cap=len(single.domain))
    assert forced.depth >= 2
    a = expand_hwv(tab, chain=single, backend="python")
    b = expand_hwv(tab, chain=forced, backend="python")
    nb = expand_hwv(tab, chain=forced, backend="numba")
    assert a.same_polynomial(b)
    assert a.same_polynomial(nb)


def test_content_invariant():
    for lam, d, c in [((4, 2), 3, 2), ((3, 3, 2), 4, 2), ((6, 4, 2), 4, 3)]:
        for tab in enumerate_isobaric_tableaux(lam, d, c)[:4]:
            hwp = expand_hwv(tab, seed=5)
            for mono in hwp.terms:
                assert monomial_content(mono, len(lam)) == lam


def test_gray_stream_sign_and_incremental_hash():
    # every step is one transposition; the tracked sign equals the
    # inversion-count sign; the incremental hash equals a fresh recompute
    lam, d, c = (3, 3, 2), 4, 2
    tab = enumerate_isobaric_tableaux(lam, d, c)[1]
    chain = build_hash_chain(lam, d, c, seed=8)
    state = _IterState(tab, chain, 0)
    scheme = chain.schemes[0]
    seen = 0
    while True:
        assign = state.current_assignment()
        expected_sign = 1
        for perm in assign:
            expected_sign *= perm_sign_by_inversions(perm)
        assert state.sign == expected_sign
        recomputed = scheme.hash_monomial(word_class_of(assign, tab))
        assert int(state.gammas[0]) == recomputed
        seen += 1
        prev = state.current_assignment()
        if not state.step_py():
            break
        cur = state.current_assignment()
        diffs = [
            (i, a, b) for i, (a, b) in enumerate(zip(prev, cur)) if a != b
        ]
        assert len(diffs) == 1  # exactly one column changed
        i, a, b = diffs[0]
        changed = [j for j, (x, y) in enumerate(zip(a, b)) if x != y]
        assert len(changed) == 2 and changed[1] == changed[0] + 1
    assert seen == count_assignments(lam)


def test_seek_matches_stepping():
    lam, d, c = (3, 3, 2), 4, 2
    tab = enumerate_isobaric_tableaux(lam, d, c)[2]
    chain = build_hash_chain(lam, d, c, seed=8)
    walker = _IterState(tab, chain, 0)
    n = 0
    while True:
        fresh = _IterState(tab, chain, n)
        assert np.array_equal(fresh.g, walker.g)
        assert np.array_equal(fresh.boxvals, walker.boxvals)
        assert fresh.sign == walker.sign
        assert np.array_equal(fresh.gammas, walker.gammas)
        if not walker.step_py():
            break
        n += 1


def test_overflow_guard(monkeypatch):
    import hwpoly.expander as ex

    tab = tableau_from_rows([[1, 1], [2, 2]])
    monkeypatch.setattr(ex, "count_assignments", lambda lam: 2**63)
    with pytest.raises(OverflowError):
        expand_hwv(tab, seed=0)
