import csv
import io
import itertools
import json
import random

import pytest
import sympy

import oracles
from magnus_kernel import Automorphism, SubgroupContext, Word, int_rank, make_inner, make_omega, make_sigma, pi, restrict, verify
from magnus_kernel.detect import (
    VERIFIERS,
    CoordMatrix,
    Report,
    lemma_chain,
    lemma_omega,
    case_sum_vector,
    omega_case,
    omega_terms,
    rank1_rows,
    undetected_conjugator,
    undetected_sigma,
    verify_all,
)
from magnus_kernel.errors import CapExceededError, NotInKernelError
from magnus_kernel.johnson import key_sum, tau1_vector
from magnus_kernel.sampling import magnus_generators


def test_make_sigma_fixes_other_generators():
    n = 4
    s = make_sigma(3, 2, 4, n)
    for i in (1, 3, 4):
        assert s(Word.generator(n, i)) == Word.generator(n, i)


def test_make_sigma_inverse_and_word():
    s = make_sigma(2, 2, 3, 3)
    assert (s * s.inverse()).is_identity()
    assert len(s.images[1].syllables) == 14


@pytest.mark.parametrize("args", [(2, 1, 3, 3), (2, 2, 2, 3), (1, 2, 3, 3), (2, 2, 3, 2)])
def test_make_sigma_bad_indices(args):
    with pytest.raises(ValueError):
        make_sigma(*args)


def test_make_inner():
    assert make_inner(Word.identity(3)).is_identity()
    g = Word.from_letters(3, [1, 2, -3])
    assert make_inner(g).inverse() == make_inner(g.inverse())


def test_undetected_sigma_action():
    n = 4
    c = undetected_conjugator(n)
    s = undetected_sigma(n)
    for i in range(1, n + 1):
        x = Word.generator(n, i)
        assert s(x) == c * x * c.inverse()


# --- omega_{m,k} ----------------------------------------------------------------------

@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_omegas_multiply_to_restriction_and_commute(d):
    ctx = SubgroupContext(3, d)
    for m in range(2, d):
        omegas = [make_omega(m, k, ctx) for k in range(d)]
        prod = Automorphism.identity(ctx.rank)
        for o in omegas:
            prod = prod * o
        assert prod == restrict(make_sigma(m, 2, 3, 3), ctx)
        for a, b in itertools.combinations(omegas, 2):
            assert a * b == b * a


def test_omega_case_one_tau1():
    d = 6
    ctx = SubgroupContext(3, d)
    for m in range(2, d):
        for k in range(0, d - m):
            assert omega_case(m, k, d) == 1
            expected = key_sum(
                [
                    (ctx.index(k, 2), ctx.index(m + k, 3), ctx.index(k, 3)),
                    (ctx.index(k, 2), ctx.index(k + 1, 3), ctx.index(m + k, 3)),
                    (ctx.index(k, 2), ctx.index(k, 3), ctx.index(k + 1, 3)),
                ],
                ctx.rank,
            )
            assert tau1_vector(make_omega(m, k, ctx)) == expected


def test_omega_terms_every_case():
    for d in (3, 4, 5, 7):
        ctx = SubgroupContext(3, d)
        for m in range(2, d):
            for k in range(d):
                assert tau1_vector(make_omega(m, k, ctx)) == key_sum(omega_terms(m, k, ctx), ctx.rank)


def test_omega_parameter_checks():
    with pytest.raises(ValueError):
        make_omega(1, 0, SubgroupContext(3, 4))
    with pytest.raises(ValueError):
        make_omega(2, 4, SubgroupContext(3, 4))


@pytest.mark.parametrize("kind", ["L1", "L2", "L4"])
def test_lemma_decompositions_sampled(kind):
    n = 5
    size = 4 if kind == "L1" else 5
    for t in itertools.islice(itertools.permutations(range(1, n + 1), size), 0, None, 7):
        p = t[4] if size == 5 else None
        assert lemma_chain(kind, n, *t[:4], p) == lemma_omega(kind, n, *t[:4], p)


# --- pi and ranks -------------------------------------------------------------------

@pytest.mark.parametrize("d", [3, 4, 5])
def test_pi_matches_case_sum(d):
    ctx = SubgroupContext(3, d)
    for m in range(2, d):
        assert pi(make_sigma(m, 2, 3, 3), ctx) == case_sum_vector(m, ctx)


def test_pi_of_identity_is_zero():
    ctx = SubgroupContext(3, 4)
    assert not any(pi(Automorphism.identity(3), ctx))


def test_pi_requires_kernel():
    with pytest.raises(NotInKernelError):
        pi(magnus_generators(3)[0], SubgroupContext(3, 3))


def test_pi_additive(rng):
    n, d = 4, 3
    ctx = SubgroupContext(n, d)
    pool = [make_sigma(m, j, s, n) for m in (2,) for j in range(2, 5) for s in range(2, 5) if j != s]
    for _ in range(8):
        a, b = rng.choice(pool), rng.choice(pool)
        if rng.random() < 0.5:
            a = a.inverse()
        assert pi(a * b, ctx) == [x + y for x, y in zip(pi(a, ctx), pi(b, ctx))]


@pytest.mark.parametrize("d", [3, 4])
def test_undetected_sigma_has_zero_pi(d):
    assert not any(pi(undetected_sigma(4), SubgroupContext(4, d)))


def test_int_rank_examples():
    assert int_rank([[0, 0], [0, 0]]) == 0
    assert int_rank([]) == 0
    assert int_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank1_rows(3, 6).rank() == 4


def test_int_rank_matches_sympy():
    rng = random.Random(7)
    for _ in range(150):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        base = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rng.randint(1, rows))]
        M = [[sum(rng.randint(-2, 2) * b[c] for b in base) for c in range(cols)] for _ in range(rows)]
        assert int_rank(M) == sympy.Matrix(M).rank() == oracles.fraction_rank(M)


def test_int_rank_big_entries():
    M = [[10**40 + 1, 10**40], [10**40, 10**40 - 1]]
    assert int_rank(M) == 2
    assert int_rank([[10**40, 2 * 10**40], [1, 2]]) == 1


def test_coord_matrix_csv():
    cm = rank1_rows(3, 4)
    table = list(csv.reader(io.StringIO(cm.to_csv())))
    assert len(table) == 1 + len(cm.rows)
    assert table[0][0] == "K[1,2]"
    assert [list(map(int, r)) for r in table[1:]] == cm.rows
    assert all(len(r) == len(cm.keys) for r in cm.rows)


# --- verifiers ---------------------------------------------------------------------

def test_verifier_examples():
    r = verify("RANK1", n=3, d=5)
    assert (r.expected, r.got, r.passed) == (3, 3, True)
    r = verify("RANK2", n=4, d=4)
    assert (r.expected, r.got, r.passed) == (12, 12, True)
    r = verify("L1", n=4, indices=(1, 2, 3, 4))
    assert r.passed and r.expected == 1


def test_verify_rejects_unknown_and_caps():
    with pytest.raises(KeyError):
        verify("NOPE")
    with pytest.raises(CapExceededError):
        verify("RANK1", n=7, d=5)
    with pytest.raises(CapExceededError):
        verify("RANK1", n=3, d=13)


def test_report_json():
    r = verify("UNDETECTED", n=4, d=3)
    data = json.loads(r.dumps())
    assert {"id", "params", "expected", "got", "pass", "millis", "tool_version"} <= set(data)
    assert data["pass"] is True and data["params"] == {"n": 4, "d": 3}
    assert r.line().startswith("[PASS] UNDETECTED")


def test_verify_all_covers_every_id():
    quick = {"N2": {"samples": 10}, "CROSSED": {"samples": 10}, "FOXID": {"samples": 10}}
    reports = verify_all(lambda k: quick.get(k, {}))
    assert [r.id for r in reports] == list(VERIFIERS)
    assert all(r.passed for r in reports)
    assert isinstance(reports[0], Report)


def test_coordmatrix_rank_method():
    assert CoordMatrix([[1, 2], [2, 4]]).rank() == 1
