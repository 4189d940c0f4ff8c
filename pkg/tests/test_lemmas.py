import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enc_lab.lemmas import (
    PAIRINGS_OF_SIX,
    LemmaViolation,
    PairingPattern,
    TerminalTuple,
    find_pattern,
    hypothesis_identity,
    index_bound_admits,
    index_bound_search,
    terminal_conclusion,
    terminal_hypothesis,
    transfer_fivefold_scan,
    verify_terminal_lemma,
)

from oracles import index_condition, terminal_identity, transfer_realised


def test_terminal_examples():
    t = TerminalTuple(5, (2, 3, 1, 0), 0)
    assert terminal_hypothesis(t)
    assert terminal_conclusion(t) == PairingPattern(1, (3, 1, 2))
    # j = 1 already fails: 10/5 against 6/5; the tuple also breaks gcd(a_4, r) = gcd(e, r)
    assert not hypothesis_identity(5, (1, 2, 3, 4), 0)
    assert not terminal_identity(5, (1, 2, 3, 4), 0)
    with pytest.raises(ValueError):
        TerminalTuple(5, (1, 2, 3, 4), 0)
    assert terminal_hypothesis(TerminalTuple(1, (7, 3, 2, 9), 4))


def test_terminal_tuple_validation():
    with pytest.raises(ValueError):
        TerminalTuple(6, (2, 1, 1, 1), 1)
    with pytest.raises(ValueError):
        TerminalTuple(6, (1, 1, 1, 2), 1)


def test_pairings_of_six():
    assert len(PAIRINGS_OF_SIX) == 15
    assert all(sorted(p) == [1, 2, 3, 4, 5, 6] for p in PAIRINGS_OF_SIX)


def test_find_pattern_variant_two():
    # r = 7: 1 + 6, 2 + 5, 3 - 3 pair the six values a_1..a_4, -e, -1
    t = TerminalTuple(7, (1, 2, 5, 3), 3)
    pat = find_pattern(t)
    assert pat.variant == 2
    six = [1, 2, 5, 3, -3, -1]
    assert all((six[pat.pairing[2 * s] - 1] + six[pat.pairing[2 * s + 1] - 1]) % 7 == 0 for s in range(3))


def brute_terminal(R):
    hyp = 0
    for r in range(2, R + 1):
        units = [x for x in range(r) if math.gcd(x, r) == 1]
        for a3 in itertools.product(units, repeat=3):
            for a4 in range(r):
                for e in range(r):
                    if math.gcd(a4, r) != math.gcd(e, r):
                        continue
                    if terminal_identity(r, a3 + (a4,), e):
                        hyp += 1
                        assert find_pattern(TerminalTuple(r, a3 + (a4,), e)) is not None
    return hyp


def test_terminal_counts_match_brute_force():
    rep = verify_terminal_lemma(12)
    # r = 1 contributes its single tuple
    assert rep.hypothesis_raw == brute_terminal(12) + 1
    assert rep.ok
    assert sum(rep.by_variant.values()) == rep.hypothesis_raw
    assert rep.hypothesis_canonical <= rep.hypothesis_raw


def test_terminal_lemma_no_violations_to_thirty():
    assert verify_terminal_lemma(30).violations == []


def test_conclusion_requires_hypothesis():
    # a hypothesis-false tuple is a caller error, not a lemma violation
    t = TerminalTuple(5, (1, 1, 1, 0), 0)
    assert find_pattern(t) is None
    with pytest.raises(ValueError):
        terminal_conclusion(t)
    assert issubclass(LemmaViolation, AssertionError)


def brute_admits(r, d, eps):
    return any(index_condition(tuple(F(x, r) for x in v), r, eps) for v in itertools.combinations_with_replacement(range(1, r + 1), d))


@pytest.mark.parametrize("d, eps", [(2, F(1, 2)), (3, F(1, 13)), (3, F(1, 3)), (4, F(1, 2))])
def test_index_bound_matches_brute_force(d, eps):
    for r in range(2, 13):
        assert index_bound_admits(r, d, eps) == brute_admits(r, d, eps), (r, d, eps)


def test_index_bound_search_examples():
    # v = (1/2, 1/2): m = 2 gives 1/2 + 1/2 = 1, so r = 2 works at eps = 1
    assert index_bound_admits(2, 2, 1)
    assert index_bound_search(3, F(1, 13), 20) == 20
    assert index_bound_search(3, F(1, 13), 110) >= 104
    with pytest.raises(ValueError):
        index_bound_search(3, 0, 10)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 14), st.integers(1, 3), st.fractions(min_value=F(1, 20), max_value=2, max_denominator=20))
def test_index_bound_is_antitone_in_eps(r, d, eps):
    if index_bound_admits(r, d, eps):
        assert index_bound_admits(r, d, eps / 2)


@pytest.mark.parametrize("delta", [F(1, 2), F(1, 5), F(1)])
def test_transfer_matches_brute_force(delta):
    assert transfer_fivefold_scan(delta, 8) == transfer_realised(delta, 8)


def test_transfer_antitone_in_delta():
    small = transfer_fivefold_scan(F(1, 10), 12)
    big = transfer_fivefold_scan(F(1, 3), 12)
    assert big <= small
    # r = 2 has no k besides k0 = 1, so the margin is vacuous there
    assert transfer_fivefold_scan(4, 12) == {2}
    with pytest.raises(ValueError):
        transfer_fivefold_scan(0, 5)
