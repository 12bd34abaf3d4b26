"""Ipomsets, steps, decompositions, gluing, and subsumption."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from hdalang import (EMPTY, IdentityHasNoDenseDecomposition, InterfaceMismatch,
                     InvalidIpomset, Ipomset, Step, StepWord, WidthExceeded, compose,
                     dense_decomposition, discrete_ipomset, enumerate_ipomsets,
                     glue, identity_ipomset, identity_step, in_down_closure,
                     parallel, parse_ipomset, print_ipomset, print_step,
                     sparse_decomposition, starter, subsumes, supersumptions,
                     terminator, validate_ipomset, word_ipomset)
from hdalang.text import parse_step_word, print_step_word

from fixtures import random_ipomset, random_step_word
from oracles import merge_normalize, subsumes_oracle, width_oracle

seeds = st.integers(min_value=0, max_value=10**9)


def rand(seed):
    return random.Random(seed)


# -- construction and validation ------------------------------------------

def test_empty_ipomset():
    assert EMPTY.is_identity()
    assert EMPTY.size() == 0
    assert len(EMPTY) == 0
    assert EMPTY.width() == 0


def test_word_builder():
    p = word_ipomset("abc")
    assert p.is_word()
    assert p.width() == 1
    assert (0, 1) in p.precedence and (0, 2) in p.precedence
    assert p.source == frozenset() and p.target == frozenset()


def test_discrete_builder():
    p = discrete_ipomset("ab")
    assert p.is_discrete()
    assert not p.precedence
    assert (0, 1) in p.event_order
    assert p.width() == 2


def test_interfaces_must_be_events():
    with pytest.raises(ValueError):
        Ipomset(("a",), (), (), source=(3,), target=())


def test_source_events_must_be_minimal():
    # event 1 is in the source but has a predecessor
    with pytest.raises(InvalidIpomset) as exc:
        Ipomset(("a", "b"), ((0, 1),), (), source=(1,), target=())
    assert any(pr.code == "InterfaceNotExtremal" for pr in exc.value.problems)


def test_target_events_must_be_maximal():
    with pytest.raises(InvalidIpomset) as exc:
        Ipomset(("a", "b"), ((0, 1),), (), source=(), target=(0,))
    assert any(pr.code == "InterfaceNotExtremal" for pr in exc.value.problems)


def test_precedence_cycle_rejected():
    with pytest.raises(InvalidIpomset) as exc:
        Ipomset(("a", "b"), ((0, 1), (1, 0)), ())
    assert any(pr.code == "NotPartialOrder" for pr in exc.value.problems)


def test_two_plus_two_rejected():
    # two disjoint 2-chains: the canonical non-interval order
    with pytest.raises(InvalidIpomset) as exc:
        Ipomset(("a", "a", "b", "b"), ((0, 1), (2, 3)), ((0, 2), (0, 3),
                                                         (1, 2), (1, 3)))
    assert any(pr.code == "NotInterval" for pr in exc.value.problems)


def test_concurrent_events_need_event_order():
    with pytest.raises(InvalidIpomset) as exc:
        Ipomset(("a", "b"), (), ())
    assert any(pr.code == "IncomparablePair" for pr in exc.value.problems)


def test_validate_returns_problems_instead_of_raising():
    problems = validate_ipomset(("a", "b"), ((0, 1), (1, 0)), ())
    assert problems
    assert all(hasattr(pr, "code") for pr in problems)
    assert validate_ipomset(("a",), (), ()) == []


def test_precedence_is_transitively_closed_on_construction():
    p = Ipomset(("a", "b", "c"), ((0, 1), (1, 2)), ())
    assert (0, 2) in p.precedence


# -- equality and canonical form -------------------------------------------

def test_equality_ignores_event_numbering():
    p = Ipomset(("a", "b"), ((0, 1),), ())
    q = Ipomset(("b", "a"), ((1, 0),), ())
    assert p == q
    assert hash(p) == hash(q)


def test_equality_respects_interfaces():
    p = word_ipomset("ab")
    q = word_ipomset("ab", target=(1,))
    assert p != q


def test_inessential_event_order_is_ignored():
    # the pair (0, 1) is ordered by precedence; stating an event order
    # for it as well changes nothing observable
    p = Ipomset(("a", "b"), ((0, 1),), ())
    q = Ipomset(("a", "b"), ((0, 1),), ((0, 1),))
    assert p == q


def test_repr_shows_bracket_notation():
    assert repr(word_ipomset("ab")) == "Ipomset('[a+][a-][b+][b-]')"


# -- steps ------------------------------------------------------------------

def test_starter_marks_positions():
    s = starter(("a", "b"), (0,))
    assert s.kind == "starter"
    assert s.source_conclist() == ("b",)
    assert s.target_conclist() == ("a", "b")
    assert print_step(s) == "[a+ b]"


def test_terminator_marks_positions():
    s = terminator(("a", "b"), (1,))
    assert s.source_conclist() == ("a", "b")
    assert s.target_conclist() == ("a",)
    assert print_step(s) == "[a b-]"


def test_unmarked_factories_degrade_to_identity():
    assert starter(("a",), ()).kind == "identity"
    assert terminator(("a",), ()).kind == "identity"
    # the raw constructor does not accept the degenerate combination
    with pytest.raises(ValueError):
        Step("starter", ("a",), frozenset())


def test_step_as_ipomset_interfaces():
    p = starter(("a", "b"), (0,)).as_ipomset()
    assert len(p.source) == 1 and len(p.target) == 2
    assert p.is_discrete()


def test_identity_step_round_trip():
    s = identity_step(("a", "c"))
    assert s.as_ipomset() == identity_ipomset(("a", "c"))


# -- gluing and parallel ----------------------------------------------------

def test_glue_concatenates_words():
    ab = glue(word_ipomset("a"), word_ipomset("b"))
    assert ab == word_ipomset("ab")


def test_glue_checks_interfaces():
    running_a = word_ipomset("a", source=(0,), target=(0,))
    with pytest.raises(InterfaceMismatch):
        glue(word_ipomset("a"), running_a)


def test_glue_identity_neutral():
    p = parse_ipomset("[a+ b][a- b]")
    assert glue(p, identity_ipomset(p.target_conclist())) == p
    assert glue(identity_ipomset(p.source_conclist()), p) == p


def test_parallel_of_letters():
    p = parallel(word_ipomset("a"), word_ipomset("b"))
    assert p == discrete_ipomset("ab")
    assert p.width() == 2


def test_parallel_stacks_event_order():
    p = parallel(word_ipomset("a"), word_ipomset("b"))
    q = parallel(word_ipomset("b"), word_ipomset("a"))
    assert p != q  # a above b is not b above a


def test_parallel_noninterval_combination_rejected():
    # both operands are 2-chains, so any parallel product has a 2+2
    with pytest.raises(InvalidIpomset):
        parallel(word_ipomset("ab"), word_ipomset("ab"))


# -- decompositions ---------------------------------------------------------

def test_sparse_decomposition_of_word():
    w = sparse_decomposition(word_ipomset("ab"))
    assert print_step_word(w) == "[a+][a-][b+][b-]"
    assert w.is_sparse()


def test_sparse_decomposition_of_identity():
    w = sparse_decomposition(identity_ipomset(("a",)))
    assert len(w) == 1
    assert tuple(w)[0].kind == "identity"


def test_sparse_alternates_starters_and_terminators():
    rng = rand(3)
    for _ in range(100):
        p = random_ipomset(rng)
        word = sparse_decomposition(p)
        assert word.is_sparse()
        kinds = [s.kind for s in word if s.kind != "identity"]
        for left, right in zip(kinds, kinds[1:]):
            assert left != right


def test_dense_decomposition_length():
    p = parse_ipomset("[a+ b+][a- b-]")
    assert len(dense_decomposition(p)) == 2 * p.size() == 4


def test_dense_rejects_identities():
    with pytest.raises(IdentityHasNoDenseDecomposition):
        dense_decomposition(identity_ipomset(("a",)))


def test_interface_events_count_half():
    p = word_ipomset("ab", source=(0,))
    assert p.size() == 1.5


@given(seeds)
@settings(max_examples=200, deadline=None)
def test_compose_after_sparse_is_identity(seed):
    p = random_ipomset(rand(seed))
    assert compose(sparse_decomposition(p)) == p


@given(seeds)
@settings(max_examples=200, deadline=None)
def test_random_decomposition_composes_back(seed):
    rng = rand(seed)
    p = random_ipomset(rng)
    word = random_step_word(p, rng)
    assert compose(word) == p


@given(seeds)
@settings(max_examples=200, deadline=None)
def test_every_decomposition_merges_to_the_sparse_one(seed):
    rng = rand(seed)
    p = random_ipomset(rng)
    word = random_step_word(p, rng)
    assert merge_normalize(word) == tuple(sparse_decomposition(p))


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_dense_length_is_twice_size(seed):
    p = random_ipomset(rand(seed))
    if p.size() == 0:
        return
    assert len(dense_decomposition(p)) == 2 * p.size()


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_glue_of_split_equals_whole(seed):
    rng = rand(seed)
    p = random_ipomset(rng)
    steps = list(sparse_decomposition(p))
    cut = rng.randint(0, len(steps))
    left = steps[:cut] or [identity_step(p.source_conclist())]
    right = steps[cut:] or [identity_step(p.target_conclist())]
    assert glue(compose(left), compose(right)) == p


# -- subsumption ------------------------------------------------------------

def test_word_subsumed_by_parallel():
    ab = word_ipomset("ab")
    a_par_b = discrete_ipomset("ab")
    assert subsumes(ab, a_par_b)
    assert not subsumes(a_par_b, ab)


def test_subsumption_is_reflexive_on_samples():
    rng = rand(5)
    for _ in range(50):
        p = random_ipomset(rng)
        assert subsumes(p, p)


def test_subsumption_needs_equal_interfaces():
    assert not subsumes(word_ipomset("a"), word_ipomset("a", source=(0,)))


def test_subsumption_respects_event_order():
    assert not subsumes(discrete_ipomset("ab"), discrete_ipomset("ba"))


@given(seeds)
@settings(max_examples=150, deadline=None)
def test_subsumes_matches_oracle(seed):
    rng = rand(seed)
    p = random_ipomset(rng, max_events=4)
    q = random_ipomset(rng, max_events=4)
    assert subsumes(p, q) == subsumes_oracle(p, q)
    assert subsumes(p, p)


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_width_matches_oracle(seed):
    p = random_ipomset(rand(seed))
    assert p.width() == width_oracle(p)


def test_in_down_closure():
    gens = [discrete_ipomset("ab")]
    assert in_down_closure(word_ipomset("ab"), gens)
    assert in_down_closure(word_ipomset("ba"), gens)
    assert not in_down_closure(word_ipomset("aa"), gens)


def test_supersumptions_of_ab():
    found = supersumptions(word_ipomset("ab"), 2)
    # the word itself plus the two event-order variants of a||b
    assert word_ipomset("ab") in found
    assert discrete_ipomset("ab") in found
    assert discrete_ipomset("ba") in found
    assert len(found) == 3


def test_supersumptions_width_one_is_trivial():
    assert supersumptions(word_ipomset("ab"), 1) == [word_ipomset("ab")]


def test_supersumptions_rejects_too_wide_input():
    with pytest.raises(WidthExceeded):
        supersumptions(discrete_ipomset("ab"), 1)


def test_supersumptions_members_subsume():
    p = word_ipomset("abc")
    found = supersumptions(p, 2)
    assert len(found) == 17
    for q in found:
        assert subsumes(p, q)
        assert q.width() <= 2


# -- text round trips --------------------------------------------------------

def test_parse_print_round_trip_on_samples():
    rng = rand(11)
    for _ in range(200):
        p = random_ipomset(rng)
        assert parse_ipomset(print_ipomset(p)) == p


def test_parse_accepts_non_sparse_spelling():
    assert parse_ipomset("[a+][a b+][a- b-]") == parse_ipomset("[a+ b+][a- b-]")


def test_parse_rejects_mixed_markers():
    with pytest.raises(Exception) as exc:
        parse_step_word("[a+ b-]")
    assert getattr(exc.value, "position", None) is not None


def test_parse_rejects_unterminated_bracket():
    with pytest.raises(Exception):
        parse_step_word("[a+ b")


def test_parse_rejects_chaining_mismatch():
    with pytest.raises(InterfaceMismatch):
        parse_ipomset("[a+][b-]")


# -- enumeration -------------------------------------------------------------

def test_enumeration_has_no_duplicates_and_hits_known_counts():
    seen = list(enumerate_ipomsets("ab", 2))
    assert len(seen) == len(set(seen))
    # 89 over {a,b} with at most two events; counted once, pinned as a
    # regression guard for the walk
    assert len(seen) == 89


def test_enumeration_respects_width_bound():
    for p in enumerate_ipomsets("ab", 3, max_width=1):
        assert p.width() <= 1
