"""Randomized properties over small groups."""

from hypothesis import assume, given
from hypothesis import strategies as st

from cayleyham.constructions import construct
from cayleyham.cyclefile import CycleFileError, emit, parse
from cayleyham.group_core import (
    element_power,
    identity,
    inverse,
    multiply,
    parameter_grid,
    rank,
    unrank,
)
from cayleyham.verifier import brute_force_cycle, verify_hamiltonian
from cayleyham.words import (
    FlipError,
    coset_self_avoidance_check,
    element_order,
    evaluate,
    flip,
    is_self_avoiding,
    pound,
    power,
    reverse_word,
    vertices,
)

SMALL = [p for p in parameter_grid(max_d=4, max_e=4, max_n=4, max_order=3000)]
TINY = [p for p in SMALL if p.order <= 60]

params_st = st.sampled_from(SMALL)


@st.composite
def group_and_elements(draw, k=3):
    p = draw(params_st)
    idx = st.integers(0, p.order - 1)
    return p, [unrank(p, draw(idx)) for _ in range(k)]


@st.composite
def group_and_word(draw, min_size=0, max_size=40):
    p = draw(params_st)
    word = draw(st.lists(st.sampled_from(p.all_labels), min_size=min_size, max_size=max_size))
    return p, word


@given(params_st, st.data())
def test_rank_unrank(p, data):
    i = data.draw(st.integers(0, p.order - 1))
    assert rank(p, unrank(p, i)) == i


@given(group_and_elements())
def test_group_axioms(args):
    p, (x, y, z) = args
    one = identity(p)
    assert multiply(p, multiply(p, x, y), z) == multiply(p, x, multiply(p, y, z))
    assert multiply(p, x, one) == x == multiply(p, one, x)
    assert multiply(p, x, inverse(p, x)) == one


@given(group_and_elements(k=1))
def test_element_order_divides_group_order(args):
    p, (x,) = args
    k = element_order(p, x)
    assert p.order % k == 0
    assert element_power(p, x, k) == identity(p)


@given(group_and_word())
def test_reverse_walk(args):
    p, word = args
    end = evaluate(p, None, word)
    assert evaluate(p, end, reverse_word(word, p)) == identity(p)
    assert reverse_word(reverse_word(word, p), p) == [p.normalize(w) for w in word]


@given(group_and_word(), st.booleans(), st.lists(st.text(alphabet="abc #xyz", max_size=12), max_size=3))
def test_cyclefile_round_trip(args, rle, comments):
    p, word = args
    word = [p.normalize(w) for w in word]
    cf = parse(emit(p, word, rle=rle, comments=comments))
    assert cf.params == p
    assert cf.word == word


@given(st.binary(max_size=200))
def test_parse_total_on_bytes(data):
    try:
        parse(data)
    except CycleFileError as exc:
        assert exc.line >= 1 and exc.column >= 1


@given(st.text(alphabet="hamcycle v1\ngroup d=e=n=0123456789 t-sr*#\r", max_size=120))
def test_parse_total_on_near_misses(text):
    try:
        parse("hamcycle v1\n" + text)
    except CycleFileError as exc:
        assert exc.line >= 1 and exc.column >= 1


@given(group_and_word(min_size=1, max_size=8), st.integers(1, 12))
def test_coset_check_matches_walk(args, reps):
    p, block = args
    expected = bool(is_self_avoiding(p, None, pound(power(block, reps))))
    assert coset_self_avoidance_check(p, block, reps) == expected


@given(group_and_word(max_size=60))
def test_self_avoiding_matches_set(args):
    p, word = args
    verts = [rank(p, x) for x in vertices(p, None, word)]
    res = is_self_avoiding(p, None, word)
    assert bool(res) == (len(set(verts)) == len(verts))
    if not res:
        i = res.repeat_index
        assert verts[i] in verts[:i] and len(set(verts[:i])) == i


@given(params_st, st.data())
def test_flip_keeps_vertices(p, data):
    cycle = construct(p).word
    k = data.draw(st.integers(1, len(cycle) - 1))
    path = cycle[:k]
    lab = data.draw(st.sampled_from(p.all_labels))
    try:
        res = flip(p, None, path, lab)
    except FlipError:
        return
    before = {rank(p, x) for x in vertices(p, None, path)}
    assert {rank(p, x) for x in vertices(p, None, res.word)} == before
    assert is_self_avoiding(p, None, res.word)


@given(params_st, st.data())
def test_single_token_perturbation_rejected(p, data):
    word = construct(p).word
    i = data.draw(st.integers(0, len(word) - 1))
    other = [lab for lab in p.all_labels if lab != word[i]]
    assume(other)
    bad = list(word)
    bad[i] = data.draw(st.sampled_from(other))
    assert not verify_hamiltonian(p, None, bad).valid


@given(st.sampled_from(TINY))
def test_oracle_output_verifies(p):
    word = brute_force_cycle(p, 5)
    assert word is not None
    assert verify_hamiltonian(p, None, word).valid


@given(st.sampled_from(SMALL))
def test_construction_valid(p):
    cyc = construct(p)
    assert verify_hamiltonian(p, None, cyc.word).valid
    assert len(cyc.word) == p.order
