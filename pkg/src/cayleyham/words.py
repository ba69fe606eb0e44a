"""Label words and the walks they trace in a Cayley graph.

A word is a plain list of :class:`EdgeLabel`.  Starting from a vertex ``x`` the
word ``[g1, ..., gk]`` visits ``x, x g1, x g1 g2, ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .group_core import (
    EdgeLabel,
    Element,
    GroupParams,
    apply_label,
    generator_element,
    identity,
    multiply,
    rank,
)
from ._walk import stream_walk

Word = list


class FlipError(ValueError):
    """The flip target vertex is not on the path."""


def evaluate(params: GroupParams, start: Optional[Element], word: Sequence[EdgeLabel]) -> Element:
    x = identity(params) if start is None else start
    for lab in word:
        x = apply_label(params, x, lab)
    return x


def vertices(params: GroupParams, start: Optional[Element], word: Sequence[EdgeLabel]) -> Iterator[Element]:
    """All ``len(word) + 1`` vertices of the walk, in order."""
    x = identity(params) if start is None else start
    yield x
    for lab in word:
        x = apply_label(params, x, lab)
        yield x


@dataclass(frozen=True)
class Walk:
    params: GroupParams
    start: Element
    word: tuple

    @property
    def endpoint(self) -> Element:
        return evaluate(self.params, self.start, self.word)

    @property
    def vertex_count(self) -> int:
        return len(self.word) + 1


def pound(word: Sequence[EdgeLabel]) -> list:
    """Drop the final label."""
    if not word:
        raise ValueError("cannot drop the last label of an empty word")
    return list(word[:-1])


def power(word: Sequence[EdgeLabel], k: int) -> list:
    if k < 0:
        raise ValueError("negative repetition count")
    return list(word) * k


def reverse_word(word: Sequence[EdgeLabel], params: Optional[GroupParams] = None) -> list:
    """The walk traversed backwards: reversed order, each label inverted.

    With ``params`` the inverted labels are normalized (``t-`` becomes ``t``
    when t is an involution).
    """
    if params is None:
        return [lab.inv() for lab in reversed(word)]
    return [params.normalize(lab.inv()) for lab in reversed(word)]


@dataclass(frozen=True)
class SelfAvoidance:
    ok: bool
    repeat_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def is_self_avoiding(params: GroupParams, start: Optional[Element], word: Sequence[EdgeLabel]) -> SelfAvoidance:
    """Check that the ``len(word) + 1`` visited vertices are distinct.

    On failure ``repeat_index`` is the index of the first vertex that was
    already visited.
    """
    start = identity(params) if start is None else start
    repeat, _, _ = stream_walk(params, start, word, len(word) + 1)
    return SelfAvoidance(repeat is None, repeat)


def element_order(params: GroupParams, x: Element) -> int:
    one = identity(params)
    y, k = x, 1
    while y != one:
        y = multiply(params, y, x)
        k += 1
    return k


def coset_self_avoidance_check(params: GroupParams, block: Sequence[EdgeLabel], repetitions: int) -> bool:
    """Decide whether ``pound(power(block, repetitions))`` is self-avoiding
    without walking it.

    With ``v`` the product of the block and ``w_0 .. w_{k-1}`` its proper
    prefix products, the long walk visits exactly the vertices ``v^m w_i`` for
    ``0 <= m < repetitions``.  It repeats a vertex iff ``v^m w_i = w_j`` for some
    such ``m`` other than the trivial ``m = 0, i = j``.  When ``repetitions``
    equals the order of ``v`` this says the prefixes lie in distinct cosets
    ``<v> w_i``.
    """
    if not block:
        raise ValueError("empty block")
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    prefixes = list(vertices(params, None, block))
    v = prefixes.pop()
    index: dict[int, int] = {}
    for i, w in enumerate(prefixes):
        r = rank(params, w)
        if r in index:
            return False
        index[r] = i
    one = identity(params)
    vm = one
    for m in range(1, repetitions):
        vm = multiply(params, vm, v)
        if vm == one:
            # v^m w_i = w_i
            return False
        for w in prefixes:
            if rank(params, multiply(params, vm, w)) in index:
                return False
    return True


def prefix_cosets(params: GroupParams, block: Sequence[EdgeLabel]) -> list[frozenset]:
    """The cosets ``<v> w_i`` (as rank sets) hit by the block's prefixes."""
    prefixes = list(vertices(params, None, block))
    v = prefixes.pop()
    one = identity(params)
    cyc = [one]
    while True:
        nxt = multiply(params, cyc[-1], v)
        if nxt == one:
            break
        cyc.append(nxt)
    return [frozenset(rank(params, multiply(params, c, w)) for c in cyc) for w in prefixes]


@dataclass(frozen=True)
class FlipResult:
    word: list
    degenerate: bool = False
    pivot: Optional[int] = None


def flip(params: GroupParams, start: Optional[Element], word: Sequence[EdgeLabel], s: EdgeLabel) -> FlipResult:
    """Reattach the end of a self-avoiding path through an ``s`` edge.

    If the endpoint ``w_n`` satisfies ``w_n s = w_k`` for a vertex ``w_k`` of the
    path, the path ``w_0 .. w_k`` is continued by ``w_n, w_{n-1}, ..., w_{k+1}``.
    The vertex set is unchanged and the new endpoint is ``w_{k+1}``.
    """
    verts = list(vertices(params, start, word))
    pos = {rank(params, x): i for i, x in enumerate(verts)}
    target = multiply(params, verts[-1], generator_element(params, s))
    k = pos.get(rank(params, target))
    if k is None or k == len(word):
        raise FlipError(f"{target} is not a vertex of the path (flip by {s.token})")
    if k == len(word) - 1:
        return FlipResult(list(word), degenerate=True, pivot=k)
    out = list(word[:k]) + [params.normalize(s.inv())] + reverse_word(word[k + 1 :], params)
    return FlipResult(out, pivot=k)


def commutes(params: GroupParams, a: EdgeLabel, b: EdgeLabel) -> bool:
    ga, gb = generator_element(params, a), generator_element(params, b)
    return multiply(params, ga, gb) == multiply(params, gb, ga)


def bad_pairs(params: GroupParams, word: Sequence[EdgeLabel], r: EdgeLabel, cyclic: bool = True) -> list[int]:
    """Positions ``i`` where neither ``word[i]`` nor the following label commutes
    with ``r``."""
    ok = {lab: commutes(params, lab, r) for lab in set(word)}
    m = len(word)
    last = m if cyclic else m - 1
    return [
        i for i in range(last) if not ok[word[i]] and not ok[word[(i + 1) % m]]
    ]


def badness(params: GroupParams, word: Sequence[EdgeLabel], r: EdgeLabel, cyclic: bool = True) -> int:
    if not word:
        raise ValueError("badness of an empty word")
    return len(bad_pairs(params, word, r, cyclic))
