"""Exact arithmetic in the imprimitive reflection groups G(de,e,n).

An element is stored as ``(a_1, ..., a_n | sigma)``: a vector of exponents of a
primitive de-th root of unity together with a permutation of the coordinates.
Exponents are reduced into ``[0, de)`` and must sum to 0 modulo ``e``.
Permutations are kept 0-based internally (``perm[i]`` is the image of ``i``)
and printed 1-based.

Products follow the convention ``(a | s)(b | t) = (a_i + b_{s(i)} | st)`` where
``st`` applies ``s`` first and ``t`` second.  This matches right Cayley graphs:
walking along an edge labelled ``g`` from ``x`` lands on ``x * g``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

DEFAULT_MAX_ORDER = 2**32


class ParameterError(ValueError):
    """Invalid group parameters, or data that does not fit them."""


class OrderCapError(ParameterError):
    """The group is larger than the configured order cap."""


class UnavailableGeneratorError(ParameterError):
    """A label that is not part of the family's generating set."""


class Family(enum.Enum):
    WELL_GENERATED_D1 = "G(d,1,n)"
    WELL_GENERATED_EE = "G(e,e,n)"
    GENERAL = "G(de,e,n)"


class EdgeLabel(NamedTuple):
    """A generator name with an inversion flag.

    ``gen`` is ``"t"``, ``"s"`` or ``"r"``; ``index`` is ``i`` for ``r_i`` and 0
    otherwise.  Only ``t`` can meaningfully be inverted.
    """

    gen: str
    index: int = 0
    inverted: bool = False

    @property
    def token(self) -> str:
        if self.gen == "r":
            return f"r{self.index}"
        return self.gen + ("-" if self.inverted else "")

    def inv(self) -> "EdgeLabel":
        if self.gen == "t":
            return EdgeLabel("t", 0, not self.inverted)
        return self

    def __repr__(self) -> str:
        return self.token


T = EdgeLabel("t")
T_INV = EdgeLabel("t", 0, True)
S = EdgeLabel("s")


@lru_cache(maxsize=None)
def R(i: int) -> EdgeLabel:
    return EdgeLabel("r", i)


_TOKEN_RE = re.compile(r"^(t-?|s|r([1-9][0-9]*))$")


def label_from_token(token: str) -> EdgeLabel:
    m = _TOKEN_RE.match(token)
    if not m:
        raise ValueError(f"unknown label token {token!r}")
    if m.group(2):
        return R(int(m.group(2)))
    return T_INV if token == "t-" else (T if token == "t" else S)


class Element(NamedTuple):
    phases: tuple[int, ...]
    perm: tuple[int, ...]

    def __str__(self) -> str:
        return format_element(self)


def format_element(x: Element) -> str:
    """Text form ``(a1,a2,...,an|p1 p2 ... pn)`` with 1-based images."""
    return "({}|{})".format(
        ",".join(map(str, x.phases)), " ".join(str(p + 1) for p in x.perm)
    )


def parse_element(text: str) -> Element:
    m = re.fullmatch(r"\s*\(([^|]*)\|([^)]*)\)\s*", text)
    if not m:
        raise ValueError(f"cannot parse element {text!r}")
    phases = tuple(int(a) for a in m.group(1).split(",")) if m.group(1).strip() else ()
    perm = tuple(int(p) - 1 for p in m.group(2).split())
    return Element(phases, perm)


@dataclass(frozen=True)
class GroupParams:
    """The triple (d, e, n) naming G(de,e,n).

    Note that the group is named by ``de``, not ``d``: ``GroupParams(3, 2, 2)``
    is G(6,2,2).  Use :meth:`from_name` to build from the (de, e, n) name.
    """

    d: int
    e: int
    n: int
    max_order: int = field(default=DEFAULT_MAX_ORDER, compare=False, repr=False)

    def __post_init__(self):
        for name in ("d", "e", "n"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ParameterError(f"{name} must be a positive integer, got {v!r}")
        if self.d * self.e < 2:
            raise ParameterError("de must be at least 2")
        if self.n == 1 and self.d == 1:
            raise ParameterError(f"G({self.e},{self.e},1) is the trivial group")
        if self.order > self.max_order:
            raise OrderCapError(
                f"|{self.name}| = {self.order} exceeds the order cap {self.max_order}"
            )

    @classmethod
    def from_name(cls, de: int, e: int, n: int, **kw) -> "GroupParams":
        if e < 1 or de % e:
            raise ParameterError(f"e={e} does not divide de={de}")
        return cls(de // e, e, n, **kw)

    @property
    def de(self) -> int:
        return self.d * self.e

    @cached_property
    def order(self) -> int:
        return self.d**self.n * self.e ** (self.n - 1) * math.factorial(self.n)

    @property
    def name(self) -> str:
        return f"G({self.de},{self.e},{self.n})"

    @property
    def family(self) -> Family:
        if self.e == 1:
            return Family.WELL_GENERATED_D1
        if self.d == 1:
            return Family.WELL_GENERATED_EE
        return Family.GENERAL

    @property
    def reducible(self) -> bool:
        return (self.de, self.e, self.n) == (2, 2, 2)

    @cached_property
    def labels(self) -> tuple[EdgeLabel, ...]:
        return tuple(generating_set(self))

    @cached_property
    def all_labels(self) -> tuple[EdgeLabel, ...]:
        """Generating labels plus ``t-`` when t is not an involution."""
        out = list(self.labels)
        if T in out and self.d > 2:
            out.insert(out.index(T) + 1, T_INV)
        return tuple(out)

    def normalize(self, label: EdgeLabel) -> EdgeLabel:
        if label.inverted and (label.gen != "t" or self.d <= 2):
            return label._replace(inverted=False)
        return label

    def has_label(self, label: EdgeLabel) -> bool:
        return self.normalize(label)._replace(inverted=False) in self.labels

    @cached_property
    def _generators(self) -> dict[EdgeLabel, Element]:
        return {lab: _generator(self, lab) for lab in self.all_labels}


def is_element(params: GroupParams, x: Element) -> bool:
    n = params.n
    return (
        len(x.phases) == n
        and len(x.perm) == n
        and all(0 <= a < params.de for a in x.phases)
        and sum(x.phases) % params.e == 0
        and sorted(x.perm) == list(range(n))
    )


def identity(params: GroupParams) -> Element:
    n = params.n
    return Element((0,) * n, tuple(range(n)))


def multiply(params: GroupParams, x: Element, y: Element) -> Element:
    if not len(x.perm) == len(y.perm) == params.n:
        raise ParameterError(f"dimension mismatch multiplying in {params.name}")
    de = params.de
    yph, yp = y.phases, y.perm
    return Element(
        tuple((a + yph[s]) % de for a, s in zip(x.phases, x.perm)),
        tuple(yp[s] for s in x.perm),
    )


def inverse(params: GroupParams, x: Element) -> Element:
    de = params.de
    n = len(x.perm)
    phases = [0] * n
    perm = [0] * n
    for i, (a, s) in enumerate(zip(x.phases, x.perm)):
        phases[s] = -a % de
        perm[s] = i
    return Element(tuple(phases), tuple(perm))


def element_power(params: GroupParams, x: Element, k: int) -> Element:
    if k < 0:
        x, k = inverse(params, x), -k
    out = identity(params)
    while k:
        if k & 1:
            out = multiply(params, out, x)
        x = multiply(params, x, x)
        k >>= 1
    return out


def _generator(params: GroupParams, label: EdgeLabel) -> Element:
    n, de = params.n, params.de
    phases = [0] * n
    perm = list(range(n))
    if label.gen == "t":
        phases[0] = params.e
    elif label.gen == "s":
        phases[0], phases[1] = de - 1, 1
        perm[0], perm[1] = 1, 0
    else:
        i = label.index
        perm[i - 1], perm[i] = i, i - 1
    g = Element(tuple(p % de for p in phases), tuple(perm))
    return inverse(params, g) if label.inverted else g


def generator_element(params: GroupParams, label: EdgeLabel) -> Element:
    if not params.has_label(label):
        raise UnavailableGeneratorError(
            f"{label.token} is not a generator of {params.name}"
        )
    return params._generators[params.normalize(label)]


def generating_set(params: GroupParams) -> list[EdgeLabel]:
    rs = [R(i) for i in range(1, params.n)]
    if params.n == 1:
        return [T]
    if params.e == 1:
        return [T, *rs]
    if params.d == 1:
        return [S, *rs]
    return [S, T, *rs]


def apply_label(params: GroupParams, x: Element, label: EdgeLabel) -> Element:
    return multiply(params, x, generator_element(params, label))


# -- ranking ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _factorials(n: int) -> tuple[int, ...]:
    return tuple(math.factorial(k) for k in range(n + 1))


def lehmer_rank(perm: Sequence[int]) -> int:
    n = len(perm)
    fact = _factorials(n)
    r = 0
    for i in range(n):
        p = perm[i]
        smaller = 0
        for j in range(i + 1, n):
            if perm[j] < p:
                smaller += 1
        r += smaller * fact[n - 1 - i]
    return r


def lehmer_unrank(n: int, idx: int) -> tuple[int, ...]:
    fact = _factorials(n)
    pool = list(range(n))
    out = []
    for i in range(n):
        q, idx = divmod(idx, fact[n - 1 - i])
        out.append(pool.pop(q))
    return tuple(out)


def rank(params: GroupParams, x: Element) -> int:
    """Perfect hash of ``x`` onto ``[0, order)``.

    The first n-1 phases are read as a base-de number, the last phase
    contributes one of the d values compatible with the membership constraint,
    and the permutation contributes its Lehmer code.
    """
    de, e = params.de, params.e
    value = 0
    head = x.phases[:-1]
    for a in head:
        value = value * de + a
    rho = -sum(head) % e
    value = value * params.d + (x.phases[-1] - rho) // e
    return value * _factorials(params.n)[params.n] + lehmer_rank(x.perm)


def unrank(params: GroupParams, idx: int) -> Element:
    if not 0 <= idx < params.order:
        raise IndexError(f"rank {idx} out of range for {params.name}")
    n, de, e = params.n, params.de, params.e
    value, code = divmod(idx, _factorials(n)[n])
    value, digit = divmod(value, params.d)
    head = [0] * (n - 1)
    for i in range(n - 2, -1, -1):
        value, head[i] = divmod(value, de)
    last = (-sum(head)) % e + digit * e
    return Element((*head, last), lehmer_unrank(n, code))


def elements(params: GroupParams):
    """Iterate over the group in rank order."""
    for i in range(params.order):
        yield unrank(params, i)


# -- relations -------------------------------------------------------------

class RelationResult(NamedTuple):
    name: str
    passed: bool


def _alternating(a: EdgeLabel, b: EdgeLabel, k: int) -> list[EdgeLabel]:
    return [a if i % 2 == 0 else b for i in range(k)]


def _fmt(word: Sequence[EdgeLabel]) -> str:
    return " ".join(lab.token for lab in word) if word else "1"


def relations(params: GroupParams) -> list[tuple[str, list[EdgeLabel], list[EdgeLabel]]]:
    """Defining relations of the standard presentation, as word pairs.

    For n <= 3 these are the presentations of the small cases; for larger n the
    same families of relations continue (order, braid and commutation
    relations between the adjacent transpositions, plus the relations tying
    ``s`` and ``t`` to the first few of them).
    """
    n, d, e = params.n, params.d, params.e
    labels = params.labels
    has_t, has_s = T in labels, S in labels
    rs = [R(i) for i in range(1, n)]
    rels: list[tuple[list[EdgeLabel], list[EdgeLabel]]] = []

    if has_t:
        rels.append(([T] * d, []))
    if has_s:
        rels.append(([S, S], []))
    for r in rs:
        rels.append(([r, r], []))
    for i in range(1, n - 1):
        a, b = R(i), R(i + 1)
        rels.append(([a, b, a], [b, a, b]))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(([R(i), R(j)], [R(j), R(i)]))

    if has_t:
        for i in range(2, n):
            rels.append(([T, R(i)], [R(i), T]))
        if e == 1 and n >= 2:
            r = R(1)
            rels.append(([T, r, T, r], [r, T, r, T]))
    if has_s:
        for i in range(3, n):
            rels.append(([S, R(i)], [R(i), S]))
        if n >= 3:
            q, r = R(2), R(1)
            rels.append(([S, q, S], [q, S, q]))
            rels.append(([q, S, r, q, S, r], [S, r, q, S, r, q]))
        if d == 1:
            rels.append((_alternating(S, R(1), e), _alternating(R(1), S, e)))
    if has_s and has_t:
        r = R(1)
        rels.append(([T, S, r], [S, r, T]))
        rels.append(([r, T, *_alternating(S, r, e - 1)], [T, *_alternating(S, r, e)]))

    return [(f"{_fmt(lhs)} = {_fmt(rhs)}", lhs, rhs) for lhs, rhs in rels]


def check_relations(params: GroupParams) -> list[RelationResult]:
    one = identity(params)
    out = []
    for name, lhs, rhs in relations(params):
        left = right = one
        for lab in lhs:
            left = apply_label(params, left, lab)
        for lab in rhs:
            right = apply_label(params, right, lab)
        out.append(RelationResult(name, left == right))
    return out


def parameter_grid(
    max_d: int = 8, max_e: int = 8, max_n: int = 6, max_order: int = 10**5
) -> list[GroupParams]:
    """All admissible triples with ``d <= max_d``, ``e <= max_e``,
    ``n <= max_n`` and group order at most ``max_order``."""
    out = []
    for d in range(1, max_d + 1):
        for e in range(1, max_e + 1):
            if d * e < 2:
                continue
            for n in range(1, max_n + 1):
                if d == 1 and n == 1:
                    continue
                if d**n * e ** (n - 1) * math.factorial(n) <= max_order:
                    out.append(GroupParams(d, e, n))
    return out
