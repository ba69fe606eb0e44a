"""Hamiltonian cycles in Γ(G(de,e,n), standard reflections).

Small cases are explicit words; larger ones are assembled from translated
copies of a cycle on the subgroup that fixes the last coordinate, spliced
together through edges labelled by the new generator.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .group_core import (
    EdgeLabel,
    Element,
    GroupParams,
    R,
    S,
    T,
    generator_element,
    identity,
    multiply,
    rank,
)
from .words import (
    badness,
    commutes,
    evaluate,
    flip,
    pound,
    power,
    reverse_word,
    vertices,
)

log = logging.getLogger(__name__)


class ConstructionError(RuntimeError):
    """A construction step failed; with valid input this indicates a bug."""


class JoinError(ConstructionError):
    """A commutative join precondition does not hold."""


@dataclass
class HamCycle:
    params: GroupParams
    word: list
    provenance: str

    @property
    def start(self) -> Element:
        return identity(self.params)

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class CosetId:
    """Left coset ``gH`` of the subgroup fixing the last coordinate.

    ``row`` is the coordinate that the permutation sends to the last one and
    ``phase`` the exponent sitting in that row; both are unchanged by right
    multiplication with an element of H.
    """

    row: int
    phase: int


def coset_id(params: GroupParams, x: Element) -> CosetId:
    row = x.perm.index(params.n - 1)
    return CosetId(row, x.phases[row])


def in_subgroup(params: GroupParams, x: Element) -> bool:
    """Membership in G(de,e,n-1) embedded in the first n-1 coordinates."""
    return x.perm[-1] == params.n - 1 and x.phases[-1] == 0


# -- explicit base cases ------------------------------------------------------

def cyclic_case(d: int, e: int) -> HamCycle:
    """n = 1: the group is cyclic, generated by t."""
    return HamCycle(GroupParams(d, e, 1), [T] * d, "cyclic")


def base_d12(d: int) -> HamCycle:
    """G(d,1,2): ``[t^(d-1), r]`` repeated 2d times."""
    if d < 2:
        raise ValueError("G(d,1,2) needs d >= 2")
    return HamCycle(GroupParams(d, 1, 2), power([T] * (d - 1) + [R(1)], 2 * d), "base_d12")


def base_2ee2_block(e: int) -> list:
    return [R(1), S] * (e - 1) + [R(1), T]


def base_2ee2(e: int) -> HamCycle:
    """G(2e,e,2): ``[(r, s)^(e-1), r, t]`` repeated 4 times.

    The explicit word is known to work for e >= 3; other values are checked
    before being accepted and replaced by a searched cycle otherwise.
    """
    if e < 2:
        raise ValueError("G(2e,e,2) needs e >= 2")
    params = GroupParams(2, e, 2)
    word = power(base_2ee2_block(e), 4)
    if e >= 3:
        return HamCycle(params, word, "base_2ee2")
    from .verifier import brute_force_cycle, verify_hamiltonian

    if verify_hamiltonian(params, None, word).valid:
        return HamCycle(params, word, "base_2ee2(verified)")
    log.warning("explicit word fails for %s; searching instead", params.name)
    found = brute_force_cycle(params, time_limit=60.0)
    if found is None:
        raise ConstructionError(f"no cycle found for {params.name}")
    return HamCycle(params, found, "base_2ee2(brute_force)")


def base_ee3_block(e: int) -> list:
    q, r = R(2), R(1)
    a = [q, S, q, r, q, r]
    return pound(power(a, e)) + [S]


def base_ee3(e: int) -> HamCycle:
    """G(e,e,3): with ``A = [q,s,q,r,q,r]`` (r = r1, q = r2) and
    ``B = A^e`` minus its last label followed by ``s``, the word is ``B^e``."""
    if e < 2:
        raise ValueError("G(e,e,3) needs e >= 2")
    return HamCycle(GroupParams(1, e, 3), power(base_ee3_block(e), e), "base_ee3")


def base_dihedral(e: int) -> HamCycle:
    """G(e,e,2) is dihedral of order 2e; its Cayley graph is a 2e-cycle."""
    if e < 2:
        raise ValueError("G(e,e,2) needs e >= 2")
    return HamCycle(GroupParams(1, e, 2), power([S, R(1)], e), "base_dihedral")


def base_dee2_path(d: int, e: int) -> list:
    """Hamiltonian path of G(de,e,2) before flipping: each coset of <s,t> is
    swept by ``[t^(d-1), s]^(2d)`` and consecutive cosets are linked by r."""
    a = power([T] * (d - 1) + [S], 2 * d)
    b = pound(a) + [R(1)]
    return pound(power(b, e))


def base_dee2(d: int, e: int) -> HamCycle:
    """G(de,e,2), d >= 3: two flips by s turn the swept path into one that ends
    next to the identity, closed by a final r."""
    if d < 3 or e < 2:
        raise ValueError("base_dee2 needs d >= 3 and e >= 2")
    params = GroupParams(d, e, 2)
    path = base_dee2_path(d, e)
    for _ in range(2):
        res = flip(params, None, path, S)
        if res.degenerate:
            raise ConstructionError("degenerate flip in base_dee2")
        path = res.word
    word = path + [R(1)]
    if evaluate(params, None, word) != identity(params):
        raise ConstructionError("flipped path does not close up")
    return HamCycle(params, word, "base_dee2")


# -- joining -----------------------------------------------------------------

def _edge_position(params, verts_rank, a, b):
    """Index k with the cycle edge (k, k+1) equal to {a, b}; ``forward`` is True
    when it runs a -> b."""
    m = len(verts_rank)
    ra, rb = rank(params, a), rank(params, b)
    for k in range(m):
        x, y = verts_rank[k], verts_rank[(k + 1) % m]
        if x == ra and y == rb:
            return k, True
        if x == rb and y == ra:
            return k, False
    return None, None


def _detour(params: GroupParams, word: Sequence[EdgeLabel], k: int, forward: bool) -> list:
    """Path around a cycle word that avoids edge k.

    If the edge runs a -> b (``forward``) the path goes from a to b the long
    way round; otherwise it goes from the edge's head a to its tail b.
    """
    rest = list(word[k + 1 :]) + list(word[:k])
    return reverse_word(rest, params) if forward else rest


def commutative_join(
    params: GroupParams,
    c_word: Sequence[EdgeLabel],
    cl_word: Sequence[EdgeLabel],
    g1: Element,
    s: EdgeLabel,
    r: EdgeLabel,
    c_start: Optional[Element] = None,
    cl_start: Optional[Element] = None,
) -> list:
    """Splice the cycle ``cl_word`` into ``c_word``.

    ``c_word`` must use the edge (g1, g1 s) and ``cl_word`` the edge
    (g1 r, g1 r s); with rs = sr the first edge is replaced by
    ``r``, a full traversal of the second cycle, and ``r^-1``.  The result
    starts where ``c_word`` starts.
    """
    one = identity(params)
    c_start = one if c_start is None else c_start
    cl_start = one if cl_start is None else cl_start
    if not commutes(params, r, s):
        raise JoinError(f"{r.token} and {s.token} do not commute")
    c_verts = list(vertices(params, c_start, c_word))
    cl_verts = list(vertices(params, cl_start, cl_word))
    if c_verts[-1] != c_start or cl_verts[-1] != cl_start:
        raise JoinError("both words must be closed walks")
    c_rank = [rank(params, x) for x in c_verts[:-1]]
    cl_rank = [rank(params, x) for x in cl_verts[:-1]]
    if set(c_rank) & set(cl_rank):
        raise JoinError("cycles are not vertex-disjoint")
    gs = multiply(params, g1, generator_element(params, s))
    p, p_fwd = _edge_position(params, c_rank, g1, gs)
    if p is None:
        raise JoinError(f"edge ({g1}, {gs}) is not on the first cycle")
    rg = generator_element(params, r)
    a, b = multiply(params, g1, rg), multiply(params, gs, rg)
    if not p_fwd:
        a, b = b, a
    k, k_fwd = _edge_position(params, cl_rank, a, b)
    if k is None:
        raise JoinError(f"edge ({a}, {b}) is not on the second cycle")
    middle = _detour(params, cl_word, k, k_fwd)
    return list(c_word[:p]) + [r] + middle + [params.normalize(r.inv())] + list(c_word[p + 1 :])


@dataclass
class _Node:
    kind: Optional[EdgeLabel]  # None for the root
    base: Element  # first vertex of the node's own path
    inserts: list = field(default_factory=list)  # (position, child index)


def lift(
    params: GroupParams,
    root_word: Sequence[EdgeLabel],
    sub_cycle: Sequence[EdgeLabel],
    r_new: EdgeLabel,
) -> list:
    """Extend a closed walk to a Hamiltonian cycle of ``params``.

    ``root_word`` is a cycle from the identity whose vertex set is a union of
    left cosets of H (the subgroup fixing the last coordinate); ``sub_cycle``
    is a Hamiltonian cycle of H from the identity.  Uncovered cosets are
    attached one at a time: an edge (u, u g) already on the cycle, with g
    commuting with ``r_new`` and u r_new in a new coset, is replaced by a
    detour through a translated copy of ``sub_cycle``.  Positions are scanned
    in order, breadth first over the attached copies.
    """
    n, de = params.n, params.de
    total = n * de
    one = identity(params)
    r_el = generator_element(params, r_new)
    # per usable label: the detour through a copy of the subgroup cycle
    paths: dict[EdgeLabel, list] = {}
    for lab in params.all_labels:
        if lab == r_new or not commutes(params, lab, r_new):
            continue
        inv = params.normalize(lab.inv())
        for k, x in enumerate(sub_cycle):
            if x == lab or x == inv:
                paths[lab] = _detour(params, sub_cycle, k, x == lab)
                break
    joinable = set(paths)

    def scan_table(word):
        """(position, label, w, m, phase) for every joinable edge of ``word``,
        with w = prefix * r_new and (m, phase) locating the new coset."""
        table = []
        x = one
        for q, lab in enumerate(word):
            if lab in joinable:
                w = multiply(params, x, r_el)
                m = w.perm.index(n - 1)
                table.append((q, lab, w, m, w.phases[m]))
            x = multiply(params, x, generator_element(params, lab))
        return table

    tables = {lab: scan_table(p) for lab, p in paths.items()}
    covered = [False] * total
    ncovered = 0
    for x in vertices(params, one, root_word[:-1]):
        c = coset_id(params, x)
        idx = c.row * de + c.phase
        if not covered[idx]:
            covered[idx] = True
            ncovered += 1

    nodes = [_Node(None, one)]
    queue = deque([0])
    root_table = scan_table(root_word)
    while queue and ncovered < total:
        i = queue.popleft()
        node = nodes[i]
        x = node.base
        xinv = [0] * n
        for j, p in enumerate(x.perm):
            xinv[p] = j
        table = root_table if node.kind is None else tables[node.kind]
        for q, lab, w, m, pa in table:
            j0 = xinv[m]
            idx = j0 * de + (x.phases[j0] + pa) % de
            if covered[idx]:
                continue
            covered[idx] = True
            ncovered += 1
            # u r_new where u is vertex q of this node
            start = multiply(params, x, w)
            nodes.append(_Node(lab, start))
            node.inserts.append((q, len(nodes) - 1))
            queue.append(len(nodes) - 1)
            if ncovered == total:
                break
    if ncovered < total:
        raise ConstructionError(
            f"{total - ncovered} cosets of {params.name} could not be attached"
        )

    out: list = []
    stack = [(0, 0, 0)]  # node, next insert, next position
    while stack:
        i, j, prev = stack.pop()
        node = nodes[i]
        word = root_word if node.kind is None else paths[node.kind]
        if j < len(node.inserts):
            q, child = node.inserts[j]
            out.extend(word[prev:q])
            out.append(r_new)
            stack.append((i, j + 1, q + 1))
            stack.append((child, 0, 0))
            continue
        out.extend(word[prev:])
        if node.kind is not None:
            out.append(r_new)
    return out


def lift_inductive(params: GroupParams, sub: HamCycle) -> HamCycle:
    """Lift a cycle of G(de,e,n-1) to G(de,e,n) when the new generator
    r_{n-1} commutes with every generator except r_{n-2}."""
    r_new = R(params.n - 1)
    bad = badness(params, sub.word, r_new, cyclic=True)
    if bad:
        raise ConstructionError(f"badness {bad} w.r.t. {r_new.token}; lifting needs 0")
    word = lift(params, sub.word, sub.word, r_new)
    return HamCycle(params, word, f"lift_inductive({sub.provenance})")


def lift_badness_bounded(d: int, e: int) -> HamCycle:
    """G(de,e,3), d >= 3: lift the G(de,e,2) cycle through r2.

    Only t commutes with r2, so copies are attached through t edges; every
    pair of adjacent cosets is joined by at least d such edges.
    """
    if d < 3 or e < 2:
        raise ValueError("lift_badness_bounded needs d >= 3 and e >= 2")
    params = GroupParams(d, e, 3)
    sub = base_dee2(d, e)
    word = lift(params, sub.word, sub.word, R(2))
    return HamCycle(params, word, "lift_badness_bounded(base_dee2)")


def chained_2ee3_q(e: int) -> list:
    """The G(2e,e,2) cycle minus its last edge, flipped by s."""
    sub = base_2ee2(e)
    return flip(sub.params, None, pound(sub.word), S).word


def chained_2ee3_backbone(e: int) -> list:
    return power(chained_2ee3_q(e) + [R(2)], 4 * e)


def chained_2ee3(e: int) -> HamCycle:
    """G(2e,e,3): chain flipped copies of the G(2e,e,2) cycle through r2 into a
    cycle over 4e cosets, then attach the other 2e cosets through t edges."""
    if e < 2:
        raise ValueError("chained_2ee3 needs e >= 2")
    params = GroupParams(2, e, 3)
    sub = base_2ee2(e)
    backbone = chained_2ee3_backbone(e)
    if evaluate(params, None, backbone) != identity(params):
        raise ConstructionError("backbone does not close")
    word = lift(params, backbone, sub.word, R(2))
    return HamCycle(params, word, f"chained_2ee3({sub.provenance})")


def backbone_coset_counts(e: int) -> Counter:
    params = GroupParams(2, e, 3)
    word = chained_2ee3_backbone(e)
    return Counter(coset_id(params, x) for x in vertices(params, None, word[:-1]))


def connecting_edge_counts(params: GroupParams, r_new: Optional[EdgeLabel] = None) -> Counter:
    """Number of ``r_new`` edges between each pair of cosets of H."""
    from .group_core import elements

    r_new = r_new or R(params.n - 1)
    g = generator_element(params, r_new)
    counts: Counter = Counter()
    for x in elements(params):
        y = multiply(params, x, g)
        if rank(params, x) < rank(params, y):
            a, b = coset_id(params, x), coset_id(params, y)
            if a != b:
                counts[frozenset((a, b))] += 1
    return counts


# -- dispatcher ----------------------------------------------------------------

def construct(params: GroupParams) -> HamCycle:
    """Build without the final verification."""
    d, e, n = params.d, params.e, params.n
    if n == 1:
        return cyclic_case(d, e)
    if n == 2:
        if e == 1:
            return base_d12(d)
        if d == 1:
            return base_dihedral(e)
        if d == 2:
            return base_2ee2(e)
        return base_dee2(d, e)
    if n == 3 and e > 1:
        if d == 1:
            return base_ee3(e)
        if d == 2:
            return chained_2ee3(e)
        return lift_badness_bounded(d, e)
    sub = construct(GroupParams(d, e, n - 1))
    return lift_inductive(params, sub)


def build_hamiltonian(params: GroupParams) -> HamCycle:
    from .verifier import verify_hamiltonian

    cyc = construct(params)
    report = verify_hamiltonian(params, None, cyc.word, provenance=cyc.provenance)
    if not report.valid:
        raise ConstructionError(f"constructed word for {params.name} failed: {report}")
    return cyc
