"""Compiled walk kernel: stream a label word through the group, marking ranks
in a bitset of ``order`` bits."""

from __future__ import annotations

from itertools import islice

import numpy as np
from numba import njit

from .group_core import (
    Element,
    EdgeLabel,
    GroupParams,
    UnavailableGeneratorError,
    generator_element,
)


@njit(cache=True)
def _rank(ph, pm, n, d, e, de, nfact):
    value = 0
    head = 0
    for i in range(n - 1):
        value = value * de + ph[i]
        head += ph[i]
    rho = (-head) % e
    value = value * d + (ph[n - 1] - rho) // e
    code = 0
    f = nfact
    for i in range(n):
        f //= n - i
        smaller = 0
        for j in range(i + 1, n):
            if pm[j] < pm[i]:
                smaller += 1
        code += smaller * f
    return value * nfact + code


@njit(cache=True)
def walk_kernel(codes, ph, pm, gph, gpm, n, d, e, de, nfact, seen, offset, ncheck, hit):
    """Walk ``codes`` from ``(ph | pm)``, updating both in place.

    ``codes`` is the slice of the word starting at index ``offset``.  Vertices
    with index below ``ncheck`` are marked in the bitset ``seen``; the first
    one found already marked is returned (-1 if none) and copied into ``hit``
    (phases then permutation).  The start vertex is marked when ``offset``
    is 0.
    """
    nph = np.empty(n, np.int64)
    npm = np.empty(n, np.int64)
    repeat = -1
    if offset == 0 and ncheck > 0:
        r = _rank(ph, pm, n, d, e, de, nfact)
        seen[r >> 3] |= np.uint8(1 << (r & 7))
    for i in range(codes.shape[0]):
        c = codes[i]
        for j in range(n):
            s = pm[j]
            nph[j] = (ph[j] + gph[c, s]) % de
            npm[j] = gpm[c, s]
        for j in range(n):
            ph[j] = nph[j]
            pm[j] = npm[j]
        if repeat < 0 and offset + i + 1 < ncheck:
            r = _rank(ph, pm, n, d, e, de, nfact)
            bit = np.uint8(1 << (r & 7))
            if seen[r >> 3] & bit:
                repeat = offset + i + 1
                for j in range(n):
                    hit[j] = ph[j]
                    hit[n + j] = pm[j]
            else:
                seen[r >> 3] |= bit
    return repeat


class LabelCodec:
    """Maps labels to small integer codes and holds the generator tables."""

    def __init__(self, params: GroupParams):
        self.params = params
        self.labels = params.all_labels
        n = params.n
        self.gph = np.zeros((len(self.labels), n), np.int64)
        self.gpm = np.zeros((len(self.labels), n), np.int64)
        self.code: dict[EdgeLabel, int] = {}
        for c, lab in enumerate(self.labels):
            g = generator_element(params, lab)
            self.gph[c] = g.phases
            self.gpm[c] = g.perm
            self.code[lab] = c
        for lab in self.labels:
            # inverted spellings of involutions share the plain code
            self.code.setdefault(lab._replace(inverted=True), self.code[lab])

    def encode(self, word) -> np.ndarray:
        try:
            return np.fromiter(map(self.code.__getitem__, word), np.int8)
        except KeyError as exc:
            raise UnavailableGeneratorError(
                f"label {exc.args[0]!r} is not a generator of {self.params.name}"
            ) from None


CHUNK = 1 << 14


def stream_walk(params: GroupParams, start: Element, word, ncheck: int):
    """Returns ``(first_repeat_index or None, endpoint, repeated vertex or
    None)``.

    The word is encoded ``CHUNK`` labels at a time, so apart from the input the
    only sizeable allocation is the bitset of ``order / 8`` bytes.
    """
    codec = LabelCodec(params)
    n = params.n
    nfact = params.order // (params.d**n * params.e ** (n - 1))
    ph = np.asarray(start.phases, np.int64).copy()
    pm = np.asarray(start.perm, np.int64).copy()
    seen = np.zeros((params.order + 7) >> 3, np.uint8)
    hit = np.zeros(2 * n, np.int64)
    repeat = -1
    offset = 0
    it = iter(word)
    while True:
        codes = codec.encode(islice(it, CHUNK))
        if offset and not len(codes):
            break
        found = walk_kernel(
            codes, ph, pm, codec.gph, codec.gpm, n, params.d, params.e, params.de,
            nfact, seen, offset, ncheck, hit,
        )
        if repeat < 0:
            repeat = found
        offset += len(codes)
        if len(codes) < CHUNK:
            break
    end = Element(tuple(int(a) for a in ph), tuple(int(p) for p in pm))
    if repeat < 0:
        return None, end, None
    again = Element(tuple(int(a) for a in hit[:n]), tuple(int(p) for p in hit[n:]))
    return int(repeat), end, again


@njit(cache=True)
def _find(root, v):
    while root[v] != v:
        root[v] = root[root[v]]
        v = root[v]
    return v


@njit(cache=True)
def _propagate(adj, rev, visited, path, depth, order):
    """Look ahead from the current path.

    The rest of the cycle is a Hamiltonian path from the path's end to vertex
    0 through the unvisited vertices; closing it with a virtual edge end--0
    gives a Hamiltonian cycle of the rest graph.  A vertex with two usable
    edges must use both, and a vertex already holding two forced edges
    drops its others.  This is repeated until nothing changes.  The branch
    is dead if a vertex runs out of edges, carries three forced edges, or the
    forced edges close a cycle that misses part of the rest graph.

    Returns -2 for a dead branch, otherwise the vertex the path is forced to
    take next (-1 if none).
    """
    end = path[depth - 1]
    k = adj.shape[1]
    inrest = np.zeros(order, np.uint8)
    size = 0
    for v in range(order):
        if not visited[v] or v == end or v == 0:
            inrest[v] = 1
            size += 1
    alive = np.zeros((order, k), np.uint8)
    forced = np.zeros((order, k), np.uint8)
    deg = np.zeros(order, np.int64)
    fcount = np.zeros(order, np.int64)
    root = np.arange(order)
    csize = np.ones(order, np.int64)
    for v in range(order):
        if not inrest[v]:
            continue
        for j in range(k):
            u = adj[v, j]
            if u < 0 or not inrest[u]:
                continue
            if (v == end and u == 0) or (v == 0 and u == end):
                continue
            alive[v, j] = 1
            deg[v] += 1
    # the virtual closing edge
    deg[end] += 1
    deg[0] += 1
    fcount[end] = 1
    fcount[0] = 1
    root[end] = 0
    csize[0] = 2
    stack = np.empty(order * (k + 2), np.int64)
    top = 0
    for v in range(order):
        if inrest[v]:
            stack[top] = v
            top += 1
    while top:
        top -= 1
        v = stack[top]
        if deg[v] < 2:
            return -2
        if deg[v] == 2 and fcount[v] < 2:
            for j in range(k):
                if alive[v, j] and not forced[v, j]:
                    u = adj[v, j]
                    forced[v, j] = 1
                    forced[u, rev[v, j]] = 1
                    fcount[v] += 1
                    fcount[u] += 1
                    if fcount[u] > 2:
                        return -2
                    a = _find(root, v)
                    b = _find(root, u)
                    if a == b:
                        if csize[a] < size:
                            return -2
                    else:
                        root[a] = b
                        csize[b] += csize[a]
                    stack[top] = u
                    top += 1
        if fcount[v] == 2 and deg[v] > 2:
            for j in range(k):
                if alive[v, j] and not forced[v, j]:
                    u = adj[v, j]
                    alive[v, j] = 0
                    alive[u, rev[v, j]] = 0
                    deg[v] -= 1
                    deg[u] -= 1
                    stack[top] = u
                    top += 1
    for j in range(k):
        if forced[end, j]:
            return adj[end, j]
    return -1


@njit(cache=True)
def _stranded(nbr, visited, free, path, depth, order):
    """True if no Hamiltonian path from the path's end back to vertex 0 can
    cover the unvisited vertices.

    Two necessary conditions are checked on the rest graph (unvisited
    vertices, the end, vertex 0).  Edges at a vertex with only two usable
    neighbours are forced; no vertex may carry more forced edges than it still
    has room for.  And with an extra edge end--0 the rest graph must be
    2-connected.
    """
    end = path[depth - 1]
    if order - depth == 0:
        return False
    k = nbr.shape[1]
    forced = np.zeros(order, np.int64)
    for v in range(order):
        if visited[v] or free[v] != 2:
            continue
        for j in range(k):
            u = nbr[v, j]
            if not visited[u] or u == end or u == 0:
                forced[u] += 1
                room = 1 if (u == end or u == 0) else 2
                if forced[u] > room:
                    return True
    disc = np.full(order, -1, np.int64)
    low = np.zeros(order, np.int64)
    parent = np.full(order, -1, np.int64)
    it = np.zeros(order, np.int64)
    stack = np.empty(order, np.int64)
    disc[0] = 0
    low[0] = 0
    stack[0] = 0
    top = 1
    counter = 1
    root_children = 0
    while top:
        v = stack[top - 1]
        if it[v] <= k:
            j = it[v]
            it[v] += 1
            if j == k:
                # the extra edge end--0
                if v == end:
                    u = 0
                elif v == 0:
                    u = end
                else:
                    continue
            else:
                u = nbr[v, j]
                if visited[u] and u != end and u != 0:
                    continue
            if u == parent[v]:
                continue
            if disc[u] < 0:
                parent[u] = v
                disc[u] = counter
                low[u] = counter
                counter += 1
                stack[top] = u
                top += 1
                if v == 0:
                    root_children += 1
            elif disc[u] < low[v]:
                low[v] = disc[u]
        else:
            top -= 1
            p = parent[v]
            if p >= 0:
                if low[v] < low[p]:
                    low[p] = low[v]
                if p != 0 and low[v] >= disc[p]:
                    return True
    # unvisited + end + vertex 0
    if counter < order - depth + 2:
        return True
    return root_children > 1


@njit(cache=True)
def search_kernel(nbr, adj, rev, visited, free, path, choice, nextv, depth, budget):
    """Resumable depth-first search for a Hamiltonian cycle through vertex 0.

    State lives in the arrays so the caller can resume after ``budget`` nodes.
    Returns (status, depth, closing label): status 1 found, 0 exhausted,
    -1 budget used up.
    """
    order, k = nbr.shape
    steps = 0
    while depth > 0:
        steps += 1
        if steps > budget:
            return -1, depth, -1
        v = path[depth - 1]
        if depth == order:
            for j in range(k):
                if nbr[v, j] == 0:
                    return 1, depth, j
        forced = nextv[depth - 1]
        if forced < 0 and v != 0 and depth < order:
            for j in range(k):
                u = nbr[v, j]
                if u != 0 and not visited[u] and free[u] == 2:
                    forced = u if forced < 0 else order
        advanced = False
        c = choice[depth - 1]
        while depth < order and c < k and forced < order:
            w = nbr[v, c]
            c += 1
            if visited[w] or (forced >= 0 and w != forced):
                continue
            choice[depth - 1] = c
            visited[w] = 1
            path[depth] = w
            choice[depth] = 0
            depth += 1
            nextv[depth - 1] = -1
            ok = True
            if v != 0:
                for j in range(k):
                    u = nbr[v, j]
                    free[u] -= 1
                    if u == 0:
                        if free[0] < 1 and depth < order:
                            ok = False
                    elif not visited[u] and free[u] < 2:
                        ok = False
            if ok and depth < order:
                nxt = _propagate(adj, rev, visited, path, depth, order)
                if nxt == -2 or _stranded(nbr, visited, free, path, depth, order):
                    ok = False
                else:
                    nextv[depth - 1] = nxt
            if ok:
                advanced = True
                break
            if v != 0:
                for j in range(k):
                    free[nbr[v, j]] += 1
            depth -= 1
            visited[w] = 0
        if not advanced:
            choice[depth - 1] = k
            depth -= 1
            if depth > 0:
                visited[path[depth]] = 0
                p = path[depth - 1]
                if p != 0:
                    for j in range(k):
                        free[nbr[p, j]] += 1
    return 0, 0, -1
