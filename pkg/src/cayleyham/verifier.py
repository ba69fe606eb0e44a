"""Independent checks of Hamiltonian cycles, and a backtracking search used as
an oracle on small groups."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .group_core import (
    EdgeLabel,
    Element,
    GroupParams,
    R,
    S,
    T,
    T_INV,
    apply_label,
    format_element,
    identity,
    rank,
    unrank,
)
from ._walk import search_kernel, stream_walk


class NoHamiltonianCycle(Exception):
    """The exhaustive search finished without finding a cycle."""


@dataclass
class CycleReport:
    valid: bool
    length: int
    expected_length: int
    closed: bool
    first_violation: Optional[tuple[int, str]] = None
    elapsed: float = 0.0
    provenance: Optional[str] = None

    @property
    def problems(self) -> list[str]:
        out = []
        if self.length != self.expected_length:
            out.append(f"length mismatch: {self.length} != {self.expected_length}")
        if not self.closed:
            out.append("walk is not closed")
        if self.first_violation:
            step, vertex = self.first_violation
            out.append(f"vertex {vertex} repeated at step {step}")
        return out

    def __str__(self) -> str:
        status = "valid" if self.valid else "INVALID: " + "; ".join(self.problems)
        return f"{status} (length {self.length}, {self.elapsed * 1e3:.1f} ms)"


def verify_hamiltonian(
    params: GroupParams,
    start: Optional[Element],
    word: Sequence[EdgeLabel],
    provenance: Optional[str] = None,
) -> CycleReport:
    """Stream the walk once, keeping one bit per group element."""
    t0 = time.perf_counter()
    start = identity(params) if start is None else start
    length = len(word)
    repeat, end, again = stream_walk(params, start, word, length)
    violation = None if repeat is None else (repeat, format_element(again))
    closed = end == start
    valid = length == params.order and closed and violation is None
    return CycleReport(
        valid, length, params.order, closed, violation, time.perf_counter() - t0, provenance
    )


def oracle_labels(params: GroupParams) -> list[EdgeLabel]:
    """Search order for the oracle: s, t, t^-1, r1, ..., r_{n-1}."""
    out = []
    labels = params.labels
    if S in labels:
        out.append(S)
    if T in labels:
        out.append(T)
        if params.d > 2:
            out.append(T_INV)
    out.extend(R(i) for i in range(1, params.n) if R(i) in labels)
    return out


def neighbour_table(params: GroupParams, labels: Sequence[EdgeLabel]) -> list[list[int]]:
    table = []
    for i in range(params.order):
        x = unrank(params, i)
        table.append([rank(params, apply_label(params, x, lab)) for lab in labels])
    return table


def _undirected(nbr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Neighbour table with repeated neighbours blanked (-1), plus for each
    slot ``(v, j)`` the slot of ``v`` in the neighbour's row."""
    order, k = nbr.shape
    adj = nbr.copy()
    rev = np.full_like(nbr, -1)
    for v in range(order):
        seen = set()
        for j in range(k):
            u = int(nbr[v, j])
            if u == v or u in seen:
                adj[v, j] = -1
            seen.add(u)
    for v in range(order):
        for j in range(k):
            u = adj[v, j]
            if u >= 0:
                rev[v, j] = int(np.flatnonzero(adj[u] == v)[0])
    return adj, rev


def brute_force_cycle(params: GroupParams, time_limit: float = 10.0) -> Optional[list]:
    """Depth-first search for a Hamiltonian cycle through the identity.

    Labels are tried in the fixed order of :func:`oracle_labels`.  Besides
    rejecting revisits, a branch is cut when

    * an unvisited vertex keeps fewer than two usable neighbours (unvisited,
      the path's end, or the identity);
    * propagating the edges that are forced (a vertex with two usable edges
      needs both, a vertex holding two forced edges loses the rest) overloads
      a vertex or closes a short cycle;
    * the unvisited vertices and the path's end fall apart into several pieces,
      or can no longer reach the identity.

    When the path's end has a forced edge, that is the only move tried.  All
    cuts are sound, so the search stays exhaustive.

    Returns the label word, or None when the time limit runs out.  Raises
    :class:`NoHamiltonianCycle` if the whole tree was explored.
    """
    labels = oracle_labels(params)
    nbr = np.array(neighbour_table(params, labels), np.int64)
    order, k = nbr.shape
    deadline = time.monotonic() + time_limit
    adj, rev = _undirected(nbr)
    nextv = np.full(order, -1, np.int64)
    visited = np.zeros(order, np.uint8)
    visited[0] = 1
    free = np.full(order, k, np.int64)
    path = np.zeros(order, np.int64)
    choice = np.zeros(order, np.int64)
    depth = 1
    budget = 2_000
    while True:
        t0 = time.monotonic()
        status, depth, closing = search_kernel(
            nbr, adj, rev, visited, free, path, choice, nextv, depth, budget
        )
        if status == 1:
            return [labels[c - 1] for c in choice[: order - 1]] + [labels[closing]]
        if status == 0:
            raise NoHamiltonianCycle(params.name)
        now = time.monotonic()
        if now > deadline:
            return None
        # aim for chunks of about a tenth of a second, never past the deadline
        rate = budget / max(now - t0, 1e-4)
        budget = max(100, int(rate * min(0.1, deadline - now)))


@dataclass
class CrossCheck:
    params: GroupParams
    constructed: list
    constructed_report: CycleReport
    searched: Optional[list]
    searched_report: Optional[CycleReport]
    notes: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return (
            self.constructed_report.valid
            and self.searched_report is not None
            and self.searched_report.valid
        )


def cross_check(params: GroupParams, time_limit: float = 10.0) -> CrossCheck:
    from .constructions import construct

    cyc = construct(params)
    rep = verify_hamiltonian(params, None, cyc.word, cyc.provenance)
    notes = []
    try:
        found = brute_force_cycle(params, time_limit)
    except NoHamiltonianCycle:
        found = None
        notes.append("search exhausted without a cycle")
    if found is None and not notes:
        notes.append("search hit the time limit")
    found_rep = None if found is None else verify_hamiltonian(params, None, found, "brute_force")
    return CrossCheck(params, cyc.word, rep, found, found_rep, notes)
