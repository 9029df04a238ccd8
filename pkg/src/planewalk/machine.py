"""Multihead plane-walking automata: transition tables, validation, products.

A k-head automaton has per-head local state sets and per-head transition
tables.  A table row is keyed by (own state, peer pattern, read symbol);
the peer pattern has one slot per other head holding either a concrete
state (that head is co-located and in that state), "?" (that head is
elsewhere), or "*" (wildcard).  Exact slots beat wildcards; among wildcard
rows, more specific patterns beat less specific ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import NamedTuple

from .configs import Coord, UsageError, norm_inf, zero

NO_PEER = "?"
WILDCARD = "*"
_RESERVED = {NO_PEER, WILDCARD, "any", ""}

# Enumeration cap for full observation-coverage checking when no catch-all
# row is present.
_COVER_CAP = 200_000


class Row(NamedTuple):
    head: int
    own: str
    peers: tuple[str, ...]  # length heads-1, entries: state | "?" | "*"
    sym: int
    nxt: str
    move: Coord


class InternalError(RuntimeError):
    """A condition validate() should have precluded."""


def _masks(nslots: int) -> list[tuple[int, ...]]:
    """Wildcard position sets, most specific first."""
    out = []
    for r in range(nslots + 1):
        out.extend(combinations(range(nslots), r))
    return out


@dataclass
class PlaneAutomaton:
    dim: int
    heads: int
    local_states: tuple[tuple[str, ...], ...]
    rows: tuple[Row, ...]
    initial: frozenset[tuple[str, ...]]
    rejecting: frozenset[tuple[str, ...]]
    alphabet_size: int = 2
    move_bound: int = 1
    name: str = ""
    annotations: dict = field(default_factory=dict)

    def __post_init__(self):
        self.local_states = tuple(tuple(s) for s in self.local_states)
        self.rows = tuple(self.rows)
        self.initial = frozenset(tuple(q) for q in self.initial)
        self.rejecting = frozenset(tuple(q) for q in self.rejecting)
        self._tables = None

    # -- compiled lookup ----------------------------------------------------

    def tables(self):
        """Per-head lookup structure: [(mask, dict)] ordered by specificity."""
        if self._tables is None:
            nslots = self.heads - 1
            masks = _masks(nslots)
            tabs = []
            for j in range(self.heads):
                per_mask = {m: {} for m in masks}
                for r in self.rows:
                    if r.head != j:
                        continue
                    mask = tuple(i for i, p in enumerate(r.peers) if p == WILDCARD)
                    key = (r.own, tuple(p for p in r.peers if p != WILDCARD), r.sym)
                    if key in per_mask[mask]:
                        raise UsageError(f"duplicate transition row for head {j}: {r}")
                    per_mask[mask][key] = (r.nxt, r.move)
                tabs.append([(m, per_mask[m]) for m in masks])
            self._tables = tabs
        return self._tables

    def resolve(self, j: int, own: str, peers: tuple[str, ...], sym: int):
        """The unique transition for head j under the given observation."""
        for mask, tbl in self.tables()[j]:
            key = (own, tuple(p for i, p in enumerate(peers) if i not in mask), sym)
            hit = tbl.get(key)
            if hit is not None:
                return hit
        raise InternalError(
            f"uncovered observation: head {j}, own={own}, peers={peers}, sym={sym}"
        )

    # -- global-state helpers ------------------------------------------------

    def global_states(self):
        return product(*self.local_states)

    def state_counts(self) -> list[int]:
        return [len(s) for s in self.local_states]


def validate(a: PlaneAutomaton) -> list[str]:
    """Structural defects; empty means the automaton is well-formed and total."""
    defects: list[str] = []
    if a.dim < 1:
        defects.append(f"dimension {a.dim} < 1")
    if a.heads < 1:
        defects.append(f"head count {a.heads} < 1")
    if len(a.local_states) != a.heads:
        defects.append(f"{len(a.local_states)} local state sets for {a.heads} heads")
        return defects

    state_sets = [set(s) for s in a.local_states]
    for j, states in enumerate(a.local_states):
        if not states:
            defects.append(f"head {j} has no local states")
        for s in states:
            if s in _RESERVED or any(c.isspace() for c in s) or "," in s or "(" in s or ")" in s:
                defects.append(f"head {j}: bad state name {s!r}")
        if len(states) != len(state_sets[j]):
            defects.append(f"head {j}: duplicate state names")

    for label, group in (("initial", a.initial), ("rejecting", a.rejecting)):
        for q in group:
            if len(q) != a.heads or any(
                i >= len(state_sets) or s not in state_sets[i] for i, s in enumerate(q)
            ):
                defects.append(f"malformed {label} global state {q}")

    nslots = a.heads - 1
    seen_keys = set()
    for r in a.rows:
        if not 0 <= r.head < a.heads:
            defects.append(f"row with bad head index: {r}")
            continue
        others = [i for i in range(a.heads) if i != r.head]
        if r.own not in state_sets[r.head]:
            defects.append(f"row with unknown own state: {r}")
        if len(r.peers) != nslots:
            defects.append(f"row with {len(r.peers)} peer slots, want {nslots}: {r}")
            continue
        for slot, p in enumerate(r.peers):
            if p not in (NO_PEER, WILDCARD) and p not in state_sets[others[slot]]:
                defects.append(f"row with unknown peer state {p!r}: {r}")
        if not 0 <= r.sym < a.alphabet_size:
            defects.append(f"row with out-of-alphabet symbol: {r}")
        if r.nxt not in state_sets[r.head]:
            defects.append(f"row with unknown next state: {r}")
        if len(r.move) != a.dim:
            defects.append(f"row with {len(r.move)}-dim move, want {a.dim}: {r}")
        elif norm_inf(r.move) > a.move_bound:
            defects.append(f"row with move {r.move} beyond bound {a.move_bound}: {r}")
        key = (r.head, r.own, r.peers, r.sym)
        if key in seen_keys:
            defects.append(f"duplicate row key {key}")
        seen_keys.add(key)

    if defects:
        return defects

    # Totality: every (head, own, peer assignment, symbol) must match a row.
    for j in range(a.heads):
        others = [i for i in range(a.heads) if i != j]
        by_own_sym: dict[tuple[str, int], list[Row]] = {}
        for r in a.rows:
            if r.head == j:
                by_own_sym.setdefault((r.own, r.sym), []).append(r)
        for own in a.local_states[j]:
            for sym in range(a.alphabet_size):
                rows = by_own_sym.get((own, sym), [])
                if any(all(p == WILDCARD for p in r.peers) for r in rows):
                    continue
                if not rows:
                    defects.append(f"uncovered observation: head {j}, own={own}, sym={sym}")
                    continue
                domains = [[NO_PEER] + list(a.local_states[i]) for i in others]
                total = 1
                for d in domains:
                    total *= len(d)
                if total > _COVER_CAP:
                    defects.append(
                        f"head {j}, own={own}, sym={sym}: cannot verify totality "
                        f"({total} observations, no catch-all row)"
                    )
                    continue
                for combo in product(*domains):
                    matches = [
                        r for r in rows
                        if all(p == WILDCARD or p == combo[i] for i, p in enumerate(r.peers))
                    ]
                    if not matches:
                        defects.append(
                            f"uncovered observation: head {j}, own={own}, "
                            f"peers={combo}, sym={sym}"
                        )
                        break
                    best = min(sum(1 for p in r.peers if p == WILDCARD) for r in matches)
                    if sum(1 for r in matches
                           if sum(1 for p in r.peers if p == WILDCARD) == best) > 1:
                        defects.append(
                            f"ambiguous observation: head {j}, own={own}, "
                            f"peers={combo}, sym={sym}"
                        )
                        break
    return defects


def _tag(c: int, s: str) -> str:
    return f"{c}:{s}"


def _tag_tuple(c: int, q: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(_tag(c, s) for s in q)


def intersect_many(autos: list[PlaneAutomaton], name: str = "") -> PlaneAutomaton:
    """Product-by-disjoint-union: accepts the intersection of the components.

    All heads start in one component and transitions keep them there;
    observations mixing components fall through to harmless self-loops.
    """
    if not autos:
        raise UsageError("nothing to intersect")
    first = autos[0]
    for a in autos[1:]:
        if (a.dim, a.heads, a.alphabet_size) != (first.dim, first.heads, first.alphabet_size):
            raise UsageError("intersection needs matching dimension, head count and alphabet")
    dim, heads, alpha = first.dim, first.heads, first.alphabet_size

    local: list[list[str]] = [[] for _ in range(heads)]
    rows: list[Row] = []
    initial: set[tuple[str, ...]] = set()
    rejecting: set[tuple[str, ...]] = set()
    stay = zero(dim)

    for c, a in enumerate(autos):
        for j in range(heads):
            local[j].extend(_tag(c, s) for s in a.local_states[j])
        for r in a.rows:
            peers = tuple(p if p in (NO_PEER, WILDCARD) else _tag(c, p) for p in r.peers)
            rows.append(Row(r.head, _tag(c, r.own), peers, r.sym, _tag(c, r.nxt), r.move))
        initial.update(_tag_tuple(c, q) for q in a.initial)
        rejecting.update(_tag_tuple(c, q) for q in a.rejecting)

    # Harmless self-loop defaults cover cross-component observations.
    covered = {(r.head, r.own, r.sym) for r in rows if all(p == WILDCARD for p in r.peers)}
    blank = (WILDCARD,) * (heads - 1)
    for j in range(heads):
        for s in local[j]:
            for sym in range(alpha):
                if (j, s, sym) not in covered:
                    rows.append(Row(j, s, blank, sym, s, stay))

    return PlaneAutomaton(
        dim, heads, tuple(tuple(l) for l in local), tuple(rows),
        frozenset(initial), frozenset(rejecting), alpha,
        move_bound=max(a.move_bound for a in autos),
        name=name or "&".join(a.name or f"c{i}" for i, a in enumerate(autos)),
    )


def intersect(a: PlaneAutomaton, b: PlaneAutomaton, name: str = "") -> PlaneAutomaton:
    return intersect_many([a, b], name=name)


def lift_heads(a: PlaneAutomaton, heads: int, name: str = "") -> PlaneAutomaton:
    """Run a 1-head automaton with extra shadow heads glued to the first.

    Shadows observe the lead head (always co-located) and replay its move,
    so the lifted automaton rejects exactly where the original does.
    """
    if a.heads != 1:
        raise UsageError("lift_heads expects a 1-head automaton")
    if heads < 2:
        raise UsageError("lift target must have at least 2 heads")
    lead_states = a.local_states[0]
    shadow_states = tuple(f"sh.{s}" for s in lead_states)
    local = (lead_states,) + (shadow_states,) * (heads - 1)

    rows: list[Row] = []
    blank = (WILDCARD,) * (heads - 1)
    for r in a.rows:
        rows.append(Row(0, r.own, blank, r.sym, r.nxt, r.move))
    for j in range(1, heads):
        for r in a.rows:
            peers = tuple(
                r.own if i == 0 else WILDCARD for i in range(heads) if i != j
            )
            rows.append(Row(j, f"sh.{r.own}", peers, r.sym, f"sh.{r.nxt}", r.move))
        # Never-reached fallbacks keep the table total if the lead wanders off.
        for s in shadow_states:
            for sym in range(a.alphabet_size):
                rows.append(Row(j, s, blank, sym, s, zero(a.dim)))

    initial = frozenset(
        (q[0],) + (f"sh.{q[0]}",) * (heads - 1) for q in a.initial
    )
    rejecting = frozenset(
        (q[0],) + (f"sh.{q[0]}",) * (heads - 1) for q in a.rejecting
    )
    return PlaneAutomaton(
        a.dim, heads, local, tuple(rows), initial, rejecting,
        a.alphabet_size, a.move_bound, name=name or (a.name and f"{a.name}.x{heads}"),
    )


def normalize_moves(a: PlaneAutomaton) -> PlaneAutomaton:
    """Split long moves of a 1-head automaton into unit-step chains.

    Multihead automata must already use unit moves: stretching one head's
    step changes what the others observe mid-flight, so there is no
    mechanical normalization that preserves the subshift.
    """
    if all(norm_inf(r.move) <= 1 for r in a.rows):
        return a
    if a.heads != 1:
        raise UsageError("multihead automata must use moves of max-norm <= 1")

    states = list(a.local_states[0])
    rows: list[Row] = []
    counter = 0
    for r in a.rows:
        if norm_inf(r.move) <= 1:
            rows.append(r)
            continue
        steps: list[Coord] = []
        rem = list(r.move)
        while any(rem):
            step = tuple((c > 0) - (c < 0) for c in rem)
            steps.append(step)
            rem = [c - s for c, s in zip(rem, step)]
        chain = []
        for _ in range(len(steps) - 1):
            chain.append(f"_chain{counter}")
            counter += 1
        states.extend(chain)
        seq = [r.own] + chain + [r.nxt]
        rows.append(Row(0, r.own, (), r.sym, seq[1], steps[0]))
        for i in range(1, len(steps)):
            for s in range(a.alphabet_size):
                rows.append(Row(0, seq[i], (), s, seq[i + 1], steps[i]))
    return PlaneAutomaton(
        a.dim, 1, (tuple(states),), tuple(rows), a.initial, a.rejecting,
        a.alphabet_size, 1, a.name, dict(a.annotations),
    )
