"""Decision procedures on HDA languages.

Everything here reduces questions about the ipomset language of an HDA to
finite-automaton work on its ST-automaton: membership runs the coherent
word, inclusion runs an on-the-fly subset construction, emptiness is
plain reachability.  Width-bounded complements go through supersumption
enumeration (single ipomsets) or the determinised complement automaton
(emptiness).  Language determinism compares prefix quotients.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable

from . import stauto
from .hda import HDA, _segment_relation, face, skeleton, product
from .ipomset import (Ipomset, WidthExceeded, compose, glue, identity_step,
                      starter, subsumes, supersumptions, terminator)
from .stauto import complement_words, coherent_word, emptiness, inclusion, st_of_hda
from .text import print_ipomset


def member(x: HDA, p: Ipomset) -> bool:
    """Is p in the language of x?"""
    if p.width() > x.dim():
        return False
    return stauto.member(st_of_hda(x), p)


def include(x: HDA, y: HDA) -> tuple[bool, Ipomset | None]:
    """Is the language of x contained in that of y?  If not, the witness
    is a shortest ipomset accepted by x and rejected by y."""
    return inclusion(st_of_hda(x), st_of_hda(y))


def equivalent(x: HDA, y: HDA) -> tuple[bool, Ipomset | None]:
    ok, witness = include(x, y)
    if not ok:
        return False, witness
    return include(y, x)


def empty(x: HDA) -> tuple[bool, Ipomset | None]:
    """Is the language empty?  If not, a shortest member is returned."""
    return emptiness(st_of_hda(x))


def intersect(x: HDA, y: HDA) -> HDA:
    """An HDA for the intersection of the two languages."""
    return product(x, y)


def complement_member(x: HDA, k: int, p: Ipomset) -> tuple[bool, Ipomset | None]:
    """Is p in the width-k bounded complement of the language of x?

    That complement is the down-closure of the width-at-most-k ipomsets
    outside the language, so the test looks for a supersumption of p that
    x does not accept; the witness is the first such in canonical order.
    """
    if p.width() > k:
        raise WidthExceeded(
            f"width {p.width()} of the queried ipomset exceeds the bound {k}")
    a = st_of_hda(skeleton(x, k))
    for q in supersumptions(p, k):
        if not stauto.member(a, q):
            return True, q
    return False, None


def complement_empty(x: HDA, k: int) -> tuple[bool, Ipomset | None]:
    """Is the width-k bounded complement of the language empty, i.e. does
    x accept every ipomset of width at most k?  A shortest unaccepted
    ipomset witnesses a nonempty complement."""
    comp = complement_words(st_of_hda(skeleton(x, k)), width=k)
    return emptiness(comp)


# --------------------------------------------------------------------------
# prefixes and language determinism

def pre_set(x: HDA) -> dict[Ipomset, frozenset[str]]:
    """The prefixes realised along paths without repeated cells, mapped
    to the sets of cells such paths can end in.

    Paths that revisit a cell only repeat prefixes already realised by a
    shorter path into the same cell, so restricting to paths without
    repeated cells keeps the set finite without losing quotient targets
    needed by the determinism check.
    """
    up = x.up_steps()
    found: dict[Ipomset, set[str]] = {}
    stack = []
    seen = set()
    for origin in sorted(x.start):
        state = (origin, frozenset({origin}),
                 compose([identity_step(x.cells[origin].events)]))
        stack.append(state)
        seen.add(state)
    while stack:
        cell, visited, prefix = stack.pop()
        found.setdefault(prefix, set()).add(cell)
        moves = [(starter(x.cells[y].events, a), y)
                 for a, y in up[cell] if y not in visited]
        c = x.cells[cell]
        for r in range(1, c.dim + 1):
            for b in itertools.combinations(range(c.dim), r):
                y = face(x, cell, 1, b)
                if y not in visited:
                    moves.append((terminator(c.events, b), y))
        for step, y in moves:
            # move orders that realise the same prefix are interchangeable,
            # so exploring one (cell, visited, prefix) triple is enough
            state = (y, visited | {y}, glue(prefix, step.as_ipomset()))
            if state not in seen:
                seen.add(state)
                stack.append(state)
    return {p: frozenset(ends) for p, ends in found.items()}


def prefix_quotient(x: HDA, p: Ipomset) -> HDA:
    """The automaton for the left quotient of the language by p: same
    cells, with the start set moved to wherever a path observing p from a
    start cell can end."""
    rel = _segment_relation(x, p)
    targets: set[str] = set()
    for c in x.start:
        targets |= rel.get(c, set())
    return HDA(x.cells.values(), targets, x.accept, x.alphabet)


def _co_reachable(x: HDA) -> frozenset[str]:
    pred: dict[str, set[str]] = {cid: set() for cid in x.cells}
    for c in x.cells.values():
        for i in range(c.dim):
            pred[c.id].add(c.lower[i])
            pred[c.upper[i]].add(c.id)
    seen = set(x.accept)
    queue = deque(seen)
    while queue:
        cur = queue.popleft()
        for nxt in pred[cur]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def is_deterministic_language(x: HDA) -> tuple[bool, tuple[Ipomset, Ipomset] | None]:
    """Whether the language is deterministic: any two comparable prefixes
    of the language leave the same quotient.

    More ordered prefixes always leave a larger quotient, so only the
    missing containment is checked, pairwise over the realised prefixes.
    Pairs are scanned in descending canonical order and the first failing
    one is the witness, so the witness is the canonically largest.
    """
    pre = pre_set(x)
    co = _co_reachable(x)
    items = sorted(pre.items(), key=lambda kv: kv[0].key(), reverse=True)

    def invariant(p: Ipomset) -> tuple:
        return (tuple(sorted(p.labels)),
                tuple(sorted(p.labels[i] for i in p.source)),
                tuple(sorted(p.labels[i] for i in p.target)))

    # comparable prefixes share labels and interfaces, so only pairs from
    # the same bucket can violate; prefixes with empty quotients are no
    # prefixes of the language itself and are skipped on the q side
    buckets: dict[tuple, list] = {}
    for q, q_targets in items:
        if q_targets & co:
            buckets.setdefault(invariant(q), []).append((q, q_targets))
    cache: dict[tuple, bool] = {}
    for p, p_targets in items:
        p_prec, p_width = len(p.precedence), p.width()
        for q, q_targets in buckets.get(invariant(p), ()):
            # a subsumed prefix has at least as much precedence and at
            # most the width of the coarser one
            if len(q.precedence) > p_prec or q.width() < p_width:
                continue
            if p == q or p_targets == q_targets or not subsumes(p, q):
                continue
            key = (tuple(sorted(p_targets)), tuple(sorted(q_targets)))
            if key not in cache:
                xp = HDA(x.cells.values(), p_targets, x.accept, x.alphabet)
                xq = HDA(x.cells.values(), q_targets, x.accept, x.alphabet)
                cache[key] = equivalent(xp, xq)[0]
            if not cache[key]:
                return False, (p, q)
    return True, None
