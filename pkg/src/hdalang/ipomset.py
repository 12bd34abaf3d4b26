"""Interval pomsets with interfaces (ipomsets) and their step algebra.

An ipomset is a finite set of labelled events carrying two strict partial
orders, precedence and event order, together with a source and a target
interface.  Any two distinct events are comparable in at least one of the
two orders.  Precedence must be an interval order, interfaces must be
extremal, and isomorphic ipomsets are treated as equal (there is at most
one isomorphism between two ipomsets, so this is sound).

Events are addressed by index 0..n-1; labels live in ``labels``.  Both
relations are stored transitively closed.  The canonical form of an
ipomset is its sparse step decomposition, which also serves as equality
and hash key.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Iterator, Sequence


# --------------------------------------------------------------------------
# problems and errors

@dataclass(frozen=True)
class Problem:
    """One violated invariant: a code, the offending subjects, and prose."""
    code: str
    subjects: tuple
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidIpomset(ValueError):
    def __init__(self, problems: Iterable[Problem]):
        self.problems = tuple(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


class InterfaceMismatch(ValueError):
    """Gluing was attempted across interfaces that are not the same conclist."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message)


class WidthExceeded(ValueError):
    pass


class IdentityHasNoDenseDecomposition(ValueError):
    pass


class ParseError(ValueError):
    """Bad ipomset text; ``position`` is a character offset into the input."""

    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"at {position}: {message}")


# --------------------------------------------------------------------------
# relation helpers

def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Transitive closure of a relation on 0..n-1, via bitmask rows."""
    rows = [0] * n
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"event index out of range: ({a}, {b})")
        rows[a] |= 1 << b
    for k in range(n):
        bit = 1 << k
        row_k = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= row_k
    return frozenset((i, j) for i in range(n)
                     for j in range(n) if rows[i] >> j & 1)


def _problems(labels, precedence, event_order, source, target) -> list[Problem]:
    n = len(labels)
    out: list[Problem] = []
    for rel, name in ((precedence, "precedence"), (event_order, "event order")):
        cyclic = sorted({x for (x, y) in rel if x == y})
        if cyclic:
            out.append(Problem("NotPartialOrder", tuple(cyclic),
                               f"{name} has a cycle through events {cyclic}"))
    for x, y in itertools.combinations(range(n), 2):
        if not ((x, y) in precedence or (y, x) in precedence
                or (x, y) in event_order or (y, x) in event_order):
            out.append(Problem("IncomparablePair", (x, y),
                               f"events {x} and {y} are unrelated in both orders"))
    for x in source:
        below = sorted(y for (y, z) in precedence if z == x and y != x)
        if below:
            out.append(Problem("InterfaceNotExtremal", (x,),
                               f"source event {x} has predecessors {below}"))
    for x in target:
        above = sorted(z for (y, z) in precedence if y == x and z != x)
        if above:
            out.append(Problem("InterfaceNotExtremal", (x,),
                               f"target event {x} has successors {above}"))
    # Interval orders are exactly the 2+2-free ones: no x<y, z<w with x!<w,
    # z!<y, which is the same as the predecessor sets forming a chain.
    pred = [0] * n
    for x, y in precedence:
        if x != y:
            pred[y] |= 1 << x
    for y, w in itertools.combinations(range(n), 2):
        a, b = pred[y], pred[w]
        if a & ~b and b & ~a:
            x = (a & ~b).bit_length() - 1
            z = (b & ~a).bit_length() - 1
            out.append(Problem("NotInterval", (x, y, z, w),
                               f"2+2 configuration: {x}<{y} and {z}<{w} "
                               f"with {x}!<{w} and {z}!<{y}"))
            break
    return out


def validate_ipomset(labels, precedence=(), event_order=(),
                     source=(), target=()) -> list[Problem]:
    """Check raw ipomset data; return every violated invariant (empty = valid)."""
    n = len(labels)
    prec = _closure(n, precedence)
    ev = _closure(n, event_order)
    return _problems(tuple(labels), prec, ev, frozenset(source), frozenset(target))


# --------------------------------------------------------------------------
# the ipomset value

class Ipomset:
    """An interval pomset with interfaces, validated at construction."""

    __slots__ = ("labels", "precedence", "event_order", "source", "target",
                 "_key", "_hash")

    def __init__(self, labels: Sequence[str], precedence=(), event_order=(),
                 source=(), target=()):
        labels = tuple(labels)
        n = len(labels)
        prec = _closure(n, precedence)
        ev = _closure(n, event_order)
        source = frozenset(source)
        target = frozenset(target)
        for s in (source, target):
            for x in s:
                if not (0 <= x < n):
                    raise ValueError(f"interface event out of range: {x}")
        problems = _problems(labels, prec, ev, source, target)
        if problems:
            raise InvalidIpomset(problems)
        self.labels = labels
        self.precedence = prec
        self.event_order = ev
        self.source = source
        self.target = target
        self._key = None
        self._hash = None

    # -- basics ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def events(self) -> range:
        return range(len(self.labels))

    def concurrent(self, x: int, y: int) -> bool:
        return x != y and (x, y) not in self.precedence and (y, x) not in self.precedence

    def size(self) -> float:
        """Number of events minus half the interface events."""
        return len(self.labels) - (len(self.source) + len(self.target)) / 2

    def is_identity(self) -> bool:
        return self.size() == 0

    def is_discrete(self) -> bool:
        return not self.precedence

    def is_word(self) -> bool:
        n = len(self.labels)
        return len(self.precedence) == n * (n - 1) // 2

    # -- conclists ---------------------------------------------------------

    def _sorted_by_event_order(self, events: Iterable[int]) -> tuple[int, ...]:
        evs = list(events)
        order = self.event_order

        def cmp(a: int, b: int) -> int:
            if (a, b) in order:
                return -1
            if (b, a) in order:
                return 1
            raise InvalidIpomset([Problem(
                "IncomparablePair", (a, b),
                f"events {a} and {b} have no event order inside a conclist")])

        return tuple(sorted(evs, key=cmp_to_key(cmp)))

    def source_conclist(self) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in self._sorted_by_event_order(self.source))

    def target_conclist(self) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in self._sorted_by_event_order(self.target))

    # -- canonical form ----------------------------------------------------

    def key(self) -> tuple:
        """Canonical hashable form: the sparse step decomposition."""
        if self._key is None:
            self._key = tuple(s.key() for s in sparse_decomposition(self).steps)
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ipomset):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self) -> str:
        from .text import print_ipomset
        return f"Ipomset({print_ipomset(self)!r})"

    def width(self) -> int:
        """Size of the largest precedence antichain.

        For interval orders every antichain is simultaneously active at
        some point of any step decomposition, so this is the largest
        conclist of the sparse form.
        """
        return max(len(conclist) for _, conclist, _ in self.key())


EMPTY = None  # set after Step machinery below (needs sparse_decomposition)


# --------------------------------------------------------------------------
# steps and step words

_KINDS = ("starter", "terminator", "identity")


_STEP_IPOMSETS: dict = {}


@dataclass(frozen=True)
class Step:
    """A starter, terminator, or identity over a conclist.

    ``conclist`` is the full list of concurrent events (top to bottom in
    event order); ``marked`` holds the positions being started or
    terminated.  An empty ``marked`` is the identity step.
    """
    kind: str
    conclist: tuple[str, ...]
    marked: frozenset[int]

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown step kind: {self.kind}")
        for p in self.marked:
            if not (0 <= p < len(self.conclist)):
                raise ValueError(f"marked position out of range: {p}")
        if (self.kind == "identity") != (not self.marked):
            raise ValueError("identity steps are exactly the unmarked ones")

    def key(self) -> tuple:
        return (self.kind, self.conclist, tuple(sorted(self.marked)))

    def source_conclist(self) -> tuple[str, ...]:
        if self.kind == "starter":
            return tuple(l for i, l in enumerate(self.conclist) if i not in self.marked)
        return self.conclist

    def target_conclist(self) -> tuple[str, ...]:
        if self.kind == "terminator":
            return tuple(l for i, l in enumerate(self.conclist) if i not in self.marked)
        return self.conclist

    def as_ipomset(self) -> Ipomset:
        cached = _STEP_IPOMSETS.get(self)
        if cached is not None:
            return cached
        n = len(self.conclist)
        order = [(i, j) for i in range(n) for j in range(i + 1, n)]
        carried = frozenset(range(n)) - self.marked
        if self.kind == "starter":
            source, target = carried, frozenset(range(n))
        elif self.kind == "terminator":
            source, target = frozenset(range(n)), carried
        else:
            source = target = frozenset(range(n))
        result = Ipomset(self.conclist, (), order, source, target)
        if len(_STEP_IPOMSETS) < 65536:
            _STEP_IPOMSETS[self] = result
        return result

    def __repr__(self) -> str:
        from .text import print_step
        return f"Step({print_step(self)!r})"


def starter(conclist: Sequence[str], marked: Iterable[int]) -> Step:
    marked = frozenset(marked)
    kind = "starter" if marked else "identity"
    return Step(kind, tuple(conclist), marked)


def terminator(conclist: Sequence[str], marked: Iterable[int]) -> Step:
    marked = frozenset(marked)
    kind = "terminator" if marked else "identity"
    return Step(kind, tuple(conclist), marked)


def identity_step(conclist: Sequence[str]) -> Step:
    return Step("identity", tuple(conclist), frozenset())


class StepWord:
    """A nonempty sequence of steps whose interfaces chain up."""

    __slots__ = ("steps",)

    def __init__(self, steps: Sequence[Step]):
        steps = tuple(steps)
        if not steps:
            raise ValueError("a step word has at least one step")
        for i in range(len(steps) - 1):
            if steps[i].target_conclist() != steps[i + 1].source_conclist():
                raise InterfaceMismatch(
                    f"step {i} ends in {steps[i].target_conclist()} but step "
                    f"{i + 1} starts from {steps[i + 1].source_conclist()}",
                    position=i)
        self.steps = steps

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepWord):
            return NotImplemented
        return self.steps == other.steps

    def __hash__(self) -> int:
        return hash(self.steps)

    def is_sparse(self) -> bool:
        """Starters and terminators strictly alternate; identities occur
        only as the single step of an identity word."""
        if len(self.steps) == 1:
            return True
        kinds = [s.kind for s in self.steps]
        if "identity" in kinds:
            return False
        return all(a != b for a, b in zip(kinds, kinds[1:]))

    def __repr__(self) -> str:
        from .text import print_step
        return f"StepWord({''.join(print_step(s) for s in self.steps)!r})"


def compose(word: StepWord | Sequence[Step]) -> Ipomset:
    """Glue a step word into one ipomset."""
    steps = list(word.steps if isinstance(word, StepWord) else word)
    if not steps:
        raise ValueError("cannot compose an empty step sequence")
    result = steps[0].as_ipomset()
    for pos, step in enumerate(steps[1:], start=1):
        try:
            result = glue(result, step.as_ipomset())
        except InterfaceMismatch as exc:
            raise InterfaceMismatch(str(exc), position=pos) from None
    return result


# --------------------------------------------------------------------------
# compositions

def glue(p: Ipomset, q: Ipomset) -> Ipomset:
    """Serial composition; defined when target of p equals source of q as
    conclists (same labels in the same event order)."""
    p_t = p._sorted_by_event_order(p.target)
    q_s = q._sorted_by_event_order(q.source)
    if tuple(p.labels[i] for i in p_t) != tuple(q.labels[i] for i in q_s):
        raise InterfaceMismatch(
            f"cannot glue: target conclist {p.target_conclist()} != "
            f"source conclist {q.source_conclist()}")
    n_p = len(p.labels)
    # events of q map either onto p's target (positionally) or to fresh indices
    q_map: dict[int, int] = {}
    for tgt_ev, src_ev in zip(p_t, q_s):
        q_map[src_ev] = tgt_ev
    nxt = n_p
    for e in q.events():
        if e not in q_map:
            q_map[e] = nxt
            nxt += 1
    labels = list(p.labels) + [""] * (nxt - n_p)
    for e in q.events():
        labels[q_map[e]] = q.labels[e]
    prec = set(p.precedence)
    prec |= {(q_map[a], q_map[b]) for (a, b) in q.precedence}
    left = [e for e in p.events() if e not in p.target]
    right = [q_map[e] for e in q.events() if e not in q.source]
    prec |= {(a, b) for a in left for b in right}
    order = set(p.event_order)
    order |= {(q_map[a], q_map[b]) for (a, b) in q.event_order}
    return Ipomset(labels, prec, order, p.source, {q_map[e] for e in q.target})


def parallel(p: Ipomset, q: Ipomset) -> Ipomset:
    """Parallel composition: disjoint union with every p-event above every
    q-event in event order.  Not commutative."""
    n_p = len(p.labels)
    labels = p.labels + q.labels
    prec = set(p.precedence) | {(a + n_p, b + n_p) for (a, b) in q.precedence}
    order = set(p.event_order) | {(a + n_p, b + n_p) for (a, b) in q.event_order}
    order |= {(a, b + n_p) for a in p.events() for b in q.events()}
    return Ipomset(labels, prec, order,
                   p.source | {e + n_p for e in q.source},
                   p.target | {e + n_p for e in q.target})


# --------------------------------------------------------------------------
# decompositions

def _startable(p: Ipomset, started: set[int], terminated: set[int]) -> list[int]:
    out = []
    for x in p.events():
        if x in started:
            continue
        if all(y in terminated for (y, z) in p.precedence if z == x):
            out.append(x)
    return out


def _terminable(p: Ipomset, started: set[int], terminated: set[int]) -> list[int]:
    out = []
    for x in started:
        if x in terminated or x in p.target:
            continue
        if all(y in started for y in p.events() if p.concurrent(x, y)):
            out.append(x)
    return out


def _conclist_of(p: Ipomset, active: Iterable[int]) -> tuple[tuple[int, ...], tuple[str, ...]]:
    idx = p._sorted_by_event_order(active)
    return idx, tuple(p.labels[i] for i in idx)


def sparse_decomposition(p: Ipomset) -> StepWord:
    """The unique step word for p in which nonidentity starters and
    terminators strictly alternate.

    Greedy simulation: start every event whose predecessors have all
    terminated, then terminate every started event all of whose
    concurrent partners have started.  Maximality of each phase is forced
    by alternation, which gives uniqueness.
    """
    started = set(p.source)
    terminated: set[int] = set()
    todo_start = len(p.labels) - len(p.source)
    todo_term = len(p.labels) - len(p.target)
    steps: list[Step] = []
    while todo_start or len(terminated) < todo_term:
        a = _startable(p, started, terminated)
        if a:
            started |= set(a)
            todo_start -= len(a)
            idx, labels = _conclist_of(p, started - terminated)
            steps.append(starter(labels, {idx.index(x) for x in a}))
        idx, labels = _conclist_of(p, started - terminated)
        b = _terminable(p, started, terminated)
        if b:
            steps.append(terminator(labels, {idx.index(x) for x in b}))
            terminated |= set(b)
        if not a and not b:
            raise InvalidIpomset([Problem(
                "NotInterval", tuple(sorted(set(p.events()) - terminated)),
                "no step decomposition exists; the precedence order is stuck")])
    if not steps:
        _, labels = _conclist_of(p, p.source)
        steps.append(identity_step(labels))
    return StepWord(steps)


def dense_decomposition(p: Ipomset) -> StepWord:
    """An elementary step word of length exactly 2*size(p).

    Deterministic tie-break: while any event can start, start the one
    least in event order; otherwise terminate the terminable event least
    in event order.
    """
    if p.is_identity():
        raise IdentityHasNoDenseDecomposition(
            "identities have size 0 and admit no elementary decomposition")
    started = set(p.source)
    terminated: set[int] = set()
    steps: list[Step] = []

    def least(cands: list[int]) -> int:
        idx = p._sorted_by_event_order(cands)
        return idx[0]

    while True:
        a = _startable(p, started, terminated)
        if a:
            x = least(a)
            started.add(x)
            idx, labels = _conclist_of(p, started - terminated)
            steps.append(starter(labels, {idx.index(x)}))
            continue
        b = _terminable(p, started, terminated)
        if b:
            x = least(b)
            idx, labels = _conclist_of(p, started - terminated)
            steps.append(terminator(labels, {idx.index(x)}))
            terminated.add(x)
            continue
        break
    word = StepWord(steps)
    assert len(word) == 2 * p.size(), "elementary decomposition has wrong length"
    return word


# --------------------------------------------------------------------------
# subsumption

def subsumes(p: Ipomset, q: Ipomset) -> bool:
    """True if p is subsumed by q (p is more ordered, q more concurrent).

    Searches for a bijection that preserves labels and interfaces exactly,
    reflects precedence, and preserves event order between concurrent
    events.  Backtracking with per-event pruning; exponential worst case.
    """
    n = len(p.labels)
    if n != len(q.labels):
        return False
    if sorted(p.labels) != sorted(q.labels):
        return False
    if len(p.source) != len(q.source) or len(p.target) != len(q.target):
        return False

    cand: list[list[int]] = []
    for x in p.events():
        cs = [u for u in q.events()
              if q.labels[u] == p.labels[x]
              and (u in q.source) == (x in p.source)
              and (u in q.target) == (x in p.target)]
        if not cs:
            return False
        cand.append(cs)

    assigned: dict[int, int] = {}
    used: set[int] = set()

    def ok(x: int, u: int) -> bool:
        for y, v in assigned.items():
            if (u, v) in q.precedence and (x, y) not in p.precedence:
                return False
            if (v, u) in q.precedence and (y, x) not in p.precedence:
                return False
            if p.concurrent(x, y):
                if (x, y) in p.event_order and (u, v) not in q.event_order:
                    return False
                if (y, x) in p.event_order and (v, u) not in q.event_order:
                    return False
        return True

    def search(x: int) -> bool:
        if x == n:
            return True
        for u in cand[x]:
            if u in used or not ok(x, u):
                continue
            assigned[x] = u
            used.add(u)
            if search(x + 1):
                return True
            del assigned[x]
            used.remove(u)
        return False

    return search(0)


def in_down_closure(p: Ipomset, generators: Iterable[Ipomset]) -> bool:
    """True if p is subsumed by some member of ``generators``."""
    return any(subsumes(p, q) for q in generators)


def supersumptions(p: Ipomset, k: int) -> list[Ipomset]:
    """All ipomsets of width <= k that subsume p, up to isomorphism.

    Enumerates transitive subsets of p's precedence as candidate reduced
    orders, orients each newly concurrent pair both ways, keeps the event
    order forced on pairs already concurrent in p, validates, and filters
    through ``subsumes``.  Exponential; intended for desk-scale events.
    """
    if p.width() > k:
        raise WidthExceeded(f"width {p.width()} exceeds bound {k}")
    pairs = sorted(p.precedence)
    forced = [(x, y) for (x, y) in p.event_order if p.concurrent(x, y)]
    seen: dict[tuple, Ipomset] = {}
    for keep_mask in range(1 << len(pairs)):
        kept = {pairs[i] for i in range(len(pairs)) if keep_mask >> i & 1}
        if any((a, c) not in kept
               for (a, b) in kept for (b2, c) in kept if b == b2 and a != c):
            continue
        dropped = {frozenset((a, b)) for (a, b) in set(pairs) - kept
                   if (a, b) not in kept and (b, a) not in kept}
        dropped = sorted(tuple(sorted(d)) for d in dropped)
        for bits in range(1 << len(dropped)):
            order = list(forced)
            for i, (a, b) in enumerate(dropped):
                order.append((a, b) if bits >> i & 1 == 0 else (b, a))
            try:
                q = Ipomset(p.labels, kept, order, p.source, p.target)
            except InvalidIpomset:
                continue
            if q.width() <= k and subsumes(p, q) and q.key() not in seen:
                seen[q.key()] = q
    return sorted(seen.values(), key=lambda q: q.key())


# --------------------------------------------------------------------------
# small builders

def identity_ipomset(conclist: Sequence[str]) -> Ipomset:
    return identity_step(conclist).as_ipomset()


def word_ipomset(labels: Sequence[str], source=(), target=()) -> Ipomset:
    """Totally ordered events (a word), optionally with interfaces."""
    n = len(labels)
    prec = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Ipomset(tuple(labels), prec, (), source, target)


def discrete_ipomset(labels: Sequence[str], source=(), target=()) -> Ipomset:
    """Pairwise concurrent events, event-ordered top to bottom."""
    n = len(labels)
    order = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Ipomset(tuple(labels), (), order, source, target)


EMPTY = identity_ipomset(())


# --------------------------------------------------------------------------
# enumeration (oracle helper for tests and for the complement sweeps)

def _insertions(base: tuple[str, ...], m: int, alphabet: Sequence[str]
                ) -> Iterator[tuple[tuple[str, ...], frozenset[int]]]:
    """All conclists obtained from ``base`` by inserting m fresh labelled
    events, with the positions of the new events."""
    total = len(base) + m
    for new_pos in itertools.combinations(range(total), m):
        for labs in itertools.product(alphabet, repeat=m):
            out: list[str] = []
            old = iter(base)
            new = iter(labs)
            for i in range(total):
                out.append(next(new) if i in new_pos else next(old))
            yield tuple(out), frozenset(new_pos)


def enumerate_ipomsets(alphabet: Sequence[str], max_events: int,
                       max_width: int | None = None) -> Iterator[Ipomset]:
    """Every ipomset over ``alphabet`` with at most ``max_events`` events
    (and width at most ``max_width``), each exactly once.

    Walks sparse step words; since sparse decompositions are unique this
    enumeration has no duplicates and needs no canonical-form dedup.
    """
    width = max_events if max_width is None else min(max_width, max_events)
    sources = [c for n in range(width + 1)
               for c in itertools.product(alphabet, repeat=n)]

    def walk(conclist: tuple[str, ...], steps: tuple[Step, ...],
             used: int, last: str) -> Iterator[tuple[Step, ...]]:
        yield steps
        if last != "terminator" and conclist:
            for rm in range(1, len(conclist) + 1):
                for marked in itertools.combinations(range(len(conclist)), rm):
                    st = terminator(conclist, marked)
                    yield from walk(st.target_conclist(), steps + (st,),
                                    used, "terminator")
        if last != "starter":
            room = min(max_events - used, width - len(conclist))
            for add in range(1, room + 1):
                for new_cl, pos in _insertions(conclist, add, alphabet):
                    st = starter(new_cl, pos)
                    yield from walk(new_cl, steps + (st,), used + add, "starter")

    for src in sources:
        for steps in walk(src, (), len(src), ""):
            if steps:
                yield compose(StepWord(steps))
            else:
                yield identity_ipomset(src)
