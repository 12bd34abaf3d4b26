"""Higher-dimensional automata: precubical cell complexes with start and
accept cells, paths through them, and the path-based language machinery.

A cell of dimension d carries a conclist of d event labels and two face
maps per coordinate: ``lower[i]`` is the cell where event i has not yet
started, ``upper[i]`` the cell where it has already terminated.  Face
maps satisfy the precubical identities.  Paths move up (start events) and
down (terminate events); the observable content of a path is an ipomset.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .ipomset import (EMPTY, InterfaceMismatch, Ipomset, Problem, Step,
                      StepWord, compose, glue, identity_ipomset,
                      identity_step, sparse_decomposition, starter,
                      terminator)


class InvalidHDA(ValueError):
    def __init__(self, problems: Iterable[Problem]):
        self.problems = tuple(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


class PositionOutOfRange(ValueError):
    pass


class IllegalMove(ValueError):
    """A path move whose face condition fails; ``index`` is the move number."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"move {index}: {message}")


class NotAccepted(ValueError):
    pass


class DecompositionTooShort(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    """One cell: its id, its conclist, and its lower and upper face ids."""
    id: str
    events: tuple[str, ...]
    lower: tuple[str, ...]
    upper: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.events)


class HDA:
    """A finite higher-dimensional automaton.

    ``cells`` maps ids to Cell records; ``start`` and ``accept`` are cell
    id sets.  Construction validates the precubical structure and raises
    InvalidHDA listing every violation.  Treat instances as immutable.
    """

    __slots__ = ("alphabet", "cells", "start", "accept",
                 "_by_conclist", "_step_graph")

    def __init__(self, cells: Iterable[Cell], start: Iterable[str],
                 accept: Iterable[str], alphabet: Iterable[str] = ()):
        cell_map: dict[str, Cell] = {}
        problems: list[Problem] = []
        for c in cells:
            if c.id in cell_map:
                problems.append(Problem("DuplicateCell", (c.id,),
                                        f"cell id {c.id!r} appears twice"))
            cell_map[c.id] = c
        self.cells = cell_map
        self.start = frozenset(start)
        self.accept = frozenset(accept)
        self.alphabet = frozenset(alphabet) | {
            l for c in cell_map.values() for l in c.events}
        problems += self._validate()
        if problems:
            raise InvalidHDA(problems)
        self._by_conclist: dict[tuple[str, ...], tuple[str, ...]] | None = None
        self._step_graph = None

    # -- validation ---------------------------------------------------------

    def _validate(self) -> list[Problem]:
        out: list[Problem] = []
        for name, ids in (("start", self.start), ("accept", self.accept)):
            for i in sorted(ids - set(self.cells)):
                out.append(Problem("DanglingReference", (i,),
                                   f"{name} cell {i!r} does not exist"))
        for c in self.cells.values():
            if len(c.lower) != c.dim or len(c.upper) != c.dim:
                out.append(Problem(
                    "FaceArityMismatch", (c.id,),
                    f"cell {c.id!r} has dimension {c.dim} but "
                    f"{len(c.lower)} lower and {len(c.upper)} upper faces"))
                continue
            broken = False
            for fid in c.lower + c.upper:
                if fid not in self.cells:
                    out.append(Problem("DanglingReference", (c.id, fid),
                                       f"face {fid!r} of cell {c.id!r} "
                                       "does not exist"))
                    broken = True
            if broken:
                continue
            expect = [c.events[:i] + c.events[i + 1:] for i in range(c.dim)]
            for side, faces in (("lower", c.lower), ("upper", c.upper)):
                for i, fid in enumerate(faces):
                    if self.cells[fid].events != expect[i]:
                        out.append(Problem(
                            "FaceLabelMismatch", (c.id, fid),
                            f"{side} face {i} of {c.id!r} should have events "
                            f"{expect[i]}, but {fid!r} has "
                            f"{self.cells[fid].events}"))
        if out:
            return out
        for c in self.cells.values():
            for i, j in itertools.combinations(range(c.dim), 2):
                for t1, t2 in itertools.product((0, 1), repeat=2):
                    a = self._elem(self._elem(c.id, t2, j), t1, i)
                    b = self._elem(self._elem(c.id, t1, i), t2, j - 1)
                    if a != b:
                        out.append(Problem(
                            "PrecubicalIdentityViolation", (c.id, i, j),
                            f"faces of {c.id!r} at coordinates {i},{j} "
                            f"(sides {t1},{t2}) disagree: {a!r} vs {b!r}"))
        return out

    def _elem(self, cell_id: str, side: int, i: int) -> str:
        c = self.cells[cell_id]
        return (c.lower if side == 0 else c.upper)[i]

    # -- helpers -------------------------------------------------------------

    def dim(self) -> int:
        return max((c.dim for c in self.cells.values()), default=0)

    def by_conclist(self, conclist: tuple[str, ...]) -> tuple[str, ...]:
        if self._by_conclist is None:
            index: dict[tuple[str, ...], list[str]] = {}
            for cid in sorted(self.cells):
                index.setdefault(self.cells[cid].events, []).append(cid)
            self._by_conclist = {k: tuple(v) for k, v in index.items()}
        return self._by_conclist.get(conclist, ())

    def up_steps(self) -> dict[str, list[tuple[frozenset[int], str]]]:
        """For each cell id x, the list of (positions A, cell y) with
        lower face of y at A equal to x.  Nonempty A only."""
        if self._step_graph is None:
            graph: dict[str, list[tuple[frozenset[int], str]]] = {
                cid: [] for cid in self.cells}
            for y in self.cells.values():
                for r in range(1, y.dim + 1):
                    for a in itertools.combinations(range(y.dim), r):
                        x = face(self, y.id, 0, a)
                        graph[x].append((frozenset(a), y.id))
            self._step_graph = graph
        return self._step_graph


def face(hda: HDA, cell_id: str, side: int, positions: Iterable[int]) -> str:
    """Composite face map: remove the events at ``positions`` on the given
    side (0 = not yet started, 1 = already terminated)."""
    if side not in (0, 1):
        raise ValueError(f"face side must be 0 or 1, got {side}")
    c = hda.cells[cell_id]
    pos = sorted(set(positions), reverse=True)
    if pos and (pos[0] >= c.dim or pos[-1] < 0):
        raise PositionOutOfRange(
            f"positions {sorted(set(positions))} out of range for "
            f"cell {cell_id!r} of dimension {c.dim}")
    cur = cell_id
    for p in pos:
        cur = hda._elem(cur, side, p)
    return cur


def skeleton(hda: HDA, k: int) -> HDA:
    """The sub-HDA of cells of dimension at most k."""
    keep = {cid: c for cid, c in hda.cells.items() if c.dim <= k}
    return HDA(keep.values(), hda.start & set(keep), hda.accept & set(keep),
               hda.alphabet)


# --------------------------------------------------------------------------
# JSON serialisation

def hda_to_dict(hda: HDA) -> dict:
    return {
        "alphabet": sorted(hda.alphabet),
        "cells": [{"id": c.id, "events": list(c.events),
                   "d0": list(c.lower), "d1": list(c.upper)}
                  for _, c in sorted(hda.cells.items())],
        "start": sorted(hda.start),
        "accept": sorted(hda.accept),
    }


def hda_from_dict(data: dict) -> HDA:
    try:
        cells = [Cell(str(c["id"]), tuple(str(e) for e in c["events"]),
                      tuple(str(f) for f in c["d0"]),
                      tuple(str(f) for f in c["d1"]))
                 for c in data["cells"]]
        start = [str(s) for s in data["start"]]
        accept = [str(s) for s in data["accept"]]
        alphabet = [str(a) for a in data.get("alphabet", [])]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed automaton data: {exc}") from None
    return HDA(cells, start, accept, alphabet)


def dump_hda(hda: HDA, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(hda_to_dict(hda), fp, indent=2)
        fp.write("\n")


def load_hda(path: str) -> HDA:
    with open(path, encoding="utf-8") as fp:
        return hda_from_dict(json.load(fp))


# --------------------------------------------------------------------------
# paths

@dataclass(frozen=True)
class Move:
    """One path move.  Up moves start events, down moves terminate them.

    ``positions`` are coordinates in the target cell for up moves and in
    the source cell for down moves.  The target id makes runs through
    nondeterministic automata unambiguous.
    """
    direction: str
    positions: frozenset[int]
    target: str

    def __post_init__(self):
        if self.direction not in ("up", "down"):
            raise ValueError(f"unknown move direction: {self.direction}")


@dataclass(frozen=True)
class Path:
    origin: str
    moves: tuple[Move, ...] = ()


def validate_path(hda: HDA, path: Path) -> str:
    """Check every move; return the id of the end cell."""
    if path.origin not in hda.cells:
        raise IllegalMove(0, f"origin {path.origin!r} does not exist")
    cur = path.origin
    for i, m in enumerate(path.moves):
        if m.target not in hda.cells:
            raise IllegalMove(i, f"target {m.target!r} does not exist")
        try:
            if m.direction == "up":
                got = face(hda, m.target, 0, m.positions)
                if got != cur:
                    raise IllegalMove(
                        i, f"up move to {m.target!r} starts from {got!r}, "
                           f"not {cur!r}")
            else:
                got = face(hda, cur, 1, m.positions)
                if got != m.target:
                    raise IllegalMove(
                        i, f"down move from {cur!r} lands at {got!r}, "
                           f"not {m.target!r}")
        except PositionOutOfRange as exc:
            raise IllegalMove(i, str(exc)) from None
        cur = m.target
    return cur


def ev(hda: HDA, path: Path) -> Ipomset:
    """The ipomset a path observes."""
    validate_path(hda, path)
    cur = path.origin
    steps: list[Step] = [identity_step(hda.cells[path.origin].events)]
    for m in path.moves:
        if m.positions:
            if m.direction == "up":
                steps.append(starter(hda.cells[m.target].events, m.positions))
            else:
                steps.append(terminator(hda.cells[cur].events, m.positions))
        cur = m.target
    steps.append(identity_step(hda.cells[cur].events))
    return compose(StepWord(steps))


def _embed(removed: frozenset[int], n: int) -> list[int]:
    """Positions of the surviving coordinates of an n-cell after removing
    ``removed``: the image of coordinate i of the face is _embed(...)[i]."""
    return [p for p in range(n) if p not in removed]


def sparsify(hda: HDA, path: Path) -> Path:
    """Merge adjacent same-direction moves and drop empty ones; the result
    observes the same ipomset and alternates nonempty up and down moves."""
    validate_path(hda, path)
    cur = path.origin
    out: list[Move] = []
    prev = [cur]  # source cell of each accumulated move

    for m in path.moves:
        if not m.positions:
            cur = m.target
            continue
        if out and out[-1].direction == m.direction == "up":
            emb = _embed(m.positions, hda.cells[m.target].dim)
            merged = m.positions | {emb[p] for p in out[-1].positions}
            out[-1] = Move("up", merged, m.target)
        elif out and out[-1].direction == m.direction == "down":
            src = prev[-1]
            emb = _embed(out[-1].positions, hda.cells[src].dim)
            merged = out[-1].positions | {emb[p] for p in m.positions}
            out[-1] = Move("down", merged, m.target)
        else:
            prev.append(cur)
            out.append(m)
        cur = m.target
    return Path(path.origin, tuple(out))


def path_accepts(hda: HDA, path: Path) -> bool:
    return path.origin in hda.start and validate_path(hda, path) in hda.accept


# --------------------------------------------------------------------------
# reachability and determinism

def essential_cells(hda: HDA) -> frozenset[str]:
    """Cells on some path from a start cell to an accept cell."""
    fwd: dict[str, set[str]] = {cid: set() for cid in hda.cells}
    bwd: dict[str, set[str]] = {cid: set() for cid in hda.cells}
    for c in hda.cells.values():
        for i in range(c.dim):
            fwd[c.lower[i]].add(c.id)   # up move
            fwd[c.id].add(c.upper[i])   # down move
            bwd[c.id].add(c.lower[i])
            bwd[c.upper[i]].add(c.id)

    def closure(seed: Iterable[str], succ: dict[str, set[str]]) -> set[str]:
        seen = set(seed)
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    return frozenset(closure(hda.start, fwd) & closure(hda.accept, bwd))


def is_deterministic_hda(hda: HDA) -> tuple[bool, str | None]:
    """Structural determinism: at most one essential start cell per
    conclist, and no two essential cells reachable from the same cell by
    starting the same events at the same coordinates."""
    ess = essential_cells(hda)
    starts: dict[tuple[str, ...], str] = {}
    for cid in sorted(hda.start & ess):
        key = hda.cells[cid].events
        if key in starts:
            return False, (f"start cells {starts[key]!r} and {cid!r} share "
                           f"the conclist {key}")
        starts[key] = cid
    seen: dict[tuple[str, tuple[str, ...], frozenset[int]], str] = {}
    for y in sorted(ess):
        c = hda.cells[y]
        for r in range(1, c.dim + 1):
            for a in itertools.combinations(range(c.dim), r):
                key = (face(hda, y, 0, a), c.events, frozenset(a))
                if key in seen and seen[key] != y:
                    return False, (
                        f"cells {seen[key]!r} and {y!r} both start events at "
                        f"coordinates {sorted(a)} from cell {key[0]!r}")
                seen[key] = y
    return True, None


# --------------------------------------------------------------------------
# languages

def count_sparse_accepting_paths(hda: HDA, p: Ipomset) -> int:
    """Number of sparse accepting paths observing exactly p."""
    word = sparse_decomposition(p)
    if p.is_identity():
        u = p.source_conclist()
        return sum(1 for cid in hda.start & hda.accept
                   if hda.cells[cid].events == u)
    cur: dict[str, int] = {}
    src = word.steps[0].source_conclist()
    for cid in hda.start:
        if hda.cells[cid].events == src:
            cur[cid] = 1
    for step in word.steps:
        nxt: dict[str, int] = {}
        if step.kind == "starter":
            for y in hda.by_conclist(step.conclist):
                x = face(hda, y, 0, step.marked)
                if x in cur:
                    nxt[y] = nxt.get(y, 0) + cur[x]
        else:
            for x, n in cur.items():
                y = face(hda, x, 1, step.marked)
                nxt[y] = nxt.get(y, 0) + n
        cur = nxt
        if not cur:
            return 0
    return sum(n for cid, n in cur.items() if cid in hda.accept)


def accepts(hda: HDA, p: Ipomset) -> bool:
    """Path-based membership; the automaton route in ``decide`` agrees."""
    return count_sparse_accepting_paths(hda, p) > 0


def enumerate_language(hda: HDA, max_steps: int) -> set[tuple]:
    """All sparse step words of accepted ipomsets with at most
    ``max_steps`` steps, as tuples of step keys.

    Since sparse decompositions are unique, these tuples are canonical
    forms; two automata agree on all ipomsets up to that sparse length iff
    the returned sets are equal.
    """
    words: set[tuple] = set()
    if max_steps >= 1:
        for cid in hda.start & hda.accept:
            words.add((identity_step(hda.cells[cid].events).key(),))
    up = hda.up_steps()
    seen: set[tuple[str, tuple]] = set()
    queue: deque[tuple[str, str, tuple]] = deque()
    for cid in sorted(hda.start):
        queue.append((cid, "", ()))
    while queue:
        cell, last, word = queue.popleft()
        if len(word) >= max_steps:
            continue
        if last != "starter":
            for a, y in up[cell]:
                st = starter(hda.cells[y].events, a)
                w2 = word + (st.key(),)
                if (y, w2) in seen:
                    continue
                seen.add((y, w2))
                if y in hda.accept:
                    words.add(w2)
                queue.append((y, "starter", w2))
        if last != "terminator":
            c = hda.cells[cell]
            for r in range(1, c.dim + 1):
                for b in itertools.combinations(range(c.dim), r):
                    st = terminator(c.events, b)
                    y = face(hda, cell, 1, b)
                    w2 = word + (st.key(),)
                    if (y, w2) in seen:
                        continue
                    seen.add((y, w2))
                    if y in hda.accept:
                        words.add(w2)
                    queue.append((y, "terminator", w2))
    return words


def language_ipomsets(hda: HDA, max_steps: int) -> set[Ipomset]:
    """The accepted ipomsets with sparse length at most ``max_steps``."""
    out = set()
    for word in enumerate_language(hda, max_steps):
        steps = [Step(kind, cl, frozenset(marked)) for kind, cl, marked in word]
        out.add(compose(StepWord(steps)))
    return out


# --------------------------------------------------------------------------
# products

def product(a: HDA, b: HDA) -> HDA:
    """The synchronous product; accepts exactly the ipomsets both accept."""
    pair_id = {}
    cells = []
    for xa in sorted(a.cells):
        for xb in sorted(b.cells):
            if a.cells[xa].events == b.cells[xb].events:
                pair_id[(xa, xb)] = f"({xa},{xb})"
    for (xa, xb), cid in pair_id.items():
        ca, cb = a.cells[xa], b.cells[xb]
        lower = tuple(pair_id[(ca.lower[i], cb.lower[i])] for i in range(ca.dim))
        upper = tuple(pair_id[(ca.upper[i], cb.upper[i])] for i in range(ca.dim))
        cells.append(Cell(cid, ca.events, lower, upper))
    start = [cid for (xa, xb), cid in pair_id.items()
             if xa in a.start and xb in b.start]
    accept = [cid for (xa, xb), cid in pair_id.items()
              if xa in a.accept and xb in b.accept]
    return HDA(cells, start, accept, a.alphabet | b.alphabet)


# --------------------------------------------------------------------------
# pumping

@dataclass(frozen=True)
class PumpResult:
    """A factorisation witness: the loop spans segments i..j-1, and
    ``members`` lists the ipomsets with the loop repeated 1..r times."""
    i: int
    j: int
    members: tuple[Ipomset, ...]


def _segment_relation(hda: HDA, q: Ipomset) -> dict[str, set[str]]:
    """For each cell x, the cells reachable by a sparse path observing q."""
    word = sparse_decomposition(q)
    rel: dict[str, set[str]] = {}
    if q.is_identity():
        for cid in hda.by_conclist(q.source_conclist()):
            rel[cid] = {cid}
        return rel
    src = word.steps[0].source_conclist()
    for x0 in hda.by_conclist(src):
        cur = {x0}
        for step in word.steps:
            nxt: set[str] = set()
            if step.kind == "starter":
                for y in hda.by_conclist(step.conclist):
                    if face(hda, y, 0, step.marked) in cur:
                        nxt.add(y)
            else:
                nxt = {face(hda, x, 1, step.marked) for x in cur}
            cur = nxt
            if not cur:
                break
        if cur:
            rel[x0] = cur
    return rel


def pump(hda: HDA, qs: Sequence[Ipomset], m: int, r_max: int) -> PumpResult:
    """Find a pumpable loop in a long accepted decomposition.

    ``qs`` glues to an accepted ipomset with more segments than the
    automaton has cells; some window of k = |cells| + 1 consecutive cut
    points after position m then repeats a cell, and the segments between
    the repeat can be iterated.  Returns the cut pair and the pumped
    ipomsets for 1..r_max repetitions, each re-checked for membership.
    """
    n = len(qs)
    k = len(hda.cells) + 1
    if n <= len(hda.cells) or m < 0 or m > n - k:
        raise DecompositionTooShort(
            f"need more than {len(hda.cells)} segments and "
            f"0 <= m <= n - {k}; got n={n}, m={m}")
    whole = qs[0]
    for q in qs[1:]:
        whole = glue(whole, q)
    if not accepts(hda, whole):
        raise NotAccepted("the glued decomposition is not accepted")

    rels = [_segment_relation(hda, q) for q in qs]
    fwd: list[set[str]] = [set(cid for cid in hda.start
                               if hda.cells[cid].events
                               == whole.source_conclist())]
    for rel in rels:
        cur = fwd[-1]
        fwd.append({y for x in cur if x in rel for y in rel[x]})
    bwd: list[set[str]] = [set()] * (n + 1)
    bwd[n] = set(hda.accept)
    for i in range(n - 1, -1, -1):
        bwd[i] = {x for x, ys in rels[i].items() if ys & bwd[i + 1]}

    for i in range(m, m + k + 1):
        loop: dict[str, set[str]] = {c: {c} for c in fwd[i] if c in bwd[i]}
        for j in range(i + 1, m + k + 1):
            rel = rels[j - 1]
            loop = {c: {y for x in ys if x in rel for y in rel[x]}
                    for c, ys in loop.items()}
            hit = sorted(c for c, ys in loop.items() if c in ys and c in bwd[j])
            if not hit:
                continue
            members = []
            for t in range(1, r_max + 1):
                pumped = list(qs[:i]) + list(qs[i:j]) * t + list(qs[j:])
                whole_t = pumped[0]
                for q in pumped[1:]:
                    whole_t = glue(whole_t, q)
                if not accepts(hda, whole_t):
                    raise NotAccepted(
                        f"pumping {t} times broke membership; "
                        "this indicates an invariant violation")
                members.append(whole_t)
            return PumpResult(i, j, tuple(members))
    raise NotAccepted("no pumpable cut pair found in the window; "
                      "this indicates an invariant violation")
