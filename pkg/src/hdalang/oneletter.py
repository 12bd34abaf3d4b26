"""One-letter HDAs and their ultimately periodic descriptions.

A deterministic, accessible HDA over a single letter is a lasso of
vertices with a tower of higher cells over each: it is captured exactly
by an ultimately periodic function giving the tower height at each
vertex, plus the accepting dimensions there.  ``build`` realises such a
description as an HDA, ``analyze`` recovers the minimal description from
an HDA.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .hda import HDA, Cell, face, is_deterministic_hda
from .ipomset import ParseError, Problem


class InvalidUPFunction(ValueError):
    def __init__(self, problems: Iterable[Problem]):
        self.problems = tuple(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


class NotUPRepresentable(ValueError):
    """The HDA has no ultimately periodic description; ``code`` is one of
    NotOneLetter, MultipleStartCells, NotAccessible, NotDeterministic."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


@dataclass(frozen=True)
class UPFunction:
    """Tower heights f(0..s+r-1) and accepting dimension sets tau, read as
    an eventually periodic function with preperiod s and period r."""
    r: int
    s: int
    f: tuple[int, ...]
    tau: tuple[frozenset[int], ...]

    def __post_init__(self):
        problems = []
        if self.r < 1 or self.s < 0:
            problems.append(Problem("ShapeMismatch", (self.r, self.s),
                                    f"need r >= 1 and s >= 0, got r={self.r} "
                                    f"s={self.s}"))
        elif len(self.f) != self.s + self.r or len(self.tau) != self.s + self.r:
            problems.append(Problem(
                "ShapeMismatch", (len(self.f), len(self.tau)),
                f"f and tau need s + r = {self.s + self.r} entries, got "
                f"{len(self.f)} and {len(self.tau)}"))
        else:
            for n, v in enumerate(self.f):
                if v < 1:
                    problems.append(Problem(
                        "ZeroValue", (n,), f"f({n}) = {v} is below 1"))
            for n in range(self.s + self.r):
                nxt = self.value(n + 1)
                if nxt < self.f[n] - 1:
                    problems.append(Problem(
                        "DropTooSteep", (n,),
                        f"f drops from {self.f[n]} at {n} to {nxt} at "
                        f"{n + 1}; at most one event can terminate per move"))
            for n, ts in enumerate(self.tau):
                bad = sorted(t for t in ts if t < 0 or t > self.f[n])
                if bad:
                    problems.append(Problem(
                        "TauOutOfRange", (n,),
                        f"tau({n}) contains {bad}, outside 0..{self.f[n]}"))
        if problems:
            raise InvalidUPFunction(problems)

    def wrap(self, n: int) -> int:
        return n if n < self.s + self.r else self.s + (n - self.s) % self.r

    def value(self, n: int) -> int:
        return self.f[self.wrap(n)]


def print_up(up: UPFunction) -> str:
    taus = ";".join("{" + ",".join(str(t) for t in sorted(ts)) + "}"
                    for ts in up.tau)
    return (f"r={up.r} s={up.s} f={','.join(str(v) for v in up.f)} "
            f"tau={taus}")


def parse_up(text: str) -> UPFunction:
    """Parse the ``r=.. s=.. f=v,v,.. tau={..};{..};..`` format."""
    fields: dict[str, tuple[str, int]] = {}
    pos = 0
    for token in text.split():
        at = text.index(token, pos)
        pos = at + len(token)
        if "=" not in token:
            raise ParseError(at, f"expected key=value, got {token!r}")
        key, _, value = token.partition("=")
        if key not in ("r", "s", "f", "tau"):
            raise ParseError(at, f"unknown key {key!r}")
        if key in fields:
            raise ParseError(at, f"duplicate key {key!r}")
        fields[key] = (value, at)
    for key in ("r", "s", "f", "tau"):
        if key not in fields:
            raise ParseError(len(text), f"missing key {key!r}")

    def number(key: str) -> int:
        value, at = fields[key]
        if not value.isdigit():
            raise ParseError(at, f"{key} must be a number, got {value!r}")
        return int(value)

    r, s = number("r"), number("s")
    f_text, f_at = fields["f"]
    f = []
    for part in f_text.split(","):
        if not part.isdigit():
            raise ParseError(f_at, f"bad f entry {part!r}")
        f.append(int(part))
    tau_text, tau_at = fields["tau"]
    tau = []
    for part in tau_text.split(";"):
        if not (part.startswith("{") and part.endswith("}")):
            raise ParseError(tau_at, f"bad tau entry {part!r}")
        inner = part[1:-1]
        if inner:
            entries = inner.split(",")
            if not all(e.isdigit() for e in entries):
                raise ParseError(tau_at, f"bad tau entry {part!r}")
            tau.append(frozenset(int(e) for e in entries))
        else:
            tau.append(frozenset())
    return UPFunction(r, s, tuple(f), tuple(tau))


# --------------------------------------------------------------------------
# building

def build(up: UPFunction, letter: str = "a") -> HDA:
    """The HDA of an ultimately periodic description: vertex n carries
    cells of every dimension up to f(n); terminating any events advances
    to vertex n+1 (wrapping into the period)."""
    total = up.s + up.r

    def cid(k: int, n: int) -> str:
        return f"x{k}_{n}"

    cells = []
    for n in range(total):
        nxt = up.wrap(n + 1)
        for k in range(up.f[n] + 1):
            lower = tuple(cid(k - 1, n) for _ in range(k))
            upper = tuple(cid(k - 1, nxt) for _ in range(k))
            cells.append(Cell(cid(k, n), (letter,) * k, lower, upper))
    accept = [cid(k, n) for n in range(total) for k in sorted(up.tau[n])]
    return HDA(cells, [cid(0, 0)], accept, [letter])


# --------------------------------------------------------------------------
# analysis

def _completed(hda: HDA, letter: str) -> HDA:
    """Give every outgoing-edge-less vertex an edge to a fresh sink vertex
    carrying a self-loop; the language does not change."""
    out_edges: dict[str, list[str]] = {cid: [] for cid in hda.cells}
    for c in hda.cells.values():
        if c.dim == 1:
            out_edges[c.lower[0]].append(c.id)
    stuck = [cid for cid, c in sorted(hda.cells.items())
             if c.dim == 0 and not out_edges[cid]]
    if not stuck:
        return hda
    sink = "sink"
    while any(cid == sink or cid.startswith(sink + "_") for cid in hda.cells):
        sink += "_"
    cells = list(hda.cells.values())
    cells.append(Cell(sink, (), (), ()))
    cells.append(Cell(sink + "_loop", (letter,), (sink,), (sink,)))
    for i, cid in enumerate(stuck):
        cells.append(Cell(f"{sink}_in{i}", (letter,), (cid,), (sink,)))
    return HDA(cells, hda.start, hda.accept, hda.alphabet)


def _corner(hda: HDA, cell_id: str) -> str:
    return face(hda, cell_id, 0, range(hda.cells[cell_id].dim))


def analyze(hda: HDA) -> UPFunction:
    """The minimal ultimately periodic description of a one-letter HDA.

    Raises NotUPRepresentable when the automaton is not over exactly one
    letter, does not start in a single vertex, has inaccessible cells, or
    is not deterministic.
    """
    if len(hda.alphabet) != 1:
        raise NotUPRepresentable(
            "NotOneLetter",
            f"alphabet {sorted(hda.alphabet)} does not have exactly one letter")
    letter = next(iter(hda.alphabet))
    if len(hda.start) != 1:
        raise NotUPRepresentable(
            "MultipleStartCells",
            f"need exactly one start cell, got {sorted(hda.start)}")
    v0 = next(iter(hda.start))
    if hda.cells[v0].dim != 0:
        raise NotUPRepresentable(
            "MultipleStartCells",
            f"start cell {v0!r} has dimension {hda.cells[v0].dim}, not 0")

    fwd: dict[str, set[str]] = {cid: set() for cid in hda.cells}
    for c in hda.cells.values():
        for i in range(c.dim):
            fwd[c.lower[i]].add(c.id)
            fwd[c.id].add(c.upper[i])
    seen = {v0}
    queue = deque([v0])
    while queue:
        cur = queue.popleft()
        for nxt in fwd[cur]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    missing = sorted(set(hda.cells) - seen)
    if missing:
        raise NotUPRepresentable(
            "NotAccessible", f"cells {missing} are unreachable from {v0!r}")

    hda = _completed(hda, letter)
    ok, why = is_deterministic_hda(hda)
    if not ok:
        raise NotUPRepresentable("NotDeterministic", why)

    out_edges: dict[str, list[str]] = {cid: [] for cid in hda.cells}
    for c in hda.cells.values():
        if c.dim == 1:
            out_edges[c.lower[0]].append(c.id)

    walk = [v0]
    index = {v0: 0}
    while True:
        edges = sorted(out_edges[walk[-1]])
        if len(edges) > 1:
            raise NotUPRepresentable(
                "NotDeterministic",
                f"vertex {walk[-1]!r} has outgoing edges {edges}")
        nxt = hda.cells[edges[0]].upper[0]
        if nxt in index:
            s0 = index[nxt]
            r0 = len(walk) - s0
            break
        index[nxt] = len(walk)
        walk.append(nxt)

    f0 = [0] * len(walk)
    tau0 = [set() for _ in walk]
    for cid, c in hda.cells.items():
        corner = _corner(hda, cid)
        if corner not in index:
            raise NotUPRepresentable(
                "NotAccessible",
                f"cell {cid!r} sits over {corner!r}, which is off the "
                "vertex walk")
        n = index[corner]
        f0[n] = max(f0[n], c.dim)
        if cid in hda.accept:
            tau0[n].add(c.dim)

    def entry(n: int) -> tuple[int, frozenset[int]]:
        m = n if n < s0 + r0 else s0 + (n - s0) % r0
        return f0[m], frozenset(tau0[m])

    r = next(rr for rr in range(1, r0 + 1)
             if r0 % rr == 0
             and all(entry(s0 + i) == entry(s0 + i % rr) for i in range(r0)))
    s = s0
    while s > 0 and entry(s - 1) == entry(s - 1 + r):
        s -= 1
    return UPFunction(r, s, tuple(entry(n)[0] for n in range(s + r)),
                      tuple(entry(n)[1] for n in range(s + r)))
