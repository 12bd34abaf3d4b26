"""ST-automata: finite automata whose letters are starters, terminators,
and identities over conclists.

States carry conclists; a transition's step must lead from the conclist
of its source state to that of its target.  Identity self-loops are
implicit on every state and never stored.  The word language consists of
coherent words: alternations ``id s id s ... id`` where neighbouring
letters chain up.  An ipomset belongs to the recognised language when the
coherent spelling of its sparse decomposition is accepted.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Iterator, Sequence

from .ipomset import (Ipomset, Problem, Step, StepWord, compose,
                      identity_ipomset, identity_step, sparse_decomposition,
                      starter, terminator, _insertions)
from .hda import HDA, face


class InvalidSTAutomaton(ValueError):
    def __init__(self, problems: Iterable[Problem]):
        self.problems = tuple(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


class STAutomaton:
    """A finite automaton over step letters.

    ``states`` maps state ids to conclists, ``transitions`` is a set of
    (source id, step, target id) triples, ``width_bound`` records the
    largest conclist the automaton is meant to range over (None leaves it
    unspecified).  Instances are validated on construction and should be
    treated as immutable.
    """

    __slots__ = ("alphabet", "states", "transitions", "initial", "final",
                 "width_bound", "_from")

    def __init__(self, alphabet: Iterable[str],
                 states: dict[str, Sequence[str]],
                 transitions: Iterable[tuple[str, Step, str]],
                 initial: Iterable[str], final: Iterable[str],
                 width_bound: int | None = None):
        self.alphabet = frozenset(alphabet)
        self.states = {sid: tuple(cl) for sid, cl in states.items()}
        self.transitions = frozenset(transitions)
        self.initial = frozenset(initial)
        self.final = frozenset(final)
        self.width_bound = width_bound
        problems = self._validate()
        if problems:
            raise InvalidSTAutomaton(problems)
        self._from: dict[str, tuple[tuple[Step, str], ...]] | None = None

    def _validate(self) -> list[Problem]:
        out = []
        for name, ids in (("initial", self.initial), ("final", self.final)):
            for sid in sorted(ids - set(self.states)):
                out.append(Problem("DanglingReference", (sid,),
                                   f"{name} state {sid!r} does not exist"))
        for lab in sorted({l for cl in self.states.values() for l in cl}
                          - self.alphabet):
            out.append(Problem("DanglingReference", (lab,),
                               f"state label {lab!r} is not in the alphabet"))
        for q, s, r in sorted(self.transitions,
                              key=lambda t: (t[0], t[2], t[1].key())):
            if q not in self.states or r not in self.states:
                out.append(Problem("DanglingReference", (q, r),
                                   f"transition endpoint missing: {q!r}->{r!r}"))
                continue
            if s.kind == "identity":
                out.append(Problem("IdentityTransition", (q, r),
                                   "identity steps are implicit and may not "
                                   "be stored as transitions"))
                continue
            if s.source_conclist() != self.states[q]:
                out.append(Problem(
                    "StateLabelMismatch", (q,),
                    f"step out of {q!r} starts from {s.source_conclist()}, "
                    f"but the state is labelled {self.states[q]}"))
            if s.target_conclist() != self.states[r]:
                out.append(Problem(
                    "StateLabelMismatch", (r,),
                    f"step into {r!r} ends in {s.target_conclist()}, "
                    f"but the state is labelled {self.states[r]}"))
        return out

    def transitions_from(self, q: str) -> tuple[tuple[Step, str], ...]:
        if self._from is None:
            index: dict[str, list[tuple[Step, str]]] = {
                sid: [] for sid in self.states}
            for a, s, b in sorted(self.transitions,
                                  key=lambda t: (t[0], t[1].key(), t[2])):
                index[a].append((s, b))
            self._from = {k: tuple(v) for k, v in index.items()}
        return self._from[q]


def st_of_hda(hda: HDA) -> STAutomaton:
    """The ST-automaton with one state per cell: starters climb to a cell
    from its lower faces, terminators drop to its upper faces."""
    states = {cid: c.events for cid, c in hda.cells.items()}
    transitions = []
    for y in hda.cells.values():
        for r in range(1, y.dim + 1):
            for a in itertools.combinations(range(y.dim), r):
                transitions.append(
                    (face(hda, y.id, 0, a), starter(y.events, a), y.id))
                transitions.append(
                    (y.id, terminator(y.events, a), face(hda, y.id, 1, a)))
    return STAutomaton(hda.alphabet, states, transitions,
                       hda.start, hda.accept, width_bound=hda.dim())


def coherent_word(p: Ipomset) -> tuple[Step, ...]:
    """The sparse decomposition of p with identities interleaved:
    ``id s1 id s2 ... id``; just one identity letter for identities."""
    if p.is_identity():
        return (identity_step(p.source_conclist()),)
    out: list[Step] = [identity_step(p.source_conclist())]
    for s in sparse_decomposition(p).steps:
        out.append(s)
        out.append(identity_step(s.target_conclist()))
    return tuple(out)


def word_ipomset_of(word: Sequence[Step]) -> Ipomset:
    """Glue a coherent word back into an ipomset."""
    return compose(StepWord(list(word)))


# --------------------------------------------------------------------------
# runs: the induced word NFA has an in-node and an out-node per state;
# the identity of a state's conclist moves in -> out, transitions move
# out -> in of their target.

def _initial_nodes(a: STAutomaton) -> frozenset[tuple[str, str]]:
    return frozenset(("in", q) for q in a.initial)


def _final_nodes(a: STAutomaton) -> frozenset[tuple[str, str]]:
    return frozenset(("out", q) for q in a.final)


def _nfa_step(a: STAutomaton, nodes: Iterable[tuple[str, str]],
              letter: Step) -> frozenset[tuple[str, str]]:
    out = set()
    for side, q in nodes:
        if side == "in":
            if letter.kind == "identity" and letter.conclist == a.states[q]:
                out.add(("out", q))
        else:
            for s, r in a.transitions_from(q):
                if s == letter:
                    out.add(("in", r))
    return frozenset(out)


def _letters_from(a: STAutomaton, node: tuple[str, str]) -> Iterator[Step]:
    side, q = node
    if side == "in":
        yield identity_step(a.states[q])
    else:
        seen = set()
        for s, _ in a.transitions_from(q):
            if s.key() not in seen:
                seen.add(s.key())
                yield s


def accepts_word(a: STAutomaton, word: Sequence[Step]) -> bool:
    nodes = _initial_nodes(a)
    for letter in word:
        nodes = _nfa_step(a, nodes, letter)
        if not nodes:
            return False
    return bool(nodes & _final_nodes(a))


def member(a: STAutomaton, p: Ipomset) -> bool:
    """Is p in the recognised ipomset language?"""
    return accepts_word(a, coherent_word(p))


def enumerate_wang(a: STAutomaton, max_letters: int) -> set[tuple[Step, ...]]:
    """All accepted coherent words with at most ``max_letters`` letters."""
    out: set[tuple[Step, ...]] = set()
    finals = _final_nodes(a)
    seen: set[tuple[tuple[str, str], tuple]] = set()
    queue: deque[tuple[tuple[str, str], tuple[Step, ...]]] = deque(
        (n, ()) for n in sorted(_initial_nodes(a)))
    while queue:
        node, word = queue.popleft()
        if node in finals and word:
            out.add(word)
        if len(word) >= max_letters:
            continue
        for letter in _letters_from(a, node):
            for nxt in _nfa_step(a, [node], letter):
                key = (nxt, tuple(s.key() for s in word) + (letter.key(),))
                if key not in seen:
                    seen.add(key)
                    queue.append((nxt, word + (letter,)))
    return out


def emptiness(a: STAutomaton) -> tuple[bool, Ipomset | None]:
    """Whether the language is empty; if not, a shortest witness."""
    seen = set(_initial_nodes(a))
    queue: deque[tuple[tuple[str, str], tuple[Step, ...]]] = deque(
        (n, ()) for n in sorted(seen))
    finals = _final_nodes(a)
    while queue:
        node, word = queue.popleft()
        if node in finals:
            return False, word_ipomset_of(word)
        for letter in _letters_from(a, node):
            for nxt in _nfa_step(a, [node], letter):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, word + (letter,)))
    return True, None


def inclusion(a: STAutomaton, b: STAutomaton) -> tuple[bool, Ipomset | None]:
    """Is every ipomset recognised by a also recognised by b?

    On-the-fly subset construction; returns a shortest counterexample
    when the answer is no.
    """
    b_finals = _final_nodes(b)
    start_b = _initial_nodes(b)
    queue: deque[tuple[tuple[str, str], frozenset, tuple[Step, ...]]] = deque()
    seen = set()
    for n in sorted(_initial_nodes(a)):
        queue.append((n, start_b, ()))
        seen.add((n, start_b))
    a_finals = _final_nodes(a)
    while queue:
        node, bset, word = queue.popleft()
        if node in a_finals and word and not (bset & b_finals):
            return False, word_ipomset_of(word)
        for letter in _letters_from(a, node):
            bnext = _nfa_step(b, bset, letter)
            for nxt in _nfa_step(a, [node], letter):
                if (nxt, bnext) not in seen:
                    seen.add((nxt, bnext))
                    queue.append((nxt, bnext, word + (letter,)))
    return True, None


# --------------------------------------------------------------------------
# the full width-bounded language, and complements

def _conclist_id(conclist: Sequence[str]) -> str:
    return "(" + " ".join(conclist) + ")"


def _all_conclists(alphabet: Iterable[str], k: int) -> list[tuple[str, ...]]:
    letters = sorted(alphabet)
    return [cl for n in range(k + 1)
            for cl in itertools.product(letters, repeat=n)]


def match_automaton(alphabet: Iterable[str], k: int) -> STAutomaton:
    """Recognises every ipomset of width at most k over the alphabet."""
    conclists = _all_conclists(alphabet, k)
    states = {_conclist_id(cl): cl for cl in conclists}
    transitions = []
    for cl in conclists:
        n = len(cl)
        for r in range(1, n + 1):
            for marked in itertools.combinations(range(n), r):
                up = starter(cl, marked)
                down = terminator(cl, marked)
                transitions.append(
                    (_conclist_id(up.source_conclist()), up, _conclist_id(cl)))
                transitions.append(
                    (_conclist_id(cl), down,
                     _conclist_id(down.target_conclist())))
    return STAutomaton(alphabet, states, transitions,
                       states.keys(), states.keys(), width_bound=k)


def _width_letters(conclist: tuple[str, ...], alphabet: Sequence[str],
                   k: int) -> Iterator[Step]:
    """Every nonidentity step leaving ``conclist`` within width k."""
    n = len(conclist)
    for r in range(1, n + 1):
        for marked in itertools.combinations(range(n), r):
            yield terminator(conclist, marked)
    for add in range(1, k - n + 1):
        for new_cl, pos in _insertions(conclist, add, alphabet):
            yield starter(new_cl, pos)


def complement_words(a: STAutomaton, width: int | None = None) -> STAutomaton:
    """The automaton accepting exactly the coherent words of width at most
    ``width`` (defaulting to a's bound) that a does not accept.

    Built by determinising a on the fly: a state pairs the conclist
    currently running with the set of a-states compatible with the word
    read so far; it is accepting when that set avoids a's final states.
    """
    k = a.width_bound if width is None else width
    if k is None:
        raise ValueError("no width bound: pass one explicitly")
    letters = sorted(a.alphabet)

    def absorb(dset: frozenset[str], letter: Step) -> frozenset[str]:
        # dset holds a-states after their identity; read letter, then the
        # identity of the target conclist (always available).
        out = set()
        for q in dset:
            for s, r in a.transitions_from(q):
                if s == letter:
                    out.add(r)
        return frozenset(out)

    def state_id(cl: tuple[str, ...], dset: frozenset[str]) -> str:
        return _conclist_id(cl) + "{" + " ".join(sorted(dset)) + "}"

    states: dict[str, tuple[str, ...]] = {}
    transitions: list[tuple[str, Step, str]] = []
    initial = []
    final = []
    queue: deque[tuple[tuple[str, ...], frozenset[str]]] = deque()
    for cl in _all_conclists(letters, k):
        dset = frozenset(q for q in a.initial if a.states[q] == cl)
        sid = state_id(cl, dset)
        initial.append(sid)
        if sid not in states:
            states[sid] = cl
            queue.append((cl, dset))
    while queue:
        cl, dset = queue.popleft()
        sid = state_id(cl, dset)
        if not (dset & a.final):
            final.append(sid)
        for letter in _width_letters(cl, letters, k):
            nxt = absorb(dset, letter)
            target_cl = letter.target_conclist()
            tid = state_id(target_cl, nxt)
            if tid not in states:
                states[tid] = target_cl
                queue.append((target_cl, nxt))
            transitions.append((sid, letter, tid))
    return STAutomaton(a.alphabet, states, transitions, initial, final,
                       width_bound=k)


# --------------------------------------------------------------------------
# text export

def export_st(a: STAutomaton) -> str:
    """Render the automaton in a stable line format.

    Line 1 names the width bound (``-`` when unset), line 2 the alphabet;
    then one line per state (index, conclist, initial and final flags) and
    one per transition (source index, target index, step bracket).
    """
    from .text import print_step
    lines = [f"stautomaton k={'-' if a.width_bound is None else a.width_bound}",
             ("alphabet " + " ".join(sorted(a.alphabet))).rstrip()]
    ids = sorted(a.states)
    index = {sid: i for i, sid in enumerate(ids)}
    for i, sid in enumerate(ids):
        init = "init" if sid in a.initial else "-"
        fin = "fin" if sid in a.final else "-"
        lines.append(f"state {i} [{' '.join(a.states[sid])}] {init} {fin}")
    for q, s, r in sorted(a.transitions,
                          key=lambda t: (index[t[0]], index[t[2]], t[1].key())):
        lines.append(f"trans {index[q]} {index[r]} {print_step(s)}")
    return "\n".join(lines) + "\n"
