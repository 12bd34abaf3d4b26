"""One-letter automata are lassos with towers, and both directions of
that correspondence are computable.

A deterministic, accessible automaton over a single letter walks a
lasso of vertices; over each vertex sits a tower of higher cells.  The
whole automaton is captured by an ultimately periodic function: tower
height f(n) at vertex n, accepting dimensions tau(n), preperiod s,
period r.

Run with: python3 demos/one_letter_lassos.py
"""
from hdalang import (HDA, Cell, NotUPRepresentable, UPFunction, analyze,
                     build, member, parse_up, print_up, word_ipomset)

# A chain of nine vertices with squares over positions 1, 2 and 4 and a
# self-loop at the end; vertex 7 accepts.
cells = [Cell(f"v{n}", (), (), ()) for n in range(9)]
for n in range(8):
    cells.append(Cell(f"e{n}", ("a",), (f"v{n}",), (f"v{n + 1}",)))
cells.append(Cell("e8", ("a",), ("v8",), ("v8",)))
for name, n in (("sqA", 1), ("sqB", 2), ("sqC", 4)):
    cells.append(Cell(name, ("a", "a"),
                      (f"e{n}", f"e{n}"), (f"e{n + 1}", f"e{n + 1}")))
chain = HDA(cells, ["v0"], ["v7"])

up = analyze(chain)
print("description of the chain:", print_up(up))
assert up.f == (1, 2, 2, 1, 2, 1, 1, 1, 1) and (up.r, up.s) == (1, 8)
assert up.tau[7] == frozenset({0})

# build is inverse to analyze: the rebuilt automaton has the same
# language, and re-analyzing gives the same description back.
rebuilt = build(up)
assert analyze(rebuilt) == up
assert member(rebuilt, word_ipomset("a" * 7))
assert not member(rebuilt, word_ipomset("a" * 6))
print("rebuilt automaton accepts exactly a^7:",
      member(rebuilt, word_ipomset("a" * 7)))

# Descriptions have their own little text format.
text = "r=2 s=1 f=1,2,1 tau={};{0};{}"
lasso = build(parse_up(text))
print()
print("built from", repr(text), "->", len(lasso.cells), "cells")
# vertex 1 accepts, and the period is 2: a, aaa, aaaaa, ... are in.
for n in (1, 2, 3, 4):
    print(f"  a^{n} accepted:", member(lasso, word_ipomset("a" * n)))
assert member(lasso, word_ipomset("a")) and member(lasso, word_ipomset("aaa"))
assert not member(lasso, word_ipomset("aa"))

# Not every automaton has such a description: two letters, several
# start cells, unreachable parts, or nondeterminism all disqualify.
two_letters = HDA([Cell("u", (), (), ()), Cell("v", (), (), ()),
                   Cell("e", ("a",), ("u",), ("v",)),
                   Cell("f", ("b",), ("v",), ("u",))], ["u"], ["v"])
try:
    analyze(two_letters)
except NotUPRepresentable as exc:
    print()
    print("two-letter loop:", exc)
    assert exc.code == "NotOneLetter"
