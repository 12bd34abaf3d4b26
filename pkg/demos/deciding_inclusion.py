"""Inclusion, equivalence, emptiness, and the determinism check.

Run with: python3 demos/deciding_inclusion.py
"""
from hdalang import (HDA, Cell, empty, equivalent, include,
                     is_deterministic_language, language_ipomsets, member,
                     parse_ipomset, prefix_quotient, print_ipomset, product,
                     word_ipomset)


def plain_square(start, accept):
    return HDA(
        [
            Cell("v00", (), (), ()), Cell("v10", (), (), ()),
            Cell("v01", (), (), ()), Cell("v11", (), (), ()),
            Cell("ha0", ("a",), ("v00",), ("v10",)),
            Cell("ha1", ("a",), ("v01",), ("v11",)),
            Cell("vb0", ("b",), ("v00",), ("v01",)),
            Cell("vb1", ("b",), ("v10",), ("v11",)),
            Cell("sq", ("a", "b"), ("vb0", "ha0"), ("vb1", "ha1")),
        ],
        start, accept)


# The square accepting {a||b} down, and the same square with a detour:
# from the bottom-right corner one may also read b then c.
square = plain_square(["v00"], ["v11"])
branching = HDA(
    list(square.cells.values()) + [
        Cell("p", (), (), ()),
        Cell("bq", ("b",), ("v10",), ("p",)),
        Cell("cq", ("c",), ("p",), ("v11",)),
    ],
    ["v00"], ["v11"])

print("== inclusion ==")
ok, witness = include(square, branching)
print("square included in branching:", ok)
assert ok and witness is None

ok, witness = include(branching, square)
print("branching included in square:", ok, "counterexample:",
      print_ipomset(witness))
assert not ok and witness == word_ipomset("abc")
assert member(branching, witness) and not member(square, witness)

print()
print("== equivalence and emptiness ==")
ok, witness = equivalent(square, branching)
assert not ok
print("equivalent:", ok, "separating ipomset:", print_ipomset(witness))

is_empty, shortest = empty(square)
print("square empty:", is_empty, "shortest member:", print_ipomset(shortest))
assert not is_empty and shortest == parse_ipomset("[a+ b+][a- b-]")

unreachable = plain_square(["v00"], [])
assert empty(unreachable)[0]
print("square without accept cells is empty:", empty(unreachable)[0])

print()
print("== intersection ==")
meet = product(branching, square)
lang = language_ipomsets(meet, 6)
assert word_ipomset("abc") not in lang
assert parse_ipomset("[a+ b+][a- b-]") in lang
print("product language within 6 steps has", len(lang), "members")

# Determinism is about languages, not shapes: after the word ab the
# branching automaton may still read c, but after a||b (which ab
# refines) it cannot.  No deterministic automaton can realise that.
print()
print("== determinism ==")
ok, pair = is_deterministic_language(branching)
print("branching deterministic:", ok)
assert not ok
p, q = pair
print("violating pair:", print_ipomset(p), "below", print_ipomset(q))
after_p = language_ipomsets(prefix_quotient(branching, p), 4)
after_q = language_ipomsets(prefix_quotient(branching, q), 4)
print("futures after the word: ", sorted(print_ipomset(r) for r in after_p))
print("futures after parallel: ", sorted(print_ipomset(r) for r in after_q))
assert after_p != after_q

ok, _ = is_deterministic_language(square)
print("plain square deterministic:", ok)
assert ok
