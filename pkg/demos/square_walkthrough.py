"""A filled square, its language, and its step automaton.

Run with: python3 demos/square_walkthrough.py
"""
from hdalang import (HDA, Cell, accepts_word, export_st, language_ipomsets,
                     member, parse_ipomset, parse_step_word, print_ipomset,
                     st_of_hda)

# A filled square: four corners, four edges, one 2-cell on which a and b
# overlap.  Start on the left b-edge or the bottom corner; accept on the
# right b-edge, the top corner, or back on the left edge.
square = HDA(
    [
        Cell("v", (), (), ()), Cell("w", (), (), ()),
        Cell("x", (), (), ()), Cell("y", (), (), ()),
        Cell("e", ("a",), ("v",), ("w",)),
        Cell("f", ("a",), ("x",), ("y",)),
        Cell("g", ("b",), ("v",), ("x",)),
        Cell("h", ("b",), ("w",), ("y",)),
        Cell("q", ("a", "b"), ("g", "e"), ("h", "f")),
    ],
    start=["v", "g"],
    accept=["h", "y", "g"],
)

print("== language up to 4 steps ==")
for p in sorted(language_ipomsets(square, 4), key=lambda p: p.key()):
    print(" ", print_ipomset(p))

# Starting on an edge means the b event is already running: the language
# has members with nonempty source interface.
assert member(square, parse_ipomset("[b]"))
assert member(square, parse_ipomset("[a+ b][a- b]"))
# Both events fully inside still works, a twice does not.
assert member(square, parse_ipomset("[a+ b+][a- b-]"))
assert not member(square, parse_ipomset("[a+][a-][a+][a-]"))

# The step automaton has one state per cell and one transition per
# starter or terminator move.
print()
print("== step automaton ==")
st = st_of_hda(square)
print(f"{len(st.states)} states, {len(st.transitions)} transitions")
assert (len(st.states), len(st.transitions)) == (9, 14)
print(export_st(st))

# Its words alternate identities with starters/terminators; the accepted
# ones are exactly the coherent words of accepted ipomsets.
for text in ("[b]", "[][b+][b]", "[][a+ b+][a b][a- b-][]"):
    w = tuple(parse_step_word(text))
    print("accepts", text, "->", accepts_word(st, w))
    assert accepts_word(st, w)
assert not accepts_word(st, tuple(parse_step_word("[][a+ b+][a- b-][]")))
