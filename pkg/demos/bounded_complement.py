"""Width-bounded complements and what the bound changes.

Languages of higher-dimensional automata are closed downwards under
subsumption, so a complement in the usual sense cannot be a language
again.  The bounded complement bcomp_k takes everything of width at
most k outside the language and closes it downwards.

Run with: python3 demos/bounded_complement.py
"""
from hdalang import (HDA, Cell, WidthExceeded, complement_empty,
                     complement_member, discrete_ipomset, member,
                     print_ipomset, supersumptions, word_ipomset)

square = HDA(
    [
        Cell("v00", (), (), ()), Cell("v10", (), (), ()),
        Cell("v01", (), (), ()), Cell("v11", (), (), ()),
        Cell("ha0", ("a",), ("v00",), ("v10",)),
        Cell("ha1", ("a",), ("v01",), ("v11",)),
        Cell("vb0", ("b",), ("v00",), ("v01",)),
        Cell("vb1", ("b",), ("v10",), ("v11",)),
        Cell("sq", ("a", "b"), ("vb0", "ha0"), ("vb1", "ha1")),
    ],
    ["v00"], ["v11"])

# The square's language is {a||b} down, with a fixed event order: the
# a event sits above the b event on the 2-cell.
ab = word_ipomset("ab")
print("word ab accepted:", member(square, ab))

# An ipomset is in the bounded complement when some supersumption of
# width <= k escapes the language.  The word ab has three width-2
# supersumptions; the variant with the opposite event order is not
# accepted, so ab lies in the width-2 complement although it is also in
# the language.
print()
print("width-2 supersumptions of ab:")
for q in sorted(supersumptions(ab, 2), key=lambda q: q.key()):
    print("  ", print_ipomset(q), "accepted:", member(square, q))
inside, witness = complement_member(square, 2, ab)
print("ab in bcomp_2:", inside, "witness:", print_ipomset(witness))
assert inside and not member(square, witness)

# At width 1 no parallel supersumption exists, and ab stays out.
inside, witness = complement_member(square, 1, ab)
print("ab in bcomp_1:", inside)
assert not inside and witness is None

# The discrete two-event ipomset with both orders removed is its own
# only supersumption, so it escapes the complement at width 2 as well.
par = discrete_ipomset("ab")
assert not complement_member(square, 2, par)[0]

# The width bound is a hard precondition.
try:
    complement_member(square, 1, par)
except WidthExceeded as exc:
    print()
    print("width 2 ipomset against bound 1:", exc)

# Emptiness of the complement asks whether the language already covers
# the whole bounded universe; the empty ipomset is the first gap here.
is_empty, gap = complement_empty(square, 2)
print()
print("bcomp_2 empty:", is_empty, "first gap:", print_ipomset(gap))
assert not is_empty and gap == discrete_ipomset("")
