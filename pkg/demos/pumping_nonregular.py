"""Pumping accepted ipomsets, and a language that defeats pumping.

Long enough members of an automaton's language can be pumped: some
window of a step decomposition traverses a repeated cell and may be
repeated any number of times.  The catch is that the window is found
near a chosen position, not anywhere; languages of unbounded width can
exploit that.

Run with: python3 demos/pumping_nonregular.py
"""
from functools import reduce

from hdalang import (HDA, Cell, dense_decomposition, glue, member, parallel,
                     print_ipomset, pump, subsumes, word_ipomset)

# A single vertex with an a-loop accepts every word a^n.
loop = HDA([Cell("v", (), (), ()),
            Cell("e", ("a",), ("v",), ("v",))], ["v"], ["v"])

aaa = word_ipomset("aaa")
segments = [s.as_ipomset() for s in dense_decomposition(aaa)]
print("pumping over", len(segments), "segments of", print_ipomset(aaa))
result = pump(loop, segments, 0, 3)
print(f"repeatable window: segments [{result.i}, {result.j})")
for q in result.members:
    print("  pumped member:", print_ipomset(q), "accepted:", member(loop, q))
    assert member(loop, q)

# Now the family (a||a)^n a^n: n parallel pairs followed by n single
# steps.  Its downward closure is a perfectly good language, but no
# automaton of bounded dimension accepts it, and pumping shows why.
par_aa = parallel(word_ipomset("a"), word_ipomset("a"))


def generator(n):
    return reduce(glue, [par_aa] * n + [word_ipomset("a" * n)])


def in_language(p):
    n, rem = divmod(len(p.labels), 3)
    return rem == 0 and n >= 1 and subsumes(p, generator(n))


segments = [par_aa, par_aa, par_aa, word_ipomset("aaa")]
base = reduce(glue, segments)
print()
print("base member (a||a)^3 a^3:", in_language(base))
assert in_language(base)

# Repeating any window inside the parallel prefix leaves the language:
# the pair count outruns the tail.
print("pumping the first three segments at any window:")
for i in range(3):
    for j in range(i + 1, 4):
        pumped = reduce(glue, segments[:i] + segments[i:j] * 2 + segments[j:])
        print(f"  window [{i},{j}) twice -> member: {in_language(pumped)}")
        assert not in_language(pumped)

# Only the trailing word segment pumps, and it lies outside every
# window that starts at the front.
tail_pumped = reduce(glue, segments + [segments[3]])
print("repeating the word tail -> member:", in_language(tail_pumped))
assert in_language(tail_pumped)
