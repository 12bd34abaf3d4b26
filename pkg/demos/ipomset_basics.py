"""Tour of the ipomset algebra: building, composing, decomposing.

Run with: python3 demos/ipomset_basics.py
"""
from hdalang import (compose, dense_decomposition, enumerate_ipomsets, glue,
                     parallel, parse_ipomset, print_ipomset, print_step_word,
                     sparse_decomposition, subsumes, word_ipomset)

# Ipomsets are written as bracketed step sequences.  Inside a bracket,
# x+ starts an event, x- terminates one, and a bare x lets it run through.
print("== parsing and printing ==")
p = parse_ipomset("[a+ b+][a- b-]")
print("a parallel b:   ", print_ipomset(p))
q = word_ipomset("ab")
print("the word ab:    ", print_ipomset(q))
r = parse_ipomset("[b]")
print("interface-only b:", print_ipomset(r), "(runs through, never starts)")

# Gluing is sequential composition; target and source interfaces must
# match up.  Parallel composition stacks ipomsets without any order.
print()
print("== composition ==")
ab_then_c = glue(q, word_ipomset("c"))
print("ab glued with c:", print_ipomset(ab_then_c))
two_lanes = parallel(word_ipomset("a"), word_ipomset("b"))
print("a parallel b:   ", print_ipomset(two_lanes))
assert two_lanes == p

# Every ipomset has a unique sparse step decomposition: starters and
# terminators in strict alternation.  The dense decomposition moves one
# event boundary at a time and has length exactly twice the size.
print()
print("== decompositions ==")
big = parse_ipomset("[a+ b+][a- b][b c+][b- c-]")
print("ipomset:", print_ipomset(big))
sparse = sparse_decomposition(big)
print("sparse: ", print_step_word(sparse))
dense = dense_decomposition(big)
print("dense:  ", print_step_word(dense))
assert compose(sparse) == big and compose(dense) == big
assert len(dense) == 2 * big.size()

# Subsumption: the word ab refines a parallel b (more order, same
# events).  Languages of automata are always closed under it.
print()
print("== subsumption ==")
print(f"{print_ipomset(q)} below {print_ipomset(p)}:", subsumes(q, p))
print(f"{print_ipomset(p)} below {print_ipomset(q)}:", subsumes(p, q))
assert subsumes(q, p) and not subsumes(p, q)

# The interface variants over two letters are finite and enumerable.
count = sum(1 for _ in enumerate_ipomsets("ab", 2))
print()
print("ipomsets over {a,b} with at most 2 events:", count)
assert count == 89
