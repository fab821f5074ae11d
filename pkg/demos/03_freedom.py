# coding: utf-8

# # Topological freedom
#
# On a finite set, freedom means every periodic point has an exit: some
# point outside the orbit feeds into it. Pure cycles have none.

# In[1]:

from covalg.catalog import cycle, cycle_with_entry, loop_system
from covalg.freedom import extension_is_free, graph_freedom, is_topologically_free
from covalg.markov import augment, embed_check, markov_freedom

for s in (cycle(3), cycle_with_entry(3), loop_system()):
    rep = is_topologically_free(s)
    print(s.alpha)
    print("  free:", rep.free, " graph rule:", graph_freedom(s), " on the extension:", extension_is_free(s))
    print("  ", rep.dumps())

# The witness (k, y) says alpha(y) = alpha^k(x) with y off the orbit.

# In[2]:

print(is_topologically_free(cycle_with_entry(4)).exits)

# The same question for Markov shifts: a circuit with neither an exit nor an
# entry makes the shift non-free.

# In[3]:

for A in ([[1]], [[1, 0], [1, 0]], [[0, 1], [1, 0]], [[1, 1], [1, 1]]):
    print(A, markov_freedom(A))

# Augmenting by a symbol 0 that can precede every source symbol.

# In[4]:

A = [[1, 0], [1, 0]]
print(augment(A))
print({L: embed_check(A, L) for L in range(2, 7)})
