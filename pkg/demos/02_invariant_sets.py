# coding: utf-8

# # Invariant sets
#
# V is invariant when alpha^n maps the part of V where alpha^n is defined
# onto the part of V inside the image of alpha^n, for every n.
# For non-injective maps the usual one-step shortcuts stop working.

# In[1]:

from covalg.catalog import alfainvar_system, finite_dimensional_family, simplexample
from covalg.invariance import (
    enumerate_invariant,
    is_invariant,
    lattice_bijection_check,
    lift_invariant,
    predicate_iii,
    predicate_iv,
)

s = alfainvar_system()
print(s.alpha)

# The one-step equality holds for V1 but V1 is not invariant: y3 reaches
# x1 in two steps from outside V1.

# In[2]:

V1 = {"x0", "x1", "x2"}
print("V1  one-step:", predicate_iv(s, V1), " invariant:", is_invariant(s, V1))

# V2 is invariant, yet it is not closed under taking preimages.

# In[3]:

V2 = {"x0", "x1", "y2", "y3"}
print("V2  invariant:", is_invariant(s, V2), " closed both ways:", predicate_iii(s, V2))

# The four invariant sets of the branching example. The two middle ones
# meet in {x0, x1}, which is not invariant.

# In[4]:

fam = enumerate_invariant(simplexample())
for V in fam:
    print(" ", sorted(V))
print("intersection closed:", fam.intersection_closed)

# Lifting to the extension keeps the histories that stay inside V.

# In[5]:

t = simplexample()
for V in fam:
    print(sorted(V), "->", list(lift_invariant(t, V).members))
print("lattice bijection:", lattice_bijection_check(t))

# Two chains of lengths 2 and 3 glued at x1. Upstairs there are four
# invariant sets (unions of the two chains), but {x1, y2} is not invariant
# downstairs since x1 is reached in two steps from y3. The correspondence
# is not onto here.

# In[6]:

m = finite_dimensional_family([2, 3])
print(m.alpha)
print([sorted(V) for V in enumerate_invariant(m)])
print("lattice bijection:", lattice_bijection_check(m))
