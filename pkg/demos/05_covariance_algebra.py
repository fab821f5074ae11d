# coding: utf-8

# # The covariance algebra of an acyclic system
#
# Without periodic points the extension is a finite union of chains. The
# canonical representation acts on functions on the extension: pi(a) is
# multiplication by a(x0), and U moves each history one step back.

# In[1]:

import numpy as np

from covalg.catalog import cycle, chain, finite_dimensional_family, simplexample
from covalg.representation import (
    canonical_rep,
    covariant_pair_transport,
    decompose,
    generated_dim,
    ideal_lattice,
    simplicity_verdict,
    star_property_check,
    validate_rep,
)

s = simplexample()
r = validate_rep(canonical_rep(s))
print([repr(p) for p in r.basis])
print(r.U.real.astype(int))

# Each chain of length m contributes a full matrix block M_m, so the
# generated algebra has dimension equal to the sum of m squared.

# In[2]:

for t in (s, finite_dimensional_family([2, 3])):
    print(decompose(t), generated_dim(canonical_rep(t)))

# Ideals are sums of blocks; each comes from the union of chains it misses.

# In[3]:

for e in ideal_lattice(finite_dimensional_family([2, 3])):
    print(sorted(e.V), "blocks", e.blocks, "dim", e.dim, "invariant", e.alpha_invariant)

# The zero-mode of a sum of Fourier terms never has larger norm than the
# sum, and a relabelled copy of the representation gives the same norms.

# In[4]:

print("star:", star_property_check(r, samples=200))
perm = np.random.default_rng(1).permutation(r.dim)
print("transport:", covariant_pair_transport(s, r, r.permuted(perm)))

# Simplicity needs minimality and fails for cycles.

# In[5]:

for t in (cycle(3), chain(4), s):
    print(t.alpha, simplicity_verdict(t))
