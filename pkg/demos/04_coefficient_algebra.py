# coding: utf-8

# # The coefficient algebra
#
# Elements are finite sequences (a0, a1, ...) of functions on X with a_n
# vanishing off the domain of alpha^n. A sequence evaluates on a history
# (x0, x1, ...) as a0(x0) + a1(x1) + ..., and the product is chosen so that
# this evaluation is multiplicative.

# In[1]:

import numpy as np

from covalg.catalog import loop_system, simplexample
from covalg.coeff import (
    SeqElement,
    delta_star_alg,
    delta_tilde_alg,
    indicator,
    phi_eval,
    random_element,
    seq_mul,
    zeros,
)
from covalg.extension import build_extension

# On the loop system, (0, indicator of the domain) is 0 on the one-point
# history and 1 on every longer one: an eventually constant sequence.

# In[2]:

s = loop_system()
a = SeqElement(s, (zeros(s), indicator(s, s.domain_n(1))))
for p in build_extension(s, 5).points:
    print(f"  {p!r:26} {phi_eval(s, a, p).real:.0f}")

# Multiplicativity on random elements, in exact Gaussian rationals.

# In[3]:

t = simplexample()
rng = np.random.default_rng(0)
a, b = random_element(t, rng, exact=True), random_element(t, rng, exact=True)
ab = seq_mul(t, a, b)
for p in build_extension(t).points:
    print(p, phi_eval(t, ab, p) == phi_eval(t, a, p) * phi_eval(t, b, p))

# The shift and its adjoint on sequences agree with composing by the
# extension shift and its inverse.

# In[4]:

a = random_element(t, rng, length=3)
for p in build_extension(t).points:
    print(f"{p!r:22} {phi_eval(t, delta_tilde_alg(t, a), p):.3f}  {phi_eval(t, delta_star_alg(t, a), p):.3f}")
