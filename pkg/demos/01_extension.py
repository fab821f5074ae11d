# coding: utf-8

# # Reversible extensions
#
# A finite partial system is a set of points and a map defined on some of
# them. Its reversible extension replaces each point by the backward
# histories (anti-orbits) that end there; the shift on those histories is
# injective even when the map is not.

# In[1]:

from covalg.catalog import loop_system, simplexample, simplexample_prime
from covalg.extension import build_extension, extension_as_system, tilde_alpha

# Two different maps on four points: x2 and y2 both land on x1 in the first,
# while the second one branches one step earlier.

# In[2]:

for s in (simplexample(), simplexample_prime()):
    ext = build_extension(s)
    print(s.alpha)
    print("  cardinality:", ext.cardinality)
    for p in ext.points:
        print("   ", p, "->", tilde_alpha(s, p))

# Both extensions have six points arranged in two chains of three, so the
# two systems cannot be told apart once they are made reversible.

# In[3]:

a, _ = extension_as_system(build_extension(simplexample()))
b, _ = extension_as_system(build_extension(simplexample_prime()))
print(sorted(a.alpha.items()))
print(sorted(b.alpha.items()))

# With a fixed point fed by an extra point, histories can be arbitrarily
# long: x1, then x0 x1, then x0 x0 x1, and so on, plus the constant history
# at x0. The extension is countably infinite and the enumeration is cut off
# at max_len.

# In[4]:

s = loop_system()
ext = build_extension(s, max_len=6)
print(ext.cardinality, "complete:", ext.complete)
for p in ext.points:
    q = tilde_alpha(s, p)
    print(f"  {p!r:28} -> {q!r}")
