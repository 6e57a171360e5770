# Infinite power towers
#
# h(x) is the limit of x, x**x, x**(x**x), ... It exists on [e**(-e), e**(1/e)].
# Below e**(-e) the odd and even heights settle on two different values.

# %%
from fractions import Fraction

from powertower import Precision, parse_expr, tower_h, tower_iterate_raw, tower_odd_even

p = Precision(128)

# %% [markdown]
# A few finite towers first, to see the pattern.

# %%
for height in range(1, 7):
    print(height, tower_iterate_raw(Fraction(1, 2), height, p).format(10))

# %% [markdown]
# The fixed-point method solves x**h = h directly. Iteration is kept as a
# cross-check and reports how many steps it needed.

# %%
for text in ["1/4", "sqrt(2)", "1/2", "e^(1/3)", "(sqrt(2)+1)/2", "3/2"]:
    fp = tower_h(parse_expr(text), p)
    it = tower_h(parse_expr(text), p, method="iteration")
    h = fp.h.format(10) if fp.h else fp.mode.value
    print(f"{text:>14}: {h:<16} iteration steps: {it.iterations}")

# %% [markdown]
# Below e**(-e) = 0.0659... the sequence oscillates between two limits.

# %%
for q in ["1/16", "1/17", "1/100"]:
    tv = tower_odd_even(Fraction(q), p)
    print(f"{q:>6}: h_odd = {tv.h_odd.format(10)}  h_even = {tv.h_even.format(10)}")

# %% [markdown]
# Close to the lower endpoint iteration slows down sharply because the map's
# derivative approaches -1 there.

# %%
edge = tower_h(Fraction(1, 15), p, method="iteration")
print("1/15:", edge.iterations, "steps, converged:", edge.converged)
