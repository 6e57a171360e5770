# Exact rational procedures
#
# Everything in this script is integer arithmetic. No floating point value is
# consulted when deciding whether a power of a rational is rational.

# %%
from fractions import Fraction

from powertower import (
    curve_rational_point,
    integer_nth_root,
    is_curve_pair,
    qq_nature,
    rational_nth_root,
    tower_fix_rational_solutions,
)

# %% [markdown]
# Root extraction is the basic tool. It answers "is n a perfect k-th power?"
# with either the root or None.

# %%
print(integer_nth_root(27, 3), integer_nth_root(10, 2))
print(rational_nth_root(Fraction(256, 81), 4))

# %% [markdown]
# Q**Q is rational only for integers. For a fraction a/b the question reduces
# to whether b**a is a perfect b-th power, which it never is.

# %%
for q in ["3", "1/2", "-1/2", "-2", "5/3"]:
    nat = qq_nature(Fraction(q))
    print(f"Q = {q:>4}: {nat.tag.value:<15} {nat.value if nat.value is not None else ''}")

# %% [markdown]
# Rational points on x**y = y**x come from integer parameters n.

# %%
for n in range(1, 5):
    x, y = curve_rational_point(n)
    print(n, x, y, "->", is_curve_pair(x, y))
print("(2, 3):", is_curve_pair(Fraction(2), Fraction(3)))

# %% [markdown]
# Rational solutions of Q**(Q**Q1) = Q1: the one-sixteenth case has two, the
# family 1/n**n has one, and everything else has none.

# %%
for q in ["1/16", "1/27", "1/256", "1/2"]:
    print(q, sorted(tower_fix_rational_solutions(Fraction(q))))
