# Solving x**x = A and x**y = y**x = A numerically
#
# Both equations are solved in log form with a bracketed root finder. Pass a
# Precision to choose the working bit count; nothing is global.

# %%
from powertower import Precision, constant, parse_expr, solve_curve, solve_x_pow_x

p = Precision(128)

# %% [markdown]
# x**x has a minimum of e**(-1/e) at 1/e, so the number of positive roots
# depends on where A sits relative to that minimum and to 1.

# %%
print("e^(-1/e) =", constant("e_to_minus_inv_e", p).format(10))
for text in ["1/2", "sqrt(3)-1", "2^(-1/2)", "1", "2"]:
    sols = solve_x_pow_x(parse_expr(text), p)
    print(f"{text:>10}: {sols.count} root(s)", [r.format(8) for r in sols.roots])

# %% [markdown]
# Off the diagonal, x**y = y**x is traced by x(t) = (1+1/t)**t and
# y(t) = (1+1/t)**(t+1). The common value decreases from infinity down to e**e.

# %%
for text in ["16", "14+sqrt(2)", "17", "100"]:
    s = solve_curve(parse_expr(text), p)
    print(f"{text:>10}: t = {s.t.format(8)}  x = {s.x.format(8)}  y = {s.y.format(8)}")

try:
    solve_curve(parse_expr("15"), p)
except ValueError as exc:
    print("15:", exc)

# %% [markdown]
# Raising the precision leaves the leading digits alone and extends the tail.
# Each line prints only the digits its bit count can carry.

# %%
for bits in (64, 128, 256):
    digits = int(bits * 0.30103)
    print(f"{bits:>4}", solve_x_pow_x(parse_expr("2"), Precision(bits)).upper.format(digits))
