# What kind of number is the answer?
#
# The classifier attaches a nature (rational, algebraic irrational,
# transcendental, ...) to each solution and lists the catalog rules behind it.
# When no rule applies it says Unknown rather than guessing.

# %%
from powertower import (
    RULES,
    classify_curve_pair,
    classify_tower,
    classify_tower_odd_even,
    classify_xx_solutions,
    parse_expr,
    powers_never_rational,
    self_nature,
)


def show(label, verdict):
    extra = f" = {verdict.witness_text()}" if verdict.nature.value == "Rational" else ""
    print(f"  {label}: {verdict.nature.value}{extra}   [{', '.join(verdict.rules) or 'no rule'}]")


# %% [markdown]
# Inputs are written in a small grammar: rationals, a + b*sqrt(d), r^(p/q) and
# e^(p/q). Parsing canonicalizes.

# %%
for text in ["sqrt(27)", "(sqrt(2)+1)/2", "(8/27)^(2/3)", "e^(1/3)"]:
    x = parse_expr(text)
    print(f"{text:>14} -> {x}   {self_nature(x).nature.value}   powers never rational: {powers_never_rational(x)}")

# %% [markdown]
# Roots of x**x = A.

# %%
for text in ["sqrt(3)-1", "2", "(1/3)^(1/3)", "(4/9)^(4/9)", "(2/3)^(1/2)"]:
    print(text)
    for rv in classify_xx_solutions(parse_expr(text)):
        show(rv.branch, rv.verdict)

# %% [markdown]
# Pairs on x**y = y**x, then towers.

# %%
for text in ["16", "17", "14+sqrt(2)"]:
    print("pair", text)
    show("x, y", classify_curve_pair(parse_expr(text)))
    show("x, y (assuming Schanuel)", classify_curve_pair(parse_expr(text), assume_schanuel=True))

for text in ["1/4", "sqrt(2)", "1/2", "e^(1/3)"]:
    print("tower", text)
    show("h", classify_tower(parse_expr(text)))

ov = classify_tower_odd_even("1/17")
print("odd/even 1/17")
show("pair", ov.pair)

# %% [markdown]
# Every rule id resolves to a catalog entry.

# %%
print(RULES["gelfond-schneider"].statement)
