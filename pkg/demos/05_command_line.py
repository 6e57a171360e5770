# The powertower command
#
# The same features are available from the shell. This script drives the CLI
# in-process and shows both output formats plus a plot table.

# %%
import io
import json

from powertower.cli import run


def sh(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    print(f"$ powertower {' '.join(argv)}    (exit {code})")
    print(out.getvalue())
    return out.getvalue()


# %%
sh("solve-xx", "sqrt(3)-1")
sh("curve", "--t", "1/2")
sh("tower", "1/16", "--odd-even", "--method", "iteration")
sh("rational", "towerfix", "1/16")
sh("classify", "(4/9)^(4/9)")

# %% [markdown]
# Record format prints one JSON object per invocation, errors included.

# %%
rec = json.loads(sh("--format", "record", "curve", "15"))
print(rec["results"]["error"])

# %% [markdown]
# Plot tables are whitespace separated with a '#' header, ready for gnuplot.

# %%
table = sh("plotdata", "5", "--resolution", "8")
