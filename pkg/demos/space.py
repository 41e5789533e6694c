"""How many bits each part of an index takes, next to entropy yardsticks.

Generates uniform and skewed colorings, builds the index the CLI would pick
and prints the space report for each.

    python3 demos/space.py
"""

from nct import LargeSigmaIndex, SmallSigmaIndex
from nct.report import space_report
from nct.treefile import generate

n = 20_000
for sigma, model in [(4, "uniform"), (4, "zipf"), (64, "uniform"), (64, "zipf")]:
    tf = generate(n, sigma, seed=1, model=model, zipf_s=1.3)
    cls = SmallSigmaIndex if sigma <= 8 else LargeSigmaIndex
    rep = space_report(cls(tf.tree(), tf.colors))
    print(f"=== {cls.__name__}, sigma={sigma}, {model} colors")
    for k, v in rep.components.items():
        print(f"  {k:<22}{v:>10}  ({v / n:.2f} bits/node)")
    print(f"  {'total':<22}{rep.total:>10}  ({rep.total / n:.2f} bits/node)")
    print("  nH0 = {nH0:.0f}, nH2 = {nH2:.0f}, 2n = {2n:.0f}".format(**rep.references))
    print()

# doubling n should roughly double everything but the raw colors
print("auxiliary bits as n doubles (sigma=4):")
prev = None
for n in (10_000, 20_000, 40_000):
    tf = generate(n, 4, seed=2)
    aux = space_report(SmallSigmaIndex(tf.tree(), tf.colors)).auxiliary
    print(f"  n={n:>6}: {aux:>9}" + ("" if prev is None else f"  x{aux / prev:.2f}"))
    prev = aux
