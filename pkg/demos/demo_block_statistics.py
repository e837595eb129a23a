"""Block schemes and the normalized statistics built on them.

Cuts one AR(1) path three ways — alternating big/small blocks,
interlaced equal blocks (odd blocks only), and plain consecutive
batches — and computes every statistic with its recommended reference
distribution. Also shows the identity that the interlaced statistic is
the equal-size big-small statistic.

Run: python demos/demo_block_statistics.py
"""

import numpy as np

from blocknorm import (
    batch_partition,
    bbsb_partition,
    block_sums,
    exponents_to_sizes,
    gen_ar1,
    i_n,
    i_n_star,
    interlace_partition,
    t_n_star,
    w_n,
    w_n_star,
)

print(__doc__)

n = 1000
x = gen_ar1(n, rho=0.5, seed=12345)

m1, m2 = 43, 7
part = bbsb_partition(n, m1, m2)
print(f"big-small scheme, m1={m1}, m2={m2}: k={part.k} pairs")
bigs = part.tagged("big")
print(f"  first big block covers [{bigs[0].start}..{bigs[0].end}], last [{bigs[-1].start}..{bigs[-1].end}]")
print(f"  first big-block sums: {np.round(block_sums(x, part, 'big').values[:4], 3)}")

m = 50
inter = interlace_partition(n, m)
print(f"interlacing, m={m}: k={inter.k} odd blocks (half the data is discarded)")
batch = batch_partition(n, m)
print(f"batch means, m={m}: {2 * batch.k} consecutive blocks")

print()
print("Sizes can come from exponents too: n**0.55, n**0.3 ->", exponents_to_sizes(n, 0.55, 0.3))

print()
print("Statistics on this path (value, recommended reference):")
for label, stat in (
    ("w_n       ", w_n(x, m1, m2)),
    ("w_n_star  ", w_n_star(x, m1, m2, mu=0.0)),
    ("i_n       ", i_n(x, m)),
    ("i_n_star  ", i_n_star(x, m, mu=0.0)),
    ("t_n_star  ", t_n_star(x, m)),
):
    print(f"  {label} {stat.value:+8.4f}   {stat.ref.label():>4}  ({stat.k} block sums)")

print()
print("Equal-block identity: i_n(x, m) == w_n(x, m, m) exactly:",
      i_n(x, m).value == w_n(x, m, m).value)
