"""Reference tails: why the normal approximation dies in the tail.

Prints the tail probabilities of the standard normal and of Student t
with 19 and 9 degrees of freedom side by side. The last column is the
t9-to-normal tail ratio: near 1.3 at x = 1.6 but almost 50 at x = 4 —
a block-based statistic with few effective blocks needs the t
reference, not the normal one.

Run: python demos/demo_reference_tails.py
"""

from blocknorm import NORMAL, ref_quantile, student_t, table1

print(__doc__)

print(f"{'x':>4} {'normal':>9} {'t19':>9} {'t9':>9} {'t9/normal':>10}")
for x, normal_u, t19_u, t9_u, ratio in table1():
    print(f"{x:>4.1f} {normal_u:>9.5f} {t19_u:>9.5f} {t9_u:>9.5f} {ratio:>10.5f}")

print()
print("Quantiles tell the same story: the two-sided 95% critical value is")
print(f"  normal : {ref_quantile(NORMAL, 0.975):.4f}")
print(f"  t19    : {ref_quantile(student_t(19), 0.975):.4f}")
print(f"  t9     : {ref_quantile(student_t(9), 0.975):.4f}")
