"""Reference values F_2n(0) = Gamma(1/(2n)) / n for n = 1..6, from mpmath.

Run from the repository root:
    python3 tests/oracle/origin_values_oracle.py > tests/golden/origin_values.csv
"""
import mpmath as mp

mp.mp.dps = 40

print("n,gamma_arg,value")
for n in range(1, 7):
    arg = mp.mpf(1) / (2 * n)
    v = mp.gamma(arg) / n
    # the integral itself, as a second route to the same number
    direct = 2 * mp.quad(lambda t: mp.exp(-t ** (2 * n)), [0, 1, 2, mp.inf])
    assert abs(v - direct) < mp.mpf(10) ** -25, (n, v, direct)
    print(f"{n},1/{2 * n},{mp.nstr(v, 20, strip_zeros=False)}")
