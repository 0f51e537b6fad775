"""Reference values of F_2n^(k)(z) = int (it)^k exp(-t^(2n)) exp(izt) dt, z = w - i sigma.

Direct mpmath quadrature on the real line at 40 digits, checked against a
second subdivision.  Run from the repository root:
    python3 tests/oracle/transform_values_oracle.py > tests/golden/transform_values.csv
"""
import mpmath as mp

mp.mp.dps = 40

CASES = [
    # n, k, w, sigma
    (2, 0, 1.0, 0.5),
    (2, 0, 3.0, 2.0),
    (2, 0, 40.0, 0.0),
    (2, 0, 30.0, 1.5),
    (3, 0, 2.0, 1.0),
    (3, 0, 12.5, 0.0),
    (4, 0, 5.0, 3.0),
    (2, 1, 1.5, 0.0),
    (2, 1, 2.0, 1.0),
    (2, 3, 1.5, 0.25),
    (3, 2, 4.0, 0.5),
    (2, 6, 0.0, 0.0),
]


def transform(n, k, w, sigma, pts):
    z = mp.mpc(w, -sigma)
    f = lambda t: (1j * t) ** k * mp.exp(-t ** (2 * n)) * mp.exp(1j * z * t)
    return mp.quad(f, pts, maxdegree=12)


def breakpoints(w, shift):
    hi = 9
    step = min(mp.mpf(1) / 2, mp.pi / max(abs(w), 1) / 2)
    count = int(2 * hi / step) + 1
    return [-hi + shift + i * (2 * hi - 2 * shift) / count for i in range(count + 1)]


print("n,k,w,sigma,re,im")
for n, k, w, sigma in CASES:
    a = transform(n, k, w, sigma, breakpoints(w, 0))
    b = transform(n, k, w, sigma, breakpoints(w, mp.mpf("0.013")))
    assert abs(a - b) < mp.mpf(10) ** -28, (n, k, w, sigma, a, b)
    print(f"{n},{k},{w},{sigma},{mp.nstr(a.real, 20, strip_zeros=False)},{mp.nstr(a.imag, 20, strip_zeros=False)}")
