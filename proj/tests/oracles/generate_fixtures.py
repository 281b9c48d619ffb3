"""Independent high-precision oracle for the frozen values in tests/support/fixtures.hpp.

Uses mpmath (50 digits) and numpy only; shares no code with the C++ library.
The phase function is evaluated through the closed form -4*atan(kappa) rather
than the three-branch arctan dispatch used by the library.

    python3 tests/oracles/generate_fixtures.py
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 50


def q(k):
    return ((k - 1) / (k + 1)) ** 2


def f(t):
    s = 2 - t
    return s - mp.sqrt(s * s - 1)


def ghat(k):
    return -4 * mp.atan(k)


def gL(k, L):
    return L * k - ghat(k)


def psi(k, L):
    return mp.exp(L * k) * f(mp.cos(gL(k, L)))


def gL_inv(t, L):
    return mp.findroot(lambda k: gL(k, L) - t, (mp.mpf(0), mp.mpf(t) / L), solver="anderson")


def kernel(y, alpha, k):
    a = alpha / mp.sqrt(2)
    return alpha / (2 * k) * mp.exp(-a * y) * mp.sin(a * y + mp.pi / 4)


def abc(k):
    qq = q(k)
    th = mp.atan(4 * k * (k * k - 1) / (k ** 4 - 6 * k * k + 1))
    den = 4 - 3 * qq
    a = (12 * (1 - qq) + 9 * qq * th) / den
    b = (24 * (1 - qq) - qq * th * (9 * th - 24)) / den
    c = (24 * (1 - qq) + 3 * qq * th * (th * th - 4 * th + 8)) / den
    return a, b, c


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 20)}")


show("psi(1, L=1)", psi(mp.mpf(1), mp.mpf(1)))
show("psi'(1, L=1)", mp.diff(lambda k: psi(k, mp.mpf(1)), mp.mpf(1)))
show("K(1) alpha=k=1", kernel(mp.mpf(1), mp.mpf(1), mp.mpf(1)))
show("int_0^1 K(y) dy (alpha=k=1) x2", 2 * mp.quad(lambda y: kernel(y, 1, 1), [0, 1]))

L0 = 2 * mp.sqrt(2)
for lam in [mp.mpf(-1), mp.mpf("1.0001")]:
    kap = (1 - 1 / lam) ** mp.mpf(0.25)
    show(f"char_residual lambda={lam}", psi(kap, L0) - q(kap))

for L in [mp.mpf(2), mp.mpf("0.2")]:
    show(f"gL_inv(0.5, L={L})", gL_inv(mp.mpf("0.5"), L))
show("ghat^-1(-0.5) = tan(1/8)", mp.tan(mp.mpf("0.125")))
show("gL_inv(3pi/2, L=1e-5)", gL_inv(3 * mp.pi / 2, mp.mpf("1e-5")))

# brute-force dense sweep of the margin on kappa in [0.9, 1.1] at L = 1
ks = [mp.mpf("0.9") + mp.mpf("0.2") * i / 9999 for i in range(10000)]
ms = [psi(k, 1) - q(k) for k in ks]
i = min(range(len(ms)), key=lambda j: ms[j])
show("cell [0.9,1.1] L=1 min margin", ms[i])
show("cell [0.9,1.1] L=1 argmin kappa", ks[i])

for k in [mp.mpf(3), 1 + mp.sqrt(2) + mp.mpf("1e-6"), mp.mpf("1e6")]:
    a, b, c = abc(k)
    show(f"abc kappa={mp.nstr(k, 12)} a", a)
    show(f"abc kappa={mp.nstr(k, 12)} b", b)
    show(f"abc kappa={mp.nstr(k, 12)} c", c)

# positivity sweep for the cubic coefficients
lo = mp.log10(1 + mp.sqrt(2) + mp.mpf("1e-6"))
worst = mp.inf
for j in range(10000):
    k = mp.power(10, lo + (6 - lo) * (j + 1) / 10000)
    worst = min(worst, min(abc(k)))
show("abc sweep min coefficient", worst)


# Nystrom oracle in numpy (Gauss-Legendre on [-l, l])
def nystrom(n, E=1.0, I=1.0, k=1.0, l=1.0):
    alpha = (k / (E * I)) ** 0.25
    x, w = np.polynomial.legendre.leggauss(n)
    x, w = x * l, w * l
    a = alpha / np.sqrt(2)
    y = np.abs(x[:, None] - x[None, :])
    Kmat = alpha / (2 * k) * np.exp(-a * y) * np.sin(a * y + np.pi / 4)
    s = np.sqrt(w)
    return np.sort(np.linalg.eigvalsh(s[:, None] * Kmat * s[None, :]))[::-1]


ev2000 = nystrom(2000)
print(f"{'lambda1 n=2000':40s} {ev2000[0]:.15g}")
ev400 = nystrom(400)
for lo_, hi_ in [(4, 12), (20, 60)]:
    idx = np.arange(lo_, hi_ + 1)
    print(f"{'slope ' + str((lo_, hi_)):40s} {np.polyfit(np.log(idx), np.log(ev400[idx - 1]), 1)[0]:.12g}")
print(f"{'lambda max k=10':40s} {nystrom(400, k=10.0)[0]:.15g}")
print(f"{'lambda max k=100':40s} {nystrom(400, k=100.0)[0]:.15g}")
