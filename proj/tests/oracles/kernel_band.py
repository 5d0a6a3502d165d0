"""Kernel-norm band over t in [0, 20] from moments computed by direct quadrature."""
import mpmath as mp

mp.mp.dps = 30
ALPHA = mp.mpf("0.5")


def moment(n):
    inner = mp.mpf(1) / (2 * n + 2)
    outer = mp.quad(lambda t: mp.e ** ((2 * n + 2) * t - 2 * ALPHA * t * t), [0, (n + 1) / (2 * ALPHA), mp.inf])
    return 2 * mp.pi * (inner + outer)


def main():
    c = [moment(n) for n in range(80)]
    vals = []
    for i in range(401):
        t = mp.mpf(20) * i / 400
        k = mp.fsum(mp.e ** (2 * n * t) / c[n] for n in range(len(c)))
        vals.append(k * (1 + mp.e ** (2 * t)) * mp.e ** (-2 * ALPHA * t * t))
    lo, hi = min(vals), max(vals)
    print("lo", mp.nstr(lo, 12))
    print("hi", mp.nstr(hi, 12))
    print("spread", mp.nstr(hi / lo, 12))
    for n in (0, 1, 5, 20, 60):
        print("logc", n, mp.nstr(mp.log(c[n]), 17))


if __name__ == "__main__":
    main()
