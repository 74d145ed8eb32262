"""Reference values of the integral of the smooth bump

    f1(x) = (1 - 4|x|^2)^2 exp(-2 / (1 - 4|x|^2)) 1{|x| < 1/2}

over R^d, by reduction to a radial integral evaluated with mpmath at 40
digits. Output is pasted into src/estimators.cpp (kF1Reference).
"""
import mpmath as mp

mp.mp.dps = 40


def radial(d):
    kappa = mp.pi ** (mp.mpf(d) / 2) / mp.gamma(mp.mpf(d) / 2 + 1)

    def g(r):
        t = 1 - 4 * r * r
        if t <= 0:
            return mp.mpf(0)
        return r ** (d - 1) * t * t * mp.exp(-2 / t)

    return d * kappa * mp.quad(g, [0, mp.mpf(1) / 4, mp.mpf(1) / 2])


if __name__ == "__main__":
    for d in range(1, 11):
        print(f"    {mp.nstr(radial(d), 17)},  // d = {d}")
