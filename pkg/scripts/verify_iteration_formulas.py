#!/usr/bin/env python3
"""Independent re-computation of the iteration-count golden values.

Deliberately does NOT import the smoothmax package: everything is redone
here with mpmath at 50-digit precision so the frozen test values

    general formula at (eps=0.1, n=2, G=1, L=2, U~=2, D=1)  -> 12
    bounding-sphere formula at (eps_rel=1, n=2)             -> 28

are anchored by a second, slower arithmetic path.
"""

import mpmath

mpmath.mp.dps = 50


def general_count(eps, n, G, L, U_tilde, D):
    root = mpmath.sqrt(2 / eps * G**2 * mpmath.log(n) / L + U_tilde / L)
    log_term = mpmath.log((L * D**2 + 2 * G * D) / eps)
    return 1 + root * log_term


def meb_count(eps_rel, n):
    return 1 + mpmath.log(1 + 4 / eps_rel) * mpmath.sqrt(
        1 + 18 * (1 + 20 / eps_rel) * mpmath.log(n)
    )


def main():
    g = general_count(mpmath.mpf(1) / 10, 2, 1, 2, 2, 1)
    m = meb_count(mpmath.mpf(1), 2)
    print(f"general(0.1, 2, 1, 2, 2, 1) = {mpmath.nstr(g, 12)}  ceil = {int(mpmath.ceil(g))}")
    print(f"meb(1, 2)                   = {mpmath.nstr(m, 12)}  ceil = {int(mpmath.ceil(m))}")
    assert int(mpmath.ceil(g)) == 12
    assert int(mpmath.ceil(m)) == 28
    print("golden values confirmed")


if __name__ == "__main__":
    main()
