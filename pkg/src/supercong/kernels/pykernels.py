"""Pure-Python reference kernels.

Every function here computes *exactly* modulo ``m = p**e``: all summation
indices in the supported ranges are coprime to p, so the only divisions are
by units and no precision is lost.  The compiled backend implements the
same functions with identical results; equality of the two backends is
asserted by the test suite.
"""

from __future__ import annotations

BACKEND = "python"


def invmod(u: int, p: int, m: int) -> int:
    """Inverse of a unit u modulo m = p**e."""
    return pow(u, -1, m)


def inverse_table(n: int, p: int, m: int) -> list[int]:
    """inv[k] for k = 1..n (index 0 unused); every k must be a unit mod p.

    Montgomery batch inversion: one modular inverse, 3n multiplications.
    """
    pref = [1] * (n + 1)
    acc = 1
    for k in range(1, n + 1):
        acc = acc * k % m
        pref[k] = acc
    inv = [0] * (n + 1)
    cur = invmod(acc, p, m)
    for k in range(n, 0, -1):
        inv[k] = cur * pref[k - 1] % m
        cur = cur * k % m
    return inv


def bernoulli_scaled(nmax: int, p: int, m: int) -> list[int]:
    """p*B_i mod m for i = 0..nmax, via the Akiyama-Tanigawa triangle.

    The whole triangle is scaled by p so rows stay integral: the only
    denominators ever introduced are the initial 1/(j+1) with
    v_p(j+1) <= 1 (requires nmax + 1 < p**2).  The recurrence convention
    yields B_1 = +1/2; the caller's convention is B_1 = -1/2, so index 1
    is negated before returning.
    """
    if nmax + 1 >= p * p:
        raise ValueError("bernoulli_scaled requires nmax + 1 < p^2")
    size = nmax + 1
    # p/(j+1) mod m, batch-inverting the unit parts of j+1
    units = []
    vals = []
    for j in range(size):
        d = j + 1
        v = 0
        while d % p == 0:
            d //= p
            v += 1
        units.append(d)
        vals.append(v)
    pref = [1] * (size + 1)
    acc = 1
    for i, u in enumerate(units):
        acc = acc * u % m
        pref[i + 1] = acc
    cur = invmod(acc, p, m)
    row = [0] * size
    for i in range(size - 1, -1, -1):
        uinv = cur * pref[i] % m
        cur = cur * units[i] % m
        row[i] = p ** (1 - vals[i]) * uinv % m

    out = [row[0]]
    for i in range(1, size):
        for j in range(size - i):
            row[j] = (j + 1) * (row[j] - row[j + 1]) % m
        out.append(row[0])
    if nmax >= 1:
        out[1] = -out[1] % m
    return out


def mhs_sum(exps: tuple[int, ...], n: int, p: int, m: int, inv: list[int]) -> int:
    """H(a_1,...,a_m; n) mod m by the depth-recursive prefix method (n < p)."""
    depth = len(exps)
    s = [1] + [0] * depth
    sign = 1
    for k in range(1, n + 1):
        sign = -sign
        ik = inv[k]
        for i in range(depth, 0, -1):
            a = exps[i - 1]
            w = pow(ik, abs(a), m)
            if a < 0 and sign < 0:
                w = m - w
            s[i] = (s[i] + w * s[i - 1]) % m
    return s[depth]


def weighted_sum(
    aexp: int,
    signed: bool,
    cnum: int | None,
    factors: tuple[tuple[str, int, int], ...],
    n: int,
    p: int,
    m: int,
    inv: list[int],
) -> int:
    """sum_{k=1}^{n} [(-1)^k] * c^k * k^(-aexp) * prod(prefix^power) mod m.

    factors entries are (kind, r, power) with kind in
    {"harmonic", "odd", "signed", "h2k"}; prefix accumulators are updated
    incrementally so the whole sum is one pass over k.
    """
    accs = [0] * len(factors)
    total = 0
    geo = 1
    sign = 1
    for k in range(1, n + 1):
        sign = -sign
        ik = inv[k]
        for idx, (kind, r, _power) in enumerate(factors):
            if kind == "harmonic":
                accs[idx] = (accs[idx] + pow(ik, r, m)) % m
            elif kind == "odd":
                accs[idx] = (accs[idx] + pow(inv[2 * k - 1], r, m)) % m
            elif kind == "signed":
                t = pow(ik, r, m)
                accs[idx] = (accs[idx] + (m - t if sign < 0 else t)) % m
            elif kind == "h2k":
                accs[idx] = (accs[idx] + inv[2 * k - 1] + inv[2 * k]) % m
            else:
                raise ValueError(f"unknown prefix kind {kind!r}")
        term = pow(ik, aexp, m)
        if cnum is not None:
            geo = geo * cnum % m
            term = term * geo % m
        for idx, (_kind, _r, power) in enumerate(factors):
            term = term * pow(accs[idx], power, m) % m
        if signed and sign < 0:
            term = m - term
        total = (total + term) % m
    return total


def s_sum(a_mod: int, n: int, p: int, m: int, inv: list[int]) -> int:
    """S_n(a) = sum_{k=1}^{n} binom(a,k) * binom(-1-a,k) / k mod m.

    Both binomials are maintained incrementally; the updates only ever
    divide by k (a unit since n < p), so the result is exact mod m.
    """
    b1 = 1
    b2 = 1
    total = 0
    for k in range(1, n + 1):
        ik = inv[k]
        b1 = b1 * ((a_mod - k + 1) % m) % m * ik % m
        b2 = b2 * ((-a_mod - k) % m) % m * ik % m
        total = (total + b1 * b2 % m * ik) % m
    return total


def central_sum(lo: int, hi: int, cinv: int, p: int, m: int, inv: list[int]) -> int:
    """sum_{k=lo}^{hi} binom(2k,k)^2 / (k * c^k) mod m, hi <= p-1.

    binom(2k,k) is carried as (valuation, unit): it picks up exactly one
    factor of p when 2k-1 == p, i.e. for k >= (p+1)/2.
    """
    vcb = 0
    ucb = 1
    geo = 1
    total = 0
    for k in range(1, hi + 1):
        odd = 2 * k - 1
        if odd % p == 0:
            vcb += 1
            odd //= p
        ucb = ucb * 2 * odd % m * inv[k] % m
        geo = geo * cinv % m
        if k >= lo:
            term = ucb * ucb % m * inv[k] % m * geo % m
            if vcb:
                term = term * pow(p, 2 * vcb, m) % m
            total = (total + term) % m
    return total


def geom_power_sum(cnum: int, aexp: int, n: int, p: int, m: int, inv: list[int]) -> int:
    """sum_{k=1}^{n} c^k / k^aexp mod m (n < p)."""
    return weighted_sum(aexp, False, cnum, (), n, p, m, inv)
