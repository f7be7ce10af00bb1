# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: same contracts as pykernels, unsigned __int128 arithmetic.

Valid for moduli m < 2**84 (see MAX_MODULUS_BITS); the dispatcher in
kernels/__init__.py routes larger moduli to the Python backend.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

BACKEND = "c"
MAX_MODULUS_BITS = 84

cdef u128 MASK64 = (<u128>1 << 64) - 1


cdef inline u128 _mulmod(u128 a, u128 b, u128 m) noexcept nogil:
    # operands are reduced mod m; m < 2**84
    cdef u128 a1, a0, r
    if m <= MASK64:
        return (a * b) % m
    a1 = a >> 42
    a0 = a & ((<u128>1 << 42) - 1)
    r = (a1 * b) % m          # a1 < 2**42, b < 2**84
    r = (((r << 42) % m) + a0 * b) % m
    return r


cdef inline u128 _addmod(u128 a, u128 b, u128 m) noexcept nogil:
    cdef u128 s = a + b
    if s >= m:
        s -= m
    return s


cdef inline u128 _submod(u128 a, u128 b, u128 m) noexcept nogil:
    if a >= b:
        return a - b
    return a + m - b


cdef u128 _powmod(u128 b, u128 e, u128 m) noexcept nogil:
    cdef u128 r = 1 % m
    b %= m
    while e:
        if e & 1:
            r = _mulmod(r, b, m)
        b = _mulmod(b, b, m)
        e >>= 1
    return r


cdef inline u128 _powi(u128 b, int e, u128 m) noexcept nogil:
    # small positive exponent
    cdef u128 r = b
    cdef int i
    for i in range(e - 1):
        r = _mulmod(r, b, m)
    return r


cdef u128 _invmod(u128 u, u128 p, u128 m) noexcept nogil:
    # u a unit mod p; phi(m) = (m / p) * (p - 1)
    return _powmod(u, (m // p) * (p - 1) - 1, m)


def invmod(u, p, m):
    return int(_invmod(<u128>u, <u128>p, <u128>m))


cdef u128* _inv_array(long n, u128 p, u128 m) except NULL:
    cdef u128* pref = <u128*>malloc((n + 1) * sizeof(u128))
    cdef u128* inv = <u128*>malloc((n + 1) * sizeof(u128))
    cdef long k
    cdef u128 acc = 1, cur
    if pref == NULL or inv == NULL:
        free(pref)
        free(inv)
        raise MemoryError()
    pref[0] = 1
    for k in range(1, n + 1):
        acc = _mulmod(acc, <u128>k, m)
        pref[k] = acc
    cur = _invmod(acc, p, m)
    inv[0] = 0
    for k in range(n, 0, -1):
        inv[k] = _mulmod(cur, pref[k - 1], m)
        cur = _mulmod(cur, <u128>k, m)
    free(pref)
    return inv


def inverse_table(n, p, m):
    cdef long cn = n
    cdef u128 cp = <u128>p, cm = <u128>m
    cdef u128* inv = _inv_array(cn, cp, cm)
    cdef long k
    try:
        return [int(inv[k]) for k in range(cn + 1)]
    finally:
        free(inv)


def bernoulli_scaled(nmax, p, m):
    if nmax + 1 >= p * p:
        raise ValueError("bernoulli_scaled requires nmax + 1 < p^2")
    cdef long size = nmax + 1
    cdef u128 cp = <u128>p, cm = <u128>m
    cdef u128* row = <u128*>malloc(size * sizeof(u128))
    cdef u128* pref = <u128*>malloc((size + 1) * sizeof(u128))
    cdef u128* units = <u128*>malloc(size * sizeof(u128))
    cdef int* vals = <int*>malloc(size * sizeof(int))
    cdef long i, j
    cdef u128 d, acc, cur, uinv
    cdef int v
    if row == NULL or pref == NULL or units == NULL or vals == NULL:
        free(row); free(pref); free(units); free(vals)
        raise MemoryError()
    out = []
    try:
        acc = 1
        pref[0] = 1
        for j in range(size):
            d = <u128>(j + 1)
            v = 0
            while d % cp == 0:
                d //= cp
                v += 1
            units[j] = d
            vals[j] = v
            acc = _mulmod(acc, d, cm)
            pref[j + 1] = acc
        cur = _invmod(acc, cp, cm)
        for j in range(size - 1, -1, -1):
            uinv = _mulmod(cur, pref[j], cm)
            cur = _mulmod(cur, units[j], cm)
            if vals[j] == 0:
                row[j] = _mulmod(cp % cm, uinv, cm)
            else:
                row[j] = uinv
        out.append(int(row[0]))
        for i in range(1, size):
            for j in range(size - i):
                row[j] = _mulmod(<u128>(j + 1), _submod(row[j], row[j + 1], cm), cm)
            out.append(int(row[0]))
        if nmax >= 1:
            out[1] = (m - out[1]) % m
        return out
    finally:
        free(row); free(pref); free(units); free(vals)


def mhs_sum(exps, n, p, m, inv):
    cdef long depth = len(exps), cn = n, k
    cdef int i
    cdef u128 cm = <u128>m, ik, w
    cdef u128* s = <u128*>malloc((depth + 1) * sizeof(u128))
    cdef u128* cinv = <u128*>malloc((cn * 2 + 2) * sizeof(u128))
    cdef int* absexp = <int*>malloc(depth * sizeof(int))
    cdef int* neg = <int*>malloc(depth * sizeof(int))
    cdef int sign = 1
    if s == NULL or cinv == NULL or absexp == NULL or neg == NULL:
        free(s); free(cinv); free(absexp); free(neg)
        raise MemoryError()
    try:
        s[0] = 1
        for i in range(depth):
            s[i + 1] = 0
            absexp[i] = abs(exps[i])
            neg[i] = 1 if exps[i] < 0 else 0
        for k in range(1, cn + 1):
            cinv[k] = <u128>inv[k]
        for k in range(1, cn + 1):
            sign = -sign
            ik = cinv[k]
            for i in range(depth, 0, -1):
                w = _powi(ik, absexp[i - 1], cm)
                if neg[i - 1] and sign < 0:
                    w = cm - w if w else 0
                s[i] = _addmod(s[i], _mulmod(w, s[i - 1], cm), cm)
        return int(s[depth])
    finally:
        free(s); free(cinv); free(absexp); free(neg)


def weighted_sum(aexp, signed_flag, cnum, factors, n, p, m, inv):
    cdef long cn = n, k, nfac = len(factors)
    cdef int ca = aexp, use_sign = 1 if signed_flag else 0, use_geo = 0
    cdef u128 cm = <u128>m, geo = 1, cgeo = 0, total = 0, ik, term, t
    cdef long idx
    cdef int sign = 1
    cdef long invlen = len(inv)
    cdef u128* cinv = <u128*>malloc(invlen * sizeof(u128))
    cdef u128* accs = NULL
    cdef int* kinds = NULL
    cdef int* rs = NULL
    cdef int* powers = NULL
    kindmap = {"harmonic": 0, "odd": 1, "signed": 2, "h2k": 3}
    if cnum is not None:
        use_geo = 1
        cgeo = <u128>cnum
    if cinv == NULL:
        raise MemoryError()
    if nfac:
        accs = <u128*>malloc(nfac * sizeof(u128))
        kinds = <int*>malloc(nfac * sizeof(int))
        rs = <int*>malloc(nfac * sizeof(int))
        powers = <int*>malloc(nfac * sizeof(int))
        if accs == NULL or kinds == NULL or rs == NULL or powers == NULL:
            free(cinv); free(accs); free(kinds); free(rs); free(powers)
            raise MemoryError()
    try:
        for k in range(invlen):
            cinv[k] = <u128>inv[k]
        for idx in range(nfac):
            accs[idx] = 0
            kinds[idx] = kindmap[factors[idx][0]]
            rs[idx] = factors[idx][1]
            powers[idx] = factors[idx][2]
        for k in range(1, cn + 1):
            sign = -sign
            ik = cinv[k]
            for idx in range(nfac):
                if kinds[idx] == 0:
                    accs[idx] = _addmod(accs[idx], _powi(ik, rs[idx], cm), cm)
                elif kinds[idx] == 1:
                    accs[idx] = _addmod(accs[idx], _powi(cinv[2 * k - 1], rs[idx], cm), cm)
                elif kinds[idx] == 2:
                    t = _powi(ik, rs[idx], cm)
                    if sign < 0:
                        t = cm - t if t else 0
                    accs[idx] = _addmod(accs[idx], t, cm)
                else:
                    accs[idx] = _addmod(
                        accs[idx], _addmod(cinv[2 * k - 1], cinv[2 * k], cm), cm
                    )
            term = _powi(ik, ca, cm) if ca else 1
            if use_geo:
                geo = _mulmod(geo, cgeo, cm)
                term = _mulmod(term, geo, cm)
            for idx in range(nfac):
                term = _mulmod(term, _powi(accs[idx], powers[idx], cm), cm)
            if use_sign and sign < 0:
                term = cm - term if term else 0
            total = _addmod(total, term, cm)
        return int(total)
    finally:
        free(cinv)
        if nfac:
            free(accs); free(kinds); free(rs); free(powers)


def s_sum(a_mod, n, p, m, inv):
    cdef long cn = n, k
    cdef u128 cm = <u128>m, ca = <u128>(a_mod % m)
    cdef u128 b1 = 1, b2 = 1, total = 0, ik, f1, f2
    cdef u128* cinv = <u128*>malloc((cn + 1) * sizeof(u128))
    if cinv == NULL:
        raise MemoryError()
    try:
        for k in range(1, cn + 1):
            cinv[k] = <u128>inv[k]
        for k in range(1, cn + 1):
            ik = cinv[k]
            f1 = _submod(ca, <u128>((k - 1) % m), cm)
            f2 = _submod(cm - ca if ca else 0, <u128>(k % m), cm)
            b1 = _mulmod(_mulmod(b1, f1, cm), ik, cm)
            b2 = _mulmod(_mulmod(b2, f2, cm), ik, cm)
            total = _addmod(total, _mulmod(_mulmod(b1, b2, cm), ik, cm), cm)
        return int(total)
    finally:
        free(cinv)


def central_sum(lo, hi, cinv_geo, p, m, inv):
    cdef long clo = lo, chi = hi, k, odd
    cdef u128 cp = <u128>p, cm = <u128>m, cg = <u128>cinv_geo
    cdef u128 ucb = 1, geo = 1, total = 0, term, pp
    cdef int vcb = 0
    cdef u128* cinv = <u128*>malloc((chi + 1) * sizeof(u128))
    if cinv == NULL:
        raise MemoryError()
    try:
        for k in range(1, chi + 1):
            cinv[k] = <u128>inv[k]
        for k in range(1, chi + 1):
            odd = 2 * k - 1
            if odd % p == 0:
                vcb += 1
                odd //= p
            ucb = _mulmod(_mulmod(ucb, <u128>(2 * odd), cm), cinv[k], cm)
            geo = _mulmod(geo, cg, cm)
            if k >= clo:
                term = _mulmod(_mulmod(_mulmod(ucb, ucb, cm), cinv[k], cm), geo, cm)
                if vcb:
                    pp = _powi(cp % cm, 2 * vcb, cm)
                    term = _mulmod(term, pp, cm)
                total = _addmod(total, term, cm)
        return int(total)
    finally:
        free(cinv)


def geom_power_sum(cnum, aexp, n, p, m, inv):
    return weighted_sum(aexp, False, cnum, (), n, p, m, inv)
