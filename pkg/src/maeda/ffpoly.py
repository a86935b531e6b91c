"""Arithmetic over prime fields F_p with p < 2^20.

Matrix reduction, characteristic polynomials, squarefreeness, and
factorization patterns via distinct-degree splitting.  Polynomials are
coefficient arrays, lowest degree first.

The modulus cap p < 2^20 keeps every intermediate inside int64: a product of
two residues stays below 2^40 and the convolution/dot sums here add fewer
than 2^17 such products, so numpy integer arithmetic is exact throughout.
The cap is enforced, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hecke import IntMatrix
from .patterns import Pattern
from .primes import is_prime

MAX_MODULUS = 1 << 20

# Factorization patterns share their shape with permutation cycle patterns.
FactorPattern = Pattern

__all__ = [
    "MAX_MODULUS",
    "FactorPattern",
    "ModPoly",
    "ModMatrix",
    "reduce_matrix",
    "charpoly_mod_p",
    "is_squarefree",
    "factorization_pattern",
    "distinct_degree_split",
]


def _check_modulus(p: int) -> None:
    if not 2 <= p < MAX_MODULUS:
        raise ValueError(f"modulus must satisfy 2 <= p < 2^20, got {p}")
    if not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")


@dataclass(frozen=True)
class ModPoly:
    """Polynomial over F_p: residues in [0, p), lowest degree first, trimmed."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_modulus(self.p)
        reduced = tuple(int(c) % self.p for c in self.coeffs)
        while reduced and reduced[-1] == 0:
            reduced = reduced[:-1]
        object.__setattr__(self, "coeffs", reduced)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def derivative(self) -> "ModPoly":
        return ModPoly(self.p, tuple(n * c for n, c in enumerate(self.coeffs))[1:])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for n, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*X^{n}" if n else str(c))
        return " + ".join(terms) + f" (mod {self.p})"


@dataclass(frozen=True, eq=False)
class ModMatrix:
    """Square matrix over F_p, entries an int64 numpy array in [0, p)."""

    p: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        _check_modulus(self.p)
        e = np.asarray(self.entries, dtype=np.int64)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("matrix must be square")
        e = e % self.p
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def d(self) -> int:
        return self.entries.shape[0]


def reduce_matrix(M: IntMatrix, p: int) -> ModMatrix:
    """Entry-wise reduction of an integer matrix into [0, p)."""
    _check_modulus(p)
    d = M.d
    entries = np.fromiter(
        (e % p for row in M.rows for e in row), dtype=np.int64, count=d * d
    ).reshape(d, d)
    return ModMatrix(p, entries)


def charpoly_mod_p(A: ModMatrix) -> ModPoly:
    """Monic characteristic polynomial of A over F_p.

    Deterministic O(d^3): reduce to upper Hessenberg form by a similarity
    built from pivoted eliminations, then run the leading-minor recurrence.
    """
    p = A.p
    d = A.d
    if d == 0:
        return ModPoly(p, (1,))
    h = A.entries.astype(np.int64).copy()
    for m in range(1, d - 1):
        col = h[m:, m - 1]
        nonzero = np.nonzero(col)[0]
        if nonzero.size == 0:
            continue
        r = m + int(nonzero[0])
        if r != m:
            h[[m, r], :] = h[[r, m], :]
            h[:, [m, r]] = h[:, [r, m]]
        inv = pow(int(h[m, m - 1]), p - 2, p)
        t = h[m + 1 :, m - 1] * inv % p
        if np.any(t):
            # eliminate all of column m-1 below row m in one similarity step:
            # rows i -= t_i * row m, then column m += sum_i t_i * column i
            h[m + 1 :, :] = (h[m + 1 :, :] - np.outer(t, h[m, :])) % p
            h[:, m] = (h[:, m] + h[:, m + 1 :] @ t) % p
    # charpoly of the leading m x m minor, by expansion along the last row:
    # P[m] = (X - h_mm) P[m-1] - sum_k h_{k,m} (prod of subdiagonal run) P[k-1]
    P = np.zeros((d + 1, d + 1), dtype=np.int64)
    P[0, 0] = 1
    for m in range(1, d + 1):
        prev = P[m - 1, :m]
        cur = P[m, : m + 1]
        cur[1:] = prev
        cur[:m] = (cur[:m] - int(h[m - 1, m - 1]) * prev) % p
        if m > 1:
            coefs = np.zeros(m - 1, dtype=np.int64)
            t = 1
            for k in range(m - 1, 0, -1):
                t = t * int(h[k, k - 1]) % p
                coefs[k - 1] = int(h[k - 1, m - 1]) * t % p
            if np.any(coefs):
                cur[:m] = (cur[:m] - coefs @ P[: m - 1, :m]) % p
    return ModPoly(p, tuple(int(c) for c in P[d]))


# ---------------------------------------------------------------------------
# raw-array polynomial helpers (trimmed int64 arrays, lowest degree first)

def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    if nz.size == 0:
        return a[:0]
    return a[: int(nz[-1]) + 1]


def _rem(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # remainder of a modulo b, b nonzero; inputs trimmed or zero-padded
    db = len(b) - 1
    if db == 0:
        return a[:0]
    binv = pow(int(b[-1]), p - 2, p)
    r = a.copy()
    for shift in range(len(r) - 1 - db, -1, -1):
        t = int(r[shift + db]) * binv % p
        if t:
            r[shift : shift + db] = (r[shift : shift + db] - t * b[:db]) % p
    return _trim(r[:db] if db <= len(r) else r)


def _degree_scan(buf: np.ndarray, start: int) -> int:
    d = start
    while d >= 0 and not buf[d]:
        d -= 1
    return d


def _gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # monic gcd, run in two fixed buffers with explicit degree tracking so
    # the long Euclid chains allocate nothing; entries above the tracked
    # degree are stale and never read
    size = max(len(a), len(b), 1)
    buf_a = np.zeros(size, dtype=np.int64)
    buf_a[: len(a)] = a
    buf_b = np.zeros(size, dtype=np.int64)
    buf_b[: len(b)] = b
    da = _degree_scan(buf_a, len(a) - 1)
    db = _degree_scan(buf_b, len(b) - 1)
    if da < db:
        buf_a, buf_b, da, db = buf_b, buf_a, db, da
    while db >= 0:
        if db == 0:
            return np.ones(1, dtype=np.int64)
        binv = pow(int(buf_b[db]), p - 2, p)
        while da >= db:
            t = int(buf_a[da]) * binv % p
            if t:
                buf_a[da - db : da] = (buf_a[da - db : da] - t * buf_b[:db]) % p
            da = _degree_scan(buf_a, da - 1)
        buf_a, buf_b, da, db = buf_b, buf_a, db, da
    if da < 0:
        return buf_a[:0]
    g = buf_a[: da + 1].copy()
    if g[da] != 1:
        g = g * pow(int(g[da]), p - 2, p) % p
    return g


def _exact_div(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # quotient of a by monic b, asserting zero remainder
    db = len(b) - 1
    q = np.zeros(len(a) - db, dtype=np.int64)
    r = a.copy()
    for shift in range(len(a) - 1 - db, -1, -1):
        t = int(r[shift + db]) % p
        q[shift] = t
        if t:
            r[shift : shift + db + 1] = (r[shift : shift + db + 1] - t * b) % p
    assert not np.any(r % p), "division was expected to be exact"
    return q


def _reduction_rows(f: np.ndarray, p: int) -> np.ndarray:
    # rows[j] = X^(d+j) mod f for 0 <= j <= d-2, f monic of degree d >= 2
    d = len(f) - 1
    rows = np.zeros((d - 1, d), dtype=np.int64)
    base = (-f[:d]) % p
    rows[0] = base
    for j in range(1, d - 1):
        prev = rows[j - 1]
        r = np.zeros(d, dtype=np.int64)
        r[1:] = prev[:-1]
        top = int(prev[d - 1])
        if top:
            r = (r + top * base) % p
        rows[j] = r
    return rows


def _mulmod(a: np.ndarray, b: np.ndarray, rows: np.ndarray, p: int) -> np.ndarray:
    # a, b of length d (deg < d); result length d, reduced mod the monic f
    # behind ``rows``.  Safe in int64: see module docstring.
    d = len(a)
    c = np.convolve(a, b) % p
    if len(c) <= d:
        out = np.zeros(d, dtype=np.int64)
        out[: len(c)] = c
        return out
    high = c[d:]
    return (c[:d] + high @ rows[: len(high)]) % p


def _powmod(a: np.ndarray, e: int, rows: np.ndarray, p: int) -> np.ndarray:
    result = np.zeros(len(a), dtype=np.int64)
    result[0] = 1
    base = a
    while e:
        if e & 1:
            result = _mulmod(result, base, rows, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, rows, p)
    return result


def is_squarefree(f: ModPoly) -> bool:
    """True iff gcd(f, f') is constant, i.e. f has no repeated roots."""
    if f.is_zero:
        raise ValueError("squarefreeness is undefined for the zero polynomial")
    a = np.array(f.coeffs, dtype=np.int64)
    da = np.array(f.derivative().coeffs, dtype=np.int64)
    return len(_gcd(a, da, f.p)) <= 1


def distinct_degree_split(f: ModPoly) -> dict[int, ModPoly]:
    """Split monic squarefree f into subproducts by irreducible-factor degree.

    Returns {i: product of all irreducible factors of degree i}, each value
    monic, the product of all values equal to f.  Round i takes
    gcd(f_remaining, X^(p^i) - X), which collects exactly the degree-i
    factors; once 2i exceeds the remaining degree, what is left is itself
    irreducible.  The factors are never separated further: a factorization
    *pattern* only needs their degrees.
    """
    p = f.p
    if not f.is_monic:
        raise ValueError("distinct-degree splitting requires a monic polynomial")
    if not is_squarefree(f):
        raise ValueError("distinct-degree splitting requires a squarefree polynomial")
    out: dict[int, ModPoly] = {}
    fr = np.array(f.coeffs, dtype=np.int64)
    deg = len(fr) - 1
    if deg == 0:
        return out
    h = None  # X^(p^i) mod fr, fixed length deg(fr)
    rows = None  # reduction table for fr, rebuilt only after a division
    i = 0
    while deg > 0:
        i += 1
        if 2 * i > deg:
            out[deg] = ModPoly(p, tuple(int(c) for c in fr))
            break
        if h is None:
            h = np.zeros(deg, dtype=np.int64)
            h[1] = 1
        if rows is None:
            rows = _reduction_rows(fr, p)
        h = _powmod(h, p, rows, p)
        hx = h.copy()
        hx[1] = (hx[1] - 1) % p
        g = _gcd(fr, hx, p)
        gdeg = len(g) - 1
        if gdeg > 0:
            assert gdeg % i == 0, "degree-i subproduct must have degree divisible by i"
            out[i] = ModPoly(p, tuple(int(c) for c in g))
            fr = _exact_div(fr, g, p)
            deg = len(fr) - 1
            rows = None
            if deg >= 2:
                reduced = _rem(h, fr, p)
                h = np.zeros(deg, dtype=np.int64)
                h[: len(reduced)] = reduced
    return out


def factorization_pattern(f: ModPoly) -> Pattern:
    """Factorization pattern of a monic squarefree f over F_p.

    The multiset {degree: count} of its irreducible factors, computed by
    distinct-degree splitting alone; raises ValueError on non-squarefree
    input, where the pattern would be ill-defined.
    """
    split = distinct_degree_split(f)
    return Pattern.from_pairs((i, g.degree // i) for i, g in split.items())
