"""Exact arithmetic in finite fields GF(q), q = p**e, up to 2**16.

Elements are canonical integers in [0, q).  Prime fields store the residue
itself; extension fields store the base-p digits of the polynomial
representation, constant coefficient first, so GF(4) with modulus
x^2 + x + 1 encodes x as 2 and x + 1 as 3.

Moduli are little-endian monic coefficient tuples over GF(p).  The binary
fields GF(4) .. GF(256) ship with the usual primitive default moduli; any
other extension accepts an explicit modulus or falls back to the smallest
irreducible polynomial in digit order, which keeps element encodings
reproducible across runs.
"""

from __future__ import annotations

import random

MAX_FIELD_SIZE = 1 << 16

# Primitive polynomials for GF(2^e), e = 2..8, little-endian coefficients.
_DEFAULT_BINARY_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),                    # x^2 + x + 1
    8: (1, 1, 0, 1),                 # x^3 + x + 1
    16: (1, 1, 0, 0, 1),             # x^4 + x + 1
    32: (1, 0, 1, 0, 0, 1),          # x^5 + x^2 + 1
    64: (1, 1, 0, 0, 0, 0, 1),       # x^6 + x + 1
    128: (1, 0, 0, 1, 0, 0, 0, 1),   # x^7 + x^3 + 1
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),  # x^8 + x^4 + x^3 + x^2 + 1
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"field size must be at least 2, got {q}")
    p = q
    for d in range(2, q):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"field size {q} is not a prime power")
    return p, e


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _digits(value: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(value % p)
        value //= p
    return out


def _undigits(digits: list[int], p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


# ---------------------------------------------------------------------------
# Polynomials over GF(p), little-endian coefficient lists.
# ---------------------------------------------------------------------------

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        av = a[i] if i < len(a) else 0
        bv = b[i] if i < len(b) else 0
        out[i] = (av - bv) % p
    return _poly_trim(out)


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if av == 0:
            continue
        for j, bv in enumerate(b):
            out[i + j] = (out[i + j] + av * bv) % p
    return _poly_trim(out)


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    deg_m = len(mod) - 1
    lead_inv = pow(mod[-1], -1, p)
    while len(a) - 1 >= deg_m and a:
        shift = len(a) - 1 - deg_m
        factor = a[-1] * lead_inv % p
        for i, mv in enumerate(mod):
            a[shift + i] = (a[shift + i] - factor * mv) % p
        _poly_trim(a)
    return a


def _poly_powmod(base: list[int], exp: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, mod, p)
    while exp:
        if exp & 1:
            result = _poly_mod(_poly_mul(result, base, p), mod, p)
        base = _poly_mod(_poly_mul(base, base, p), mod, p)
        exp >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_is_irreducible(mod: tuple[int, ...], p: int) -> bool:
    """Rabin test: f of degree e is irreducible over GF(p) iff
    x^(p^e) == x mod f and gcd(x^(p^(e/r)) - x, f) = 1 for prime r | e."""
    e = len(mod) - 1
    if e < 1 or mod[-1] % p == 0:
        return False
    modl = list(mod)
    x = [0, 1]
    t = _poly_powmod(x, p**e, modl, p)
    if _poly_sub(t, x, p):
        return False
    for r in _prime_factors(e):
        t = _poly_powmod(x, p ** (e // r), modl, p)
        g = _poly_gcd(_poly_sub(t, x, p), modl, p)
        if len(g) - 1 != 0:
            return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e in digit order of the low part."""
    for low in range(p**e):
        cand = tuple(_digits(low, p, e)) + (1,)
        if _poly_is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {e} over GF({p})")


# ---------------------------------------------------------------------------
# Field of scalars
# ---------------------------------------------------------------------------

class FieldSpec:
    """Arithmetic for one finite field GF(q).

    All operations are pure and take/return canonical integer encodings.
    Instances are immutable and safe to share between threads.
    """

    __slots__ = ("q", "p", "e", "modulus", "_modint", "_exp", "_log")

    def __init__(self, q: int, modulus: tuple[int, ...] | None = None):
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {q} exceeds supported maximum {MAX_FIELD_SIZE}")
        p, e = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
            self.modulus = None
            self._modint = 0
            self._exp = None
            self._log = None
            return
        if modulus is None:
            modulus = _DEFAULT_BINARY_MODULI.get(q) or _smallest_irreducible(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {e}, got {modulus}")
        if not _poly_is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus
        self._modint = _undigits(list(modulus), 2) if p == 2 else 0
        self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Polynomial product mod modulus, without the log table."""
        p, e = self.p, self.e
        if p == 2:
            m = self._modint
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> e) & 1:
                    a ^= m
            return r
        da = _digits(a, p, e)
        db = _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, av in enumerate(da):
            if av == 0:
                continue
            for j, bv in enumerate(db):
                prod[i + j] = (prod[i + j] + av * bv) % p
        mod = self.modulus
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i]
            if c:
                for j in range(e + 1):
                    prod[i - e + j] = (prod[i - e + j] - c * mod[j]) % p
        return _undigits(prod[:e], p)

    def _pow_raw(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            k >>= 1
        return r

    def _build_tables(self) -> None:
        q = self.q
        factors = _prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            if all(self._pow_raw(g, (q - 1) // f) != 1 for f in factors):
                gen = g
                break
        if gen is None:
            raise ValueError("no multiplicative generator found")
        exp = [0] * (q - 1)
        log = [0] * q
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, gen)
        self._exp = exp
        self._log = log

    # -- arithmetic ------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        r = 0
        mult = 1
        while a or b:
            r += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return r

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        r = 0
        mult = 1
        while a:
            r += (-a % p) * mult
            a //= p
            mult *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"zero has no multiplicative inverse in GF({self.q})")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if self.e == 1:
            return pow(a, k, self.p)
        if a == 0:
            return 0 if k else 1
        return self._exp[self._log[a] * k % (self.q - 1)]

    # -- element helpers ---------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def validate_element(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not a canonical GF({self.q}) element")
        return a

    def rand(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    def rand_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.q)

    # -- identity ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and other.q == self.q
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.q})"
        return f"GF({self.q}, modulus={self.modulus})"


_FIELD_CACHE: dict[tuple[int, tuple[int, ...] | None], FieldSpec] = {}


def GF(q: int, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Shared FieldSpec for GF(q); the default modulus is deterministic."""
    spec = FieldSpec(q, tuple(modulus) if modulus is not None else None)
    key = (spec.q, spec.modulus)
    cached = _FIELD_CACHE.get(key)
    if cached is None:
        _FIELD_CACHE[key] = cached = spec
    return cached
