"""Reed-Solomon coding over GF(2^m).

Narrow-sense systematic codes: the generator polynomial has roots
alpha^1 .. alpha^(n-k), encoding appends the remainder of msg * x^(n-k)
divided by the generator, and decoding runs syndromes -> Berlekamp-Massey ->
Chien search -> Forney.  Decoding fails loudly (RsDecodeError) whenever the
error locator is inconsistent with the Chien roots or exceeds degree t; it
never silently applies a bad locator.

Defaults target byte-oriented use: GF(2^8) with primitive polynomial 0x11D
and RS(255, 223), correcting t = 16 symbol errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GaloisField",
    "RsCode",
    "RsDecodeError",
    "rs_encode",
    "rs_decode",
    "GF256",
    "default_code",
]


class GaloisField:
    """GF(2^m) arithmetic through log/antilog tables."""

    def __init__(self, m: int, primitive_poly: int):
        if not 2 <= m <= 16:
            raise ValueError("field exponent must be in [2, 16]")
        self.m = m
        self.size = 1 << m
        self.order = self.size - 1  # multiplicative group order
        self.primitive_poly = primitive_poly
        exp = np.zeros(2 * self.order, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        x = 1
        for i in range(self.order):
            if x == 1 and i > 0:
                raise ValueError(f"0x{primitive_poly:x} is not primitive for GF(2^{m})")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.size:
                x ^= primitive_poly
        if x != 1:
            raise ValueError(f"0x{primitive_poly:x} is not primitive for GF(2^{m})")
        exp[self.order:] = exp[: self.order]  # doubled so products skip a mod
        self.exp = exp
        self.log = log

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^m)")
        if a == 0:
            return 0
        return int(self.exp[self.log[a] - self.log[b] + self.order])

    def pow_alpha(self, e: int) -> int:
        """alpha**e for the fixed generator alpha = 2."""
        return int(self.exp[e % self.order])

    def inv(self, a: int) -> int:
        return self.div(1, a)

    def poly_mul(self, p, q) -> list[int]:
        out = [0] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            if pi == 0:
                continue
            for j, qj in enumerate(q):
                out[i + j] ^= self.mul(pi, qj)
        return out

    def poly_eval(self, poly, x: int) -> int:
        """Horner evaluation; coefficients ordered highest degree first."""
        acc = 0
        for coef in poly:
            acc = self.mul(acc, x) ^ coef
        return acc


GF256 = GaloisField(8, 0x11D)


@dataclass(frozen=True)
class RsCode:
    """RS(n, k) over `field`; corrects up to t = (n - k) // 2 symbol errors."""

    field: GaloisField
    n: int
    k: int
    generator_poly: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.k < self.n <= self.field.size - 1:
            raise ValueError(f"need 1 <= k < n <= {self.field.size - 1}")
        if (self.n - self.k) % 2 != 0:
            raise ValueError("n - k must be even")
        g = [1]
        for i in range(1, self.n - self.k + 1):
            g = self.field.poly_mul(g, [1, self.field.pow_alpha(i)])
        object.__setattr__(self, "generator_poly", tuple(g))
        object.__setattr__(self, "_parity_rows", self._build_parity_rows())
        object.__setattr__(self, "_synd_pow", self._build_synd_pow())

    @property
    def t(self) -> int:
        return (self.n - self.k) // 2

    @property
    def parity(self) -> int:
        return self.n - self.k

    def _build_parity_rows(self) -> np.ndarray:
        """Row i holds x^(n-1-i) mod g, so parity(msg) = xor_i msg_i * row_i."""
        f = self.field
        gen = self.generator_poly
        p = self.parity
        cur = [0] * p  # highest coefficient first
        cur[0] = 1     # x^(p-1); the first shift below lands on x^p mod g
        rows = np.zeros((self.k, p), dtype=np.int64)
        for j in range(self.k):
            # multiply by x, reduce by the monic generator
            lead, cur = cur[0], cur[1:] + [0]
            if lead:
                for d in range(p):
                    cur[d] ^= f.mul(gen[d + 1], lead)
            rows[self.k - 1 - j] = cur
        return rows

    def _build_synd_pow(self) -> np.ndarray:
        """(parity, n) exponent table: entry (i, pos) = (i+1)*(n-1-pos) mod order."""
        i = np.arange(1, self.parity + 1)[:, None]
        deg = np.arange(self.n - 1, -1, -1)[None, :]
        return (i * deg) % self.field.order


def default_code() -> RsCode:
    return RsCode(GF256, 255, 223)


class RsDecodeError(ValueError):
    """Received word has more errors than the code can locate consistently."""


def rs_encode(code: RsCode, msg) -> list[int]:
    """Systematic encode: msg followed by the generator-division remainder."""
    msg = [int(s) for s in msg]
    if len(msg) != code.k:
        raise ValueError(f"message must have {code.k} symbols, got {len(msg)}")
    if any(not 0 <= s < code.field.size for s in msg):
        raise ValueError(f"symbols must lie in [0, {code.field.size})")
    f = code.field
    m = np.asarray(msg, dtype=np.int64)
    rows = code._parity_rows
    nz = m != 0
    if not nz.any():
        return msg + [0] * code.parity
    terms = np.where(
        rows[nz] == 0, 0, f.exp[(f.log[m[nz]][:, None] + f.log[rows[nz]])]
    )
    parity = np.bitwise_xor.reduce(terms, axis=0)
    return msg + [int(s) for s in parity]


def _syndromes(code: RsCode, received: np.ndarray) -> np.ndarray:
    f = code.field
    nz = received != 0
    if not nz.any():
        return np.zeros(code.parity, dtype=np.int64)
    logs = f.log[received[nz]]
    terms = f.exp[(logs[None, :] + code._synd_pow[:, nz]) % f.order]
    return np.bitwise_xor.reduce(terms, axis=1)


def _berlekamp_massey(code: RsCode, synd) -> list[int]:
    """Minimal LFSR (error locator, lowest degree first) for the syndromes."""
    f = code.field
    locator = [1]
    backup = [1]
    L = 0
    gap = 1
    backup_disc = 1
    for i in range(code.parity):
        disc = int(synd[i])
        for d in range(1, L + 1):
            if d < len(locator) and locator[d]:
                disc ^= f.mul(locator[d], int(synd[i - d]))
        if disc == 0:
            gap += 1
            continue
        scale = f.div(disc, backup_disc)
        update = [0] * gap + [f.mul(scale, c) for c in backup]
        if 2 * L <= i:
            saved = list(locator)
            locator = _poly_add(locator, update)
            L = i + 1 - L
            backup = saved
            backup_disc = disc
            gap = 1
        else:
            locator = _poly_add(locator, update)
            gap += 1
    locator = locator[: L + 1] + [0] * max(0, L + 1 - len(locator))
    return locator


def _poly_add(p, q) -> list[int]:
    out = [0] * max(len(p), len(q))
    for i, v in enumerate(p):
        out[i] ^= v
    for i, v in enumerate(q):
        out[i] ^= v
    return out


def _chien_search(code: RsCode, locator) -> list[int]:
    """Positions where the locator evaluates to zero at alpha^-(n-1-pos)."""
    f = code.field
    deg_pos = np.arange(code.n - 1, -1, -1)  # codeword degree per position
    acc = np.full(code.n, locator[0], dtype=np.int64)
    for d in range(1, len(locator)):
        if locator[d] == 0:
            continue
        expo = (f.log[locator[d]] + (-d * deg_pos) % f.order) % f.order
        acc ^= f.exp[expo]
    return [int(p) for p in np.flatnonzero(acc == 0)]


def rs_decode(code: RsCode, received) -> tuple[list[int], int]:
    """Correct up to t symbol errors; returns (message, symbols corrected).

    Raises RsDecodeError when the error pattern is inconsistent (more than t
    errors as far as the decoder can tell).
    """
    received = [int(s) for s in received]
    if len(received) != code.n:
        raise ValueError(f"received word must have {code.n} symbols, got {len(received)}")
    if any(not 0 <= s < code.field.size for s in received):
        raise ValueError(f"symbols must lie in [0, {code.field.size})")
    f = code.field
    r = np.asarray(received, dtype=np.int64)
    synd = _syndromes(code, r)
    if not synd.any():
        return received[: code.k], 0

    locator = _berlekamp_massey(code, synd)
    n_errors = len(locator) - 1
    if n_errors > code.t:
        raise RsDecodeError(f"locator degree {n_errors} exceeds t={code.t}")
    err_pos = _chien_search(code, locator)
    if len(err_pos) != n_errors:
        raise RsDecodeError(
            f"Chien search found {len(err_pos)} roots for a degree-{n_errors} locator"
        )

    # Forney, first consecutive root alpha^1:
    # evaluator = (S(z) * locator(z)) mod z^parity, both lowest degree first,
    # and magnitude_j = evaluator(X_j^-1) / locator'(X_j^-1).
    omega = [0] * code.parity
    for i, li in enumerate(locator):
        if li == 0:
            continue
        for j in range(min(code.parity - i, code.parity)):
            sj = int(synd[j])
            if sj:
                omega[i + j] ^= f.mul(li, sj)

    corrected = list(received)
    for pos in err_pos:
        x = f.pow_alpha(code.n - 1 - pos)
        x_inv = f.inv(x)
        om = 0
        z = 1
        for d in range(len(omega)):
            if omega[d]:
                om ^= f.mul(omega[d], z)
            z = f.mul(z, x_inv)
        deriv = 0
        z = 1  # x_inv^(d-1) for odd d
        for d in range(1, len(locator)):
            if d % 2 == 1 and locator[d]:
                deriv ^= f.mul(locator[d], z)
            z = f.mul(z, x_inv)
        if deriv == 0:
            raise RsDecodeError("zero locator derivative during Forney evaluation")
        corrected[pos] ^= f.mul(om, f.inv(deriv))

    if _syndromes(code, np.asarray(corrected, dtype=np.int64)).any():
        raise RsDecodeError("correction left nonzero syndromes")
    return corrected[: code.k], len(err_pos)
