"""Prime-field helpers: primality, Legendre symbols, Hensel square roots,
the congruence rules for 3 and 11 being squares, and prime scans."""
from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "is_prime",
    "primes_upto",
    "legendre",
    "least_sqrt_mod",
    "hensel_sqrt",
    "residue_rule",
    "RAMIFIED",
    "PrimePredicateReport",
    "scan_embedding_primes",
]

# Deterministic for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for every 64-bit input)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def least_sqrt_mod(n: int, p: int) -> int:
    """Least s in 1..p-1 with s^2 = n (mod p)."""
    n %= p
    for s in range(1, p):
        if s * s % p == n:
            return s
    raise ValueError(f"{n} is not a nonzero square mod {p}")


def hensel_sqrt(n: int, p: int, k: int, root: int | None = None) -> int:
    """Square root of n modulo p**k by Newton lifting.

    The returned s satisfies s*s = n (mod p**k) and s = root (mod p); when
    `root` is omitted the least residue root mod p is used.
    """
    _require_odd_prime(p)
    if k < 1:
        raise ValueError("precision k must be >= 1")
    if legendre(n, p) != 1:
        raise ValueError(f"{n} is not a nonzero quadratic residue mod {p}")
    if root is None:
        s = least_sqrt_mod(n, p)
    else:
        s = root % p
        if (s * s - n) % p:
            raise ValueError(f"{root}^2 != {n} (mod {p})")
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        mod = p**prec
        s = (s - (s * s - n) * pow(2 * s, -1, mod)) % mod
    return s % p**k


RAMIFIED = "ramified"

_RULE_CLASSES = {
    3: (12, {1, 11}),
    11: (44, {1, 43, 9, 35, 5, 39, 7, 37, 19, 25}),
}


def residue_rule(a: int, q: int) -> bool:
    """Whether a in {3, 11} is a square mod the odd prime q, decided only from
    the congruence class of q (mod 12 for 3, mod 44 for 11).

    Raises ValueError when q divides a; use `residue_status` for a tri-state.
    """
    if a not in _RULE_CLASSES:
        raise ValueError(f"no congruence rule for a={a}; supported: 3, 11")
    _require_odd_prime(q)
    if q % a == 0:
        raise ValueError(f"q={q} divides a={a} (ramified)")
    modulus, classes = _RULE_CLASSES[a]
    return q % modulus in classes


def residue_status(a: int, q: int) -> bool | str:
    """`residue_rule`, except that q | a yields RAMIFIED."""
    if a in _RULE_CLASSES and q % a == 0:
        return RAMIFIED
    return residue_rule(a, q)


@dataclass(frozen=True)
class PrimePredicateReport:
    prime: int
    mod4_3: bool
    qr: dict[int, bool | str] = field(default_factory=dict)

    @property
    def passes(self) -> dict[str, bool]:
        out = {"mod4_3": self.mod4_3}
        out.update({f"qr_{a}": v is True for a, v in self.qr.items()})
        return out


def scan_embedding_primes(
    require_mod4_3: bool, require_qr: list[int], limit: int
) -> list[PrimePredicateReport]:
    """Odd primes p <= limit that are 3 mod 4 (if requested) and for which each
    integer in `require_qr` is a nonzero square mod p.

    A prime dividing one of the required residues is excluded (ramified).
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    out = []
    for p in primes_upto(limit):
        if p == 2:
            continue
        qr: dict[int, bool | str] = {}
        for a in require_qr:
            qr[a] = RAMIFIED if a % p == 0 else legendre(a, p) == 1
        report = PrimePredicateReport(p, p % 4 == 3, qr)
        if require_mod4_3 and not report.mod4_3:
            continue
        if all(v is True for v in qr.values()):
            out.append(report)
    return out
