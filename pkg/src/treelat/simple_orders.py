"""Orders of the non-abelian finite simple groups up to 10^7.

The table is generated from the classical order formulas rather than typed
in by hand; isomorphic groups arising in several families (A5 = PSL(2,4) =
PSL(2,5), and so on) are merged into a single entry whose name lists the
aliases.  The one genuine order collision below 10^7 is 20160, shared by
the non-isomorphic groups A8 and PSL(3,4).

The table is informational: it labels simple groups in reports and never
feeds verdict logic.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, prod

TABLE_LIMIT = 10_000_000

# abstract groups that appear under several classical names; the first name
# is the one generated, the rest are suppressed from their own families
_ALIASES = {
    "A5": ["PSL(2,4)", "PSL(2,5)"],
    "A6": ["PSL(2,9)"],
    "PSL(2,7)": ["PSL(3,2)"],
    "A8": ["PSL(4,2)"],
    "PSp(4,3)": ["PSU(4,2)"],
}
_SUPPRESSED = {alias for aliases in _ALIASES.values() for alias in aliases}

_SPORADIC = [
    ("M11", 7_920),
    ("M12", 95_040),
    ("J1", 175_560),
    ("M22", 443_520),
    ("J2", 604_800),
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_powers(limit: int) -> list[int]:
    out = []
    for p in range(2, limit + 1):
        if _is_prime(p):
            q = p
            while q <= limit:
                out.append(q)
                q *= p
    return sorted(out)


def _psl_order(n: int, q: int) -> int:
    return (q ** (n * (n - 1) // 2)
            * prod(q ** i - 1 for i in range(2, n + 1))
            // gcd(n, q - 1))


def _psu_order(n: int, q: int) -> int:
    return (q ** (n * (n - 1) // 2)
            * prod(q ** i - (-1) ** i for i in range(2, n + 1))
            // gcd(n, q + 1))


def _psp_order(m: int, q: int) -> int:
    return (q ** (m * m)
            * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
            // gcd(2, q - 1))


def _generate() -> list[tuple[str, int]]:
    groups: list[tuple[str, int]] = []
    qs = _prime_powers(300)

    half_factorial = 60  # |A5|
    n = 5
    while half_factorial <= TABLE_LIMIT:
        groups.append((f"A{n}", half_factorial))
        n += 1
        half_factorial *= n

    # PSL(n,q); n=2 starts at q=4, PSL(2,2) and PSL(2,3) are solvable
    for dim in range(2, 8):
        if _psl_order(dim, 2) > TABLE_LIMIT and dim > 2:
            break
        for q in qs:
            if dim == 2 and q < 4:
                continue
            o = _psl_order(dim, q)
            if o > TABLE_LIMIT:
                break
            groups.append((f"PSL({dim},{q})", o))

    # PSU(n,q); PSU(2,q) = PSL(2,q), PSU(3,2) is solvable
    for dim in range(3, 8):
        if _psu_order(dim, 2) > TABLE_LIMIT:
            break
        for q in qs:
            if dim == 3 and q == 2:
                continue
            o = _psu_order(dim, q)
            if o > TABLE_LIMIT:
                break
            groups.append((f"PSU({dim},{q})", o))

    # PSp(2m,q); PSp(2,q) = PSL(2,q), Sp(4,2) is not simple
    for m in range(2, 6):
        if _psp_order(m, 2) > TABLE_LIMIT:
            break
        for q in qs:
            if m == 2 and q == 2:
                continue
            o = _psp_order(m, q)
            if o > TABLE_LIMIT:
                break
            groups.append((f"PSp({2 * m},{q})", o))

    # Suzuki groups Sz(q), q an odd power of 2, q >= 8
    q = 8
    while q * q * (q * q + 1) * (q - 1) <= TABLE_LIMIT:
        groups.append((f"Sz({q})", q * q * (q * q + 1) * (q - 1)))
        q *= 4

    # G2(q), q >= 3 (G2(2) is not simple; its derived group is PSU(3,3))
    for q in qs:
        if q < 3:
            continue
        o = q ** 6 * (q ** 6 - 1) * (q ** 2 - 1)
        if o > TABLE_LIMIT:
            break
        groups.append((f"G2({q})", o))

    groups.extend(_SPORADIC)
    return groups


@lru_cache(maxsize=1)
def simple_order_table() -> dict[int, tuple[str, ...]]:
    """Map order -> names of non-abelian simple groups of that order."""
    table: dict[int, list[str]] = {}
    for name, o in _generate():
        if name in _SUPPRESSED:
            continue
        display = name
        if name in _ALIASES:
            display = " ≅ ".join([name] + _ALIASES[name])
        table.setdefault(o, []).append(display)
    return {o: tuple(sorted(names)) for o, names in sorted(table.items())}


def simple_order_id(group_order: int) -> list[str]:
    """Names of the non-abelian simple groups of the given order.

    Empty when no such group exists (or the order is beyond the table);
    more than one entry marks a genuine order collision.
    """
    if group_order < 1:
        raise ValueError(f"order must be positive, got {group_order}")
    return list(simple_order_table().get(group_order, ()))
