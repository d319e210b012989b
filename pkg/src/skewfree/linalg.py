"""Exact rank and left kernels of sparse matrices over Q.

Rows are sparse dicts keyed by hashable column labels.  The exact routine is
a fraction-free elimination: rows are first scaled to integers, every update
is an integer cross-multiplication, and each row is divided by the gcd of
its entries to keep growth controlled.

A fixed-prime modular pass runs first: the rank mod p never exceeds the
rational rank, so a full-row-rank answer mod p *proves* full rank and the
slow exact pass is skipped.  Any deficient answer falls through to the exact
elimination, which is always authoritative.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Hashable, Sequence

_PRIME = (1 << 61) - 1


def clear_denominators(row: dict[Hashable, Fraction]) -> tuple[dict[Hashable, int], Fraction]:
    """Scale a rational row to a primitive integer row; return (row, scale).

    ``scale`` is the factor the original row was multiplied by.
    """
    if not row:
        return {}, Fraction(1)
    den = 1
    for c in row.values():
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    ints = {k: (c * den).numerator for k, c in row.items()}
    g = 0
    for v in ints.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        ints = {k: v // g for k, v in ints.items()}
    else:
        g = 1
    return ints, Fraction(den, g)


def _normalize(row: dict, lead_key: Hashable) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    if row[lead_key] < 0:
        g = -g
    if g not in (0, 1):
        row = {k: v // g for k, v in row.items()}
    return row


def rank_mod_prime(int_rows: Sequence[dict[Hashable, int]],
                   col_key: Callable[[Hashable], object]) -> int:
    """Rank of the rows over the field with _PRIME elements."""
    pivots: dict[Hashable, dict[Hashable, int]] = {}
    p = _PRIME
    for row in int_rows:
        v = {k: c % p for k, c in row.items() if c % p}
        while v:
            lead = min(v, key=col_key)
            pivot = pivots.get(lead)
            if pivot is None:
                inv = pow(v[lead], p - 2, p)
                pivots[lead] = {k: (c * inv) % p for k, c in v.items()}
                break
            factor = v[lead]
            for k, c in pivot.items():
                new = (v.get(k, 0) - factor * c) % p
                if new:
                    v[k] = new
                else:
                    v.pop(k, None)
    return len(pivots)


def rank_exact(int_rows: Sequence[dict[Hashable, int]],
               col_key: Callable[[Hashable], object]) -> int:
    """Exact rank via fraction-free elimination."""
    pivots: dict[Hashable, dict[Hashable, int]] = {}
    for row in int_rows:
        v = dict(row)
        while v:
            lead = min(v, key=col_key)
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = _normalize(v, lead)
                break
            a, b = pivot[lead], v[lead]
            v = _combine(v, pivot, a, b)
            g = 0
            for c in v.values():
                g = math.gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                v = {k: c // g for k, c in v.items()}
    return len(pivots)


def rank(rows: Sequence[dict[Hashable, Fraction]],
         col_key: Callable[[Hashable], object]) -> int:
    """Exact rank over Q of sparse rational rows."""
    int_rows = [clear_denominators(r)[0] for r in rows]
    nonzero = [r for r in int_rows if r]
    if not nonzero:
        return 0
    modular = rank_mod_prime(nonzero, col_key)
    if modular == len(nonzero):
        return modular
    return rank_exact(nonzero, col_key)


def left_kernel(rows: Sequence[dict[Hashable, Fraction]],
                col_key: Callable[[Hashable], object]) -> tuple[int, list[dict[int, Fraction]]]:
    """Exact rank and a basis of the left kernel.

    Kernel vectors are dicts mapping row indices to rational coefficients
    with ``sum coeff_i * row_i == 0``.
    """
    pivots: dict[Hashable, tuple[dict, dict]] = {}
    kernel: list[dict[int, Fraction]] = []
    scaled = []
    for idx, row in enumerate(rows):
        ints, scale = clear_denominators(row)
        scaled.append((ints, scale))
    for idx, (ints, scale) in enumerate(scaled):
        data = dict(ints)
        track = {idx: 1}
        while data:
            lead = min(data, key=col_key)
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = (data, track)
                break
            pdata, ptrack = pivot
            a, b = pdata[lead], data[lead]
            data = _combine(data, pdata, a, b)
            track = _combine(track, ptrack, a, b)
            g = 0
            for v in data.values():
                g = math.gcd(g, v)
            for v in track.values():
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                data = {k: v // g for k, v in data.items()}
                track = {k: v // g for k, v in track.items()}
        else:
            # row reduced to zero: tracked combination kills the scaled rows
            vec = {i: Fraction(c) * scaled[i][1] for i, c in track.items()}
            kernel.append(vec)
    return len(pivots), kernel


def _combine(v: dict, w: dict, a: int, b: int) -> dict:
    """a*v - b*w over the union of supports."""
    out = {k: c * a for k, c in v.items()}
    for k, c in w.items():
        new = out.get(k, 0) - b * c
        if new:
            out[k] = new
        else:
            out.pop(k, None)
    return out


class IntEchelon:
    """Incremental echelon basis over Q for streams of integer rows.

    Used by the growth series: vectors are inserted one by one and the
    current number of pivots is the dimension of their span.
    """

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[Hashable, dict[Hashable, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def nnz(self) -> int:
        return sum(len(row) for row in self.pivots.values())

    def insert(self, row: dict[Hashable, int]) -> bool:
        """Reduce row against the basis; add it if independent."""
        v = {k: c for k, c in row.items() if c}
        pivots = self.pivots
        while v:
            lead = max(v)
            pivot = pivots.get(lead)
            if pivot is None:
                g = 0
                for c in v.values():
                    g = math.gcd(g, c)
                    if g == 1:
                        break
                if v[lead] < 0:
                    g = -g
                if g not in (0, 1):
                    v = {k: c // g for k, c in v.items()}
                pivots[lead] = v
                return True
            a, b = pivot[lead], v[lead]
            v = _combine(v, pivot, a, b)
            g = 0
            for c in v.values():
                g = math.gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                v = {k: c // g for k, c in v.items()}
        return False
