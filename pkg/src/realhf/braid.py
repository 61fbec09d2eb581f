"""Braid words, closure checks, and the Alexander/determinant oracle.

The determinant computed here is deliberately independent of the diagram
pipeline: it evaluates the Alexander polynomial obtained from the reduced
Burau representation, with exact integer arithmetic throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction


class BraidInputError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.strands < 2:
            raise BraidInputError("need at least 2 strands")
        if not self.letters:
            raise BraidInputError("empty braid word")
        for a in self.letters:
            if a == 0 or abs(a) > self.strands - 1:
                raise BraidInputError(
                    "letter %d out of range for %d strands" % (a, self.strands)
                )
        seen = {abs(a) for a in self.letters}
        missing = sorted(set(range(1, self.strands)) - seen)
        if missing:
            raise BraidInputError(
                "generator index %s never used; remove the unused strand(s) "
                "or destabilise the braid" % missing
            )
        if self.closure_components() != 1:
            raise BraidInputError(
                "closure has %d components, not a knot" % self.closure_components()
            )

    def permutation(self):
        """Underlying permutation, as the image list of 0..n-1."""
        perm = list(range(self.strands))
        for a in self.letters:
            i = abs(a) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return perm

    def closure_components(self):
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for s in range(self.strands):
            if seen[s]:
                continue
            count += 1
            j = s
            while not seen[j]:
                seen[j] = True
                j = perm[j]
        return count

    def writhe(self):
        return sum(1 if a > 0 else -1 for a in self.letters)

    def as_record(self):
        return {"strands": self.strands, "word": list(self.letters)}


def parse_braid(text, strands):
    """Parse a comma- or space-separated list of signed integers."""
    if not text or not text.strip():
        raise BraidInputError("empty braid word")
    pieces = text.replace(",", " ").split()
    try:
        letters = tuple(int(p) for p in pieces)
    except ValueError as exc:
        raise BraidInputError("cannot parse braid letter: %s" % exc) from exc
    return BraidWord(int(strands), letters)


# ---------------------------------------------------------------------------
# Laurent polynomials in one variable over Z, as {exponent: coefficient}


def _poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _poly_neg(p):
    return {e: -c for e, c in p.items()}


def _mat_mul(a, b):
    n = len(a)
    out = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if not a[i][k]:
                continue
            for j in range(n):
                if b[k][j]:
                    out[i][j] = _poly_add(out[i][j], _poly_mul(a[i][k], b[k][j]))
    return out


def _reduced_burau_generator(i, n, inverse=False):
    """Reduced Burau matrix of sigma_i (1-based) on n strands, size n-1."""
    m = [[({0: 1} if r == c else {}) for c in range(n - 1)] for r in range(n - 1)]
    t = {1: 1}
    tinv = {-1: 1}
    minus_t = {1: -1}
    minus_tinv = {-1: -1}
    one = {0: 1}
    k = i - 1  # row/col index of the generator in the reduced rep
    if not inverse:
        m[k][k] = dict(minus_t)
        if k > 0:
            m[k][k - 1] = dict(t)
        if k < n - 2:
            m[k][k + 1] = dict(one)
    else:
        m[k][k] = dict(minus_tinv)
        if k > 0:
            m[k][k - 1] = dict(one)
        if k < n - 2:
            m[k][k + 1] = dict(tinv)
    return m


def _poly_det(mat):
    """Determinant of a matrix of Laurent polynomials by cofactor expansion."""
    n = len(mat)
    if n == 0:
        return {0: 1}
    if n == 1:
        return dict(mat[0][0])
    total = {}
    for j in range(n):
        entry = mat[0][j]
        if not entry:
            continue
        minor = [
            [mat[r][c] for c in range(n) if c != j] for r in range(1, n)
        ]
        term = _poly_mul(entry, _poly_det(minor))
        if j % 2:
            term = _poly_neg(term)
        total = _poly_add(total, term)
    return total


def alexander_polynomial(braid):
    """Normalised Alexander polynomial coefficients of the braid closure.

    Returns a tuple of integer coefficients from lowest to highest degree,
    normalised so the lowest-degree coefficient is positive and the lowest
    degree is zero.  Computed as det(I - reduced Burau) * (1-t)/(1-t^n).
    """
    n = braid.strands
    size = n - 1
    mat = [[({0: 1} if r == c else {}) for c in range(size)] for r in range(size)]
    for a in braid.letters:
        mat = _mat_mul(mat, _reduced_burau_generator(abs(a), n, inverse=a < 0))
    diff = [
        [
            _poly_add({0: 1} if r == c else {}, _poly_neg(mat[r][c]))
            for c in range(size)
        ]
        for r in range(size)
    ]
    det = _poly_det(diff)
    if not det:
        return (0,)
    # divide by 1 + t + ... + t^{n-1}
    lo = min(det)
    hi = max(det)
    num = [det.get(e, 0) for e in range(lo, hi + 1)]
    quot = _poly_divide(num, [1] * n)
    # strip and normalise sign
    while quot and quot[-1] == 0:
        quot.pop()
    while quot and quot[0] == 0:
        quot.pop(0)
    if not quot:
        return (0,)
    if quot[0] < 0:
        quot = [-c for c in quot]
    return tuple(quot)


def _poly_divide(num, den):
    """Exact division of integer coefficient lists (lowest degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        if c % den[-1]:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[shift] = q
        if q:
            for k, d in enumerate(den):
                num[shift + k] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


def knot_determinant(braid):
    """|Alexander at -1|, computed from the reduced Burau representation."""
    coeffs = alexander_polynomial(braid)
    val = sum(c * (-1) ** e for e, c in enumerate(coeffs))
    return abs(val)


def markov_variants(braid, count, seed):
    """Braid words related to the input by conjugations and stabilisations."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        word = list(braid.letters)
        strands = braid.strands
        for _ in range(rng.randint(1, 4)):
            move = rng.choice(["conj", "stab+", "stab-"])
            if move == "conj":
                g = rng.randint(1, strands - 1) * rng.choice([1, -1])
                word = [g] + word + [-g]
            else:
                sign = 1 if move == "stab+" else -1
                word = word + [sign * strands]
                strands += 1
        out.append(BraidWord(strands, tuple(word)))
    return out
