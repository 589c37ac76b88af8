"""Truncated power series with exact integer coefficients.

A series of precision P stores the coefficients c_0 .. c_{P-1} of
sum_i c_i q^i.  Coefficients are plain Python ints, so every operation is
exact at arbitrary size; floating point is never used, and fixed-width
integers would be wrong (weight-12 coefficients pass 2^63 early).

Multiplication packs each coefficient array into one big integer
(Kronecker substitution, signed slots) so the whole convolution happens in
a single big-integer product, handled by GMP when gmpy2 is available and
by CPython's own integers otherwise.  Small inputs take a schoolbook path.
"""

from __future__ import annotations

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is declared as a dependency
    _mpz = int

_SCHOOLBOOK_CUTOFF = 48


class QSeries:
    """Immutable truncated integer power series."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a series needs precision at least 1")
        for c in coeffs:
            if not isinstance(c, int):
                raise ValueError(
                    "coefficients must be ints, got %s" % type(c).__name__
                )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.prec > 8 else ""
        return "QSeries([%s%s], prec=%d)" % (shown, more, self.prec)

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)


def _check_same_prec(f: QSeries, g: QSeries, what: str) -> None:
    if f.prec != g.prec:
        raise ValueError(
            "%s needs equal precisions, got %d and %d (no silent broadcasting)"
            % (what, f.prec, g.prec)
        )


def add(f: QSeries, g: QSeries) -> QSeries:
    """Coefficientwise sum; both operands must share one precision."""
    _check_same_prec(f, g, "add")
    return QSeries([a + b for a, b in zip(f.coeffs, g.coeffs)])


def truncate(f: QSeries, prec: int) -> QSeries:
    """Drop coefficients at and above `prec` (prec must not exceed f.prec)."""
    if not isinstance(prec, int) or prec < 1:
        raise ValueError("prec must be a positive integer")
    if prec > f.prec:
        raise ValueError(
            "cannot truncate to %d: only %d coefficients are known" % (prec, f.prec)
        )
    return QSeries(f.coeffs[:prec])


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Truncated product; both operands must share one precision."""
    _check_same_prec(f, g, "mul")
    return QSeries(_mul_lists(list(f.coeffs), list(g.coeffs), f.prec))


def _mul_lists(a, b, out_len):
    if out_len <= _SCHOOLBOOK_CUTOFF:
        return _schoolbook(a, b, out_len)
    return _kron_mul(a, b, out_len)


def _schoolbook(a, b, out_len):
    out = [0] * out_len
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), out_len - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return out


def _max_abs(coeffs):
    return max((abs(c) for c in coeffs), default=0)


def _pack(coeffs, width):
    """Pack signed coefficients into one int as a difference of two
    nonnegative little-endian slot arrays."""
    pos = bytearray(len(coeffs) * width)
    neg = bytearray(len(coeffs) * width)
    for i, c in enumerate(coeffs):
        if c:
            buf = pos if c > 0 else neg
            buf[i * width:(i + 1) * width] = abs(c).to_bytes(width, "little")
    return int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")


def _unpack(prod, width, out_len):
    """Read the low out_len slots of a signed Kronecker product.

    Masking a negative product to the kept slots leaves the two's-complement
    residue; adding half a slot to every position makes all digits
    nonnegative, after which each slot can be read off and re-centred.
    """
    slot_bits = 8 * width
    half = 1 << (slot_bits - 1)
    total = (prod & ((1 << (slot_bits * out_len)) - 1)) + int.from_bytes(
        (b"\x00" * (width - 1) + b"\x80") * out_len, "little"
    )
    raw = total.to_bytes(width * out_len + width, "little")
    return [
        int.from_bytes(raw[i * width:(i + 1) * width], "little") - half
        for i in range(out_len)
    ]


def _kron_mul(a, b, out_len):
    bound = min(len(a), len(b)) * _max_abs(a) * _max_abs(b)
    if bound == 0:
        return [0] * out_len
    # every product digit has absolute value <= bound; keep a sign bit spare
    width = (bound.bit_length() + 9) // 8
    prod = int(_mpz(_pack(a, width)) * _mpz(_pack(b, width)))
    return _unpack(prod, width, out_len)


def eta_power(k: int, prec: int) -> QSeries:
    """First `prec` coefficients of the weight-(k/2) eta power q-expansion.

    The expansion of the k-th eta power is q^(k/24) * prod_{l>=1} (1-q^l)^k,
    so it lives in integer powers of q exactly when 24 divides k; other
    exponents are rejected.  k = 24 starts 0, 1, -24, 252, ... and k = 48
    starts 0, 0, 1, -48, 1080, ...
    """
    if not isinstance(k, int) or not isinstance(prec, int):
        raise ValueError("k and prec must be ints")
    if prec < 1:
        raise ValueError("prec must be >= 1")
    if k < 0 or k % 24:
        raise ValueError("exponent must be a nonnegative multiple of 24, got %r" % (k,))
    if k == 0:
        return QSeries([1] + [0] * (prec - 1))
    shift = k // 24
    if prec <= shift:
        return QSeries([0] * prec)
    body = _power(_euler_factor(prec - shift), k)
    return QSeries([0] * shift + body)


def _euler_factor(prec):
    """Coefficients of prod_{l>=1} (1 - q^l) via the pentagonal-number
    expansion: 1 + sum_{j>=1} (-1)^j (q^(j(3j-1)/2) + q^(j(3j+1)/2))."""
    out = [0] * prec
    out[0] = 1
    j = 1
    while True:
        lo = j * (3 * j - 1) // 2
        hi = j * (3 * j + 1) // 2
        if lo >= prec and hi >= prec:
            break
        sign = -1 if j % 2 else 1
        if lo < prec:
            out[lo] = sign
        if hi < prec:
            out[hi] = sign
        j += 1
    return out


def _power(coeffs, k):
    """coeffs**k truncated to len(coeffs), by binary powering."""
    n = len(coeffs)
    result = None
    base = list(coeffs)
    e = k
    while e:
        if e & 1:
            result = base[:] if result is None else _mul_lists(result, base, n)
        e >>= 1
        if e:
            base = _mul_lists(base, base, n)
    if result is None:
        result = [1] + [0] * (n - 1)
    return result
