"""Bit-packed boolean matrices and the integer kernels built on them.

Rows are packed into little-endian ``uint64`` words: column ``j`` of a row
lives in bit ``j % 64`` of word ``j // 64``.  Bits past ``cols`` are always
zero, so popcounts and equality tests can work on raw words.

Integer results ("IntMatrix" values) are plain ``numpy.uint64`` arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch

WORD_BITS = 64
MERSENNE61 = (1 << 61) - 1

# Cap on elements materialized by one chunk of a pairwise word sweep.
_CHUNK_ELEMS = 1 << 22


def n_words(cols: int) -> int:
    return (cols + WORD_BITS - 1) // WORD_BITS


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into ``(rows, n_words(cols))`` uint64 words."""
    dense = np.asarray(dense, dtype=bool)
    if dense.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D array, got shape {dense.shape}")
    rows, cols = dense.shape
    w = n_words(cols)
    padded = np.zeros((rows, w * WORD_BITS), dtype=bool)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False).reshape(rows, w)


def unpack_rows(words: np.ndarray, cols: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    rows = words.shape[0]
    if rows == 0 or words.size == 0:
        return np.zeros((rows, cols), dtype=bool)
    as_bytes = words.view(np.uint8).reshape(rows, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little", count=cols).astype(bool)


def get_bit(words: np.ndarray, j: int) -> np.ndarray:
    """Bit ``j`` of every packed row in ``words`` (any leading shape)."""
    return ((words[..., j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & np.uint64(1)).astype(bool)


def single_bit(cols: int, j: int) -> np.ndarray:
    row = np.zeros(n_words(cols), dtype=np.uint64)
    row[j // WORD_BITS] = np.uint64(1) << np.uint64(j % WORD_BITS)
    return row


class BoolMatrix:
    """Immutable bit-packed 0/1 matrix."""

    __slots__ = ("rows", "cols", "words", "_dense")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        words = np.array(words, dtype=np.uint64, copy=True)
        if words.shape != (rows, n_words(cols)):
            raise DimensionMismatch(
                f"word array shape {words.shape} does not fit a {rows}x{cols} matrix"
            )
        tail = cols % WORD_BITS
        if tail and rows and np.any(words[:, -1] >> np.uint64(tail)):
            raise ValueError("padding bits beyond the last column must be zero")
        words.flags.writeable = False
        self.rows = rows
        self.cols = cols
        self.words = words
        self._dense = None

    @classmethod
    def from_dense(cls, dense) -> BoolMatrix:
        dense = np.asarray(dense, dtype=bool)
        if dense.ndim != 2:
            if dense.size == 0:
                dense = dense.reshape(0, 0)
            else:
                raise DimensionMismatch(f"expected a 2-D array, got shape {dense.shape}")
        m = cls(dense.shape[0], dense.shape[1], pack_rows(dense))
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BoolMatrix:
        return cls(rows, cols, np.zeros((rows, n_words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> BoolMatrix:
        return cls.from_dense(np.eye(n, dtype=bool))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def dense(self) -> np.ndarray:
        """Unpacked read-only ``bool`` view, computed once."""
        if self._dense is None:
            d = unpack_rows(self.words, self.cols) if self.rows else np.zeros((0, self.cols), bool)
            d.flags.writeable = False
            self._dense = d
        return self._dense

    def __getitem__(self, index: tuple[int, int]) -> bool:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return bool(get_bit(self.words[i], j))

    def transpose(self) -> BoolMatrix:
        return BoolMatrix.from_dense(self.dense().T)

    @property
    def T(self) -> BoolMatrix:
        return self.transpose()

    def row_counts(self) -> np.ndarray:
        return np.bitwise_count(self.words).sum(axis=1, dtype=np.uint64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.words, other.words)

    def __hash__(self):
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BoolMatrix({self.rows}x{self.cols}, ones={int(self.row_counts().sum())})"


def _pair_sweep(left: np.ndarray, right: np.ndarray, reduce: str) -> np.ndarray:
    """Combine every packed row of ``left`` with every packed row of ``right``.

    ``reduce="count"`` gives popcount(l & r); ``reduce="any"`` gives (l & r) != 0.
    """
    r, w = left.shape
    c = right.shape[0]
    out = np.zeros((r, c), dtype=np.uint64 if reduce == "count" else bool)
    if r == 0 or c == 0 or w == 0:
        return out
    step = max(1, _CHUNK_ELEMS // max(1, c * w))
    for lo in range(0, r, step):
        both = left[lo:lo + step, None, :] & right[None, :, :]
        if reduce == "count":
            out[lo:lo + step] = np.bitwise_count(both).sum(axis=2, dtype=np.uint64)
        else:
            out[lo:lo + step] = both.any(axis=2)
    return out


def _check_inner(a: BoolMatrix, b: BoolMatrix) -> None:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Boolean product: ``C[i, j] = OR_k A[i, k] AND B[k, j]``."""
    _check_inner(a, b)
    hit = _pair_sweep(a.words, b.transpose().words, "any")
    return BoolMatrix.from_dense(hit)


def count_product(a: BoolMatrix, b: BoolMatrix) -> np.ndarray:
    """Witness counts ``C[i, j] = #{k : A[i, k] = B[k, j] = 1}`` by AND + popcount."""
    _check_inner(a, b)
    return _pair_sweep(a.words, b.transpose().words, "count")


def gram_counts(rows_words: np.ndarray) -> np.ndarray:
    """``popcount(R[i] & R[j])`` for all row pairs of one packed array."""
    return _pair_sweep(rows_words, rows_words, "count")


# -- arithmetic modulo the Mersenne prime 2^61 - 1 ------------------------------

_P = np.uint64(MERSENNE61)


def _fold61(x: np.ndarray) -> np.ndarray:
    """Reduce uint64 values below 2^63 modulo 2^61 - 1."""
    x = (x & _P) + (x >> np.uint64(61))
    return np.where(x >= _P, x - _P, x)


def _shl_mod61(x: np.ndarray, s: int) -> np.ndarray:
    # x < 2^61: rotating left by s inside 61 bits multiplies by 2^s mod p.
    if s == 0:
        return x
    lo = (x & np.uint64((1 << (61 - s)) - 1)) << np.uint64(s)
    hi = x >> np.uint64(61 - s)
    return _fold61(lo + hi)


def add_mod61(x, y) -> np.ndarray:
    return _fold61(np.asarray(x, dtype=np.uint64) + np.asarray(y, dtype=np.uint64))


def sub_mod61(x, y) -> np.ndarray:
    return add_mod61(x, _P - np.asarray(y, dtype=np.uint64))


@dataclass(frozen=True, eq=False)
class Fingerprint:
    """A random map ``f: V -> Z_p`` with ``f(S) = sum of f(x) for x in S (mod p)``."""

    p: int
    values: np.ndarray = field(repr=False)
    seed: int

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.uint64)
        if vals.size and int(vals.max()) >= self.p:
            raise ValueError("fingerprint values must lie in [0, p)")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def sample(cls, n: int, seed: int, attempt: int = 0, stream: int = 0,
               p: int = MERSENNE61) -> Fingerprint:
        # Philox is counter based: (seed, stream, attempt) pins the draw exactly.
        bitgen = np.random.Philox(np.random.SeedSequence([seed, stream, attempt]))
        vals = np.random.Generator(bitgen).integers(0, p, size=n, dtype=np.uint64)
        return cls(p=p, values=vals, seed=seed)

    def __len__(self) -> int:
        return len(self.values)

    def of_set(self, members) -> int:
        """``f(S)`` for an iterable of vertex ids."""
        total = 0
        for x in members:
            total += int(self.values[x])
        return total % self.p

    def total(self) -> int:
        """``f(V)``."""
        return self.of_set(range(len(self.values)))


def weighted_modp_product(a: BoolMatrix, weights: Fingerprint) -> np.ndarray:
    """``C[u, v] = sum_x A[x, u] * A[x, v] * f(x) mod p`` (the matrix ``A^T B``).

    Residues are split into 16-bit limbs so each float64 product sums at most
    ``rows * 2^16 < 2^53`` and is therefore exact.
    """
    if a.rows != len(weights):
        raise DimensionMismatch(f"{a.rows} rows but {len(weights)} weights")
    if weights.p != MERSENNE61:
        raise ValueError("only the 2^61 - 1 modulus has a vectorized kernel")
    n_cols = a.cols
    if a.rows == 0 or n_cols == 0:
        return np.zeros((n_cols, n_cols), dtype=np.uint64)
    dense = a.dense().astype(np.float64)
    out = np.zeros((n_cols, n_cols), dtype=np.uint64)
    vals = weights.values
    for limb in range(4):
        part = ((vals >> np.uint64(16 * limb)) & np.uint64(0xFFFF)).astype(np.float64)
        if not part.any():
            continue
        limb_sum = (dense.T @ (dense * part[:, None])).astype(np.uint64)
        out = _fold61(out + _shl_mod61(_fold61(limb_sum), 16 * limb))
    return out
