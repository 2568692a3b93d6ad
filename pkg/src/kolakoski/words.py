"""Finite words over two-symbol alphabets and run-length operations.

A word is an immutable byte-backed sequence of symbols drawn from a
two-symbol alphabet {a, b} of positive integers.  The module provides:

  * ``generate``          expand a run-length vector into a word whose
                          runs alternate symbols starting from a given one
  * ``run_length_encode`` maximal-run decomposition of a word
  * ``word_as_runs``      reinterpret a word's symbols as run lengths
                          (no run merging)
  * ``kolakoski_stream``  first n symbols of the self-describing sequence
                          K(a, b), the unique sequence over {a, b} starting
                          with a that equals its own run-length encoding
  * ``count_symbol``      exact occurrence count

Everything here is a pure function of its inputs; all values are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import MaterializationLimitError

#: Refuse to materialize words longer than this many symbols by default.
DEFAULT_CAP = 2**31

#: Default number of symbols per chunk in the streaming interfaces.
DEFAULT_CHUNK = 2**20

_VALIDATE_CHUNK = 2**26  # bounds the transient boolean mask during validation


@dataclass(frozen=True)
class Alphabet:
    """Two distinct positive symbols; ``a`` is the sequence's first symbol."""

    a: int
    b: int

    def __post_init__(self) -> None:
        for name, value in (("a", self.a), ("b", self.b)):
            if not isinstance(value, int) or not 1 <= value <= 255:
                raise ValueError(
                    f"symbol {name}={value!r} must be an integer in 1..255 "
                    "(symbols are stored one byte each)"
                )
        if self.a == self.b:
            raise ValueError(f"alphabet symbols must differ, got {self.a} twice")

    def __contains__(self, symbol: object) -> bool:
        return symbol == self.a or symbol == self.b

    def other(self, symbol: int) -> int:
        """The alternate symbol: other(a) = b and other(b) = a."""
        if symbol == self.a:
            return self.b
        if symbol == self.b:
            return self.a
        raise ValueError(f"symbol {symbol} not in alphabet {{{self.a},{self.b}}}")


@dataclass(frozen=True)
class Word:
    """Immutable finite word; every symbol must belong to ``alphabet``.

    The empty word is a permitted value (useful in concatenation
    identities) but is rejected by the run-length operations below.
    """

    data: bytes
    alphabet: Alphabet

    def __post_init__(self) -> None:
        arr = self.to_array()
        a, b = self.alphabet.a, self.alphabet.b
        for start in range(0, arr.size, _VALIDATE_CHUNK):
            view = arr[start : start + _VALIDATE_CHUNK]
            if not np.all((view == a) | (view == b)):
                bad = view[(view != a) & (view != b)][0]
                raise ValueError(
                    f"symbol {bad} not in alphabet {{{a},{b}}}"
                )

    @classmethod
    def from_symbols(cls, symbols: Iterable[int], alphabet: Alphabet) -> "Word":
        return cls(bytes(symbols), alphabet)

    def to_array(self) -> np.ndarray:
        """Zero-copy uint8 view of the symbols."""
        return np.frombuffer(self.data, dtype=np.uint8)

    @property
    def last_symbol(self) -> int:
        if not self.data:
            raise ValueError("empty word has no last symbol")
        return self.data[-1]

    def __len__(self) -> int:
        return len(self.data)

    def __getitem__(self, index: int) -> int:
        return self.data[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self.data)

    def __add__(self, other: "Word") -> "Word":
        if other.alphabet != self.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.data + other.data, self.alphabet)

    def __repr__(self) -> str:
        shown = " ".join(str(s) for s in self.data[:24])
        tail = " ..." if len(self.data) > 24 else ""
        return f"Word<{len(self.data)}>({shown}{tail})"


class RunLengthVector:
    """Finite sequence of positive run lengths r_1..r_m."""

    __slots__ = ("_runs",)

    def __init__(self, runs: Sequence[int] | np.ndarray):
        arr = np.asarray(runs, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("run lengths must form a one-dimensional sequence")
        if arr.size and int(arr.min()) < 1:
            raise ValueError("every run length must be >= 1")
        arr = arr.copy()
        arr.setflags(write=False)
        self._runs = arr

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "RunLengthVector":
        # internal fast path: arr already validated, int64, owned
        vec = object.__new__(cls)
        arr.setflags(write=False)
        vec._runs = arr
        return vec

    @property
    def runs(self) -> np.ndarray:
        return self._runs

    def total(self) -> int:
        """Sum of the run lengths = length of any word generated from them."""
        return int(self._runs.sum(dtype=np.int64)) if self._runs.size else 0

    def __len__(self) -> int:
        return self._runs.size

    def __getitem__(self, index: int) -> int:
        return int(self._runs[index])

    def __iter__(self) -> Iterator[int]:
        return iter(self._runs.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RunLengthVector):
            return NotImplemented
        return np.array_equal(self._runs, other._runs)

    def __repr__(self) -> str:
        shown = ",".join(str(r) for r in self._runs[:16])
        tail = ",..." if len(self) > 16 else ""
        return f"RunLengthVector({shown}{tail})"


def _alternating_symbols(
    count: int, first: int, second: int, start_parity: int = 0
) -> np.ndarray:
    """uint8 array [first, second, first, ...] shifted by start_parity."""
    syms = np.empty(count, dtype=np.uint8)
    if start_parity % 2 == 0:
        syms[0::2] = first
        syms[1::2] = second
    else:
        syms[0::2] = second
        syms[1::2] = first
    return syms


def generate(
    runs: RunLengthVector | Sequence[int],
    start: int,
    alphabet: Alphabet,
    *,
    cap: int = DEFAULT_CAP,
) -> Word:
    """Expand run lengths into a word: start^{r_1} . other^{r_2} . start^{r_3} ...

    The i-th run consists of r_i copies of ``start`` when i is odd and of
    the alternate symbol when i is even, so the output length is the sum
    of the run lengths and adjacent runs always carry distinct symbols.
    """
    vec = runs if isinstance(runs, RunLengthVector) else RunLengthVector(runs)
    if len(vec) == 0:
        raise ValueError("cannot generate from an empty run-length vector")
    if start not in alphabet:
        raise ValueError(
            f"start symbol {start} not in alphabet {{{alphabet.a},{alphabet.b}}}"
        )
    total = vec.total()
    if total > cap:
        raise MaterializationLimitError(total, cap, "generated word")
    syms = _alternating_symbols(len(vec), start, alphabet.other(start))
    return Word(np.repeat(syms, vec.runs).tobytes(), alphabet)


def run_length_encode(word: Word) -> tuple[RunLengthVector, int]:
    """Maximal-run decomposition: lengths of constant runs plus first symbol.

    Round trip: ``generate(runs, first, word.alphabet)`` rebuilds ``word``.
    """
    if len(word) == 0:
        raise ValueError("cannot run-length encode the empty word")
    arr = word.to_array()
    change = np.flatnonzero(arr[1:] != arr[:-1])
    starts = np.concatenate([[0], change + 1])
    ends = np.concatenate([change, [arr.size - 1]])
    runs = (ends - starts + 1).astype(np.int64)
    return RunLengthVector._trusted(runs), int(arr[0])


def word_as_runs(word: Word) -> RunLengthVector:
    """Reinterpret the word's symbols, elementwise, as run lengths.

    Distinct from ``run_length_encode``: no maximal-run merging happens;
    a word of length m yields exactly m run lengths.
    """
    if len(word) == 0:
        raise ValueError("cannot reinterpret the empty word as run lengths")
    return RunLengthVector._trusted(word.to_array().astype(np.int64))


def count_symbol(word: Word, symbol: int) -> int:
    """Exact number of occurrences of ``symbol`` in ``word``."""
    if symbol not in word.alphabet:
        raise ValueError(
            f"symbol {symbol} not in alphabet "
            f"{{{word.alphabet.a},{word.alphabet.b}}}"
        )
    return int(np.count_nonzero(word.to_array() == symbol))


def kolakoski_chunks(
    alphabet: Alphabet, n: int, chunk_size: int = DEFAULT_CHUNK
) -> Iterator[np.ndarray]:
    """Yield the first n symbols of K(a, b) as bounded uint8 chunks.

    Classical self-reading construction: the symbol at position i (1-based)
    of the emitted prefix is the length of run i, and run symbols alternate
    a, b, a, ... starting with a.  Pending run lengths are consumed
    strictly in emission order through a read pointer into the emitted
    buffer; nothing is ever re-derived by rescanning the prefix.  Peak
    memory is the emitted buffer itself, O(n).

    Run lengths are consumed in vectorized batches, which changes the
    throughput but not the order or the values consumed.
    """
    if n < 1:
        raise ValueError("need at least one symbol (n >= 1)")
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    a, b = alphabet.a, alphabet.b
    out = bytearray([a] * a)  # run 1 has length K[1] = a and symbol a
    read = 1                  # 0-based position whose value feeds the next run
    shipped = 0
    while shipped < n:
        if len(out) >= n:
            while shipped < n:
                hi = min(n, shipped + chunk_size)
                yield np.frombuffer(bytes(out[shipped:hi]), dtype=np.uint8)
                shipped = hi
            return
        if read >= len(out):
            # reading caught writing: the next run describes itself, so its
            # length equals its own symbol (happens at the start when a = 1)
            sym = a if read % 2 == 0 else b
            out += bytes([sym]) * sym
            read += 1
            continue
        batch = min(chunk_size, len(out) - read)
        lengths = np.frombuffer(bytes(out[read : read + batch]), dtype=np.uint8)
        # position read+j (0-based) feeds run read+j+1; odd runs take a
        syms = _alternating_symbols(batch, a, b, start_parity=read)
        out += np.repeat(syms, lengths).tobytes()
        read += batch
        while len(out) - shipped >= chunk_size and shipped + chunk_size <= n:
            yield np.frombuffer(
                bytes(out[shipped : shipped + chunk_size]), dtype=np.uint8
            )
            shipped += chunk_size


def kolakoski_stream(
    alphabet: Alphabet,
    n: int,
    *,
    cap: int = DEFAULT_CAP,
    chunk_size: int = DEFAULT_CHUNK,
) -> Word:
    """Materialize the first n symbols of K(a, b)."""
    if n < 1:
        raise ValueError("need at least one symbol (n >= 1)")
    if n > cap:
        raise MaterializationLimitError(n, cap, "sequence prefix")
    buf = bytearray()
    for chunk in kolakoski_chunks(alphabet, n, chunk_size):
        buf += chunk.tobytes()
    return Word(bytes(buf), alphabet)
