"""Block-pillar tower over the alphabet {1, 3} and its verifiers.

The tower is the nested construction

    block_1  = generate((1,3,3,3,1), start=1)       11 symbols
    pillar_1 = 3                                     1 symbol
    block_{n+1}  = block_n . pillar_n . block_n
    pillar_{n+1} = generate(pillar_n read as runs, start=3)

Every block is a prefix of K(1,3), and expanding a block's symbols as run
lengths reproduces the next block; ``verify_prefix`` and
``verify_kolakoski_step`` check exactly these two facts against the
independent self-reading generator, symbol by symbol.

Lengths grow geometrically (ratio -> 2.20557), so words beyond the
materialization cap are represented by their exact statistics only, and
``pillar_chunks`` / ``block_chunks`` stream their symbols from a stack of
lazy run-expanders instead.  Level construction is inherently sequential;
verifiers on already-built levels are pure and freely concurrent.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, replace

import numpy as np

from .errors import MaterializationLimitError
from .stats import LevelStats, advance_stats
from .words import (
    DEFAULT_CAP,
    DEFAULT_CHUNK,
    Alphabet,
    RunLengthVector,
    Word,
    _alternating_symbols,
    count_symbol,
    generate,
    kolakoski_chunks,
    word_as_runs,
)

#: The alphabet this tower lives on.
ALPHABET = Alphabet(1, 3)

#: Run lengths of the first five sequence symbols, the seed of block 1.
SEED_RUNS = (1, 3, 3, 3, 1)

_PILLAR_ROOT = np.array([3], dtype=np.uint8)
_BLOCK_ROOT = generate(RunLengthVector(SEED_RUNS), 1, ALPHABET).to_array()


@dataclass(frozen=True)
class Level:
    """One tower level: words when materialized, exact stats always.

    ``block_last`` is the block's final symbol even when the block itself
    is beyond the cap; it is inherited from the deepest materialized
    ancestor, which is exact because block_{n+1} ends with block_n.
    """

    n: int
    block: Word | None
    pillar: Word | None
    stats: LevelStats
    block_last: int


@dataclass(frozen=True)
class PrefixVerdict:
    """Outcome of comparing a block against the sequence prefix."""

    n: int
    length: int
    passed: bool
    first_mismatch: int | None = None  # 1-based position

    def describe(self) -> str:
        if self.passed:
            return f"block {self.n} = sequence prefix of length {self.length}"
        return f"block {self.n} differs at position {self.first_mismatch}"


@dataclass(frozen=True)
class StepVerdict:
    """Outcome of checking generate(block as runs, 1) = block.pillar.block."""

    n: int
    passed: bool
    first_mismatch: int | None = None

    def describe(self) -> str:
        if self.passed:
            return f"run expansion of block {self.n} rebuilds level {self.n + 1}"
        return f"run expansion of block {self.n} differs at {self.first_mismatch}"


@dataclass(frozen=True)
class LemmaVerdict:
    """Structural facts: odd pillar length, block ends 1, pillar ends 3."""

    n: int
    pillar_len_odd: bool
    block_ends_in_one: bool
    pillar_ends_in_three: bool

    @property
    def passed(self) -> bool:
        return (
            self.pillar_len_odd
            and self.block_ends_in_one
            and self.pillar_ends_in_three
        )


def initial_level(*, cap: int = DEFAULT_CAP) -> Level:
    """Level 1: block of length 11, pillar of length 1, counted stats."""
    block = generate(RunLengthVector(SEED_RUNS), 1, ALPHABET, cap=cap)
    pillar = Word(bytes([3]), ALPHABET)
    stats = LevelStats(
        n=1,
        block_len=len(block),
        pillar_len=len(pillar),
        block_ones=count_symbol(block, 1),
        pillar_ones=count_symbol(pillar, 1),
    )
    return Level(1, block, pillar, stats, block.last_symbol)


def _even_position_sum(chunks: Iterator[np.ndarray]) -> tuple[int, int]:
    """Sum of elements at even 1-based positions, plus the total length."""
    consumed = 0
    total = 0
    for arr in chunks:
        # element j (0-based) sits at absolute position consumed + j + 1
        offset = (consumed + 1) % 2
        total += int(arr[offset::2].sum(dtype=np.int64))
        consumed += arr.size
    return total, consumed


def next_level(
    level: Level, *, cap: int = DEFAULT_CAP, chunk_size: int = DEFAULT_CHUNK
) -> Level:
    """Build level n+1 from level n.

    Statistics stay exact even when the words are beyond the cap: the
    pillar-ones count of the next level is the sum of the even-indexed
    elements of the current pillar (those runs expand with symbol 1),
    read from the materialized pillar or from the pillar stream.
    """
    if level.pillar is not None:
        arr = level.pillar.to_array()
        next_pillar_ones = int(arr[1::2].sum(dtype=np.int64))
    else:
        next_pillar_ones, streamed = _even_position_sum(
            pillar_chunks(level.n, chunk_size)
        )
        assert streamed == level.stats.pillar_len
    stats = advance_stats(level.stats, next_pillar_ones)

    block = None
    if level.block is not None and level.pillar is not None:
        if stats.block_len <= cap:
            block = Word(
                level.block.data + level.pillar.data + level.block.data, ALPHABET
            )
            assert len(block) == stats.block_len

    pillar = None
    if level.pillar is not None and stats.pillar_len <= cap:
        pillar = generate(word_as_runs(level.pillar), 3, ALPHABET, cap=cap)
        assert len(pillar) == stats.pillar_len

    block_last = block.last_symbol if block is not None else level.block_last
    return Level(level.n + 1, block, pillar, stats, block_last)


def iter_levels(
    max_n: int, *, cap: int = DEFAULT_CAP, chunk_size: int = DEFAULT_CHUNK
) -> Iterator[Level]:
    """Levels 1..max_n in order; levels must be built sequentially."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    level = initial_level(cap=cap)
    yield level
    for _ in range(max_n - 1):
        level = next_level(level, cap=cap, chunk_size=chunk_size)
        yield level


def level_at(n: int, *, cap: int = DEFAULT_CAP, chunk_size: int = DEFAULT_CHUNK) -> Level:
    """Convenience: build and return level n (discarding the earlier ones)."""
    for level in iter_levels(n, cap=cap, chunk_size=chunk_size):
        if level.n == n:
            return level
    raise AssertionError("unreachable")


def _expand_pillar(source: Iterator[np.ndarray], chunk_size: int) -> Iterator[np.ndarray]:
    """One run-expansion stage: each incoming element is a run length.

    Run i (1-based) takes symbol 3 when i is odd, 1 when i is even.
    Output is re-sliced so every yielded chunk stays <= chunk_size.
    """
    consumed = 0
    for arr in source:
        syms = _alternating_symbols(arr.size, 3, 1, start_parity=consumed)
        out = np.repeat(syms, arr)
        consumed += arr.size
        for j in range(0, out.size, chunk_size):
            yield out[j : j + chunk_size]


def pillar_chunks(n: int, chunk_size: int = DEFAULT_CHUNK) -> Iterator[np.ndarray]:
    """Symbols of pillar n as bounded uint8 chunks.

    A stack of n-1 lazy run-expanders rooted at pillar 1; memory is
    O(n * chunk_size) and total work is proportional to the pillar length.
    """
    if n < 1:
        raise ValueError("level index must be >= 1")
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    source: Iterator[np.ndarray] = iter([_PILLAR_ROOT])
    for _ in range(n - 1):
        source = _expand_pillar(source, chunk_size)
    return source


def pillar_stream(n: int, chunk_size: int = DEFAULT_CHUNK) -> Iterator[int]:
    """Symbols of pillar n, one at a time."""
    for arr in pillar_chunks(n, chunk_size):
        yield from arr.tolist()


def block_chunks(n: int, chunk_size: int = DEFAULT_CHUNK) -> Iterator[np.ndarray]:
    """Symbols of block n as bounded chunks, via the nested recursion.

    The recursion bottoms out at the deepest level that fits in a single
    chunk, materialized once, so the number of recursion leaves stays
    proportional to the block length divided by the chunk size.
    """
    if n < 1:
        raise ValueError("level index must be >= 1")
    base_n, base = 1, _BLOCK_ROOT
    pillar = _PILLAR_ROOT
    while base_n < n and 2 * base.size + pillar.size <= chunk_size:
        base = np.concatenate([base, pillar, base])
        pillar = np.repeat(_alternating_symbols(pillar.size, 3, 1), pillar)
        base_n += 1
    if base_n == n:
        for j in range(0, base.size, chunk_size):
            yield base[j : j + chunk_size]
        return
    yield from _block_recursion(n, base_n, base, chunk_size)


def _block_recursion(
    n: int, base_n: int, base: np.ndarray, chunk_size: int
) -> Iterator[np.ndarray]:
    if n == base_n:
        yield base
        return
    yield from _block_recursion(n - 1, base_n, base, chunk_size)
    yield from pillar_chunks(n - 1, chunk_size)
    yield from _block_recursion(n - 1, base_n, base, chunk_size)


def _resident_chunks(arr: np.ndarray, chunk_size: int) -> Iterator[np.ndarray]:
    for j in range(0, arr.size, chunk_size):
        yield arr[j : j + chunk_size]


def first_mismatch(
    left: Iterator[np.ndarray], right: Iterator[np.ndarray]
) -> int | None:
    """0-based position of the first difference between two chunk streams.

    If one stream ends before the other, the position just past the
    shorter stream counts as the mismatch.  Returns None when the streams
    are identical and equally long.
    """
    pos = 0
    buf_l = buf_r = np.empty(0, dtype=np.uint8)
    done_l = done_r = False
    while True:
        while buf_l.size == 0 and not done_l:
            nxt = next(left, None)
            if nxt is None:
                done_l = True
            else:
                buf_l = nxt
        while buf_r.size == 0 and not done_r:
            nxt = next(right, None)
            if nxt is None:
                done_r = True
            else:
                buf_r = nxt
        if buf_l.size == 0 and buf_r.size == 0:
            return None
        if buf_l.size == 0 or buf_r.size == 0:
            return pos  # length mismatch
        k = min(buf_l.size, buf_r.size)
        if not np.array_equal(buf_l[:k], buf_r[:k]):
            return pos + int(np.flatnonzero(buf_l[:k] != buf_r[:k])[0])
        pos += k
        buf_l = buf_l[k:]
        buf_r = buf_r[k:]


def verify_prefix(level: Level, *, chunk_size: int = DEFAULT_CHUNK) -> PrefixVerdict:
    """Compare block n against the self-reading generator, chunk by chunk.

    Neither side needs to be fully resident: an absent block is streamed
    through the recursion, and the reference sequence is always streamed.
    """
    length = level.stats.block_len
    if level.block is not None:
        block_side = _resident_chunks(level.block.to_array(), chunk_size)
    else:
        block_side = block_chunks(level.n, chunk_size)
    reference = kolakoski_chunks(ALPHABET, length, chunk_size)
    mismatch = first_mismatch(block_side, reference)
    return PrefixVerdict(
        n=level.n,
        length=length,
        passed=mismatch is None,
        first_mismatch=None if mismatch is None else mismatch + 1,
    )


def _expansion_chunks(
    block_arr: np.ndarray, chunk_size: int
) -> Iterator[np.ndarray]:
    """generate(block read as runs, start=1), chunked: odd runs emit 1s."""
    consumed = 0
    for j in range(0, block_arr.size, chunk_size):
        lengths = block_arr[j : j + chunk_size]
        syms = _alternating_symbols(lengths.size, 1, 3, start_parity=consumed)
        out = np.repeat(syms, lengths)
        consumed += lengths.size
        for jj in range(0, out.size, chunk_size):
            yield out[jj : jj + chunk_size]


def verify_kolakoski_step(
    level: Level, *, chunk_size: int = DEFAULT_CHUNK
) -> StepVerdict:
    """Check that expanding block n as run lengths yields block.pillar.block.

    The right-hand side is the definition of block n+1, so this verifies
    the self-encoding step without needing level n+1 resident.
    """
    if level.block is None or level.pillar is None:
        raise MaterializationLimitError(
            level.stats.block_len, None, f"level {level.n} words (needed resident)"
        )

    def reference() -> Iterator[np.ndarray]:
        yield from _resident_chunks(level.block.to_array(), chunk_size)
        yield from _resident_chunks(level.pillar.to_array(), chunk_size)
        yield from _resident_chunks(level.block.to_array(), chunk_size)

    expansion = _expansion_chunks(level.block.to_array(), chunk_size)
    mismatch = first_mismatch(expansion, reference())
    return StepVerdict(
        n=level.n,
        passed=mismatch is None,
        first_mismatch=None if mismatch is None else mismatch + 1,
    )


def verify_lemma(level: Level, *, chunk_size: int = DEFAULT_CHUNK) -> LemmaVerdict:
    """Check the structural last-symbol and parity facts for one level.

    The pillar's last symbol is read from the materialized word or from
    the final streamed chunk; it is never derived from the parity
    argument those facts are supposed to test.
    """
    if level.pillar is not None:
        pillar_end = level.pillar.last_symbol
    else:
        pillar_end = 0
        for arr in pillar_chunks(level.n, chunk_size):
            pillar_end = int(arr[-1])
    return LemmaVerdict(
        n=level.n,
        pillar_len_odd=level.stats.pillar_len % 2 == 1,
        block_ends_in_one=level.block_last == 1,
        pillar_ends_in_three=pillar_end == 3,
    )


def inject_block_fault(level: Level, position: int) -> Level:
    """Fault-injection hook: flip one block symbol (1 <-> 3), 1-based.

    Returns a new level whose block differs from the true block at
    exactly ``position``; statistics are left untouched so verifiers see
    a corrupted build rather than a consistent alternative tower.
    """
    if level.block is None:
        raise ValueError("cannot corrupt a level whose block is not materialized")
    if not 1 <= position <= len(level.block):
        raise ValueError(
            f"position {position} outside block of length {len(level.block)}"
        )
    arr = level.block.to_array().copy()
    arr[position - 1] = 4 - arr[position - 1]  # 1 <-> 3
    corrupted = Word(arr.tobytes(), ALPHABET)
    return replace(level, block=corrupted, block_last=corrupted.last_symbol)
