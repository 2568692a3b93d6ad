"""Empirical search for block-pillar structure in arbitrary K(a, b).

For each block length the scanner takes the sequence prefix as the seed
block, reads the seed pillar directly out of the sequence between the
first two block copies, and then iterates the tower recursion

    block'  = block . pillar . block
    pillar' = generate(pillar read as runs, start=b)

counting how many generated levels remain true prefixes of K(a, b).
A seed is admissible only when its pillar ends with the alternate symbol
b, matching the structural last-symbol property of the known {1, 3}
tower; without it, sub-seeds of a working tower (which converge to the
same levels one step later) show up as duplicates.

Absence of candidates is always "none within these bounds", never a
proof of non-existence.
"""

from __future__ import annotations

from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import MaterializationLimitError
from .words import (
    DEFAULT_CAP,
    Alphabet,
    Word,
    generate,
    kolakoski_stream,
    word_as_runs,
)


@dataclass(frozen=True)
class Candidate:
    """A seed (block, pillar) whose recursion kept producing true prefixes.

    verified_depth counts recursion steps beyond the seed: step j checks
    that the j-th generated block (length roughly alpha^j times the seed)
    is still a prefix of the sequence.  Depth >= 1 therefore already
    implies block . pillar . block is a true prefix.
    """

    alphabet: Alphabet
    block_len: int
    pillar: Word
    verified_depth: int


class _PrefixCache:
    """Grow-only cache of one K(a, b) prefix."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._data = b""

    def prefix(self, length: int) -> bytes:
        if length > len(self._data):
            # regenerate with headroom; generation is cheap and chunked
            self._data = kolakoski_stream(self.alphabet, 2 * length).data
        return self._data[:length]


def _verified_steps(
    alphabet: Alphabet,
    block: bytes,
    pillar: bytes,
    depth: int,
    cache: _PrefixCache,
    cap: int,
) -> int:
    """Number of consecutive recursion steps that yield true prefixes."""
    steps = 0
    for _ in range(depth):
        grown = block + pillar + block
        if len(grown) > cap:
            raise MaterializationLimitError(len(grown), cap, "candidate block")
        if grown != cache.prefix(len(grown)):
            break
        steps += 1
        pillar = generate(
            word_as_runs(Word(pillar, alphabet)), alphabet.b, alphabet, cap=cap
        ).data
        block = grown
    return steps


def _probe(
    alphabet: Alphabet,
    block_len: int,
    max_pillar: int,
    depth: int,
    cache: _PrefixCache,
    cap: int,
) -> Candidate | None:
    head = cache.prefix(2 * block_len + max_pillar)
    block = head[:block_len]
    for gap in range(1, max_pillar + 1):
        if head[block_len + gap : 2 * block_len + gap] == block:
            pillar = head[block_len : block_len + gap]
            if pillar[-1] != alphabet.b:
                return None  # seed pillar must end with the alternate symbol
            steps = _verified_steps(alphabet, block, pillar, depth, cache, cap)
            if steps >= 2:
                return Candidate(
                    alphabet=alphabet,
                    block_len=block_len,
                    pillar=Word(pillar, alphabet),
                    verified_depth=steps,
                )
            return None
    return None


def detect(
    alphabet: Alphabet,
    max_block: int,
    max_pillar: int = 8,
    depth: int = 3,
    *,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> list[Candidate]:
    """Scan block lengths 1..max_block for tower seeds in K(a, b).

    For each block length only the first (smallest) gap whose second
    block copy matches is considered.  Candidates must survive at least
    two recursion steps; results are ranked by verified depth, then by
    block length and pillar length.  Probes are independent, so a worker
    pool just partitions them; the merged order is deterministic.
    """
    if max_block < 1 or max_pillar < 1 or depth < 1:
        raise ValueError("max_block, max_pillar and depth must all be >= 1")

    def run(lengths: Iterable[int]) -> list[Candidate | None]:
        cache = _PrefixCache(alphabet)
        return [
            _probe(alphabet, b1, max_pillar, depth, cache, cap) for b1 in lengths
        ]

    lengths = range(1, max_block + 1)
    if workers and workers > 1:
        slices = [list(lengths)[i::workers] for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(run, slices))
        found = [c for batch in batches for c in batch if c is not None]
    else:
        found = [c for c in run(lengths) if c is not None]
    found.sort(key=lambda c: (-c.verified_depth, c.block_len, len(c.pillar)))
    return found
