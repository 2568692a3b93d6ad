import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kolakoski import (
    Alphabet,
    MaterializationLimitError,
    RunLengthVector,
    Word,
    count_symbol,
    generate,
    kolakoski_chunks,
    kolakoski_stream,
    run_length_encode,
    word_as_runs,
)

A13 = Alphabet(1, 3)
A12 = Alphabet(1, 2)

BLOCK1 = [1, 3, 3, 3, 1, 1, 1, 3, 3, 3, 1]

alphabets = st.sampled_from([(1, 3), (1, 2), (2, 3), (3, 5), (5, 2)])


def make_word(symbol_choices, alphabet):
    return Word(bytes(symbol_choices), alphabet)


# --- alphabet and word basics ---

def test_alphabet_rejects_equal_symbols():
    with pytest.raises(ValueError):
        Alphabet(2, 2)


@pytest.mark.parametrize("a,b", [(0, 1), (-1, 3), (1, 256), (1, 0)])
def test_alphabet_rejects_out_of_range(a, b):
    with pytest.raises(ValueError):
        Alphabet(a, b)


def test_alphabet_other():
    assert A13.other(1) == 3
    assert A13.other(3) == 1
    with pytest.raises(ValueError):
        A13.other(2)


def test_word_rejects_foreign_symbol():
    with pytest.raises(ValueError):
        Word(bytes([1, 3, 2]), A13)


def test_word_empty_is_a_value():
    empty = Word(b"", A13)
    assert len(empty) == 0
    assert list(empty) == []


def test_word_concat_requires_same_alphabet():
    with pytest.raises(ValueError):
        Word(bytes([1]), A13) + Word(bytes([1]), A12)


def test_run_length_vector_rejects_nonpositive():
    with pytest.raises(ValueError):
        RunLengthVector([1, 0, 2])
    with pytest.raises(ValueError):
        RunLengthVector([-3])


# --- generate ---

def test_generate_block_seed():
    word = generate(RunLengthVector([1, 3, 3, 3, 1]), 1, A13)
    assert list(word) == BLOCK1
    assert len(word) == 11


def test_generate_single_run_of_threes():
    assert list(generate([3], 3, A13)) == [3, 3, 3]


def test_generate_unit_run():
    assert list(generate([1], 1, A13)) == [1]


def test_generate_alternates_three_runs():
    # hand expansion: 3^3 . 1^3 . 3^3, nine symbols
    assert list(generate([3, 3, 3], 3, A13)) == [3, 3, 3, 1, 1, 1, 3, 3, 3]


def test_generate_rejects_bad_start():
    with pytest.raises(ValueError):
        generate([1, 2], 2, A13)


def test_generate_rejects_empty_runs():
    with pytest.raises(ValueError):
        generate([], 1, A13)


def test_generate_respects_cap():
    with pytest.raises(MaterializationLimitError):
        generate([100, 100], 1, A13, cap=150)


@settings(max_examples=200, deadline=None)
@given(
    runs=st.lists(st.integers(1, 50), min_size=1, max_size=40),
    pair=alphabets,
    start_first=st.booleans(),
)
def test_generate_length_law(runs, pair, start_first):
    alphabet = Alphabet(*pair)
    start = alphabet.a if start_first else alphabet.b
    word = generate(runs, start, alphabet)
    assert len(word) == sum(runs)


# --- run_length_encode / word_as_runs ---

def test_encode_block_one():
    runs, first = run_length_encode(Word(bytes(BLOCK1), A13))
    assert list(runs) == [1, 3, 3, 3, 1]
    assert first == 1


def test_encode_single_run():
    runs, first = run_length_encode(Word(bytes([3, 3, 3]), A13))
    assert list(runs) == [3]
    assert first == 3


def test_encode_rejects_empty():
    with pytest.raises(ValueError):
        run_length_encode(Word(b"", A13))


def test_word_as_runs_examples():
    assert list(word_as_runs(Word(bytes([3, 3, 3]), A13))) == [3, 3, 3]
    assert list(word_as_runs(Word(bytes([1]), A13))) == [1]
    # no run merging: the block itself gives eleven run lengths
    assert list(word_as_runs(Word(bytes(BLOCK1), A13))) == BLOCK1


def test_word_as_runs_rejects_empty():
    with pytest.raises(ValueError):
        word_as_runs(Word(b"", A13))


@settings(max_examples=300, deadline=None)
@given(
    data=st.data(),
    pair=alphabets,
    length=st.integers(1, 200),
)
def test_round_trip_encode_then_generate(data, pair, length):
    alphabet = Alphabet(*pair)
    symbols = data.draw(
        st.lists(st.sampled_from(pair), min_size=length, max_size=length)
    )
    word = make_word(symbols, alphabet)
    runs, first = run_length_encode(word)
    assert generate(runs, first, alphabet) == word


@settings(max_examples=300, deadline=None)
@given(
    runs=st.lists(st.integers(1, 30), min_size=1, max_size=50),
    pair=alphabets,
    start_first=st.booleans(),
)
def test_encode_of_generated_word_returns_runs(runs, pair, start_first):
    # alternation guarantees adjacent runs differ, so maximal runs are the input
    alphabet = Alphabet(*pair)
    start = alphabet.a if start_first else alphabet.b
    got_runs, got_first = run_length_encode(generate(runs, start, alphabet))
    assert list(got_runs) == runs
    assert got_first == start


# --- count_symbol ---

def test_count_symbol_block_one():
    assert count_symbol(Word(bytes(BLOCK1), A13), 1) == 5
    assert count_symbol(Word(bytes(BLOCK1), A13), 3) == 6


def test_count_symbol_absent_and_single():
    assert count_symbol(Word(bytes([3, 3, 3]), A13), 1) == 0
    assert count_symbol(Word(bytes([1]), A13), 1) == 1


def test_count_symbol_rejects_foreign():
    with pytest.raises(ValueError):
        count_symbol(Word(bytes([1, 3]), A13), 2)


@settings(max_examples=100, deadline=None)
@given(
    left=st.lists(st.sampled_from([1, 3]), max_size=60),
    right=st.lists(st.sampled_from([1, 3]), max_size=60),
)
def test_count_additivity(left, right):
    u, v = make_word(left, A13), make_word(right, A13)
    for symbol in (1, 3):
        assert count_symbol(u + v, symbol) == count_symbol(u, symbol) + count_symbol(
            v, symbol
        )
    assert count_symbol(u, 1) + count_symbol(u, 3) == len(u)


# --- kolakoski_stream ---

def test_stream_13_first_twelve():
    assert list(kolakoski_stream(A13, 12)) == [1, 3, 3, 3, 1, 1, 1, 3, 3, 3, 1, 3]


def test_stream_12_first_twelve():
    assert list(kolakoski_stream(A12, 12)) == [1, 2, 2, 1, 1, 2, 1, 2, 2, 1, 2, 2]


def test_stream_starts_with_a():
    assert list(kolakoski_stream(A13, 1)) == [1]
    assert list(kolakoski_stream(Alphabet(3, 1), 1)) == [3]


def test_stream_rejects_zero():
    with pytest.raises(ValueError):
        kolakoski_stream(A13, 0)


def test_stream_respects_cap():
    with pytest.raises(MaterializationLimitError):
        kolakoski_stream(A13, 1000, cap=100)


@pytest.mark.parametrize("chunk_size", [1, 2, 7, 64, 1 << 20])
def test_chunks_agree_with_stream(chunk_size):
    reference = kolakoski_stream(A13, 500).to_array()
    parts = list(kolakoski_chunks(A13, 500, chunk_size))
    assert all(p.size <= chunk_size for p in parts)
    assert np.array_equal(np.concatenate(parts), reference)


@pytest.mark.parametrize("pair", [(1, 2), (1, 3), (2, 3), (3, 5)])
def test_self_encoding_prefix_property(pair):
    # the run-length encoding of a prefix is itself a prefix of the
    # sequence, up to the final (possibly truncated) run
    alphabet = Alphabet(*pair)
    word = kolakoski_stream(alphabet, 10_000)
    runs, first = run_length_encode(word)
    assert first == alphabet.a
    complete = np.asarray(runs.runs[:-1], dtype=np.uint8)
    assert np.array_equal(complete, word.to_array()[: complete.size])


def test_stream_prefix_consistency_across_lengths():
    long = kolakoski_stream(A13, 4000).data
    for n in (1, 2, 3, 17, 399, 4000):
        assert kolakoski_stream(A13, n).data == long[:n]
