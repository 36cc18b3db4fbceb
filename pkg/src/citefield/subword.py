"""Corpus-derived subword vocabulary and word/subword alignment.

The vocabulary is built by iterative pair-frequency merging over the word
types of a citation corpus (continuation pieces carry the ``##`` marker) and
consumed with greedy longest-match-from-the-left encoding. Case is preserved
throughout; there is no lowercasing or unicode normalization.

Special tokens occupy the first four ids: [PAD]=0, [UNK]=1, [MASK]=2, [CLS]=3.
"""

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .core import FieldLabel, LabeledCitation
from .errors import EncodingError, VocabError

SPECIALS = ("[PAD]", "[UNK]", "[MASK]", "[CLS]")
PAD_ID, UNK_ID, MASK_ID, CLS_ID = 0, 1, 2, 3
CONTINUATION = "##"


@dataclass(frozen=True)
class SubwordVocab:
    """An ordered piece list; line number in the vocab file equals the id."""

    pieces: tuple[str, ...]
    piece_ids: dict[str, int] = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.pieces[: len(SPECIALS)] != SPECIALS:
            raise VocabError("vocabulary must start with the four special tokens")
        object.__setattr__(
            self, "piece_ids", {p: i for i, p in enumerate(self.pieces)}
        )

    @property
    def size(self) -> int:
        return len(self.pieces)

    def content_hash(self) -> str:
        """SHA-256 over the piece list; used to bind models to a vocabulary."""
        digest = hashlib.sha256("\n".join(self.pieces).encode("utf-8"))
        return digest.hexdigest()


@dataclass(frozen=True)
class SubwordSequence:
    """An encoded citation: [CLS] + subword ids, with per-position source-word
    index (None for [CLS]) and per-position field label (label of the source
    word; OTHER for [CLS])."""

    ids: tuple[int, ...]
    word_index: tuple[int | None, ...]
    labels_subword: tuple[FieldLabel, ...]

    def __post_init__(self):
        if not (len(self.ids) == len(self.word_index) == len(self.labels_subword)):
            raise EncodingError("misaligned subword sequence fields")

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def n_words(self) -> int:
        """Number of source words represented (fully or partially)."""
        last = None
        for wi in self.word_index:
            if wi is not None:
                last = wi
        return 0 if last is None else last + 1

    def first_subword_positions(self) -> list[int]:
        """Position of the first piece of each represented word, in order."""
        positions = []
        prev = None
        for p, wi in enumerate(self.word_index):
            if wi is not None and wi != prev:
                positions.append(p)
                prev = wi
        return positions


# ---------------------------------------------------------------------------
# Vocabulary construction (pair merging)
# ---------------------------------------------------------------------------


def _word_symbols(word: str) -> list[str]:
    return [word[0]] + [CONTINUATION + ch for ch in word[1:]]


def build_vocab(
    corpus: Sequence[LabeledCitation], target_size: int, min_char_count: int = 1
) -> SubwordVocab:
    """Build a subword vocabulary by iterative pair-frequency merging.

    Starts from all single characters occurring at least `min_char_count`
    times (in both initial and continuation form), then repeatedly merges the
    most frequent adjacent symbol pair until `target_size` pieces exist or no
    pair occurs at least twice. Ties break toward the lexicographically
    smaller pair. Deterministic given corpus order.
    """
    if not corpus:
        raise VocabError("cannot build a vocabulary from an empty corpus")

    word_counts: dict[str, int] = {}
    for citation in corpus:
        for token in citation.tokens:
            word_counts[token.text] = word_counts.get(token.text, 0) + 1

    char_counts: dict[str, int] = {}
    for word, count in word_counts.items():
        for ch in word:
            char_counts[ch] = char_counts.get(ch, 0) + count
    alphabet = sorted(ch for ch, c in char_counts.items() if c >= min_char_count)
    if not alphabet:
        raise VocabError("no character meets min_char_count")

    floor = len(SPECIALS) + 2 * len(alphabet)
    if target_size < floor:
        raise VocabError(
            f"target_size {target_size} below minimum {floor} "
            f"(4 specials + alphabet of {len(alphabet)} in initial and "
            f"continuation form)"
        )
    pieces = list(SPECIALS) + alphabet + [CONTINUATION + ch for ch in alphabet]

    # Words containing filtered-out characters cannot produce valid pieces;
    # they are excluded from merge training and encode to [UNK] later.
    alpha_set = set(alphabet)
    words: list[tuple[list[str], int]] = [
        (_word_symbols(word), count)
        for word, count in word_counts.items()
        if all(ch in alpha_set for ch in word)
    ]

    pair_counts: dict[tuple[str, str], int] = {}
    pair_words: dict[tuple[str, str], set[int]] = {}

    def add_word_pairs(idx: int, sign: int) -> None:
        symbols, count = words[idx]
        for a, b in zip(symbols, symbols[1:]):
            pair = (a, b)
            pair_counts[pair] = pair_counts.get(pair, 0) + sign * count
            if sign > 0:
                pair_words.setdefault(pair, set()).add(idx)

    for idx in range(len(words)):
        add_word_pairs(idx, +1)

    while len(pieces) < target_size:
        best_pair, best_count = None, 1
        for pair, count in pair_counts.items():
            if count > best_count or (
                count == best_count and best_pair is not None and pair < best_pair
            ):
                best_pair, best_count = pair, count
        if best_pair is None:
            break

        merged = best_pair[0] + best_pair[1][len(CONTINUATION):]
        pieces.append(merged)

        for idx in sorted(pair_words.get(best_pair, ())):
            symbols, count = words[idx]
            if best_pair not in zip(symbols, symbols[1:]):
                continue
            add_word_pairs(idx, -1)
            out: list[str] = []
            i = 0
            while i < len(symbols):
                if (
                    i + 1 < len(symbols)
                    and (symbols[i], symbols[i + 1]) == best_pair
                ):
                    out.append(merged)
                    i += 2
                else:
                    out.append(symbols[i])
                    i += 1
            words[idx] = (out, count)
            add_word_pairs(idx, +1)
        # Drop exhausted entries so the argmax scan stays small.
        for pair in [p for p, c in pair_counts.items() if c <= 0]:
            del pair_counts[pair]
            pair_words.pop(pair, None)

    return SubwordVocab(tuple(pieces))


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------


def tokenize_word(word: str, vocab: SubwordVocab) -> list[int]:
    """Greedy longest-match-from-the-left subword split of one word.

    The first piece is unprefixed; later pieces use the continuation marker.
    If any position cannot be matched, the whole word encodes as [UNK].
    """
    if not word:
        raise VocabError("cannot tokenize an empty word")
    ids: list[int] = []
    start = 0
    while start < len(word):
        end = len(word)
        found = None
        while end > start:
            piece = word[start:end]
            if start > 0:
                piece = CONTINUATION + piece
            piece_id = vocab.piece_ids.get(piece)
            if piece_id is not None:
                found = piece_id
                break
            end -= 1
        if found is None:
            return [UNK_ID]
        ids.append(found)
        start = end
    return ids


def encode_words(
    words: Sequence[str],
    labels: Sequence[FieldLabel],
    vocab: SubwordVocab,
    max_len: int,
) -> SubwordSequence:
    """Encode a word sequence: prepend [CLS], truncate at `max_len`."""
    if max_len < 2:
        raise EncodingError(f"max_len must be at least 2, got {max_len}")
    ids: list[int] = [CLS_ID]
    word_index: list[int | None] = [None]
    labels_subword: list[FieldLabel] = [FieldLabel.OTHER]
    for j, (word, label) in enumerate(zip(words, labels)):
        piece_ids = tokenize_word(word, vocab)
        if j == 0 and 1 + len(piece_ids) > max_len:
            raise EncodingError(
                f"first word {word!r} needs {len(piece_ids)} pieces; "
                f"does not fit in max_len {max_len}"
            )
        for pid in piece_ids:
            if len(ids) >= max_len:
                break
            ids.append(pid)
            word_index.append(j)
            labels_subword.append(label)
        if len(ids) >= max_len:
            break
    return SubwordSequence(tuple(ids), tuple(word_index), tuple(labels_subword))


def encode_citation(
    citation: LabeledCitation, vocab: SubwordVocab, max_len: int
) -> SubwordSequence:
    return encode_words(citation.words, citation.labels, vocab, max_len)


def decode_pieces(seq: SubwordSequence, vocab: SubwordVocab) -> list[str]:
    """Reassemble the word strings of an encoded sequence (specials skipped)."""
    words: list[str] = []
    prev = None
    for pid, wi in zip(seq.ids, seq.word_index):
        if wi is None:
            continue
        piece = vocab.pieces[pid]
        if wi != prev:
            words.append(piece)
            prev = wi
        else:
            words[-1] += piece[len(CONTINUATION):] if piece.startswith(CONTINUATION) else piece
    return words


def word_labels_from_subword(seq: SubwordSequence) -> list[FieldLabel]:
    """Recover the word-level label vector (label of each word's first piece)."""
    labels: list[FieldLabel] = []
    prev = None
    for wi, label in zip(seq.word_index, seq.labels_subword):
        if wi is not None and wi != prev:
            labels.append(label)
            prev = wi
    return labels


# ---------------------------------------------------------------------------
# Vocab files: one piece per line, line number = id
# ---------------------------------------------------------------------------


def save_vocab(path: str | Path, vocab: SubwordVocab) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for piece in vocab.pieces:
            fh.write(piece)
            fh.write("\n")


def load_vocab(path: str | Path) -> SubwordVocab:
    pieces = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            pieces.append(line.rstrip("\n"))
    if pieces and pieces[-1] == "":
        pieces.pop()
    return SubwordVocab(tuple(pieces))
