"""Token vocabulary with the four reserved ids used by the captioning model."""

from __future__ import annotations

from typing import Iterable, Sequence

PAD_ID, BOS_ID, EOS_ID, UNK_ID = 0, 1, 2, 3
PAD, BOS, EOS, UNK = "<pad>", "<bos>", "<eos>", "<unk>"
RESERVED_TOKENS = (PAD, BOS, EOS, UNK)
RESERVED_IDS = (PAD_ID, BOS_ID, EOS_ID, UNK_ID)


class Vocabulary:
    """Bijection between word tokens and ids 4..V-1, plus the reserved ids.

    Ids 0..3 are fixed: <pad> (null input), <bos> (sentence start), <eos>
    (sentence end), <unk> (out-of-vocabulary). Caption text normalization
    strips angle brackets, so raw text can never produce a reserved token.
    """

    def __init__(self, words: Iterable[str]):
        self._tokens = list(RESERVED_TOKENS) + list(words)
        self._ids = {tok: i for i, tok in enumerate(self._tokens)}
        if len(self._ids) != len(self._tokens):
            raise ValueError("duplicate token in vocabulary")
        for w in self._tokens[len(RESERVED_TOKENS):]:
            if w in RESERVED_TOKENS:
                raise ValueError(f"token {w!r} collides with a reserved token")
            if not w:
                raise ValueError("empty token in vocabulary")

    @property
    def size(self) -> int:
        return len(self._tokens)

    def __len__(self) -> int:
        return len(self._tokens)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self._tokens == other._tokens

    @property
    def tokens(self) -> list[str]:
        """All tokens in id order, reserved ids first."""
        return list(self._tokens)

    @property
    def words(self) -> list[str]:
        """Non-reserved tokens in id order."""
        return self._tokens[len(RESERVED_TOKENS):]

    def id_of(self, token: str) -> int:
        """Id of ``token``, or <unk> when out of vocabulary."""
        return self._ids.get(token, UNK_ID)

    def token_of(self, token_id: int) -> str:
        if not 0 <= token_id < len(self._tokens):
            raise ValueError(f"token id {token_id} out of range for V={len(self._tokens)}")
        return self._tokens[token_id]

    def encode(self, words: Sequence[str]) -> list[int]:
        """Map words to ids and append <eos>."""
        return [self.id_of(w) for w in words] + [EOS_ID]

    def decode(self, ids: Sequence[int]) -> list[str]:
        return [self.token_of(i) for i in ids]
