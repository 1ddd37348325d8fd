"""Exact symbolic algebra on N-qubit Pauli words.

Words live in the symplectic bit-mask encoding: bit q of ``x_mask`` is set
iff qubit q carries X or Y, bit q of ``z_mask`` iff it carries Z or Y.  A
``PauliWord`` represents the matrix

    i**phase_power * (tensor over qubits of X^x_q Z^z_q)

Since X.Z = -i Y, the Hermitian Y on qubit q is i * X_q Z_q, and the
canonical Hermitian form of a word carries ``phase_power == y_count mod 4``.
Masks are plain Python ints (internally arrays of machine words), so
products and commutation tests cost O(n / word size) and there is no hard
qubit limit.

All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

_TOKEN_RE = re.compile(r"^([XYZ])(\d+)$")

# letter -> (x bit, z bit)
_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True)
class PauliWord:
    """One N-qubit Pauli word with a global i**phase_power factor."""

    n_qubits: int
    x_mask: int
    z_mask: int
    phase_power: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError("mask has bits set beyond n_qubits")
        if self.x_mask < 0 or self.z_mask < 0:
            raise ValueError("masks must be nonnegative")
        if self.phase_power not in (0, 1, 2, 3):
            raise ValueError(f"phase_power must be in 0..3, got {self.phase_power}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliWord":
        return cls(n_qubits, 0, 0, 0)

    @classmethod
    def from_letters(cls, n_qubits: int, letters: dict[int, str]) -> "PauliWord":
        """Canonical Hermitian word from a {qubit: 'X'|'Y'|'Z'} mapping."""
        x = z = 0
        for q, letter in letters.items():
            if not 0 <= q < n_qubits:
                raise ValueError(f"qubit index {q} out of range for n={n_qubits}")
            bx, bz = _BITS[letter]
            x |= bx << q
            z |= bz << q
        return cls(n_qubits, x, z, (x & z).bit_count() % 4)

    # -- inspectors --------------------------------------------------------

    @property
    def y_count(self) -> int:
        return (self.x_mask & self.z_mask).bit_count()

    @property
    def weight(self) -> int:
        """Number of non-identity qubit factors."""
        return (self.x_mask | self.z_mask).bit_count()

    @property
    def is_identity_word(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def is_hermitian(self) -> bool:
        """True iff the represented matrix equals its adjoint."""
        return (self.phase_power - self.y_count) % 2 == 0

    @property
    def is_canonical(self) -> bool:
        """True iff this is the +1-signed Hermitian form of its letters."""
        return self.phase_power == self.y_count % 4

    def letter_at(self, q: int) -> str:
        return _LETTER[((self.x_mask >> q) & 1, (self.z_mask >> q) & 1)]

    @property
    def support(self) -> tuple[int, ...]:
        mask = self.x_mask | self.z_mask
        return tuple(q for q in range(self.n_qubits) if (mask >> q) & 1)

    def key(self) -> tuple[int, int]:
        """Deterministic sort key (ignores phase)."""
        return (self.x_mask, self.z_mask)

    def canonical(self) -> tuple[complex, "PauliWord"]:
        """Split into (scalar, canonical Hermitian word), scalar * word == self."""
        residual = (self.phase_power - self.y_count) % 4
        word = PauliWord(self.n_qubits, self.x_mask, self.z_mask, self.y_count % 4)
        return (1j ** residual, word)

    def __str__(self) -> str:
        if self.is_canonical:
            return to_text(self)
        scalar, word = self.canonical()
        prefix = {1: "i*", -1: "-", -1j: "-i*"}[complex(scalar)] if scalar != 1 else ""
        return prefix + to_text(word)


def _check_dims(a: PauliWord, b: PauliWord) -> None:
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits"
        )


def multiply(a: PauliWord, b: PauliWord) -> PauliWord:
    """Exact product a*b with accumulated phase.

    Per qubit, Z^za X^xb = (-1)^(za*xb) X^xb Z^za, so the product picks up
    i^(2 * |za & xb|) on top of the inputs' phases; masks simply XOR.
    """
    _check_dims(a, b)
    phase = (a.phase_power + b.phase_power + 2 * (a.z_mask & b.x_mask).bit_count()) % 4
    return PauliWord(a.n_qubits, a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask, phase)


def commutes(a: PauliWord, b: PauliWord) -> bool:
    """True iff [a, b] = 0: the symplectic form <a,b> is even."""
    _check_dims(a, b)
    form = (a.x_mask & b.z_mask).bit_count() + (a.z_mask & b.x_mask).bit_count()
    return form % 2 == 0


def qubit_wise_commutes(a: PauliWord, b: PauliWord) -> bool:
    """True iff at every qubit the factors are equal or one is identity."""
    _check_dims(a, b)
    both = (a.x_mask | a.z_mask) & (b.x_mask | b.z_mask)
    clash = both & ((a.x_mask ^ b.x_mask) | (a.z_mask ^ b.z_mask))
    return clash == 0


def commutator(a: PauliWord, b: PauliWord) -> Optional[tuple[complex, PauliWord]]:
    """[a, b] as (scalar, canonical Hermitian word), or None if it vanishes.

    Non-commuting words anticommute, so [a, b] = 2 a b; the scalar absorbs
    every phase so the returned word is the plain +1 Hermitian word.
    """
    if commutes(a, b):
        return None
    scalar, word = multiply(a, b).canonical()
    return (2 * scalar, word)


def parse(text: str, n_qubits: int | None = None) -> PauliWord:
    """Parse `"X0 Z3"`-style text (or the single token `"I"`) into a word.

    Raises ValueError on malformed tokens, duplicate qubit indices, or an
    index >= n_qubits.  When n_qubits is omitted it is inferred as
    1 + max index (1 for the identity).
    """
    tokens = text.split()
    if not tokens:
        raise ValueError("empty Pauli text")
    if tokens == ["I"]:
        return PauliWord.identity(n_qubits if n_qubits is not None else 1)
    letters: dict[int, str] = {}
    for tok in tokens:
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise ValueError(f"malformed Pauli token {tok!r}")
        q = int(m.group(2))
        if q in letters:
            raise ValueError(f"duplicate qubit index {q} in {text!r}")
        letters[q] = m.group(1)
    if n_qubits is None:
        n_qubits = 1 + max(letters)
    if max(letters) >= n_qubits:
        raise ValueError(
            f"qubit index {max(letters)} out of range for n_qubits={n_qubits}"
        )
    return PauliWord.from_letters(n_qubits, letters)


def to_text(word: PauliWord) -> str:
    """Canonical text: tokens in ascending qubit order, `"I"` for identity.

    Only canonical Hermitian words format losslessly; anything else is
    rejected so that format/parse round-trips are exact.
    """
    if not word.is_canonical:
        raise ValueError("only canonical Hermitian words have a text form")
    if word.is_identity_word:
        return "I"
    return " ".join(f"{word.letter_at(q)}{q}" for q in word.support)


def random_word(n_qubits: int, rng, allow_identity: bool = True) -> PauliWord:
    """Uniformly random canonical Hermitian word on n qubits."""
    while True:
        x = int(rng.integers(0, 1 << n_qubits))
        z = int(rng.integers(0, 1 << n_qubits))
        if allow_identity or x or z:
            return PauliWord(n_qubits, x, z, (x & z).bit_count() % 4)
