"""Jordan-Wigner images of fermionic operators, and Hamiltonian file I/O.

The ladder operators are mapped as

    a_q      = Z_0 ... Z_{q-1} (X_q + i Y_q) / 2
    a_q^dag  = Z_0 ... Z_{q-1} (X_q - i Y_q) / 2

with qubit q occupied when its bit reads 1.  Excitation generators and
one-/two-body Hamiltonian terms are assembled symbolically from these,
so Z parity strings and sign patterns come out exact for any index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .pauli import PauliWord, multiply, parse, to_text

COEFF_PRUNE_TOL = 1e-12


def _combine(
    n_qubits: int, terms: Iterable[tuple[float, PauliWord]]
) -> tuple[tuple[float, PauliWord], ...]:
    """Fold duplicate words, drop near-zero coefficients, sort canonically."""
    acc: dict[tuple[int, int], float] = {}
    words: dict[tuple[int, int], PauliWord] = {}
    for coeff, word in terms:
        if word.n_qubits != n_qubits:
            raise ValueError(
                f"term on {word.n_qubits} qubits in a {n_qubits}-qubit sum"
            )
        scalar, canon = word.canonical()
        if scalar == 1:
            c = float(coeff)
        elif scalar == -1:
            c = -float(coeff)
        else:
            raise ValueError(f"non-Hermitian word in real-weighted sum: {word}")
        k = canon.key()
        acc[k] = acc.get(k, 0.0) + c
        words[k] = canon
    return tuple(
        (acc[k], words[k]) for k in sorted(acc) if abs(acc[k]) >= COEFF_PRUNE_TOL
    )


@dataclass(frozen=True)
class WeightedPauliSum:
    """Hermitian operator sum(coeff * word) with real coefficients.

    Words are stored in canonical Hermitian form, deduplicated, pruned at
    |coeff| < 1e-12 and sorted by mask for deterministic iteration.
    """

    n_qubits: int
    terms: tuple[tuple[float, PauliWord], ...]

    @classmethod
    def from_terms(
        cls, n_qubits: int, terms: Iterable[tuple[float, PauliWord]]
    ) -> "WeightedPauliSum":
        return cls(n_qubits, _combine(n_qubits, terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def sum_abs_coeff(self) -> float:
        return sum(abs(c) for c, _ in self.terms)

    def term_supports(self) -> list[tuple[int, ...]]:
        """Qubit support of each term, in term order."""
        return [word.support for _, word in self.terms]


@dataclass(frozen=True)
class AntihermitianSum:
    """Antihermitian generator A = i * sum(coeff * word), coefficients real."""

    n_qubits: int
    terms: tuple[tuple[float, PauliWord], ...]

    @classmethod
    def from_terms(
        cls, n_qubits: int, terms: Iterable[tuple[float, PauliWord]]
    ) -> "AntihermitianSum":
        return cls(n_qubits, _combine(n_qubits, terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


# -- symbolic ladder-operator algebra ---------------------------------------

def _ladder(q: int, n: int, dagger: bool) -> list[tuple[complex, PauliWord]]:
    """a_q or a_q^dag as a 2-term complex Pauli expansion."""
    zs = (1 << q) - 1  # parity string on qubits 0..q-1
    x_word = PauliWord(n, 1 << q, zs, 0)
    y_word = PauliWord(n, 1 << q, zs | (1 << q), 1)
    sign = -1j if dagger else 1j
    return [(0.5, x_word), (0.5 * sign, y_word)]


def _expand_product(
    factors: Sequence[list[tuple[complex, PauliWord]]],
) -> dict[tuple[int, int], complex]:
    """Multiply out complex Pauli expansions; keys are canonical word masks."""
    acc: dict[tuple[int, int], complex] = {}
    words: list[tuple[complex, PauliWord]] = [(1.0 + 0j, None)]  # type: ignore
    n = factors[0][0][1].n_qubits
    ident = PauliWord.identity(n)
    words = [(1.0 + 0j, ident)]
    for factor in factors:
        nxt: list[tuple[complex, PauliWord]] = []
        for c1, w1 in words:
            for c2, w2 in factor:
                nxt.append((c1 * c2, multiply(w1, w2)))
        words = nxt
    for c, w in words:
        scalar, canon = w.canonical()
        k = canon.key()
        acc[k] = acc.get(k, 0) + c * scalar
    return acc


def _excitation(
    create: Sequence[int], annihilate: Sequence[int], n: int
) -> AntihermitianSum:
    """F - F^dag for F = prod a^dag_create prod a_annihilate, as i*sum(c*P)."""
    factors = [_ladder(q, n, dagger=True) for q in create]
    factors += [_ladder(q, n, dagger=False) for q in annihilate]
    acc = _expand_product(factors)
    # F - F^dag leaves 2i*Im(c) per Hermitian word; divide out the global i.
    terms = []
    for (x, z), c in acc.items():
        word = PauliWord(n, x, z, (x & z).bit_count() % 4)
        terms.append((2.0 * c.imag, word))
    return AntihermitianSum.from_terms(n, terms)


def _hermitian_pair(
    create: Sequence[int], annihilate: Sequence[int], coeff: float, n: int
) -> WeightedPauliSum:
    """coeff * (F + F^dag) for F = prod a^dag prod a."""
    factors = [_ladder(q, n, dagger=True) for q in create]
    factors += [_ladder(q, n, dagger=False) for q in annihilate]
    acc = _expand_product(factors)
    terms = []
    for (x, z), c in acc.items():
        word = PauliWord(n, x, z, (x & z).bit_count() % 4)
        terms.append((coeff * 2.0 * c.real, word))
    return WeightedPauliSum.from_terms(n, terms)


# -- public builders ---------------------------------------------------------

def jw_single_excitation(i: int, j: int, n: int) -> AntihermitianSum:
    """a^dag_i a_j - a^dag_j a_i, i.e. (i/2)(X_i Y_j - Y_i X_j) * Z string."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    return _excitation([i], [j], n)


def jw_double_excitation(i: int, j: int, k: int, l: int, n: int) -> AntihermitianSum:
    """a^dag_i a^dag_j a_k a_l - h.c. for i < j < k < l: the 8-term form."""
    if not 0 <= i < j < k < l < n:
        raise ValueError(
            f"need 0 <= i < j < k < l < n, got ({i},{j},{k},{l}), n={n}"
        )
    return _excitation([i, j], [k, l], n)


def general_double_excitation(
    create: tuple[int, int], annihilate: tuple[int, int], n: int
) -> AntihermitianSum:
    """a^dag a^dag a a - h.c. for any 4 distinct indices (pool pairings)."""
    idx = (*create, *annihilate)
    if len(set(idx)) != 4:
        raise ValueError(f"indices must be distinct, got {idx}")
    if not all(0 <= q < n for q in idx):
        raise ValueError(f"index out of range in {idx} for n={n}")
    return _excitation(list(create), list(annihilate), n)


def jw_one_body_term(p: int, q: int, coeff: float, n: int) -> WeightedPauliSum:
    """Hermitian image of coeff * (a^dag_p a_q + a^dag_q a_p); p == q allowed."""
    if not 0 <= q <= p < n:
        raise ValueError(f"need 0 <= q <= p < n, got p={p}, q={q}, n={n}")
    if p == q:
        # number operator: coeff * (I - Z_p) / 2
        ident = PauliWord.identity(n)
        z_p = PauliWord(n, 0, 1 << p, 0)
        return WeightedPauliSum.from_terms(
            n, [(coeff / 2.0, ident), (-coeff / 2.0, z_p)]
        )
    return _hermitian_pair([p], [q], coeff, n)


def jw_two_body_term(
    p: int, q: int, r: int, s: int, coeff: float, n: int
) -> WeightedPauliSum:
    """coeff * (a^dag_p a^dag_q a_r a_s + h.c.) for p > q > r > s: 8 words."""
    if not (n > p > q > r > s >= 0):
        raise ValueError(f"need n > p > q > r > s >= 0, got ({p},{q},{r},{s}), n={n}")
    return _hermitian_pair([p, q], [r, s], coeff, n)


# -- Hamiltonian file format --------------------------------------------------
#
# UTF-8 text, one term per line: "<coefficient> <Pauli text>";
# optional leading header "qubits <N>"; '#' starts a comment.

def load_hamiltonian(path) -> WeightedPauliSum:
    """Read a Hamiltonian file; duplicates are combined on construction."""
    raw_terms: list[tuple[float, str]] = []
    n_header: int | None = None
    max_index = -1
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split(None, 1)
            if parts[0] == "qubits":
                if raw_terms or n_header is not None:
                    raise ValueError(f"{path}:{lineno}: stray 'qubits' header")
                try:
                    n_header = int(parts[1])
                except (IndexError, ValueError):
                    raise ValueError(f"{path}:{lineno}: bad qubits header") from None
                continue
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected '<coeff> <paulis>'")
            coeff_tok = parts[0].replace("−", "-")  # tolerate unicode minus
            try:
                coeff = float(coeff_tok)
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: non-real coefficient {parts[0]!r}"
                ) from None
            try:
                probe = parse(parts[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if not probe.is_identity_word:
                max_index = max(max_index, probe.support[-1])
            raw_terms.append((coeff, parts[1]))
    if not raw_terms:
        raise ValueError(f"{path}: empty Hamiltonian file")
    n = n_header if n_header is not None else max_index + 1
    if n < 1:
        n = 1
    if max_index >= n:
        raise ValueError(f"{path}: qubit index {max_index} >= qubits header {n}")
    return WeightedPauliSum.from_terms(
        n, [(coeff, parse(text, n)) for coeff, text in raw_terms]
    )


def save_hamiltonian(op: WeightedPauliSum, path) -> None:
    """Write terms sorted by descending |coefficient| (spectrum-friendly)."""
    ordered = sorted(op.terms, key=lambda t: (-abs(t[0]), t[1].key()))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"qubits {op.n_qubits}\n")
        for coeff, word in ordered:
            fh.write(f"{coeff!r} {to_text(word)}\n")
