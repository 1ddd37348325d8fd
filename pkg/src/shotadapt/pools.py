"""Operator pools for adaptive ansatz construction.

Four pools are provided:

* ``fermionic_pool`` -- generalized single and double excitations with full
  Jordan-Wigner Z strings (all index pairings, occupation-agnostic).
* ``qubit_pool`` -- individual Pauli-word generators i*Y_a X_b plus the
  YXXX / XYYY placements on every 4-subset; no Z factors anywhere.
* ``qeb_pool`` -- qubit excitations: the fermionic structures with every Z
  string deleted.
* ``g_pool`` -- the 2N-2 nearest-neighbor generators i*Y_k Z_{k+1} and i*Y_k.

Operator ids are assigned in deterministic enumeration order (kind, then
indices) so downstream argmax tie-breaking is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .fermion import AntihermitianSum, general_double_excitation, jw_single_excitation
from .pauli import PauliWord


class PoolKind(str, Enum):
    FERMIONIC_SINGLE = "fermionic_single"
    FERMIONIC_DOUBLE = "fermionic_double"
    QUBIT_SINGLE = "qubit_single"
    QUBIT_DOUBLE_YXXX = "qubit_double_yxxx"
    QUBIT_DOUBLE_XYYY = "qubit_double_xyyy"
    QEB_SINGLE = "qeb_single"
    QEB_DOUBLE = "qeb_double"
    G_YZ = "g_yz"
    G_Y = "g_y"


ANCHOR_Y = "Y"
ANCHOR_X = "X"

QUBIT_KINDS = (
    PoolKind.QUBIT_SINGLE,
    PoolKind.QUBIT_DOUBLE_YXXX,
    PoolKind.QUBIT_DOUBLE_XYYY,
)
G_KINDS = (PoolKind.G_YZ, PoolKind.G_Y)

POOL_NAMES = ("qubit", "qeb", "fermionic", "g")


@dataclass(frozen=True)
class PoolOperator:
    """One antihermitian pool generator A = i * sum(coeff * word)."""

    id: int
    label: str
    generator: AntihermitianSum
    kind: PoolKind
    anchor_hint: Optional[tuple[int, str]] = None

    @property
    def single_word(self) -> PauliWord:
        """The generator's word when it has exactly one (qubit/G pools)."""
        if len(self.generator.terms) != 1:
            raise ValueError(f"operator {self.label} is not a single Pauli word")
        return self.generator.terms[0][1]


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"pools need n >= 2 qubits, got {n}")


def _filtered(ops: list[PoolOperator], predicate) -> list[PoolOperator]:
    # ids stay tied to the full enumeration so filtered pools keep identity
    if predicate is None:
        return ops
    return [op for op in ops if predicate(op)]


def qubit_pool(
    n: int, predicate: Callable[[PoolOperator], bool] | None = None
) -> list[PoolOperator]:
    """All i*Y_a X_b singles (ordered pairs) and YXXX/XYYY doubles.

    Size n(n-1) + 8*C(n,4); every word is Z-free with weight 2 or 4.  The
    anchor hint holds (minority-Pauli qubit, anchor type): Y for YXXX and
    for a single's Y qubit, X for XYYY.
    """
    _check_n(n)
    ops: list[PoolOperator] = []
    for a, b in itertools.permutations(range(n), 2):
        word = PauliWord.from_letters(n, {a: "Y", b: "X"})
        ops.append(
            PoolOperator(
                id=len(ops),
                label=f"YX({a},{b})",
                generator=AntihermitianSum.from_terms(n, [(1.0, word)]),
                kind=PoolKind.QUBIT_SINGLE,
                anchor_hint=(a, ANCHOR_Y),
            )
        )
    for subset in itertools.combinations(range(n), 4):
        for pos in subset:  # YXXX: Y on the anchor, X on the rest
            letters = {q: ("Y" if q == pos else "X") for q in subset}
            word = PauliWord.from_letters(n, letters)
            rest = ",".join(str(q) for q in subset if q != pos)
            ops.append(
                PoolOperator(
                    id=len(ops),
                    label=f"YXXX({pos};{rest})",
                    generator=AntihermitianSum.from_terms(n, [(1.0, word)]),
                    kind=PoolKind.QUBIT_DOUBLE_YXXX,
                    anchor_hint=(pos, ANCHOR_Y),
                )
            )
        for pos in subset:  # XYYY: X on the anchor, Y on the rest
            letters = {q: ("X" if q == pos else "Y") for q in subset}
            word = PauliWord.from_letters(n, letters)
            rest = ",".join(str(q) for q in subset if q != pos)
            ops.append(
                PoolOperator(
                    id=len(ops),
                    label=f"XYYY({pos};{rest})",
                    generator=AntihermitianSum.from_terms(n, [(1.0, word)]),
                    kind=PoolKind.QUBIT_DOUBLE_XYYY,
                    anchor_hint=(pos, ANCHOR_X),
                )
            )
    return _filtered(ops, predicate)


def _strip_z(gen: AntihermitianSum) -> AntihermitianSum:
    """Delete Z factors from every word (qubit-excitation construction)."""
    n = gen.n_qubits
    terms = []
    for coeff, word in gen.terms:
        keep_z = word.z_mask & word.x_mask  # Z bits that belong to a Y
        stripped = PauliWord(n, word.x_mask, keep_z, word.phase_power)
        terms.append((coeff, stripped))
    return AntihermitianSum.from_terms(n, terms)


def _double_pairings(subset: tuple[int, int, int, int]):
    a, b, c, d = subset
    return (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c)))


def qeb_pool(
    n: int, predicate: Callable[[PoolOperator], bool] | None = None
) -> list[PoolOperator]:
    """Single and double qubit excitations: JW structures minus Z strings.

    C(n,2) singles and 3*C(n,4) doubles (three pairings per 4-subset).
    """
    _check_n(n)
    ops: list[PoolOperator] = []
    for i, j in itertools.combinations(range(n), 2):
        gen = _strip_z(jw_single_excitation(i, j, n))
        ops.append(
            PoolOperator(
                id=len(ops),
                label=f"Q({i},{j})",
                generator=gen,
                kind=PoolKind.QEB_SINGLE,
                anchor_hint=(i, ANCHOR_Y),
            )
        )
    for subset in itertools.combinations(range(n), 4):
        for create, annihilate in _double_pairings(subset):
            gen = _strip_z(general_double_excitation(create, annihilate, n))
            # hint only: anchor of the representative (first) word's Y
            first = gen.terms[0][1]
            y_mask = first.x_mask & first.z_mask
            y_anchor = y_mask.bit_length() - 1 if y_mask else subset[0]
            ops.append(
                PoolOperator(
                    id=len(ops),
                    label=f"Q({create[0]},{create[1]}->{annihilate[0]},{annihilate[1]})",
                    generator=gen,
                    kind=PoolKind.QEB_DOUBLE,
                    anchor_hint=(y_anchor, ANCHOR_Y),
                )
            )
    return _filtered(ops, predicate)


def fermionic_pool(
    n: int, predicate: Callable[[PoolOperator], bool] | None = None
) -> list[PoolOperator]:
    """Generalized UCC-style excitations with full Z strings.

    Singles for every i < j; doubles for every 4-subset in all three
    inequivalent pairings.  Occupation-agnostic: no reference filtering.
    """
    _check_n(n)
    ops: list[PoolOperator] = []
    for i, j in itertools.combinations(range(n), 2):
        ops.append(
            PoolOperator(
                id=len(ops),
                label=f"T({i},{j})",
                generator=jw_single_excitation(i, j, n),
                kind=PoolKind.FERMIONIC_SINGLE,
            )
        )
    for subset in itertools.combinations(range(n), 4):
        for create, annihilate in _double_pairings(subset):
            ops.append(
                PoolOperator(
                    id=len(ops),
                    label=f"T({create[0]},{create[1]}->{annihilate[0]},{annihilate[1]})",
                    generator=general_double_excitation(create, annihilate, n),
                    kind=PoolKind.FERMIONIC_DOUBLE,
                )
            )
    return _filtered(ops, predicate)


def g_pool(
    n: int, predicate: Callable[[PoolOperator], bool] | None = None
) -> list[PoolOperator]:
    """The minimal-style pool: i*Y_k Z_{k+1} for k < n-1, i*Y_k for k >= 1."""
    _check_n(n)
    ops: list[PoolOperator] = []
    for k in range(n - 1):
        word = PauliWord.from_letters(n, {k: "Y", k + 1: "Z"})
        ops.append(
            PoolOperator(
                id=len(ops),
                label=f"YZ({k})",
                generator=AntihermitianSum.from_terms(n, [(1.0, word)]),
                kind=PoolKind.G_YZ,
            )
        )
    for k in range(1, n):
        word = PauliWord.from_letters(n, {k: "Y"})
        ops.append(
            PoolOperator(
                id=len(ops),
                label=f"Y({k})",
                generator=AntihermitianSum.from_terms(n, [(1.0, word)]),
                kind=PoolKind.G_Y,
            )
        )
    return _filtered(ops, predicate)


def build_pool(name: str, n: int) -> list[PoolOperator]:
    """Pool by CLI-facing name: qubit | qeb | fermionic | g."""
    builders = {
        "qubit": qubit_pool,
        "qeb": qeb_pool,
        "fermionic": fermionic_pool,
        "g": g_pool,
    }
    try:
        builder = builders[name]
    except KeyError:
        raise ValueError(
            f"unknown pool {name!r}; choose from {sorted(builders)}"
        ) from None
    return builder(n)
