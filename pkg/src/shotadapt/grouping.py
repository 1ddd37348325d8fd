"""Commuting-set partitions of pools and jointly measurable gradient groups.

The pivot property makes the whole scheme work: if the words of a set S
pairwise commute, then for any pivot word P all the nonvanishing
commutators [P, S_k] pairwise commute, so one state preparation can sample
every gradient observable a single Hamiltonian term produces against a
whole pool set.  Qubit pools split deterministically into 2N anchored
qubit-wise-commuting sets; the G pool splits into 2 sets by Y-index parity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .fermion import WeightedPauliSum
from .pauli import PauliWord, commutator, commutes, multiply, qubit_wise_commutes
from .pools import (
    ANCHOR_X,
    ANCHOR_Y,
    G_KINDS,
    QUBIT_KINDS,
    PoolKind,
    PoolOperator,
)


@dataclass(frozen=True)
class AnchoredSet:
    """One commuting set of single-word pool operators.

    For qubit pools ``anchor_qubit``/``anchor_kind`` name the fixed qubit and
    its minority Pauli; for the G pool the two sets are labeled by the parity
    class of their Y index (anchor_qubit 0 or 1, anchor_kind "Y").
    """

    set_id: int
    anchor_qubit: int
    anchor_kind: str
    member_ids: tuple[int, ...]


@dataclass(frozen=True)
class GroupObservable:
    gradient_index: int  # pool operator id this observable feeds
    coeff: float          # real c with contribution c * <word>
    word: PauliWord


@dataclass(frozen=True)
class GradientGroup:
    """Jointly measurable commutator observables: one pivot term x one set."""

    group_id: int
    pivot_term_index: int
    pivot_coeff: float
    set_id: int
    observables: tuple[GroupObservable, ...]


def anchor_partition(
    pool: Sequence[PoolOperator], n: int, dual_assign_singles: bool = False
) -> list[AnchoredSet]:
    """Partition a qubit pool into exactly 2n anchored sets.

    Set 2q is the Y-anchor set of qubit q (YXXX doubles plus i*Y_q X_b
    singles), set 2q+1 the X-anchor set (XYYY doubles).  With
    ``dual_assign_singles`` each single additionally joins the X-anchor set
    of its X qubit; estimates must then be averaged downstream.
    """
    members: list[list[int]] = [[] for _ in range(2 * n)]
    for op in pool:
        if op.kind not in QUBIT_KINDS:
            raise ValueError(
                f"anchor_partition needs a qubit pool, found kind {op.kind.value}"
            )
        anchor_q, anchor_kind = op.anchor_hint
        slot = 2 * anchor_q + (0 if anchor_kind == ANCHOR_Y else 1)
        members[slot].append(op.id)
        if dual_assign_singles and op.kind == PoolKind.QUBIT_SINGLE:
            word = op.single_word
            x_only = word.x_mask & ~word.z_mask
            members[2 * (x_only.bit_length() - 1) + 1].append(op.id)
    return [
        AnchoredSet(
            set_id=slot,
            anchor_qubit=slot // 2,
            anchor_kind=ANCHOR_Y if slot % 2 == 0 else ANCHOR_X,
            member_ids=tuple(ids),
        )
        for slot, ids in enumerate(members)
    ]


def g_pool_partition(pool: Sequence[PoolOperator], n: int) -> list[AnchoredSet]:
    """Split the G pool into its 2 qubit-wise commuting sets by Y parity."""
    members: list[list[int]] = [[], []]
    for op in pool:
        if op.kind not in G_KINDS:
            raise ValueError(
                f"g_pool_partition needs a G pool, found kind {op.kind.value}"
            )
        word = op.single_word
        y_index = (word.x_mask & word.z_mask).bit_length() - 1
        members[y_index % 2].append(op.id)
    return [
        AnchoredSet(set_id=s, anchor_qubit=s, anchor_kind=ANCHOR_Y, member_ids=tuple(ids))
        for s, ids in enumerate(members)
    ]


def partition_pool(pool: Sequence[PoolOperator], n: int) -> list[AnchoredSet]:
    """Deterministic partition for whichever single-word pool this is."""
    kinds = {op.kind for op in pool}
    if kinds <= set(QUBIT_KINDS):
        return anchor_partition(pool, n)
    if kinds <= set(G_KINDS):
        return g_pool_partition(pool, n)
    raise ValueError(
        "no deterministic partition for pool kinds "
        + ", ".join(sorted(k.value for k in kinds))
    )


def gradient_coefficient(h_coeff: float, gen_coeff: float, scalar: complex) -> float:
    """Real weight of <C> in a gradient, folding in the generator's i.

    For A = i * w * P and term h * H_j with [H_j, P] = scalar * C, the
    gradient contribution is h * w * (i * scalar) * <C>; the scalar of a
    commutator of Hermitian words is purely imaginary, so this is real.
    """
    value = h_coeff * gen_coeff * (1j * scalar)
    assert abs(value.imag) < 1e-12
    return float(value.real)


def build_gradient_groups(
    hamiltonian: WeightedPauliSum,
    partition: Sequence[AnchoredSet],
    pool: Sequence[PoolOperator],
) -> list[GradientGroup]:
    """All nonempty (pivot term x set) groups of commutator observables.

    Members whose commutator with the pivot vanishes are omitted; every
    surviving coefficient satisfies |c| = 2 |h_j|.
    """
    by_id = {op.id: op for op in pool}
    n = hamiltonian.n_qubits
    groups: list[GradientGroup] = []
    for j, (h_j, h_word) in enumerate(hamiltonian.terms):
        if h_word.n_qubits != n:
            raise ValueError("inconsistent Hamiltonian dimensions")
        for aset in partition:
            obs: list[GroupObservable] = []
            for op_id in aset.member_ids:
                op = by_id[op_id]
                gen_coeff, gen_word = op.generator.terms[0]
                if gen_word.n_qubits != n:
                    raise ValueError(
                        f"pool operator {op.label} acts on {gen_word.n_qubits} "
                        f"qubits, Hamiltonian on {n}"
                    )
                result = commutator(h_word, gen_word)
                if result is None:
                    continue
                scalar, c_word = result
                obs.append(
                    GroupObservable(
                        gradient_index=op_id,
                        coeff=gradient_coefficient(h_j, gen_coeff, scalar),
                        word=c_word,
                    )
                )
            if obs:
                groups.append(
                    GradientGroup(
                        group_id=len(groups),
                        pivot_term_index=j,
                        pivot_coeff=h_j,
                        set_id=aset.set_id,
                        observables=tuple(obs),
                    )
                )
    return groups


def verify_group(group: GradientGroup) -> bool:
    """True iff all observable words in the group pairwise commute."""
    words = [o.word for o in group.observables]
    return all(
        commutes(a, b) for a, b in itertools.combinations(words, 2)
    )


def hamiltonian_disjoint_partition(
    hamiltonian: WeightedPauliSum,
    index_map: Mapping[int, Iterable[int]] | Sequence[Iterable[int]],
) -> list[tuple[int, ...]]:
    """Greedy first-fit partition of term indices into disjoint-support sets.

    ``index_map`` gives each term's index support (e.g. spin-orbital or
    qubit indices); two terms share a set only when their supports are
    disjoint, which guarantees they commute.  No optimality claim.
    """
    supports: list[frozenset[int]] = []
    for j in range(len(hamiltonian.terms)):
        try:
            supports.append(frozenset(index_map[j]))
        except (KeyError, IndexError):
            raise ValueError(f"index support missing for term {j}") from None
    sets: list[list[int]] = []
    set_unions: list[frozenset[int]] = []
    for j, sup in enumerate(supports):
        for k, used in enumerate(set_unions):
            if not (sup & used):
                sets[k].append(j)
                set_unions[k] = used | sup
                break
        else:
            sets.append([j])
            set_unions.append(sup)
    return [tuple(s) for s in sets]


def greedy_commuting_partition(
    observables: Sequence[tuple[float, PauliWord]], mode: str = "general"
) -> list[tuple[int, ...]]:
    """Sorted-insertion clique cover; returns index sets into the input.

    Observables are visited by descending |coeff| (ties by word mask) and
    join the first existing set they commute with pairwise, per ``mode``
    ("general" or "qubit-wise").
    """
    if mode == "general":
        compatible = commutes
    elif mode == "qubit-wise":
        compatible = qubit_wise_commutes
    else:
        raise ValueError(f"mode must be 'general' or 'qubit-wise', got {mode!r}")
    order = sorted(
        range(len(observables)),
        key=lambda i: (-abs(observables[i][0]), observables[i][1].key()),
    )
    sets: list[list[int]] = []
    for i in order:
        word = observables[i][1]
        for members in sets:
            if all(compatible(word, observables[k][1]) for k in members):
                members.append(i)
                break
        else:
            sets.append([i])
    return [tuple(s) for s in sets]


# -- measurement-basis rotation ------------------------------------------------
#
# Elementary Clifford gates as (name, qubits...) tuples; "cnot" and "cz" are
# the entangling ones.  Conjugation acts as w -> U w U^dag on the masks with
# exact phase tracking.

def conjugate_word(word: PauliWord, gate: tuple) -> PauliWord:
    n, x, z, p = word.n_qubits, word.x_mask, word.z_mask, word.phase_power
    name = gate[0]
    if name == "h":
        q = 1 << gate[1]
        if x & z & q:
            p += 2  # H Y H = -Y
        xq, zq = x & q, z & q
        x, z = (x & ~q) | zq, (z & ~q) | xq
    elif name == "s":
        q = 1 << gate[1]
        if x & q:
            p += 1
            z ^= q
    elif name == "sdg":
        q = 1 << gate[1]
        if x & q:
            p += 3
            z ^= q
    elif name == "cnot":
        c, t = 1 << gate[1], 1 << gate[2]
        xc, zc = bool(x & c), bool(z & c)
        xt, zt = bool(x & t), bool(z & t)
        if xc and zt and (xt == zc):
            p += 2
        if xc:
            x ^= t
        if zt:
            z ^= c
    elif name == "cz":
        c, t = 1 << gate[1], 1 << gate[2]
        if (x & c) and (x & t):
            p += 2
        if x & c:
            z ^= t
        if x & t:
            z ^= c
    else:
        raise ValueError(f"unknown gate {name!r}")
    return PauliWord(n, x, z, p % 4)


def conjugate_through(word: PauliWord, gates: Sequence[tuple]) -> PauliWord:
    for gate in gates:
        word = conjugate_word(word, gate)
    return word


def is_entangling(gate: tuple) -> bool:
    return gate[0] in ("cnot", "cz")


def _independent_words(words: Sequence[PauliWord]) -> list[PauliWord]:
    """Maximal GF(2)-independent subset of the words' symplectic vectors."""
    basis: list[PauliWord] = []
    echelon: list[int] = []  # reduced vectors with distinct leading bits
    n = words[0].n_qubits if words else 0
    for w in words:
        v = (w.x_mask << n) | w.z_mask
        for e in echelon:
            v = min(v, v ^ e)  # clear the leading bit when it matches
        if v:
            echelon.append(v)
            echelon.sort(reverse=True)
            basis.append(w)
    return basis


def _reduce_leading(v: int, echelon: list[int]) -> int:
    for e in sorted(echelon, reverse=True):
        if v ^ e < v:
            v ^= e
    return v


def synthesize_measurement_rotation(
    group_or_words,
) -> tuple[list[tuple], list[PauliWord]]:
    """Clifford sequence mapping every observable of a commuting set to Z-words.

    Accepts a GradientGroup or a plain word sequence.  Qubit-wise commuting
    sets get single-qubit basis changes only; general commuting sets go
    through a tableau sweep that consumes one fresh pivot qubit per
    independent generator (H/S to expose an X pivot, CNOTs to clear the row's
    other X bits, CZ/S to clear its Z part, H to land on Z).  Returns the
    gate list and the conjugated words in observable order; signs live in the
    words' phase (0 or 2).
    """
    if isinstance(group_or_words, GradientGroup):
        words = [o.word for o in group_or_words.observables]
    else:
        words = list(group_or_words)
    if not words:
        return [], []
    for a, b in itertools.combinations(words, 2):
        if not commutes(a, b):
            raise ValueError("observables do not all pairwise commute")

    n = words[0].n_qubits
    gates: list[tuple] = []

    if all(
        qubit_wise_commutes(a, b) for a, b in itertools.combinations(words, 2)
    ):
        for q in range(n):
            letters = {w.letter_at(q) for w in words} - {"I"}
            if letters == {"X"}:
                gates.append(("h", q))
            elif letters == {"Y"}:
                gates.append(("sdg", q))
                gates.append(("h", q))
    else:
        used = 0  # mask of qubits already holding a diagonalized generator
        for gen in _independent_words(words):
            w = conjugate_through(gen, gates)
            if w.x_mask == 0:
                # Z-only row: expose an X pivot on a fresh qubit first
                fresh = w.z_mask & ~used
                assert fresh, "independent Z-row confined to used qubits"
                pivot = fresh.bit_length() - 1
                gates.append(("h", pivot))
                w = conjugate_word(w, gates[-1])
            pivot_mask = w.x_mask & ~used
            assert pivot_mask, "pivot column collides with used qubits"
            pivot = pivot_mask.bit_length() - 1
            for t in range(n):  # clear other X bits of this row
                if t != pivot and (w.x_mask >> t) & 1:
                    gates.append(("cnot", pivot, t))
                    w = conjugate_word(w, gates[-1])
            if (w.z_mask >> pivot) & 1:  # Y on the pivot -> X
                gates.append(("sdg", pivot))
                w = conjugate_word(w, gates[-1])
            for t in range(n):  # clear the remaining Z bits
                if t != pivot and (w.z_mask >> t) & 1:
                    gates.append(("cz", pivot, t))
                    w = conjugate_word(w, gates[-1])
            gates.append(("h", pivot))
            w = conjugate_word(w, gates[-1])
            assert w.x_mask == 0 and w.z_mask == 1 << pivot
            used |= 1 << pivot

    mapped = []
    for w in words:
        out = conjugate_through(w, gates)
        if out.x_mask != 0:
            raise AssertionError("synthesis failed to diagonalize an observable")
        mapped.append(out)
    return gates, mapped
