"""Qubit channels: Kraus and Choi forms, CPTP checks, and reversibility.

A channel acts as rho -> sum_a A_a rho A_a*. Complete positivity is read off
the Choi matrix, trace preservation off sum_a A_a* A_a = I. A channel admits
a CPTP inverse exactly when its Choi rank is 1, i.e. it is conjugation by a
single unitary; the Gram-matrix pipeline below reduces any redundant Kraus
representation of such a channel to that unitary constructively.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import sqrt

from .bloch import PAULIS, DensityOperator
from .errors import (
    DomainError,
    InvalidChannelError,
    NotInvertibleError,
    NotUnitaryConjugationError,
)
from .matrix import (
    DEFAULT_TOL,
    ComplexMatrix,
    add,
    adjoint,
    hermitian_deviation,
    hermitian_eig,
    max_abs_diff,
    mul,
    scale,
    trace,
)

#: Kraus operators below this Frobenius norm are dropped on ingestion; they
#: contribute nothing to the channel and break proportionality diagnostics.
ZERO_OPERATOR_NORM = 1e-12

#: Choi eigenvalues below this fraction of the largest count as rank zero.
RANK_RELATIVE_THRESHOLD = 1e-7

_I2 = ComplexMatrix.identity(2)


@dataclass(frozen=True)
class KrausSet:
    """Nonempty collection of 2x2 Kraus operators.

    Trace preservation (sum A* A = I) is the defining channel invariant but
    is deliberately not enforced here: diagnostic paths must be able to hold
    ill-formed sets. Operations that require a channel check it themselves.
    """

    operators: tuple[ComplexMatrix, ...]

    def __post_init__(self) -> None:
        kept = []
        for op in self.operators:
            if op.rows != 2 or op.cols != 2:
                raise InvalidChannelError("Kraus operators must be 2x2")
            if op.frobenius_norm() >= ZERO_OPERATOR_NORM:
                kept.append(op)
        if not kept:
            raise InvalidChannelError("Kraus set has no nonzero operators")
        object.__setattr__(self, "operators", tuple(kept))

    def tp_deviation(self) -> float:
        """Largest entrywise deviation of sum A* A from the identity."""
        acc = ComplexMatrix.zeros(2, 2)
        for op in self.operators:
            acc = add(acc, mul(adjoint(op), op))
        return max_abs_diff(acc, _I2)


@dataclass(frozen=True)
class ChoiMatrix:
    """4x4 Choi matrix J = sum_ij Phi(E_ij) kron E_ij (unnormalized, trace 2).

    Hermiticity and positivity (the CP side) are enforced; the partial trace
    over the output factor equals I exactly when the source set is trace
    preserving, exposed via :meth:`tp_deviation`.
    """

    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if m.rows != 4 or m.cols != 4:
            raise InvalidChannelError("Choi matrix must be 4x4")
        if hermitian_deviation(m) > DEFAULT_TOL:
            raise InvalidChannelError("Choi matrix must be Hermitian")
        if self.eigenvalues()[-1] < -DEFAULT_TOL:
            raise InvalidChannelError("Choi matrix must be positive semidefinite")

    def eigenvalues(self) -> tuple[float, ...]:
        return hermitian_eig(self.matrix).eigenvalues

    def tp_deviation(self) -> float:
        """Deviation of the partial trace over the output factor from I."""
        reduced = [
            sum(self.matrix.at(2 * k + i, 2 * k + j) for k in range(2))
            for i in range(2)
            for j in range(2)
        ]
        return max_abs_diff(ComplexMatrix(2, 2, tuple(reduced)), _I2)

    def rank(self, relative_threshold: float = RANK_RELATIVE_THRESHOLD) -> int:
        evs = self.eigenvalues()
        top = evs[0]
        if top <= 0.0:
            return 0
        return sum(1 for ev in evs if ev > relative_threshold * top)


class ChannelKind(Enum):
    UNITARY_CONJUGATION = "UnitaryConjugation"
    # A channel is invertible with CPTP inverse iff it is a unitary
    # conjugation; the two names are one member.
    INVERTIBLE_WITH_CPTP_INVERSE = "UnitaryConjugation"
    CPTP_NOT_INVERTIBLE = "CptpNotInvertible"
    NOT_CPTP = "NotCptp"


@dataclass(frozen=True)
class CptpDiagnostics:
    is_cptp: bool
    tp_deviation: float
    choi_min_eigenvalue: float

    def __bool__(self) -> bool:
        return self.is_cptp


@dataclass(frozen=True)
class ChannelClassification:
    """Verdict of :func:`classify`.

    ``choi_rank`` is 0 for non-CPTP input (no meaningful rank is reported).
    ``extracted_unitary`` is determined up to global phase only, pinned by
    making its largest-magnitude entry real positive; its determinant is
    deliberately not normalized to 1 (see su2.normalize_phase for that).
    """

    kind: ChannelKind
    choi_rank: int
    extracted_unitary: ComplexMatrix | None


@dataclass(frozen=True)
class GramData:
    """Intermediates of the unitary extraction.

    ``beta`` is the Hermitian PSD unit-trace matrix of proportionality
    constants A_a'* A_a = beta_{a'a} I, ``gamma`` its eigenvalues in
    descending order, ``mixing`` the unitary whose columns diagonalize it.
    """

    beta: ComplexMatrix
    gamma: tuple[float, ...]
    mixing: ComplexMatrix


@dataclass(frozen=True)
class InversePairReport:
    """Result of checking that one Kraus set undoes another.

    ``alpha`` tabulates the proportionality constants B_b A_a = alpha_ba I
    (rows indexed by the inverse candidate's operators).
    """

    valid: bool
    alpha: ComplexMatrix
    alpha_square_sum: float
    max_residual: float

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class BlochAffineAction:
    """Action on Bloch vectors: r -> M r + t."""

    matrix: tuple[tuple[float, float, float], ...]
    translation: tuple[float, float, float]


def _apply_to_matrix(k: KrausSet, m: ComplexMatrix) -> ComplexMatrix:
    acc = ComplexMatrix.zeros(2, 2)
    for op in k.operators:
        acc = add(acc, mul(mul(op, m), adjoint(op)))
    return acc


def apply_channel(k: KrausSet, rho: DensityOperator, tol: float = DEFAULT_TOL) -> DensityOperator:
    """sum_a A_a rho A_a* for a trace-preserving set."""
    dev = k.tp_deviation()
    if dev > tol:
        raise InvalidChannelError(f"Kraus set is not trace preserving (deviation {dev:.3e})")
    return DensityOperator(_apply_to_matrix(k, rho.matrix))


def choi_of(k: KrausSet) -> ChoiMatrix:
    """Choi matrix of the channel; its rank is the minimal Kraus count."""
    ents = [0j] * 16
    for op in k.operators:
        w = op.entries  # row-major flattening matches the kron convention
        for r in range(4):
            wr = w[r]
            for c in range(4):
                ents[r * 4 + c] += wr * w[c].conjugate()
    return ChoiMatrix(ComplexMatrix(4, 4, tuple(ents)))


def is_cptp(k: KrausSet, tol: float = DEFAULT_TOL) -> CptpDiagnostics:
    """Trace preservation plus positivity of the Choi matrix."""
    tp = k.tp_deviation()
    min_eig = choi_of(k).eigenvalues()[-1]
    return CptpDiagnostics(tp <= tol and min_eig >= -tol, tp, min_eig)


def classify(k: KrausSet, tol: float = DEFAULT_TOL) -> ChannelClassification:
    """Decide invertibility: rank-one Choi means conjugation by one unitary."""
    diagnostics = is_cptp(k, tol)
    if not diagnostics.is_cptp:
        return ChannelClassification(ChannelKind.NOT_CPTP, 0, None)
    rank = choi_of(k).rank()
    if rank == 1:
        try:
            unitary, _ = extract_unitary_via_gram(k, tol)
        except NotUnitaryConjugationError:
            # Rank fell below the threshold but the operators are not quite
            # proportional; report the channel as not invertible rather than
            # crash on the numerically ambiguous input.
            return ChannelClassification(ChannelKind.CPTP_NOT_INVERTIBLE, rank, None)
        return ChannelClassification(ChannelKind.UNITARY_CONJUGATION, 1, unitary)
    return ChannelClassification(ChannelKind.CPTP_NOT_INVERTIBLE, rank, None)


def extract_unitary_via_gram(
    k: KrausSet, tol: float = DEFAULT_TOL
) -> tuple[ComplexMatrix, GramData]:
    """Reduce a redundant Kraus representation of a reversible channel.

    Every pairwise product A_a'* A_a must be proportional to the identity;
    the proportionality constants form the Gram matrix beta. Diagonalizing
    beta remixes the set into operators C_c = sum_a V[a][c] A_a satisfying
    C_c'* C_c = gamma_c delta I, of which exactly one survives and equals
    sqrt(gamma) times the underlying unitary.

    Returns the unitary (up to a phase pinned deterministically) and the
    Gram intermediates. Raises :class:`NotUnitaryConjugationError`, carrying
    the worst offending pair, when proportionality fails.
    """
    ops = k.operators
    count = len(ops)
    beta_entries = [0j] * (count * count)
    worst_pair = (0, 0)
    worst_residual = 0.0
    for a_prime in range(count):
        left = adjoint(ops[a_prime])
        for a in range(count):
            prod = mul(left, ops[a])
            coeff = trace(prod) / 2.0
            residual = max_abs_diff(prod, scale(_I2, coeff))
            if residual > worst_residual:
                worst_residual = residual
                worst_pair = (a_prime, a)
            beta_entries[a_prime * count + a] = coeff
    if worst_residual > tol:
        raise NotUnitaryConjugationError(
            "channel is not a unitary conjugation: operator pair "
            f"{worst_pair} has proportionality residual {worst_residual:.3e}",
            worst_pair,
            worst_residual,
        )

    beta = ComplexMatrix(count, count, tuple(beta_entries))
    eig = hermitian_eig(beta, tol)
    gamma = eig.eigenvalues
    mixing = eig.eigenvectors

    if gamma[0] <= tol:
        raise NotUnitaryConjugationError(
            "Gram matrix has no significant direction", (0, 0), gamma[0]
        )

    candidates: list[ComplexMatrix] = []
    for c in range(count):
        if gamma[c] <= RANK_RELATIVE_THRESHOLD * gamma[0]:
            break
        combo = ComplexMatrix.zeros(2, 2)
        for a in range(count):
            combo = add(combo, scale(ops[a], mixing.at(a, c)))
        candidates.append(scale(combo, 1.0 / sqrt(gamma[c])))

    unitary = candidates[0]
    dev = max_abs_diff(mul(adjoint(unitary), unitary), _I2)
    if dev > max(tol, 1e-7):
        raise NotUnitaryConjugationError(
            f"leading Gram direction is not unitary (deviation {dev:.3e})", (0, 0), dev
        )
    # The remaining significant directions, if any, must carry the same
    # unitary up to phase; this is asserted rather than assumed.
    for extra in candidates[1:]:
        overlap = trace(mul(adjoint(unitary), extra)) / 2.0
        mag = abs(overlap)
        if mag < 1e-12 or max_abs_diff(extra, scale(unitary, overlap / mag)) > max(tol, 1e-7):
            raise NotUnitaryConjugationError(
                "Gram directions disagree on the underlying unitary", (0, 0), mag
            )

    return _pin_phase(unitary), GramData(beta, gamma, mixing)


def _pin_phase(m: ComplexMatrix) -> ComplexMatrix:
    """Make the largest-magnitude entry real positive."""
    pivot = max(m.entries, key=abs)
    return scale(m, pivot.conjugate() / abs(pivot))


def verify_inverse_pair(
    k_fwd: KrausSet, k_inv: KrausSet, tol: float = DEFAULT_TOL
) -> InversePairReport:
    """Check that composing the sets yields the identity channel.

    Every product B_b A_a must be proportional to I with the squared
    magnitudes of the constants summing to one.
    """
    n_inv = len(k_inv.operators)
    n_fwd = len(k_fwd.operators)
    alpha_entries = [0j] * (n_inv * n_fwd)
    max_residual = 0.0
    square_sum = 0.0
    for b in range(n_inv):
        for a in range(n_fwd):
            prod = mul(k_inv.operators[b], k_fwd.operators[a])
            coeff = trace(prod) / 2.0
            residual = max_abs_diff(prod, scale(_I2, coeff))
            max_residual = max(max_residual, residual)
            alpha_entries[b * n_fwd + a] = coeff
            square_sum += coeff.real * coeff.real + coeff.imag * coeff.imag
    valid = max_residual <= tol and abs(square_sum - 1.0) <= tol
    return InversePairReport(
        valid, ComplexMatrix(n_inv, n_fwd, tuple(alpha_entries)), square_sum, max_residual
    )


def invert(k: KrausSet, tol: float = DEFAULT_TOL) -> KrausSet:
    """Kraus set of the inverse channel, {U*}; exists only at Choi rank 1."""
    classification = classify(k, tol)
    if classification.kind is not ChannelKind.UNITARY_CONJUGATION:
        raise NotInvertibleError(
            f"channel of kind {classification.kind.value} has no CPTP inverse"
        )
    assert classification.extracted_unitary is not None
    return KrausSet((adjoint(classification.extracted_unitary),))


def bloch_affine_action(k: KrausSet, tol: float = DEFAULT_TOL) -> BlochAffineAction:
    """Affine description r -> M r + t of a channel on Bloch vectors.

    M_kj = Tr(sigma_k Phi(sigma_j)) / 2 and t_k = Tr(sigma_k Phi(I)) / 2.
    Unitary channels give orthogonal M and zero t; the fully depolarizing
    limit contracts everything to the origin.
    """
    diagnostics = is_cptp(k, tol)
    if not diagnostics.is_cptp:
        raise InvalidChannelError(
            "affine action is defined for CPTP sets only "
            f"(tp deviation {diagnostics.tp_deviation:.3e}, "
            f"choi min eigenvalue {diagnostics.choi_min_eigenvalue:.3e})"
        )
    phi_of_identity = _apply_to_matrix(k, _I2)
    translation = tuple(
        0.5 * trace(mul(PAULIS[i], phi_of_identity)).real for i in range(3)
    )
    columns = []
    for j in range(3):
        phi_of_sigma = _apply_to_matrix(k, PAULIS[j])
        columns.append([0.5 * trace(mul(PAULIS[i], phi_of_sigma)).real for i in range(3)])
    matrix = tuple(tuple(columns[j][i] for j in range(3)) for i in range(3))
    return BlochAffineAction(matrix, translation)  # type: ignore[arg-type]


def make_depolarizing(p: float) -> KrausSet:
    """Channel rho -> p rho + (1 - p) I / 2 in its four-operator form."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"depolarizing parameter must lie in [0, 1], got {p!r}")
    q = 1.0 - p
    ops = (
        scale(_I2, sqrt(1.0 - 0.75 * q)),
        scale(PAULIS[0], sqrt(0.25 * q)),
        scale(PAULIS[1], sqrt(0.25 * q)),
        scale(PAULIS[2], sqrt(0.25 * q)),
    )
    return KrausSet(ops)


def kraus_from_choi(j: ChoiMatrix) -> KrausSet:
    """Minimal Kraus set from the spectral decomposition of the Choi matrix."""
    eig = hermitian_eig(j.matrix)
    top = eig.eigenvalues[0]
    if top <= 0.0:
        raise InvalidChannelError("Choi matrix is zero")
    ops = []
    for k in range(4):
        ev = eig.eigenvalues[k]
        if ev <= RANK_RELATIVE_THRESHOLD * top:
            continue
        root = sqrt(ev)
        ops.append(
            ComplexMatrix(
                2, 2, tuple(root * eig.eigenvectors.at(r, k) for r in range(4))
            )
        )
    return KrausSet(tuple(ops))
