"""Shared builders, oracles, and golden-case machinery for the test suite."""

from __future__ import annotations

import contextlib
import io
import json
import random
from math import cos, pi, sin, sqrt
from pathlib import Path

from blochiso.channels import KrausSet
from blochiso.cli import main as cli_main
from blochiso.matrix import ComplexMatrix, add, adjoint, hermitian_eig, mul, scale

# Rotation generators (tau_l)_jk = -i eps_jkl, used only to drive the
# series-exponential oracle for the closed-form rotation matrix.
TAU = (
    ComplexMatrix.from_rows([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
    ComplexMatrix.from_rows([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]]),
    ComplexMatrix.from_rows([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
)


def rotation_generator(axis: tuple[float, float, float], angle: float) -> ComplexMatrix:
    """The matrix -i * angle * (n . tau); its exponential is the rotation."""
    acc = ComplexMatrix.zeros(3, 3)
    for n_l, tau_l in zip(axis, TAU):
        acc = add(acc, scale(tau_l, n_l))
    return scale(acc, -1j * angle)


def pauli_generator(axis: tuple[float, float, float], angle: float) -> ComplexMatrix:
    """The matrix -i * (angle / 2) * (n . sigma); its exponential is the unitary."""
    from blochiso.bloch import PAULIS

    acc = ComplexMatrix.zeros(2, 2)
    for n_l, sigma_l in zip(axis, PAULIS):
        acc = add(acc, scale(sigma_l, n_l))
    return scale(acc, -0.5j * angle)


def rotation_as_cmatrix(rot) -> ComplexMatrix:
    return ComplexMatrix.from_rows([[complex(x) for x in row] for row in rot.matrix])


def random_hermitian(rng: random.Random, n: int) -> ComplexMatrix:
    g = ComplexMatrix(
        n, n, tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n * n))
    )
    return scale(add(g, adjoint(g)), 0.5)


def random_matrix(rng: random.Random, n: int) -> ComplexMatrix:
    return ComplexMatrix(
        n, n, tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n * n))
    )


def random_cptp_kraus(rng: random.Random, count: int) -> KrausSet:
    """Random channel: raw Gaussian blocks normalized by S^{-1/2}."""
    blocks = [random_matrix(rng, 2) for _ in range(count)]
    s = ComplexMatrix.zeros(2, 2)
    for g in blocks:
        s = add(s, mul(adjoint(g), g))
    eig = hermitian_eig(s)
    inv_root_diag = ComplexMatrix(
        2,
        2,
        tuple(
            (1.0 / sqrt(eig.eigenvalues[i]) if i == j else 0j)
            for i in range(2)
            for j in range(2)
        ),
    )
    s_inv_root = mul(mul(eig.eigenvectors, inv_root_diag), adjoint(eig.eigenvectors))
    return KrausSet(tuple(mul(g, s_inv_root) for g in blocks))


def remix_kraus(rng_unitary: ComplexMatrix, k: KrausSet) -> KrausSet:
    """New representation A'_a = sum_c W[c][a] A_c of the same channel."""
    count = len(k.operators)
    assert rng_unitary.rows == count
    new_ops = []
    for a in range(count):
        acc = ComplexMatrix.zeros(2, 2)
        for c in range(count):
            acc = add(acc, scale(k.operators[c], rng_unitary.at(c, a)))
        new_ops.append(acc)
    return KrausSet(tuple(new_ops))


def phase_aligned_diff(candidate: ComplexMatrix, reference: ComplexMatrix) -> float:
    """Entrywise distance after removing the best global phase."""
    overlap = 0j
    for x, y in zip(reference.entries, candidate.entries):
        overlap += x.conjugate() * y
    mag = abs(overlap)
    if mag < 1e-15:
        return float("inf")
    phase = overlap / mag
    return max(abs(y - phase * x) for x, y in zip(reference.entries, candidate.entries))


# ----------------------------------------------------------------------
# Golden CLI fixtures (byte-equality determinism checks)

GOLDEN_DIR = Path(__file__).parent / "golden"

# (expected file, argv with bare names resolved against golden/inputs)
GOLDEN_CASES = [
    ("convert_bloch_to_density.json", ["convert", "--to", "density", "bloch_north.json"]),
    ("convert_unitary_to_rotation.json", ["convert", "--to", "rotation", "unitary_quarter_z.json"]),
    ("convert_axis_angle_to_unitary.json", ["convert", "--to", "unitary", "axis_angle_half_x.json"]),
    ("classify_identity.json", ["classify", "kraus_identity.json"]),
    ("classify_depolarizing_half.json", ["classify", "kraus_depolarizing_half.json"]),
    ("classify_scaled_identity.json", ["classify", "kraus_scaled_identity.json"]),
]


def _golden_doc(kind: str, payload: dict) -> str:
    return json.dumps(
        {"schema_version": "1", "kind": kind, "payload": payload}, indent=1
    ) + "\n"


def build_golden_inputs() -> dict[str, str]:
    c = cos(pi / 4)
    s = sin(pi / 4)
    root_main = sqrt(0.625)
    root_pauli = sqrt(0.125)
    return {
        "bloch_north.json": _golden_doc("bloch", {"vector": [0, 0, 1]}),
        "unitary_quarter_z.json": _golden_doc(
            "unitary", {"matrix": [[[c, -s], [0, 0]], [[0, 0], [c, s]]]}
        ),
        "axis_angle_half_x.json": _golden_doc(
            "axis_angle", {"axis": [1, 0, 0], "angle": pi}
        ),
        "kraus_identity.json": _golden_doc(
            "kraus", {"operators": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]}
        ),
        "kraus_depolarizing_half.json": _golden_doc(
            "kraus",
            {
                "operators": [
                    [[[root_main, 0], [0, 0]], [[0, 0], [root_main, 0]]],
                    [[[0, 0], [root_pauli, 0]], [[root_pauli, 0], [0, 0]]],
                    [[[0, 0], [0, -root_pauli]], [[0, root_pauli], [0, 0]]],
                    [[[root_pauli, 0], [0, 0]], [[0, 0], [-root_pauli, 0]]],
                ]
            },
        ),
        "kraus_scaled_identity.json": _golden_doc(
            "kraus", {"operators": [[[[2, 0], [0, 0]], [[0, 0], [2, 0]]]]}
        ),
    }


def run_golden_case(argv: list[str]) -> tuple[int, str]:
    inputs = GOLDEN_DIR / "inputs"
    resolved = [str(inputs / a) if (inputs / a).is_file() else a for a in argv]
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = cli_main(resolved)
    return code, buffer.getvalue()
