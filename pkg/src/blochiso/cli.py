"""Command-line front end: JSON in, deterministic JSON (or text) out.

Thin dispatcher over the library; no numerical logic lives here. Documents
are ``{"schema_version": "1", "kind": ..., "payload": ...}`` with complex
entries encoded as ``[re, im]`` pairs and matrices as row-major nested
arrays. Floats are printed with 17 significant digits so output is a
lossless, byte-stable function of input, seed, and tolerance.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 malformed input, 3 unsupported conversion.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Callable, Sequence

from . import channels, isomorphism, sampling, so3, su2
from .bloch import BlochVector, DensityOperator, bloch_to_density, density_to_bloch
from .channels import ChannelKind, ChoiMatrix, KrausSet
from .errors import DomainError
from .matrix import ComplexMatrix
from .so3 import AxisAngle, Rotation3
from .su2 import Unitary2

SCHEMA_VERSION = "1"

KINDS = ("kraus", "choi", "rotation", "unitary", "axis_angle", "bloch", "density")


class CliError(Exception):
    """Carries an exit code and a machine-readable error payload."""

    def __init__(self, exit_code: int, code: str, detail: str):
        super().__init__(detail)
        self.exit_code = exit_code
        self.payload = {"error": {"code": code, "detail": detail}}


# ----------------------------------------------------------------------
# Deterministic serialization


def _fmt_float(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # drop the sign of negative zero
    return format(x, ".17g")


def dumps(value: Any) -> str:
    """Compact JSON with fixed float formatting and insertion-order keys."""
    if isinstance(value, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_text(value: Any, indent: int = 0) -> str:
    """Line-oriented rendering for --format text."""
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list, tuple)) and not _is_number_row(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return "\n".join(lines)
    if isinstance(value, (list, tuple)):
        return "\n".join(f"{pad}{_inline(v)}" for v in value)
    return f"{pad}{_inline(value)}"


def _is_number_row(v: Any) -> bool:
    return isinstance(v, (list, tuple)) and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in v
    )


def _inline(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    return str(v)


# ----------------------------------------------------------------------
# Payload encoding / decoding


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _encode_cmatrix(m: ComplexMatrix) -> list[list[list[float]]]:
    return [[_complex_pair(m.at(i, j)) for j in range(m.cols)] for i in range(m.rows)]


def _encode_rmatrix(rows: Sequence[Sequence[float]]) -> list[list[float]]:
    return [[float(x) for x in row] for row in rows]


def _decode_complex(value: Any, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        return complex(float(value[0]), float(value[1]))
    raise CliError(2, "malformed_input", f"{where}: expected a number or [re, im] pair")


def _decode_cmatrix(value: Any, rows: int, cols: int, where: str) -> ComplexMatrix:
    if not isinstance(value, list) or len(value) != rows:
        raise CliError(2, "malformed_input", f"{where}: expected {rows} rows")
    flat: list[complex] = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise CliError(2, "malformed_input", f"{where}: row {i} must have {cols} entries")
        for j, cell in enumerate(row):
            flat.append(_decode_complex(cell, f"{where}[{i}][{j}]"))
    return ComplexMatrix(rows, cols, tuple(flat))


def _decode_real_vector(value: Any, length: int, where: str) -> tuple[float, ...]:
    if (
        not isinstance(value, list)
        or len(value) != length
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise CliError(2, "malformed_input", f"{where}: expected {length} numbers")
    return tuple(float(x) for x in value)


def _payload_field(payload: Any, name: str) -> Any:
    if not isinstance(payload, dict) or name not in payload:
        raise CliError(2, "malformed_input", f"payload must contain {name!r}")
    return payload[name]


def _decode_document(doc: Any) -> tuple[str, Any]:
    if not isinstance(doc, dict):
        raise CliError(2, "malformed_input", "document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise CliError(2, "malformed_input", f"unsupported schema_version {version!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise CliError(2, "malformed_input", f"unknown kind {kind!r}")
    payload = doc.get("payload")
    try:
        if kind == "bloch":
            vec = _decode_real_vector(_payload_field(payload, "vector"), 3, "vector")
            return kind, BlochVector(*vec)
        if kind == "axis_angle":
            axis = _decode_real_vector(_payload_field(payload, "axis"), 3, "axis")
            angle = _payload_field(payload, "angle")
            if isinstance(angle, bool) or not isinstance(angle, (int, float)):
                raise CliError(2, "malformed_input", "angle must be a number")
            return kind, AxisAngle(axis, float(angle))
        if kind == "rotation":
            raw = _payload_field(payload, "matrix")
            if not isinstance(raw, list) or len(raw) != 3:
                raise CliError(2, "malformed_input", "rotation matrix must have 3 rows")
            rows = tuple(_decode_real_vector(r, 3, f"matrix[{i}]") for i, r in enumerate(raw))
            return kind, Rotation3(rows)
        if kind == "unitary":
            m = _decode_cmatrix(_payload_field(payload, "matrix"), 2, 2, "matrix")
            return kind, Unitary2(m)
        if kind == "density":
            m = _decode_cmatrix(_payload_field(payload, "matrix"), 2, 2, "matrix")
            return kind, DensityOperator(m)
        if kind == "kraus":
            raw = _payload_field(payload, "operators")
            if not isinstance(raw, list) or not raw:
                raise CliError(2, "malformed_input", "operators must be a nonempty array")
            ops = tuple(
                _decode_cmatrix(op, 2, 2, f"operators[{i}]") for i, op in enumerate(raw)
            )
            return kind, KrausSet(ops)
        if kind == "choi":
            m = _decode_cmatrix(_payload_field(payload, "matrix"), 4, 4, "matrix")
            return kind, ChoiMatrix(m)
    except DomainError as exc:
        raise CliError(2, "malformed_input", f"invalid {kind} document: {exc}") from exc
    raise CliError(2, "malformed_input", f"unknown kind {kind!r}")


def _encode_domain(kind: str, obj: Any) -> dict[str, Any]:
    if kind == "bloch":
        payload: dict[str, Any] = {"vector": list(obj.as_tuple())}
    elif kind == "axis_angle":
        payload = {"axis": list(obj.axis), "angle": obj.angle}
    elif kind == "rotation":
        payload = {"matrix": _encode_rmatrix(obj.matrix)}
    elif kind == "unitary":
        payload = {"matrix": _encode_cmatrix(obj.matrix)}
    elif kind == "density":
        payload = {"matrix": _encode_cmatrix(obj.matrix)}
    elif kind == "kraus":
        payload = {"operators": [_encode_cmatrix(op) for op in obj.operators]}
    elif kind == "choi":
        payload = {"matrix": _encode_cmatrix(obj.matrix)}
    else:
        raise CliError(3, "unsupported_conversion", f"cannot encode kind {kind!r}")
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}


# ----------------------------------------------------------------------
# Conversion graph

_CONVERSIONS: dict[tuple[str, str], Callable[[Any], Any]] = {
    ("bloch", "density"): bloch_to_density,
    ("density", "bloch"): density_to_bloch,
    ("axis_angle", "rotation"): so3.rotation_from_axis_angle,
    ("axis_angle", "unitary"): su2.unitary_from_axis_angle,
    ("rotation", "axis_angle"): so3.axis_angle_from_rotation,
    ("rotation", "unitary"): isomorphism.phi,
    ("unitary", "axis_angle"): su2.axis_angle_from_unitary,
    ("unitary", "rotation"): isomorphism.phi_inverse,
    ("kraus", "choi"): channels.choi_of,
    ("choi", "kraus"): channels.kraus_from_choi,
}


def _cmd_convert(args: argparse.Namespace) -> dict[str, Any]:
    kind, obj = _decode_document(_load_json(args.input))
    target = args.to
    if target == kind:
        return _encode_domain(kind, obj)
    func = _CONVERSIONS.get((kind, target))
    if func is None:
        raise CliError(3, "unsupported_conversion", f"no conversion from {kind} to {target}")
    try:
        converted = func(obj)
    except DomainError as exc:
        raise CliError(2, "malformed_input", str(exc)) from exc
    return _encode_domain(target, converted)


def _cmd_classify(args: argparse.Namespace) -> dict[str, Any]:
    kind, obj = _decode_document(_load_json(args.input))
    if kind != "kraus":
        raise CliError(2, "malformed_input", f"classify expects a kraus document, got {kind}")
    result = channels.classify(obj, tol=args.tol)
    report: dict[str, Any] = {"cptp": result.kind is not ChannelKind.NOT_CPTP}
    if report["cptp"]:
        report["choi_rank"] = result.choi_rank
    report["kind"] = result.kind.value
    if result.kind is ChannelKind.UNITARY_CONJUGATION:
        assert result.extracted_unitary is not None
        report["unitary"] = _encode_cmatrix(result.extracted_unitary)
        inverse = channels.invert(obj, tol=args.tol)
        report["inverse"] = {"operators": [_encode_cmatrix(op) for op in inverse.operators]}
    return report


def _cmd_bloch_action(args: argparse.Namespace) -> dict[str, Any]:
    kind, obj = _decode_document(_load_json(args.input))
    if kind != "kraus":
        raise CliError(2, "malformed_input", f"bloch-action expects a kraus document, got {kind}")
    try:
        action = channels.bloch_affine_action(obj, tol=args.tol)
    except DomainError as exc:
        raise CliError(2, "malformed_input", str(exc)) from exc
    dev = so3.orthogonality_deviation(action.matrix)
    return {
        "M": _encode_rmatrix(action.matrix),
        "t": list(action.translation),
        "isometry": dev <= args.tol,
    }


# ----------------------------------------------------------------------
# Verification modes


def _verify_diagram(args: argparse.Namespace) -> dict[str, Any]:
    rng = random.Random(args.seed)
    cases = []
    failures = []
    worst = 0.0
    for i in range(args.samples):
        r = sampling.bloch_in_ball(rng)
        aa = sampling.axis_angle(rng)
        report = isomorphism.verify_state_diagram(r, aa, tol=args.tol)
        worst = max(worst, report.max_deviation)
        if not report.commutes:
            failures.append(i)
        cases.append({"index": i, "max_deviation": report.max_deviation, "pass": report.commutes})
    return _verify_report("diagram", args, worst, failures, cases)


def _verify_double_cover(args: argparse.Namespace, docs: list[Any]) -> dict[str, Any]:
    if docs:
        units = [_expect_kind(doc, "unitary", "double-cover") for doc in docs]
    else:
        rng = random.Random(args.seed)
        units = [sampling.su2_haar(rng) for _ in range(args.samples)]
    cases = []
    failures = []
    worst = 0.0
    for i, u in enumerate(units):
        r_plus = isomorphism.phi_inverse(u)
        r_minus = isomorphism.phi_inverse(su2.negate(u))
        dev = max(
            abs(r_plus.matrix[a][b] - r_minus.matrix[a][b])
            for a in range(3)
            for b in range(3)
        )
        ok = dev == 0.0
        worst = max(worst, dev)
        if not ok:
            failures.append(i)
        cases.append({"index": i, "max_deviation": dev, "pass": ok})
    return _verify_report("double-cover", args, worst, failures, cases)


def _verify_group(args: argparse.Namespace, docs: list[Any]) -> dict[str, Any]:
    words: list[list[AxisAngle]]
    if docs:
        words = [[_expect_kind(doc, "axis_angle", "group") for doc in docs]]
    else:
        rng = random.Random(args.seed)
        words = [
            [sampling.axis_angle(rng) for _ in range(3)] for _ in range(args.samples)
        ]
    cases = []
    failures = []
    worst = 0.0
    for i, word in enumerate(words):
        report = isomorphism.verify_group_diagram(word, tol=args.tol)
        worst = max(worst, report.max_deviation)
        if not report.commutes:
            failures.append(i)
        cases.append(
            {
                "index": i,
                "word_length": len(word),
                "max_deviation": report.max_deviation,
                "pass": report.commutes,
            }
        )
    return _verify_report("group", args, worst, failures, cases)


def _verify_inverse_pair(args: argparse.Namespace, docs: list[Any]) -> dict[str, Any]:
    if docs and len(docs) != 2:
        raise CliError(2, "malformed_input", "inverse-pair takes exactly two kraus documents")
    cases = []
    failures = []
    worst = 0.0
    if docs:
        fwd = _expect_kind(docs[0], "kraus", "inverse-pair")
        inv = _expect_kind(docs[1], "kraus", "inverse-pair")
        pairs = [(fwd, inv)]
    else:
        rng = random.Random(args.seed)
        pairs = []
        for _ in range(args.samples):
            k, _u, _w, _m = sampling.redundant_unitary_kraus(rng, 1 + rng.randrange(3))
            pairs.append((k, channels.invert(k, tol=args.tol)))
    for i, (fwd, inv) in enumerate(pairs):
        report = channels.verify_inverse_pair(fwd, inv, tol=args.tol)
        dev = max(report.max_residual, abs(report.alpha_square_sum - 1.0))
        worst = max(worst, dev)
        if not report.valid:
            failures.append(i)
        cases.append(
            {
                "index": i,
                "alpha_square_sum": report.alpha_square_sum,
                "max_residual": report.max_residual,
                "alpha": _encode_cmatrix(report.alpha),
                "pass": report.valid,
            }
        )
    return _verify_report("inverse-pair", args, worst, failures, cases)


def _verify_report(
    mode: str,
    args: argparse.Namespace,
    worst: float,
    failures: list[int],
    cases: list[dict[str, Any]],
) -> dict[str, Any]:
    return {
        "mode": mode,
        "samples": len(cases),
        "seed": args.seed,
        "tol": args.tol,
        "max_deviation": worst,
        "pass": not failures,
        "failures": failures,
        "cases": cases,
    }


def _expect_kind(doc: Any, kind: str, command: str) -> Any:
    got, obj = _decode_document(doc)
    if got != kind:
        raise CliError(2, "malformed_input", f"{command} expects {kind} documents, got {got}")
    return obj


def _cmd_verify(args: argparse.Namespace) -> dict[str, Any]:
    docs = [_load_json(path) for path in args.inputs]
    if args.mode == "diagram":
        if docs:
            raise CliError(2, "malformed_input", "diagram mode is sampled; no documents expected")
        return _verify_diagram(args)
    if args.mode == "double-cover":
        return _verify_double_cover(args, docs)
    if args.mode == "group":
        return _verify_group(args, docs)
    return _verify_inverse_pair(args, docs)


# ----------------------------------------------------------------------
# Plumbing


def _load_json(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise CliError(2, "malformed_input", f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(2, "malformed_input", f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc


def _emit(report: Any, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(dumps(report) + "\n")
    else:
        sys.stdout.write(render_text(report) + "\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=1e-9, help="comparison tolerance")
    parser.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochiso",
        description="Convert between qubit-state representations and analyze channel reversibility.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_convert = sub.add_parser("convert", help="convert a document to another kind")
    p_convert.add_argument("--to", required=True, choices=KINDS, help="target kind")
    p_convert.add_argument("input", nargs="?", default="-", help="input file or - for stdin")
    _add_common(p_convert)

    p_classify = sub.add_parser("classify", help="decide invertibility of a Kraus channel")
    p_classify.add_argument("input", nargs="?", default="-", help="input file or - for stdin")
    _add_common(p_classify)

    p_verify = sub.add_parser("verify", help="run a seeded verification suite")
    p_verify.add_argument(
        "mode", choices=("diagram", "double-cover", "group", "inverse-pair")
    )
    p_verify.add_argument("inputs", nargs="*", help="optional input documents")
    p_verify.add_argument("--samples", type=int, default=1000, help="number of random cases")
    p_verify.add_argument("--seed", type=int, default=42, help="random seed")
    _add_common(p_verify)

    p_action = sub.add_parser("bloch-action", help="affine Bloch-vector action of a channel")
    p_action.add_argument("input", nargs="?", default="-", help="input file or - for stdin")
    _add_common(p_action)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "convert":
            report = _cmd_convert(args)
        elif args.command == "classify":
            report = _cmd_classify(args)
        elif args.command == "verify":
            report = _cmd_verify(args)
        else:
            report = _cmd_bloch_action(args)
    except CliError as exc:
        _emit(exc.payload, args.format)
        return exc.exit_code
    _emit(report, args.format)
    if args.command == "verify" and not report["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
