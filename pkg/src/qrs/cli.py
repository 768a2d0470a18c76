"""Command-line front end: ``qrs <verb> --k K --delta D [options]``.

Every run prints one report, as text or as a single JSON object. The exit
status is 0 exactly when every check in the report passed; bad parameters
exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from qrs.circuits import build_encoder, build_syndrome_circuit, parse_circuit, write_circuit
from qrs.codes import is_weakly_self_dual
from qrs.css import build_decoder_table, build_quantum_rs
from qrs.errors import CapabilityError, QrsError
from qrs.experiments import low_weight_probability, run_checks, simulate


@dataclass
class RunReport:
    command: str
    parameters: dict
    checks: dict = field(default_factory=dict)  # name -> {"passed": bool, "detail": str}
    counts: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    timing: float | None = None

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks.values())

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks[name] = {"passed": bool(passed), "detail": detail}

    def to_dict(self) -> dict:
        d = {
            "command": self.command,
            "parameters": self.parameters,
            "info": self.info,
            "checks": self.checks,
            "counts": self.counts,
            "passed": self.passed,
        }
        if self.timing is not None:
            d["timing_s"] = round(self.timing, 3)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"$ {self.command}"]
        lines += [f"  {k} = {v}" for k, v in self.parameters.items()]
        lines += [f"{k}: {v}" for k, v in self.info.items()]
        lines += [f"{k}: {v}" for k, v in self.counts.items()]
        for name, c in self.checks.items():
            mark = "PASS" if c["passed"] else "FAIL"
            lines.append(f"[{mark}] {name}" + (f"  ({c['detail']})" if c["detail"] else ""))
        lines.append("result: " + ("ok" if self.passed else "FAILED"))
        if self.timing is not None:
            lines.append(f"time: {self.timing:.3f} s")
        return "\n".join(lines)


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror or e}") from None


def cmd_code_info(args, report: RunReport) -> None:
    code = build_quantum_rs(args.k, args.delta)
    rs = code.rs
    n_sym, kk = rs.field.n, rs.classical.dimension
    report.info.update(
        N=n_sym,
        K=kk,
        delta=args.delta,
        modulus=hex(rs.field.modulus),
        parameters=code.parameters(),
        guaranteed=f"[[{code.n},{code.k_logical},>={code.distance_bound}]]",
        distance_bound=code.distance_bound,
        distance_exact=code.distance_exact if code.distance_exact is not None else "not verified",
        self_dual_basis=[f"0x{b:x}" for b in rs.basis.elements],
    )
    report.check("self_dual_basis", rs.basis.is_self_dual)
    report.check("rs_weakly_self_dual", is_weakly_self_dual(rs.classical))
    report.check("expansion_weakly_self_dual", is_weakly_self_dual(code.binary_code))
    if args.out:
        _write(args.out, code.to_text())


def cmd_emit(args, report: RunReport) -> None:
    if not args.out:
        raise argparse.ArgumentTypeError("emit needs --out FILE")
    code = build_quantum_rs(args.k, args.delta)
    circuit = build_encoder(code) if args.what == "encoder" else build_syndrome_circuit(code)
    text = write_circuit(circuit)
    _write(args.out, text)
    report.info.update(what=args.what, file=args.out, parameters=code.parameters())
    report.counts.update(qubits=circuit.n_qubits, cbits=circuit.n_cbits, gates=len(circuit), **dict(sorted(circuit.counts().items())))
    report.check("round_trip", parse_circuit(Path(args.out).read_text()) == circuit)


def cmd_verify(args, report: RunReport) -> None:
    code, checks = run_checks(args.k, args.delta, args.level, args.seed)
    report.info["parameters"] = code.parameters()
    for c in checks:
        report.check(c.name, c.passed, c.detail)


def cmd_simulate(args, report: RunReport) -> None:
    mc, s = simulate(args.k, args.delta, args.p, args.trials, args.seed, args.workers)
    t = mc.table.t
    n_low, ok_low = s.low_weight(t)
    bound = low_weight_probability(mc.code.n, args.p, t)
    report.info.update(parameters=mc.code.parameters(), decoder_t=t, low_weight_bound=round(bound, 6))
    report.counts.update(
        trials=s.trials,
        successes=s.successes,
        failures=s.trials - s.successes - s.uncorrectable,
        detected_uncorrectable=s.uncorrectable,
        success_rate=s.success_rate,
        low_weight_trials=n_low,
        low_weight_successes=ok_low,
        by_weight={str(w): v for w, v in sorted(s.by_weight.items())},
    )
    report.check(f"weight_le_{t}_corrected", ok_low == n_low, f"{ok_low}/{n_low}")
    if args.out:
        _write(args.out, report.to_json() + "\n")


def cmd_decode_table(args, report: RunReport) -> None:
    code = build_quantum_rs(args.k, args.delta)
    table = build_decoder_table(code, args.t)
    report.info.update(parameters=code.parameters(), t=table.t)
    report.counts["entries"] = len(table)
    if args.out:
        lines = []
        for (sx, sz), err in sorted(table.entries.items()):
            bits = "".join(map(str, sx)) + " " + "".join(map(str, sz))
            lines.append(f"{bits} {err}")
        _write(args.out, "\n".join(lines) + "\n")


COMMANDS = {
    "code-info": cmd_code_info,
    "emit": cmd_emit,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "decode-table": cmd_decode_table,
}


def _probability(s: str) -> float:
    p = float(s)
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {s}")
    return p


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, required=True, help="field degree, GF(2^k), 2..8")
    common.add_argument("--delta", type=int, required=True, help="designed distance, N/2+1 < delta <= N")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="output file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    parser = argparse.ArgumentParser(prog="qrs", description="Quantum Reed-Solomon codes: construction, circuits, verification.")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("code-info", parents=[common], help="code parameters and basic checks")
    emit = sub.add_parser("emit", parents=[common], help="write the encoder or syndrome circuit")
    emit.add_argument("--what", choices=("encoder", "syndrome"), default="encoder")
    verify = sub.add_parser("verify", parents=[common], help="run the property suite")
    verify.add_argument("--level", choices=("exhaustive", "quick"), default="exhaustive")
    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo error correction")
    sim.add_argument("--p", type=_probability, required=True, help="per-qubit error probability")
    sim.add_argument("--trials", type=_positive, default=1000)
    sim.add_argument("--workers", type=_positive, default=1)
    table = sub.add_parser("decode-table", parents=[common], help="build the lookup decoder")
    table.add_argument("--t", type=int, default=None, help="correct up to this weight (default: floor((d-1)/2))")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("verb", "format", "out", "timing")}
    report = RunReport("qrs " + " ".join(argv), params)
    start = time.perf_counter()
    try:
        COMMANDS[args.verb](args, report)
    except (QrsError, ValueError, argparse.ArgumentTypeError) as e:
        if isinstance(e, CapabilityError):
            print(f"qrs {args.verb}: error: {e}", file=sys.stderr)
            return 1
        parser.print_usage(sys.stderr)
        print(f"qrs {args.verb}: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"qrs {args.verb}: error: {e}", file=sys.stderr)
        return 1
    if args.timing:
        report.timing = time.perf_counter() - start
    print(report.to_json() if args.format == "json" else report.to_text())
    if not report.passed:
        for name, c in report.checks.items():
            if not c["passed"]:
                print(f"failing check {name}: {c['detail']}", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
