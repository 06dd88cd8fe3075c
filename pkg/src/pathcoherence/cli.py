"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 circuit parse error, 3 cap exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass

from .circuit import Circuit, ParseError, build_marginal_gadget, parse_circuit
from .coherence import DEFAULT_CAP, path_coherence
from .errors import CapExceeded, InvariantViolation
from .estimate import estimate_marginal, mc_estimate
from .gf2 import BitVector
from .oracle import DEFAULT_QUBIT_CAP, statevector_amplitude, statevector_marginal
from .qcalc import DomainError, empirical_rank_dist, plot_data, rank_counts
from .sop import encode, specialize
from .synth import eliminate_pairs

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAP, EXIT_INVARIANT = range(5)


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    exit_code: int
    stdout: str = ""
    stderr: str = ""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_circuit(path: str) -> Circuit:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_circuit(text)


def _bits(s: str, width: int, what: str) -> BitVector:
    try:
        v = BitVector.from_str(s)
    except ValueError:
        raise UsageError(f"{what}: {s!r} is not a bitstring") from None
    if v.len != width:
        raise UsageError(f"{what}: expected {width} bits, got {v.len}")
    return v


def _dumps(obj) -> str:
    return json.dumps(obj) + "\n"


def _fraction_str(p) -> str:
    return f"{float(p):.12f}"


def cmd_analyze(args) -> str:
    ps = encode(_read_circuit(args.file))
    out = path_coherence(ps).to_json()
    if args.dump:
        out["system"] = ps.to_json()
    return _dumps(out)


def _amplitude_json(rep, inst, est, seed) -> dict:
    return {
        **rep.to_json(),
        "consistent": inst.consistent,
        "solutions_log2": inst.solutions_log2,
        "re": est.real,
        "im": est.imag,
        "eps": est.epsilon,
        "delta": est.delta,
        "samples": est.samples,
        "mode": est.mode,
        "seed": seed,
    }


def cmd_estimate(args) -> str:
    c = _read_circuit(args.file)
    a = _bits(args.inp, c.n_qubits, "--in")
    b = _bits(args.out, c.n_qubits, "--out")
    ps = encode(c)
    rep = path_coherence(ps)
    inst = specialize(ps, a, b)
    est = mc_estimate(
        inst, args.eps, args.delta, args.seed,
        threads=args.threads, exact_fallback=not args.force_mc, cap=args.exact_cap,
    )
    return _dumps(_amplitude_json(rep, inst, est, args.seed))


def cmd_prob(args) -> str:
    c = _read_circuit(args.file)
    a = _bits(args.inp, c.n_qubits, "--in")
    if not 1 <= len(args.marginal) <= c.n_qubits:
        raise UsageError(f"--marginal: expected 1 to {c.n_qubits} bits, got {len(args.marginal)}")
    y = _bits(args.marginal, len(args.marginal), "--marginal")
    est = estimate_marginal(
        c, a, y, args.eps, args.delta, args.seed,
        threads=args.threads, exact_fallback=not args.force_mc, cap=args.exact_cap,
    )
    gadget = encode(build_marginal_gadget(c, y.len))
    rep = path_coherence(gadget)
    out = rep.to_json()
    out.update(
        k=y.len, prob=est.real, re=est.real, im=est.imag, eps=est.epsilon, delta=est.delta,
        samples=est.samples, mode=est.mode, seed=args.seed,
    )
    return _dumps(out)


def cmd_synth(args) -> str:
    ps = encode(_read_circuit(args.file))
    reduced = eliminate_pairs(ps)
    before, after = path_coherence(ps), path_coherence(reduced)
    out = {"before": before.to_json(), "after": after.to_json(), "null": reduced.null}
    if args.dump:
        out["system"] = reduced.to_json()
    return _dumps(out)


def cmd_rankdist(args) -> str:
    buf = io.StringIO()
    if args.plot is not None:
        buf.write("n,h,prob\n")
        for n, h, p in plot_data(args.plot, args.q):
            buf.write(f"{n},{h},{_fraction_str(p)}\n")
        return buf.getvalue()
    if args.n is None or args.hmax is None:
        raise UsageError("rankdist needs --n and --hmax (or --plot)")
    if args.empirical is not None and args.q != 2:
        raise UsageError("--empirical supports q = 2 only")
    header = "h,r,count,probability"
    if args.empirical is not None:
        header += ",empirical"
    buf.write(header + "\n")
    for h in range(args.hmax + 1):
        dist = rank_counts(args.n, h, args.q)
        emp = None
        if args.empirical is not None:
            emp = empirical_rank_dist(args.n, h, args.empirical, args.seed + h)
        for r in range(min(args.n, h) + 1):
            row = f"{h},{r},{dist.counts.get(r, 0)},{_fraction_str(dist.probability(r))}"
            if emp is not None:
                row += f",{emp.get(r, 0.0):.12f}"
            buf.write(row + "\n")
    return buf.getvalue()


def cmd_oracle(args) -> str:
    c = _read_circuit(args.file)
    a = _bits(args.inp, c.n_qubits, "--in")
    if (args.out is None) == (args.marginal is None):
        raise UsageError("oracle needs exactly one of --out or --marginal")
    if args.out is not None:
        amp = statevector_amplitude(c, a, _bits(args.out, c.n_qubits, "--out"), cap=args.qubit_cap)
        return _dumps({"re": amp.real, "im": amp.imag})
    if len(args.marginal) > c.n_qubits:
        raise UsageError(f"--marginal: expected at most {c.n_qubits} bits")
    y = _bits(args.marginal, len(args.marginal), "--marginal")
    return _dumps({"prob": statevector_marginal(c, a, y, cap=args.qubit_cap)})


def _unit_interval(s: str) -> float:
    v = float(s)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"{s} is not in (0, 1)")
    return v


def _seed(s: str) -> int:
    v = int(s)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pathcoherence", description="Path-sum analysis of Hadamard + classical-linear circuits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("analyze", help="path coherence report")
    s.add_argument("file")
    s.add_argument("--dump", action="store_true", help="include the compiled system")
    s.set_defaults(func=cmd_analyze)

    def sampling(s):
        s.add_argument("--eps", type=_unit_interval, required=True)
        s.add_argument("--delta", type=_unit_interval, required=True)
        s.add_argument("--seed", type=_seed, required=True)
        s.add_argument("--exact-cap", type=int, default=DEFAULT_CAP)
        s.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        s.add_argument("--force-mc", action="store_true", help="sample even when enumeration is cheaper")

    s = sub.add_parser("estimate", help="transition amplitude <out|C|in>")
    s.add_argument("file")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out", required=True)
    sampling(s)
    s.set_defaults(func=cmd_estimate)

    s = sub.add_parser("prob", help="k-marginal probability via the uncomputation gadget")
    s.add_argument("file")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--marginal", required=True)
    sampling(s)
    s.set_defaults(func=cmd_prob)

    s = sub.add_parser("synth", help="eliminate redundant Hadamard pairs")
    s.add_argument("file")
    s.add_argument("--dump", action="store_true")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("rankdist", help="rank distribution of A_x for random circuits (CSV)")
    s.add_argument("--n", type=int)
    s.add_argument("--hmax", type=int)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--empirical", type=int, metavar="TRIALS")
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--plot", type=int, metavar="NMAX")
    s.set_defaults(func=cmd_rankdist)

    s = sub.add_parser("oracle", help="dense state-vector reference")
    s.add_argument("file")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.add_argument("--marginal")
    s.add_argument("--qubit-cap", type=int, default=DEFAULT_QUBIT_CAP)
    s.set_defaults(func=cmd_oracle)
    return p


def run(argv: list[str]) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be positive")
        return CommandResult(EXIT_OK, args.func(args))
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, stderr=f"usage error: {exc}\n")
    except DomainError as exc:
        return CommandResult(EXIT_USAGE, stderr=f"usage error: {exc}\n")
    except ParseError as exc:
        return CommandResult(EXIT_PARSE, stderr=f"parse error: {exc}\n")
    except CapExceeded as exc:
        return CommandResult(EXIT_CAP, stderr=f"capability exceeded: {exc}\n")
    except InvariantViolation as exc:
        return CommandResult(EXIT_INVARIANT, stderr=f"invariant violation: {exc}\n")
    except SystemExit as exc:  # --help
        return CommandResult(exc.code or EXIT_OK)


def main(argv: list[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
