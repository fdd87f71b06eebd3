"""``commutant`` command-line front end.

Every run writes exactly one UTF-8 JSON document, to stdout or ``--out``.
Exit codes: 0 success, 1 verification failure, 2 obstruction, 3 input
error, 4 unsupported prime.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import certificate, commute, selftest, sl2grp
from .errors import (
    CommutantError,
    InputError,
    SearchExhausted,
    UnsupportedPrime,
)
from .exactring import Matrix, Ring
from .lrform import DEFAULT_BUDGET

EXIT_OK, EXIT_VERIFY, EXIT_OBSTRUCTION, EXIT_INPUT, EXIT_PRIME = 0, 1, 2, 3, 4

COMMANDS = ("decompose", "decompose-gl", "group-commutator", "verify", "selftest")


@dataclass
class JobSpec:
    command: str
    ring: Ring | None = None
    matrix: Matrix | None = None
    document: dict | None = None
    traceless: bool = True
    seed: int = 0
    budget: str = "full"
    primes_bound: int = commute.DEFAULT_PRIMES_BOUND
    variant: str = "sl"

    def search_budget(self) -> int:
        if self.budget in ("small", "full"):
            return DEFAULT_BUDGET
        return int(self.budget)


def _budget(text: str) -> str:
    if text in ("small", "full"):
        return text
    try:
        if int(text) > 0:
            return text
    except ValueError:
        pass
    raise argparse.ArgumentTypeError("budget must be 'small', 'full' or a positive integer")


class _ParseFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument errors become exit code 3 with a JSON error document."""

    def error(self, message):
        raise _ParseFailure(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="commutant", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--ring", choices=("int", "rat", "fp", "zpk"))
    ap.add_argument("--p", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--in", dest="infile", default="-")
    ap.add_argument("--out", dest="outfile")
    ap.add_argument("--variant", choices=("sl", "gl"), default="sl")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=_budget, default="full")
    ap.add_argument("--primes-bound", type=int, default=commute.DEFAULT_PRIMES_BOUND)
    return ap


def _read_document(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg} at line {exc.lineno}") from exc
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object")
    return doc


def _flag_ring(args) -> Ring | None:
    if args.ring is None:
        if args.p is not None or args.k is not None:
            raise InputError("--p/--k need --ring")
        return None
    desc = {"kind": args.ring}
    if args.p is not None:
        desc["p"] = args.p
    if args.k is not None:
        desc["k"] = args.k
    return certificate.ring_from_json(desc)


def make_job(args) -> JobSpec:
    job = JobSpec(args.command, seed=args.seed, budget=args.budget,
                  primes_bound=args.primes_bound, variant=args.variant,
                  traceless=args.command != "decompose-gl")
    if args.command == "selftest":
        return job
    doc = _read_document(args.infile)
    job.document = doc
    if args.command == "verify":
        return job
    ring = _flag_ring(args)
    job.matrix = certificate.matrix_from_json(doc, ring)
    job.ring = job.matrix.ring
    if not job.matrix.is_square:
        raise InputError(f"expected a square matrix, got {job.matrix.shape}")
    return job


def _obstruction_doc(job: JobSpec, obs: commute.Obstruction) -> dict:
    return {"tool": "commutant", "version": certificate.VERSION, "seed": job.seed,
            "command": job.command, "kind": "obstruction",
            "input": certificate.matrix_to_json(obs.A), "reason": obs.reason}


def _two_by_two_field_cert(A: Matrix, pair) -> commute.CommutatorCertificate:
    X, Y = pair
    one = Matrix.identity(A.ring, 2)
    return commute.CommutatorCertificate(A, X, Y, one, A.ring(1), X, Y, True)


def cmd_decompose(job: JobSpec) -> tuple[int, dict]:
    A, ring = job.matrix, job.ring
    budget = job.search_budget()
    if ring.is_field:
        if job.traceless and A.rows == 2:
            res = commute.decompose_2x2_field(A)
            if isinstance(res, commute.Obstruction):
                return EXIT_OBSTRUCTION, _obstruction_doc(job, res)
            cert = _two_by_two_field_cert(A, res)
        elif job.traceless:
            cert = commute.decompose_field(A)
        else:
            cert = commute.decompose_field_gl(A)
    elif ring.kind == "integers":
        run = commute.decompose_pid if job.traceless else commute.decompose_pid_gl
        cert = run(A, primes_bound=job.primes_bound, budget=budget, seed=job.seed)
    else:
        cert = commute.decompose_residue(A, traceless=job.traceless, budget=budget, seed=job.seed)
    doc = certificate.lie_certificate_json(cert, job.command, job.seed)
    return (EXIT_OK if doc["verification"]["ok"] else EXIT_VERIFY), doc


def cmd_group_commutator(job: JobSpec) -> tuple[int, dict]:
    A, ring = job.matrix, job.ring
    if ring.modulus is None:
        raise InputError("group-commutator needs --ring zpk (or fp)")
    if A.shape != (2, 2):
        raise InputError("group-commutator takes a 2×2 matrix")
    if ring.p == 2 or (job.variant == "sl" and ring.p == 3):
        raise UnsupportedPrime(f"p = {ring.p} is not supported for the {job.variant} variant")
    if A.det() != 1:
        raise InputError(f"det A = {A.det()}, expected 1")
    run = sl2grp.group_commutator_sl if job.variant == "sl" else sl2grp.group_commutator_gl
    doc = certificate.group_certificate_json(run(A), job.command, job.seed)
    return (EXIT_OK if doc["verification"]["ok"] else EXIT_VERIFY), doc


def cmd_verify(job: JobSpec) -> tuple[int, dict]:
    report = certificate.verify_certificate(job.document)
    out = {"tool": "commutant", "version": certificate.VERSION, "command": "verify",
           **report.to_json()}
    return (EXIT_OK if report.ok else EXIT_VERIFY), out


def cmd_selftest(job: JobSpec) -> tuple[int, dict]:
    report = selftest.run_selftest(seed=job.seed, budget=job.budget)
    return (EXIT_OK if report["ok"] else EXIT_VERIFY), report


DISPATCH = {
    "decompose": cmd_decompose,
    "decompose-gl": cmd_decompose,
    "group-commutator": cmd_group_commutator,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def _error_doc(exc: BaseException, code: int) -> dict:
    return {"tool": "commutant", "version": certificate.VERSION,
            "error": {"type": type(exc).__name__, "message": str(exc)}, "exit_code": code}


def execute(args: argparse.Namespace) -> tuple[int, dict]:
    try:
        job = make_job(args)
        return DISPATCH[job.command](job)
    except UnsupportedPrime as exc:
        return EXIT_PRIME, _error_doc(exc, EXIT_PRIME)
    except (InputError, SearchExhausted) as exc:
        return EXIT_INPUT, _error_doc(exc, EXIT_INPUT)
    except CommutantError as exc:
        return EXIT_VERIFY, _error_doc(exc, EXIT_VERIFY)


def run(argv: list[str]) -> tuple[int, dict, str | None]:
    """Parse and execute without printing; returns ``(exit_code, document, out_path)``."""
    try:
        args = build_parser().parse_args(argv)
    except _ParseFailure as exc:
        return EXIT_INPUT, _error_doc(InputError(str(exc)), EXIT_INPUT), None
    code, doc = execute(args)
    return code, doc, args.outfile


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, doc, outfile = run(argv)
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if outfile:
        with open(outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.buffer.write(text.encode("utf-8"))
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
