"""Command-line front end.

    magnus-kernel fox --n 3 --word "[x1,x2]"
    magnus-kernel magnus --n 3 --auto "K 1 2"
    magnus-kernel kernel-test --n 3 --auto "sigma 2 2 3"
    magnus-kernel basis --n 2 --d 2
    magnus-kernel rewrite --n 3 --d 3 --word "x1^4 x2 x1^-4"
    magnus-kernel tau --n 3 --auto "K 1 2 3" --degree 1
    magnus-kernel pi --n 3 --d 5 --auto "sigma 2 2 3"
    magnus-kernel verify --lemma RANK1 --n 3 --d 6
    magnus-kernel verify --all

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for invalid input, 3 when a desk-scale cap is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .detect import VERIFIERS, Report, pi, verify
from .errors import CapExceededError
from .fox import fox_ab, fox_free, kernel_member, magnus_matrix
from .johnson import tau
from .parsing import parse_automorphism, parse_word
from .schreier import SubgroupContext, rewrite

MAX_N = 6
MAX_D = 12
MAX_DEGREE = 6
MAX_WORD_LENGTH = 10_000

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    n: int = None
    d: int = None
    m: int = None
    degree: int = None
    word: str = None
    auto: str = None
    index: int = None
    lemma: str = None
    all: bool = False
    samples: int = None
    seed: int = None
    output: str = None
    format: str = "text"

    def check_caps(self) -> None:
        if self.n is not None and self.n > MAX_N:
            raise CapExceededError(f"n = {self.n} exceeds {MAX_N}")
        if self.d is not None and self.d > MAX_D:
            raise CapExceededError(f"d = {self.d} exceeds {MAX_D}")
        if self.degree is not None and self.degree > MAX_DEGREE:
            raise CapExceededError(f"degree = {self.degree} exceeds {MAX_DEGREE}")


def _word(cfg: RunConfig):
    w = parse_word(cfg.word, cfg.n)
    if len(w) > MAX_WORD_LENGTH:
        raise CapExceededError(f"word length {len(w)} exceeds {MAX_WORD_LENGTH}")
    return w


def _auto(cfg: RunConfig):
    sigma = parse_automorphism(cfg.auto, cfg.n)
    if any(len(w) > MAX_WORD_LENGTH for w in sigma.images):
        raise CapExceededError(f"automorphism images exceed {MAX_WORD_LENGTH} letters")
    return sigma


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(cfg, n) is None]
    if missing:
        raise ValueError(f"{cfg.command} needs {', '.join(missing)}")


def _result(cfg: RunConfig, result, text: str, ok: bool = True) -> dict:
    params = {k: v for k, v in vars(cfg).items() if v is not None and k not in ("output", "format", "command")}
    return {"command": cfg.command, "params": params, "result": result, "pass": ok,
            "tool_version": __version__, "_text": text}


def cmd_fox(cfg: RunConfig) -> dict:
    _require(cfg, "n", "word")
    w = _word(cfg)
    indices = [cfg.index] if cfg.index else range(1, cfg.n + 1)
    rows = {f"x{i}": {"free": str(fox_free(w, i)), "abelian": fox_ab(w, i).to_json()} for i in indices}
    text = "\n".join(f"d/dx{i}: {fox_free(w, i)}\n  ab: {fox_ab(w, i)}" for i in indices)
    return _result(cfg, rows, text)


def cmd_magnus(cfg: RunConfig) -> dict:
    _require(cfg, "n", "auto")
    m = magnus_matrix(_auto(cfg))
    return _result(cfg, m.to_json(), str(m))


def cmd_kernel_test(cfg: RunConfig) -> dict:
    _require(cfg, "n", "auto")
    member = kernel_member(_auto(cfg))
    return _result(cfg, member, f"in kernel: {member}", ok=member)


def cmd_basis(cfg: RunConfig) -> dict:
    _require(cfg, "n", "d")
    ctx = SubgroupContext(cfg.n, cfg.d)
    basis = [{"name": ctx.label(i), "word": str(w)} for i, w in enumerate(ctx.basis, 1)]
    return _result(cfg, basis, "\n".join(ctx.basis_strings()))


def cmd_rewrite(cfg: RunConfig) -> dict:
    _require(cfg, "n", "d", "word")
    ctx = SubgroupContext(cfg.n, cfg.d)
    sw = rewrite(_word(cfg), ctx)
    return _result(cfg, str(sw), str(sw))


def cmd_tau(cfg: RunConfig) -> dict:
    _require(cfg, "n", "auto")
    image = tau(_auto(cfg), cfg.degree or 1)
    return _result(cfg, image.to_json(), str(image))


def cmd_pi(cfg: RunConfig) -> dict:
    _require(cfg, "n", "d", "auto")
    vec = pi(_auto(cfg), SubgroupContext(cfg.n, cfg.d))
    return _result(cfg, vec, " ".join(map(str, vec)))


def _lemma_params(lemma: str, cfg: RunConfig) -> dict:
    accepted = inspect.signature(VERIFIERS[lemma][0]).parameters
    supplied = {"n": cfg.n, "d": cfg.d, "m": cfg.m, "samples": cfg.samples, "seed": cfg.seed}
    return {k: v for k, v in supplied.items() if v is not None and k in accepted}


def _run_verify(args) -> Report:
    lemma, params = args
    return verify(lemma, **params)


def _workers() -> int:
    raw = os.environ.get("MAGNUS_KERNEL_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MAGNUS_KERNEL_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("MAGNUS_KERNEL_THREADS must be a positive integer")
    return value


def cmd_verify(cfg: RunConfig) -> dict:
    if cfg.all == bool(cfg.lemma):
        raise ValueError("verify needs exactly one of --lemma ID or --all")
    if cfg.all:
        # only the seed/sample settings are shared; sizes use each lemma's defaults
        jobs = []
        for lemma in VERIFIERS:
            params = {k: v for k, v in _lemma_params(lemma, cfg).items() if k in ("seed", "samples")}
            jobs.append((lemma, params))
    else:
        lemma = cfg.lemma.upper()
        if lemma not in VERIFIERS:
            raise ValueError(f"unknown lemma id {cfg.lemma!r}; known: {', '.join(VERIFIERS)}")
        jobs = [(lemma, _lemma_params(lemma, cfg))]
    workers = min(_workers(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_verify, jobs))
    else:
        reports = [_run_verify(j) for j in jobs]
    ok = all(r.passed for r in reports)
    return {"reports": reports, "pass": ok}


COMMANDS = {
    "fox": cmd_fox,
    "magnus": cmd_magnus,
    "kernel-test": cmd_kernel_test,
    "basis": cmd_basis,
    "rewrite": cmd_rewrite,
    "tau": cmd_tau,
    "pi": cmd_pi,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magnus-kernel", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", "-o", help="write the report to this path instead of stdout")
    common.add_argument("--seed", type=int)

    def add(name, *flags, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for flag in flags:
            if flag == "n":
                p.add_argument("--n", type=int, required=name != "verify", help="rank of F_n")
            elif flag == "d":
                p.add_argument("--d", type=int, required=name != "verify", help="index of W_{n,d}")
            elif flag == "word":
                p.add_argument("--word", required=True, help='word such as "x2 [[x1,x3],[x1^2,x3]]"')
            elif flag == "auto":
                p.add_argument("--auto", required=True, help='automorphism such as "K 1 2" or "sigma m j s"')
        return p

    p = add("fox", "n", "word", help="Fox derivatives of a word")
    p.add_argument("--index", type=int, help="only this generator")
    add("magnus", "n", "auto", help="Magnus matrix r_M")
    add("kernel-test", "n", "auto", help="membership in the kernel K_n")
    add("basis", "n", "d", help="free basis of W_{n,d}")
    add("rewrite", "n", "d", "word", help="rewrite a word of W_{n,d} over its basis")
    p = add("tau", "n", "auto", help="Johnson homomorphism tau_k")
    p.add_argument("--degree", type=int, default=1)
    add("pi", "n", "d", "auto", help="coordinates of pi_{n,d}(sigma)")
    p = add("verify", "n", "d", help="run lemma verifiers")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lemma", help=f"one of {', '.join(VERIFIERS)}")
    group.add_argument("--all", action="store_true")
    p.add_argument("--m", type=int)
    p.add_argument("--samples", type=int)
    return parser


def _render(payload: dict, fmt: str) -> str:
    if "reports" in payload:
        reports = payload["reports"]
        if fmt == "json":
            data = [r.to_json() for r in reports]
            return json.dumps(data[0] if len(data) == 1 else data, indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["id", "params", "expected", "got", "pass", "millis", "tool_version"])
            for r in reports:
                writer.writerow([r.id, json.dumps(r.params, sort_keys=True), r.expected, r.got,
                                 r.passed, r.millis, r.tool_version])
            return buf.getvalue()
        return "\n".join(r.line() for r in reports) + "\n"
    text = payload.pop("_text")
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["command", "params", "result", "pass"])
        writer.writerow([payload["command"], json.dumps(payload["params"], sort_keys=True),
                         json.dumps(payload["result"]), payload["pass"]])
        return buf.getvalue()
    return text + "\n"


def write_atomic(path: str, content: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".magnus-kernel-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg.check_caps()
        payload = COMMANDS[cfg.command](cfg)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = payload["pass"]
    rendered = _render(payload, cfg.format)
    if cfg.output:
        write_atomic(cfg.output, rendered)
    else:
        out.write(rendered)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k.replace("-", "_"): v for k, v in vars(args).items()})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
