"""Command-line interface.

Subcommands: ``generate``, ``canonize``, ``sweep``, ``summarize``,
``bench-kernels``.  Exit codes: 0 success, 2 parse error, 3 timeout,
4 registry contract violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bench, io
from .engine import CanonConfig, NeverThreshold, canonize, otf_determinize
from .generator import GenParams, generate, instance_meta
from .kernels import available_backends, successor_kernel
from .registry import OneToOneRegistry, RegistryContractError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_TIMEOUT = 3
EXIT_CONTRACT = 4


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except io.ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except RegistryContractError as e:
        print(f"error: registry contract violation: {e}", file=sys.stderr)
        return EXIT_CONTRACT


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nfacanon")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a modular random NFA")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("canonize", help="canonize an NFA file")
    p.add_argument("input", help="NFA file path ('-' for stdin)")
    p.add_argument(
        "--pipeline",
        choices=["sc", "sc-s", "otf", "otf-s", "brz", "brz-s", "brz-otf", "brz-otf-s"],
        default="sc",
    )
    p.add_argument("--timeout-ms", type=float, default=None)
    p.add_argument("--threshold-init", type=int, default=5000)
    p.add_argument("--complete", dest="complete", action="store_true", default=True)
    p.add_argument("--no-complete", dest="complete", action="store_false")
    p.add_argument("--emit-dfa", metavar="PATH", help="write the canonical DFA here")
    p.add_argument("--kernel-backend", choices=available_backends(), default=None)
    p.set_defaults(func=_cmd_canonize)

    p = sub.add_parser("sweep", help="run a benchmark sweep over generated NFAs")
    p.add_argument("--n-values", default="20:300:10", help="'start:stop:step' or comma list")
    p.add_argument("--seeds-per-n", type=int, default=10)
    p.add_argument("--density", type=float, default=2.0)
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument(
        "--pipelines",
        default="sc,sc-s,otf,otf-s,brz,brz-s,brz-otf,brz-otf-s",
        help="comma-separated pipeline names",
    )
    p.add_argument("--timeout-ms", type=float, default=None)
    p.add_argument("--threshold-init", type=int, default=5000)
    p.add_argument("--kernel-backend", choices=available_backends(), default=None)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("summarize", help="summarize a sweep CSV")
    p.add_argument("csv", help="CSV produced by 'sweep'")
    p.add_argument("--json", metavar="PATH", help="also write the summary as JSON")
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser(
        "bench-kernels", help="compare compiled and pure-Python successor kernels"
    )
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--density", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=_cmd_bench_kernels)

    return parser


def _cmd_generate(args) -> int:
    params = GenParams(n=args.n, density=args.density, seed=args.seed)
    text = io.serialize_nfa(generate(params), instance_meta(params))
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _cmd_canonize(args) -> int:
    nfa, meta = io.parse_nfa(_read_input(args.input))
    config = CanonConfig(
        pipeline=args.pipeline,
        threshold_init=args.threshold_init,
        complete_output=args.complete,
        timeout_ms=args.timeout_ms,
        kernel_backend=args.kernel_backend,
    )
    instance_id = meta.get("instance", args.input)
    row, dfa = bench.run_once(nfa, instance_id, config)
    print(json.dumps(row.to_json_dict()))
    if row.timed_out:
        return EXIT_TIMEOUT
    if args.emit_dfa and dfa is not None:
        with open(args.emit_dfa, "w") as f:
            f.write(io.serialize_dfa(dfa, {"pipeline": args.pipeline}))
    return EXIT_OK


def _parse_n_values(spec: str) -> list[int]:
    if ":" in spec:
        parts = [int(x) for x in spec.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(start, stop + 1, step))
    return [int(x) for x in spec.split(",") if x]


def _cmd_sweep(args) -> int:
    bench.run_sweep(
        n_values=_parse_n_values(args.n_values),
        seeds_per_n=args.seeds_per_n,
        density=args.density,
        pipelines=[p.strip() for p in args.pipelines.split(",") if p.strip()],
        timeout_ms=args.timeout_ms,
        out_csv=args.out,
        base_seed=args.base_seed,
        threshold_init=args.threshold_init,
        kernel_backend=args.kernel_backend,
    )
    print(f"wrote {args.out} and {bench.cactus_path(args.out)}")
    return EXIT_OK


def _cmd_summarize(args) -> int:
    rows = bench.read_csv(args.csv)
    if not rows:
        print("warning: empty CSV, empty summary", file=sys.stderr)
    summary = bench.summarize(rows)
    print(bench.format_summary(summary))
    if args.json:
        with open(args.json, "w") as f:
            json.dump(summary, f, indent=2)
    return EXIT_OK


def _cmd_bench_kernels(args) -> int:
    params = GenParams(n=args.n, density=args.density, seed=args.seed)
    nfa = generate(params)
    # one reference run collects the explored metastates for the
    # kernel-only measurement
    ref = otf_determinize(
        nfa, OneToOneRegistry(), NeverThreshold(), trace_explored=True
    )
    masks = ref.explored_trace or []
    results = {}
    for backend in available_backends():
        kern = successor_kernel(nfa, backend)
        kernel_best = None
        e2e_best = None
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            for mask in masks:
                kern.successors(mask)
            elapsed = (time.perf_counter() - t0) * 1000.0
            kernel_best = elapsed if kernel_best is None else min(kernel_best, elapsed)
            t0 = time.perf_counter()
            otf_determinize(
                nfa, OneToOneRegistry(), NeverThreshold(), kernel_backend=backend
            )
            elapsed = (time.perf_counter() - t0) * 1000.0
            e2e_best = elapsed if e2e_best is None else min(e2e_best, elapsed)
        results[backend] = {
            "kernel_only_ms": round(kernel_best, 3),
            "determinize_ms": round(e2e_best, 3),
        }
    print(
        json.dumps(
            {
                "n": args.n,
                "density": args.density,
                "metastates": len(masks),
                "dfa_states": ref.dfa.num_states,
                "backends": results,
            }
        )
    )
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
