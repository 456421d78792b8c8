"""Command-line entry point: JSON in, JSON out.

Subcommands: betti, algebra-check, simplicial, poisson, pipeline.  Exit
codes: 0 success, 1 internal invariant violation, 2 input error, 3 partial
run (grid points skipped under the enumeration cap).  Exact integers are
emitted as decimal strings; Monte Carlo values as floats.  Output files are
written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

import numpy as np

from . import betti as betti_mod
from . import graded_algebra as ga
from . import hodge_discrete as hodge
from . import poisson_mc
from .errors import InvariantError

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INPUT = 2
EXIT_PARTIAL = 3


class InputError(ValueError):
    """Bad command-line input or malformed JSON document."""


@dataclass(frozen=True)
class RunConfig:
    """One parsed CLI invocation."""

    command: str
    payload: dict | None
    output: str | None
    n_max: int
    seed: int | None
    samples: int | None
    infinite_volume: bool
    grid: dict | None
    kron_probes: int


def _read_json_source(source: str) -> dict:
    """Accept inline JSON (leading '{'), '-' for stdin, or a file path."""
    text = source.strip()
    if text.startswith("{"):
        raw = text
    elif text == "-":
        raw = sys.stdin.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read input {source!r}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON input: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input JSON must be an object")
    return doc


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if output is None:
        print(text)
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_betti(cfg: RunConfig) -> tuple[dict, int]:
    vector = betti_mod.BettiVector.from_json(cfg.payload)
    report = betti_mod.betti_report(vector, cfg.n_max)
    return betti_mod.report_to_json(report), EXIT_OK


_DEFAULT_GRID = {
    "l_max": 3,
    "degree_max": 4,
    "dim_max": 2,
    "m_max": 4,
    "n_max": 6,
    "betti_d_max": 3,
    "betti_beta_max": 2,
    "betti_n_max": 6,
}


def _grid_spaces(grid: dict):
    """Component multisets (degree, dim) up to the grid bounds, dims >= 1."""
    pairs = [
        (p, d)
        for p in range(1, grid["degree_max"] + 1)
        for d in range(1, grid["dim_max"] + 1)
    ]
    for size in range(1, grid["l_max"] + 1):
        for comps in combinations_with_replacement(pairs, size):
            yield ga.GradedSpace(comps)


def cmd_algebra_check(cfg: RunConfig) -> tuple[dict, int]:
    grid = dict(_DEFAULT_GRID)
    if cfg.grid:
        unknown = set(cfg.grid) - set(grid)
        if unknown:
            raise InputError(f"unknown grid keys {sorted(unknown)}")
        grid.update({k: int(v) for k, v in cfg.grid.items()})
    rows = []
    mismatches = skipped = 0

    for space in _grid_spaces(grid):
        for m in range(grid["m_max"] + 1):
            for n in range(grid["n_max"] + 1):
                closed = ga.sym_component_dim_closed(space, m, n)
                row = {
                    "kind": "dims",
                    "space": [[p, d] for p, d in space.components],
                    "m": str(m),
                    "n": str(n),
                    "closed": str(closed),
                }
                try:
                    brute = ga.sym_component_dim_bruteforce(space, m, n)
                except ga.EnumerationCapError as exc:
                    row["status"] = "skipped"
                    row["reason"] = str(exc)
                    skipped += 1
                else:
                    row["brute"] = str(brute)
                    row["status"] = "ok" if brute == closed else "mismatch"
                    if brute != closed:
                        mismatches += 1
                rows.append(row)

    d_max = grid["betti_d_max"]
    betas = product(range(grid["betti_beta_max"] + 1), repeat=d_max)
    for beta_tail in betas:
        vector = betti_mod.BettiVector(d=d_max, beta=(0, *beta_tail))
        space = ga.GradedSpace(tuple((k, vector.beta[k]) for k in range(1, d_max + 1)))
        for n in range(grid["betti_n_max"] + 1):
            formula = betti_mod.config_betti(vector, n)
            row = {
                "kind": "betti",
                "beta": list(vector.beta),
                "n": str(n),
                "formula": str(formula),
            }
            try:
                brute = sum(
                    ga.sym_component_dim_bruteforce(space, m, n) for m in range(n + 1)
                )
            except ga.EnumerationCapError as exc:
                row["status"] = "skipped"
                row["reason"] = str(exc)
                skipped += 1
            else:
                row["brute"] = str(brute)
                row["status"] = "ok" if brute == formula else "mismatch"
                if brute != formula:
                    mismatches += 1
            rows.append(row)

    for row in rows:
        if row["status"] != "ok":
            label = row.get("space") or row.get("beta")
            print(
                f"{row['status']:>8}  {row['kind']}  {label}  "
                f"m={row.get('m', '-')} n={row['n']}",
                file=sys.stderr,
            )
    summary = {
        "instances": str(len(rows)),
        "ok": str(len(rows) - mismatches - skipped),
        "mismatches": str(mismatches),
        "skipped": str(skipped),
        "word_cap": str(ga.resolve_word_cap()),
    }
    print(
        f"algebra-check: {summary['ok']}/{summary['instances']} ok, "
        f"{mismatches} mismatches, {skipped} skipped",
        file=sys.stderr,
    )
    payload = {"summary": summary, "rows": rows}
    if mismatches:
        return payload, EXIT_INVARIANT
    if skipped:
        return payload, EXIT_PARTIAL
    return payload, EXIT_OK


def _kron_probe_rows(probes: int, seed: int) -> tuple[list[dict], bool]:
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))
    rows = []
    all_equal = True
    for i in range(probes):
        sizes = rng.integers(1, 7, size=2)
        mats = []
        for size in sizes:
            factor = rng.integers(-2, 3, size=(int(size) + 1, int(size)))
            mats.append(hodge.SymMatrix.from_gram(factor.tolist()))
        computed, predicted = hodge.kron_sum_kernel_dim(mats[0], mats[1])
        all_equal = all_equal and computed == predicted
        rows.append(
            {
                "probe": str(i),
                "sizes": [str(int(s)) for s in sizes],
                "computed": str(computed),
                "predicted": str(predicted),
            }
        )
    return rows, all_equal


def cmd_simplicial(cfg: RunConfig) -> tuple[dict, int]:
    complex_ = hodge.load_complex(cfg.payload)
    beta = hodge.betti_numbers(complex_)
    decomposition = []
    for k in range(complex_.max_dim + 1):
        harmonic, exact, coexact = hodge.hodge_decomposition_dims(complex_, k)
        decomposition.append(
            {
                "k": str(k),
                "chain_dim": str(complex_.chain_dim(k)),
                "harmonic": str(harmonic),
                "exact": str(exact),
                "coexact": str(coexact),
            }
        )
    payload = {
        "num_vertices": str(complex_.num_vertices),
        "max_dim": str(complex_.max_dim),
        "betti": [str(b) for b in beta],
        "decomposition": decomposition,
    }
    code = EXIT_OK
    if cfg.kron_probes:
        rows, all_equal = _kron_probe_rows(cfg.kron_probes, cfg.seed or 0)
        payload["kron_probes"] = rows
        if not all_equal:
            code = EXIT_INVARIANT
    return payload, code


def cmd_poisson(cfg: RunConfig) -> tuple[dict, int]:
    spec = dict(cfg.payload)
    if cfg.seed is not None:
        spec["seed"] = cfg.seed
    if cfg.samples is not None:
        spec["samples"] = cfg.samples
    if "seed" not in spec:
        raise InputError("poisson checks need a seed (--seed or spec field)")
    if "samples" not in spec:
        raise InputError("poisson checks need a sample count (--samples or spec field)")
    report = poisson_mc.run_check(spec)
    return poisson_mc.report_to_json(report), EXIT_OK


def _vector_from_complex(complex_: hodge.SimplicialComplex, zero_b0: bool) -> tuple[betti_mod.BettiVector, list[int]]:
    raw = list(hodge.betti_numbers(complex_))
    beta = list(raw)
    if zero_b0 and beta:
        beta[0] = 0
    while len(beta) < 2:
        beta.append(0)
    return betti_mod.BettiVector(d=len(beta) - 1, beta=tuple(beta)), raw


def cmd_pipeline(cfg: RunConfig) -> tuple[dict, int]:
    doc = cfg.payload
    if "complex" in doc:
        base_doc, mark_doc = doc["complex"], doc.get("mark")
    else:
        base_doc, mark_doc = doc, None
    base = hodge.load_complex(base_doc)
    vector, raw = _vector_from_complex(base, cfg.infinite_volume)
    source = {
        "complex_betti": [str(b) for b in raw],
        "infinite_volume_override": cfg.infinite_volume,
    }
    if mark_doc is not None:
        mark = hodge.load_complex(mark_doc)
        mark_vector, mark_raw = _vector_from_complex(mark, zero_b0=False)
        source["mark_betti"] = [str(b) for b in mark_raw]
        vector = betti_mod.kunneth_product(vector, mark_vector)
    report = betti_mod.betti_report(vector, cfg.n_max)
    payload = betti_mod.report_to_json(report)
    payload["beta_source"] = source
    return payload, EXIT_OK


_COMMANDS = {
    "betti": cmd_betti,
    "algebra-check": cmd_algebra_check,
    "simplicial": cmd_simplicial,
    "poisson": cmd_poisson,
    "pipeline": cmd_pipeline,
}

_NEEDS_INPUT = {"betti", "simplicial", "poisson", "pipeline"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammahodge",
        description="Configuration-space Betti numbers and the checks behind them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument(
                "--input", required=True,
                help="JSON document: a path, '-' for stdin, or inline starting with '{'",
            )
        p.add_argument("--output", help="write the JSON report here (atomic)")

    p = sub.add_parser("betti", help="b_0..b_n from a Betti vector document")
    common(p)
    p.add_argument("--n-max", type=int, default=10)

    p = sub.add_parser("algebra-check", help="closed-form vs brute-force dimension sweep")
    common(p, with_input=False)
    p.add_argument("--grid", help="JSON object overriding the default grid bounds")

    p = sub.add_parser("simplicial", help="Betti numbers + Hodge split of a complex")
    common(p)
    p.add_argument("--kron-probes", type=int, default=0,
                   help="also run this many random PSD Kronecker-sum kernel probes")
    p.add_argument("--seed", type=int, help="seed for the probes")

    p = sub.add_parser("poisson", help="run one Monte Carlo identity check")
    common(p)
    p.add_argument("--seed", type=int, help="override the spec's seed")
    p.add_argument("--samples", type=int, help="override the spec's sample count")

    p = sub.add_parser("pipeline", help="complex -> Betti vector -> configuration b_n")
    common(p)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--infinite-volume", action="store_true",
                   help="zero out beta_0 before the configuration formula (recorded)")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    payload = None
    if args.command in _NEEDS_INPUT:
        payload = _read_json_source(args.input)
    grid = None
    if getattr(args, "grid", None):
        grid_doc = _read_json_source(args.grid)
        grid = grid_doc
    return RunConfig(
        command=args.command,
        payload=payload,
        output=getattr(args, "output", None),
        n_max=getattr(args, "n_max", 10),
        seed=getattr(args, "seed", None),
        samples=getattr(args, "samples", None),
        infinite_volume=getattr(args, "infinite_volume", False),
        grid=grid,
        kron_probes=getattr(args, "kron_probes", 0),
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        payload, code = _COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(payload, cfg.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
