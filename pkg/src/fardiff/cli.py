"""Command-line surface: generate / embed / cluster / pipeline / eval.

Exit codes: 0 success, 2 usage or input error, 3 numeric failure. stdout
carries only machine-readable output (the eval metrics JSON); everything
else lands in files, and diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .dataset import DataSet, generate_blobs, generate_rings, load_csv, minmax_normalize, save_csv
from .diffusion import export_embedding
from .exceptions import InputError, NumericError, ParseError
from .fuzzyart import ArtParams, save_model, train
from .metrics import adjusted_rand_index, purity
from .pipeline import FardiffConfig, embed_dataset, fardiff_cluster, write_assignment_csv

_GENERATORS = {
    "rings": (generate_rings, {"n_inner": int, "n_outer": int, "r_inner": float,
                               "r_outer": float, "noise": float}),
    "blobs": (generate_blobs, {"k": int, "n_per": int, "m": int,
                               "spread": float, "separation": float}),
}

_CONFIG_KEYS = {
    "input": str, "generate": str, "seed": int,
    "sigma": float, "t": int, "L": int, "skip_trivial": bool,
    "alpha": float, "beta": float, "rho": float,
    "complement_coding": bool, "max_epochs": int,
    "out": str, "report": str,
    "has_header": bool, "label_column": str, "id_column": bool,
}


def _parse_generate_spec(spec: str, seed: int) -> DataSet:
    """Build a dataset from 'kind:key=value,...', e.g. 'rings:n_inner=100,noise=0.05'."""
    kind, _, rest = spec.partition(":")
    if kind not in _GENERATORS:
        raise InputError(f"unknown generator {kind!r}; choose from {sorted(_GENERATORS)}")
    fn, schema = _GENERATORS[kind]
    kwargs = {}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in schema:
                raise InputError(f"bad generator option {item!r}; known keys: {sorted(schema)}")
            try:
                kwargs[key] = schema[key](value.strip())
            except ValueError:
                raise InputError(f"generator option {key}={value!r} is not a {schema[key].__name__}") from None
    return fn(seed=seed, **kwargs)


def _load_dataset(args) -> DataSet:
    if getattr(args, "generate", None):
        return _parse_generate_spec(args.generate, args.seed if args.seed is not None else 0)
    if not getattr(args, "input", None):
        raise InputError("no input: give an input CSV or --generate")
    return load_csv(
        args.input,
        has_header=bool(args.has_header),
        label_column=args.label_column,
        id_column=bool(args.id_column),
    )


def _read_labels(path):
    """Integer labels from the last column of a CSV; a non-integer first row is a header."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [(n, r) for n, r in enumerate(csv.reader(fh), start=1) if r]
    if not rows:
        raise ParseError(f"{path}: file contains no data")
    start = 0
    try:
        int(rows[0][1][-1])
    except ValueError:
        start = 1
    if start == len(rows):
        raise ParseError(f"{path}: no data rows after header")
    labels = []
    for lineno, row in rows[start:]:
        try:
            labels.append(int(row[-1]))
        except ValueError:
            raise ParseError(
                f"{path}: row {lineno}: {row[-1]!r} is not an integer label"
            ) from None
    return labels


def _art_params(args) -> ArtParams:
    return ArtParams(
        alpha=args.alpha if args.alpha is not None else 0.001,
        beta=args.beta if args.beta is not None else 1.0,
        rho=args.rho if args.rho is not None else 0.5,
        complement_coding=args.complement_coding if args.complement_coding is not None else True,
        max_epochs=args.max_epochs if args.max_epochs is not None else 100,
    )


def _apply_config_file(args) -> None:
    if not getattr(args, "config", None):
        return
    with open(args.config, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.config}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{args.config}: config must be a JSON object")
    unknown = sorted(set(doc) - set(_CONFIG_KEYS))
    if unknown:
        raise InputError(f"{args.config}: unknown config keys: {', '.join(unknown)}")
    alias = {"L": "L_components"}
    for key, value in doc.items():
        attr = alias.get(key, key)
        # Flags override file values.
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)


def cmd_generate(args) -> int:
    data = _parse_generate_spec(args.spec, args.seed if args.seed is not None else 0)
    save_csv(data, args.out, header=True)
    return 0


def cmd_embed(args) -> int:
    data = _load_dataset(args)
    embedding, _, spectrum, sigma_used = embed_dataset(
        data,
        sigma=args.sigma,
        t=args.t if args.t is not None else 1,
        n_components=args.L_components if args.L_components is not None else 2,
        skip_trivial=bool(args.skip_trivial),
    )
    meta_path = args.meta if args.meta else args.out + ".meta.json"
    export_embedding(
        embedding, args.out, meta_path,
        sigma=sigma_used, eigenvalues=spectrum.eigenvalues, ids=data.ids,
    )
    print(f"embedded {data.n_points} points (sigma={sigma_used:g}) -> {args.out}", file=sys.stderr)
    return 0


def cmd_cluster(args) -> int:
    data = _load_dataset(args)
    unit = minmax_normalize(data)
    model, assignment = train(unit.points, _art_params(args))
    write_assignment_csv(args.out, assignment, ids=data.ids)
    if args.model:
        save_model(model, args.model)
    print(f"{assignment.n_categories} categories in {assignment.epochs} epochs -> {args.out}",
          file=sys.stderr)
    return 0


def cmd_pipeline(args) -> int:
    _apply_config_file(args)
    if not args.out:
        raise InputError("no output path: give --out (flag or config file)")
    data = _load_dataset(args)
    config = FardiffConfig(
        sigma=args.sigma,
        t=args.t if args.t is not None else 1,
        n_components=args.L_components if args.L_components is not None else 2,
        skip_trivial=bool(args.skip_trivial),
        art=_art_params(args),
    )
    _, _, assignment, report = fardiff_cluster(data, config)
    write_assignment_csv(args.out, assignment, ids=data.ids)
    if args.report:
        doc = report.to_dict()
        doc["source"] = (
            {"generate": args.generate, "seed": args.seed if args.seed is not None else 0}
            if args.generate else {"input": args.input}
        )
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
    print(f"{report.n_categories} categories (sigma={report.sigma:g}, "
          f"epochs={report.epochs}) -> {args.out}", file=sys.stderr)
    return 0


def cmd_eval(args) -> int:
    pred = _read_labels(args.pred)
    truth = _read_labels(args.truth)
    doc = {
        "ari": adjusted_rand_index(pred, truth),
        "purity": purity(pred, truth),
        "n_categories": len(set(pred)),
        "n_labels": len(set(truth)),
    }
    print(json.dumps(doc))
    return 0


def _add_reader_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--has-header", action=argparse.BooleanOptionalAction, default=None,
                   help="input CSV starts with a header row")
    p.add_argument("--label-column", default=None,
                   help="label column (header name or 0-based index), excluded from coordinates")
    p.add_argument("--id-column", action=argparse.BooleanOptionalAction, default=None,
                   help="first input column holds row ids")


def _add_art_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=None, help="choice parameter (> 0, default 0.001)")
    p.add_argument("--beta", type=float, default=None, help="learning rate in [0, 1] (default 1.0)")
    p.add_argument("--rho", type=float, default=None, help="vigilance in [0, 1] (default 0.5)")
    p.add_argument("--complement-coding", action=argparse.BooleanOptionalAction, default=None,
                   help="complement-code inputs (default on)")
    p.add_argument("--max-epochs", type=int, default=None, help="epoch cap (default 100)")


def _add_embed_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sigma", type=float, default=None,
                   help="kernel width (default: median pairwise distance)")
    p.add_argument("--t", type=int, default=None, help="diffusion time (default 1)")
    p.add_argument("--L", dest="L_components", type=int, default=None,
                   help="embedding dimension (default 2)")
    p.add_argument("--skip-trivial", action=argparse.BooleanOptionalAction, default=None,
                   help="drop the constant leading component")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fardiff",
        description="Diffusion-map embedding composed with fuzzy adaptive resonance clustering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic labeled dataset CSV")
    p.add_argument("spec", help="generator spec, e.g. 'rings:n_inner=100,n_outer=100,noise=0.05' "
                                "or 'blobs:k=3,n_per=50,separation=10'")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("embed", help="diffusion-embed a CSV point cloud")
    p.add_argument("input", help="input CSV path")
    _add_reader_flags(p)
    _add_embed_flags(p)
    p.add_argument("--out", required=True, help="embedding CSV path")
    p.add_argument("--meta", default=None, help="metadata JSON path (default: <out>.meta.json)")
    p.set_defaults(func=cmd_embed, generate=None)

    p = sub.add_parser("cluster", help="fuzzy-ART-cluster a CSV directly (min-max normalized)")
    p.add_argument("input", help="input CSV path")
    _add_reader_flags(p)
    _add_art_flags(p)
    p.add_argument("--out", required=True, help="assignment CSV path")
    p.add_argument("--model", default=None, help="also save the trained model JSON here")
    p.set_defaults(func=cmd_cluster, generate=None)

    p = sub.add_parser("pipeline", help="full run: embed, normalize, cluster")
    p.add_argument("input", nargs="?", default=None, help="input CSV path")
    p.add_argument("--generate", default=None, help="generator spec instead of an input file")
    p.add_argument("--seed", type=int, default=None, help="generator RNG seed (default 0)")
    p.add_argument("--config", default=None, help="JSON config file; flags override its values")
    _add_reader_flags(p)
    _add_embed_flags(p)
    _add_art_flags(p)
    p.add_argument("--out", default=None, help="assignment CSV path")
    p.add_argument("--report", default=None, help="run report JSON path")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("eval", help="score a predicted assignment against reference labels")
    p.add_argument("pred", help="predicted assignment CSV (label = last column)")
    p.add_argument("truth", help="reference labels CSV (label = last column)")
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError) as exc:
        print(f"fardiff: error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"fardiff: numeric error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        name = exc.filename if exc.filename else exc
        print(f"fardiff: error: cannot open {name}: {exc.strerror or exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
